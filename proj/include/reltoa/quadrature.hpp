// Gauss-Legendre rules, finite-difference weights on arbitrary nodes and
// polynomial differentiation/extrapolation helpers.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace reltoa::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b], nodes ascending.
inline Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // one more derivative evaluation at the converged root
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[i] = mid - half * z;
    r.nodes[n - 1 - i] = mid + half * z;
    r.weights[i] = half * w;
    r.weights[n - 1 - i] = half * w;
  }
  return r;
}

/// Composite rule: `panels` equal panels of `order` points each on [a, b].
inline Rule composite_gauss_legendre(int panels, int order, double a, double b) {
  Rule out;
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const Rule r = gauss_legendre(order, a + k * h, a + (k + 1) * h);
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
  }
  return out;
}

/// Fornberg's algorithm: weights c such that f'(x0) ~ sum_j c_j f(x_j).
inline std::vector<double> fornberg_first_derivative(double x0, std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("fornberg: need at least two nodes");
  // c[j][k]: weight of node j for derivative order k (k = 0, 1)
  std::vector<std::array<double, 2>> c(n, {0.0, 0.0});
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = c[j][1];
  return w;
}

/// Barycentric weights for polynomial interpolation through x.
inline std::vector<double> barycentric_weights(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) w[j] /= (x[j] - x[k]);
  return w;
}

/// Dense differentiation matrix D (row-major, n x n) of the interpolating
/// polynomial through x: (Df)_i = p'(x_i).
inline std::vector<double> differentiation_matrix(std::span<const double> x) {
  const std::size_t n = x.size();
  const auto w = barycentric_weights(x);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = (w[j] / w[i]) / (x[i] - x[j]);
      d[i * n + j] = v;
      diag -= v;
    }
    d[i * n + i] = diag;
  }
  return d;
}

/// Lagrange weights l_j(x0) for evaluating the interpolant through x at x0.
inline std::vector<double> lagrange_weights(double x0, std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> l(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) l[j] *= (x0 - x[k]) / (x[j] - x[k]);
  return l;
}

}  // namespace reltoa::quad
