// Symmetric momentum grids with the neighbourhood of p = 0 removed, and
// Spinor4-valued fields sampled on them.
#pragma once

#include "reltoa/quadrature.hpp"
#include "reltoa/types.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace reltoa {

enum class DerivativeScheme {
  FiniteDifference2,  // 3-point stencils on the (non-uniform) nodes
  FiniteDifference4,  // 5-point stencils
  Spectral,           // differentiate the per-panel interpolating polynomial
  Analytic,           // caller supplies derivative values
};

inline DerivativeScheme scheme_from_order(int order) {
  switch (order) {
    case 2: return DerivativeScheme::FiniteDifference2;
    case 4: return DerivativeScheme::FiniteDifference4;
    default:
      throw std::invalid_argument("deriv_order must be 2 or 4, got " + std::to_string(order));
  }
}

inline int stencil_size(DerivativeScheme s) {
  switch (s) {
    case DerivativeScheme::FiniteDifference2: return 3;
    case DerivativeScheme::FiniteDifference4: return 5;
    default: return 0;
  }
}

struct GridParams {
  double p_min = 1e-3;
  double p_max = 10.0;
  int n_points = 256;  // per side
  DerivativeScheme scheme = DerivativeScheme::FiniteDifference4;
  int panels = 8;  // per side
};

/// Composite Gauss-Legendre nodes on [-p_max, -p_min] U [p_min, p_max].
///
/// Node index i < n is the negative side (ascending), i >= n the positive
/// side, and node n + j is the mirror of node n - 1 - j.
class MomentumGrid {
 public:
  explicit MomentumGrid(const GridParams& params) : params_(params) {
    if (!(params.p_min > 0.0)) throw std::invalid_argument("grid: p_min must be > 0");
    if (!(params.p_max > params.p_min))
      throw std::invalid_argument("grid: p_max must exceed p_min");
    if (params.n_points < 8) throw std::invalid_argument("grid: n_points must be >= 8");
    if (params.panels < 1) throw std::invalid_argument("grid: panels must be >= 1");
    const int n = params.n_points;
    const int panels = std::min(params.panels, std::max(1, n / 4));
    params_.panels = panels;

    // positive side, panel by panel; leftover points go to the leading panels
    std::vector<double> side_nodes, side_weights;
    std::vector<int> side_panel_sizes;
    const double h = (params.p_max - params.p_min) / panels;
    for (int k = 0; k < panels; ++k) {
      const int order = n / panels + (k < n % panels ? 1 : 0);
      const auto r = quad::gauss_legendre(order, params.p_min + k * h, params.p_min + (k + 1) * h);
      side_nodes.insert(side_nodes.end(), r.nodes.begin(), r.nodes.end());
      side_weights.insert(side_weights.end(), r.weights.begin(), r.weights.end());
      side_panel_sizes.push_back(order);
    }

    nodes_.resize(2 * n);
    weights_.resize(2 * n);
    for (int j = 0; j < n; ++j) {
      nodes_[n + j] = side_nodes[j];
      weights_[n + j] = side_weights[j];
      nodes_[n - 1 - j] = -side_nodes[j];
      weights_[n - 1 - j] = side_weights[j];
    }

    // panels over the full index range
    int start = 0;
    for (auto it = side_panel_sizes.rbegin(); it != side_panel_sizes.rend(); ++it) {
      panel_starts_.push_back(start);
      start += *it;
    }
    for (int sz : side_panel_sizes) {
      panel_starts_.push_back(start);
      start += sz;
    }
    panel_starts_.push_back(start);
    for (std::size_t k = 0; k + 1 < panel_starts_.size(); ++k) {
      const std::span<const double> x(nodes_.data() + panel_starts_[k],
                                      panel_starts_[k + 1] - panel_starts_[k]);
      panel_diff_.push_back(quad::differentiation_matrix(x));
    }

    build_stencils();
  }

  const GridParams& params() const { return params_; }
  std::size_t size() const { return nodes_.size(); }
  int per_side() const { return params_.n_points; }
  double p_min() const { return params_.p_min; }
  double p_max() const { return params_.p_max; }
  DerivativeScheme scheme() const { return params_.scheme; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::size_t mirror(std::size_t i) const { return size() - 1 - i; }

  std::size_t panel_count() const { return panel_starts_.size() - 1; }
  std::size_t panel_begin(std::size_t k) const { return panel_starts_[k]; }
  std::size_t panel_end(std::size_t k) const { return panel_starts_[k + 1]; }

  /// Nodes whose finite-difference stencil is not centred (side ends).
  const std::vector<std::size_t>& one_sided_nodes() const { return one_sided_; }

  /// Derivative of node values under `scheme` (FD or Spectral).
  template <typename T>
  std::vector<T> differentiate(const std::vector<T>& f, DerivativeScheme scheme) const {
    if (f.size() != size()) throw std::invalid_argument("differentiate: size mismatch");
    std::vector<T> df(size());
    if (scheme == DerivativeScheme::Spectral) {
      for (std::size_t k = 0; k < panel_count(); ++k) {
        const std::size_t b = panel_starts_[k], e = panel_starts_[k + 1], m = e - b;
        const auto& d = panel_diff_[k];
        for (std::size_t i = 0; i < m; ++i) {
          T acc = f[b] * 0.0;
          for (std::size_t j = 0; j < m; ++j) acc += d[i * m + j] * f[b + j];
          df[b + i] = acc;
        }
      }
      return df;
    }
    if (scheme == DerivativeScheme::Analytic)
      throw std::invalid_argument("differentiate: analytic scheme needs supplied derivatives");
    const auto& st = scheme == DerivativeScheme::FiniteDifference2 ? stencil2_ : stencil4_;
    for (std::size_t i = 0; i < size(); ++i) {
      T acc = f[i] * 0.0;
      for (const auto& [j, w] : st[i]) acc += w * f[j];
      df[i] = acc;
    }
    return df;
  }

  template <typename T>
  std::vector<T> differentiate(const std::vector<T>& f) const {
    return differentiate(f, params_.scheme);
  }

 private:
  using Stencil = std::vector<std::pair<std::size_t, double>>;

  void build_stencils() {
    const std::size_t n = params_.n_points;
    stencil2_.resize(size());
    stencil4_.resize(size());
    for (std::size_t side = 0; side < 2; ++side) {
      const std::size_t lo = side * n;
      for (std::size_t j = 0; j < n; ++j) {
        for (int width : {3, 5}) {
          const std::size_t half = width / 2;
          std::size_t start = j >= half ? j - half : 0;
          start = std::min(start, n - width);
          std::vector<double> x(width);
          for (int q = 0; q < width; ++q) x[q] = nodes_[lo + start + q];
          const auto w = quad::fornberg_first_derivative(nodes_[lo + j], x);
          Stencil s;
          for (int q = 0; q < width; ++q) s.emplace_back(lo + start + q, w[q]);
          (width == 3 ? stencil2_ : stencil4_)[lo + j] = std::move(s);
          if (width == stencil_size(params_.scheme) && start + half != j)
            one_sided_.push_back(lo + j);
        }
      }
    }
  }

  GridParams params_;
  std::vector<double> nodes_, weights_;
  std::vector<std::size_t> panel_starts_;
  std::vector<std::vector<double>> panel_diff_;
  std::vector<Stencil> stencil2_, stencil4_;
  std::vector<std::size_t> one_sided_;
};

using GridPtr = std::shared_ptr<const MomentumGrid>;

inline GridPtr build_grid(double p_min, double p_max, int n_points, DerivativeScheme scheme,
                          int panels = 8) {
  return std::make_shared<const MomentumGrid>(GridParams{p_min, p_max, n_points, scheme, panels});
}

inline GridPtr build_grid(double p_min, double p_max, int n_points, int deriv_order,
                          int panels = 8) {
  return build_grid(p_min, p_max, n_points, scheme_from_order(deriv_order), panels);
}

/// A state in the momentum representation: one Spinor4 per grid node.
struct GridSpinorField {
  GridPtr grid;
  std::vector<Spinor4> values;
  /// Nodes where a derivative-based operator fell back to one-sided stencils.
  std::size_t degraded_nodes = 0;

  GridSpinorField() = default;
  explicit GridSpinorField(GridPtr g) : grid(std::move(g)), values(grid->size(), Spinor4::Zero()) {}
  GridSpinorField(GridPtr g, std::vector<Spinor4> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->size())
      throw std::invalid_argument("GridSpinorField: values length must equal node count");
  }

  static GridSpinorField sample(GridPtr g, const std::function<Spinor4(double)>& fn) {
    GridSpinorField f(std::move(g));
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = fn(f.grid->node(i));
    return f;
  }

  std::size_t size() const { return values.size(); }
  double p(std::size_t i) const { return grid->node(i); }

  GridSpinorField& operator+=(const GridSpinorField& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) values[i] += o.values[i];
    return *this;
  }
  GridSpinorField& operator-=(const GridSpinorField& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) values[i] -= o.values[i];
    return *this;
  }
  GridSpinorField& operator*=(Complex a) {
    for (auto& v : values) v *= a;
    return *this;
  }
  friend GridSpinorField operator+(GridSpinorField a, const GridSpinorField& b) { return a += b; }
  friend GridSpinorField operator-(GridSpinorField a, const GridSpinorField& b) { return a -= b; }
  friend GridSpinorField operator*(Complex s, GridSpinorField a) { return a *= s; }

  void check_same(const GridSpinorField& o) const {
    if (grid != o.grid) throw std::invalid_argument("fields live on different grids");
  }
};

}  // namespace reltoa
