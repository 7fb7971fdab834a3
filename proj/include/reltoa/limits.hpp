// Nonrelativistic and massless limits, the dual "time-Hamiltonian" equation
// and the deficiency-index diagnostic of -i d/dE on the two spectral branches.
#pragma once

#include "reltoa/eigensystem.hpp"
#include "reltoa/quadrature.hpp"

#include <limits>
#include <string>
#include <vector>

namespace reltoa {

// ---------------------------------------------------------------------------
// Nonrelativistic limit

/// ||u(p,s) - zeta_{+s}|| and ||w(p,s) - zeta_{-s}|| at m = 1, p = r.
struct SpinorLimitError {
  double u_error = 0;
  double w_error = 0;
};

inline SpinorLimitError nr_spinor_error(double r, Spin s = Spin::Up) {
  if (!(r > 0.0)) throw std::invalid_argument("nr_spinor_error: ratio must be > 0");
  const auto [u, w] = uw_spinors(KinematicPoint(1.0, r, Branch::Positive, s));
  return {(u - nr_limit_spinor(Branch::Positive, s)).norm(),
          (w - nr_limit_spinor(Branch::Negative, s)).norm()};
}

/// Least-squares slope of log(y) against log(x).
inline double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct LimitReport {
  std::vector<double> ratios;
  std::vector<double> errors;
  double order = 0.0;

  /// Errors strictly decrease as the ratio decreases, for ratios <= 0.1.
  bool monotone() const {
    for (std::size_t i = 0; i < ratios.size(); ++i)
      for (std::size_t j = 0; j < ratios.size(); ++j)
        if (ratios[i] <= 0.1 && ratios[j] < ratios[i] && !(errors[j] < errors[i])) return false;
    return true;
  }
};

/// Log-spaced ratios from hi down to lo, `per_decade` per decade, inclusive.
inline std::vector<double> log_ratios(double hi, double lo, int per_decade) {
  std::vector<double> r;
  const int steps = static_cast<int>(std::lround(std::log10(hi / lo) * per_decade));
  for (int k = 0; k <= steps; ++k) r.push_back(hi * std::pow(10.0, -double(k) / per_decade));
  return r;
}

inline LimitReport spinor_limit_report(const std::vector<double>& ratios) {
  LimitReport rep{ratios, {}, 0.0};
  for (double r : ratios) rep.errors.push_back(nr_spinor_error(r).u_error);
  rep.order = fit_loglog_slope(rep.ratios, rep.errors);
  return rep;
}

struct EigenLimit {
  double t_rel = 0;  // -x E_p / p
  double t_non = 0;  // -x m / p
  double gap = 0;    // |t_rel - t_non|
  double relative_gap = 0;  // gap / |t_non| = E_p/m - 1
};

inline EigenLimit nr_eigen_limit_check(double x, double p, double m) {
  if (p == 0.0) throw std::invalid_argument("nr_eigen_limit_check: p must be nonzero");
  if (!(m > 0.0)) throw std::invalid_argument("nr_eigen_limit_check: m must be > 0");
  const double ep = std::hypot(p, m);
  const double e_minus_m = p * p / (ep + m);
  EigenLimit r;
  r.t_rel = -x * ep / p;
  r.t_non = -x * m / p;
  r.gap = std::abs(x) * e_minus_m / std::abs(p);
  r.relative_gap = e_minus_m / m;
  return r;
}

/// L2 distance, under a centred Gaussian weight of width ratio * m, between
/// exp(-i m t) phi_{t,+1,s}(p) and the nonrelativistic eigenfunction
/// (p^2/m^2)^{1/4} zeta_{+s} exp(i p^2 t / 2m) / sqrt(2 pi).
inline double nr_eigenfunction_limit(double t, Spin s, double m, double ratio) {
  if (!(m > 0.0) || !(ratio > 0.0))
    throw std::invalid_argument("nr_eigenfunction_limit: m and ratio must be > 0");
  const double sigma = ratio * m;
  const auto ef = build_eigenfunction_t(t, Branch::Positive, s, m);
  const Spinor4 zeta = nr_limit_spinor(Branch::Positive, s);
  double acc = 0.0;
  for (double side : {-1.0, 1.0}) {
    const auto rule = quad::composite_gauss_legendre(16, 24, 0.0, 8.0 * sigma);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double p = side * rule.nodes[i];
      const double ep = std::hypot(p, m);
      // exp(-imt) exp(i E t) = exp(i (E - m) t), E - m = p^2/(E+m)
      const Complex rel_phase = std::polar(1.0, p * p / (ep + m) * t);
      const Spinor4 rel = ef.amplitude(p) * rel_phase;
      const Spinor4 non =
          std::sqrt(std::abs(p) / m) * zeta * std::polar(1.0, p * p * t / (2.0 * m)) * kInvSqrt2Pi;
      const double gw = std::exp(-p * p / (2.0 * sigma * sigma)) / (std::sqrt(2.0 * kPi) * sigma);
      acc += rule.weights[i] * gw * (rel - non).squaredNorm();
    }
  }
  return std::sqrt(acc);
}

inline LimitReport eigenfunction_limit_report(const std::vector<double>& ratios, double t = 1.0,
                                              double m = 1.0) {
  LimitReport rep{ratios, {}, 0.0};
  for (double r : ratios) rep.errors.push_back(nr_eigenfunction_limit(t, Spin::Up, m, r));
  rep.order = fit_loglog_slope(rep.ratios, rep.errors);
  return rep;
}

// ---------------------------------------------------------------------------
// Duality

/// Elementary solution of -i d/dE phi = T phi with E and p independent:
/// phi_{xbs}(E, p) = [x^2/(x^2+tau^2)]^{1/4} xi_{bs}(x) exp(i (t E - x p)) / sqrt(2 pi),
/// t = b sqrt(x^2 + tau^2), tau a fixed label.
struct DualSolution {
  EventPoint event;
  Spin s = Spin::Up;

  double tau() const { return event.tau; }
  double t() const { return event.t(); }
  double weight() const {
    const double x = event.x;
    return std::pow(x * x / (x * x + event.tau * event.tau), 0.25);
  }
  Spinor4 spinor() const { return event_spinor(event, s); }

  Spinor4 value(double energy, double p) const {
    return weight() * spinor() * std::polar(1.0, t() * energy - event.x * p) * kInvSqrt2Pi;
  }
  /// Analytic d/dE at fixed p.
  Spinor4 d_energy(double energy, double p) const { return I * t() * value(energy, p); }
};

inline DualSolution dual_solution(double x, Branch b, Spin s, double tau) {
  const EventPoint e(x, tau, b);
  if (e.t_x() == 0.0) throw std::invalid_argument("dual_solution: degenerate event x = tau = 0");
  event_spinor(e, s);  // rejects the remaining 0/0 configuration
  return DualSolution{e, s};
}

/// max over (E, p) samples of |-i d/dE phi - t phi| / |phi|.
inline double dual_residual(const DualSolution& ds, const std::vector<std::pair<double, double>>& samples) {
  double worst = 0.0;
  for (const auto& [e, p] : samples) {
    const Spinor4 v = ds.value(e, p);
    worst = std::max(worst, (-I * ds.d_energy(e, p) - ds.t() * v).norm() / v.norm());
  }
  return worst;
}

/// Plane-wave solution psi_{p l s}(t, x) = phi_{l s}(p) exp(i (p x - l E_p t)) / sqrt(2 pi).
inline Spinor4 plane_wave(double p, double m, Branch l, Spin s, double t, double x) {
  const KinematicPoint k(m, p, l, s);
  return energy_spinor(k) * std::polar(1.0, p * x - k.energy() * t) * kInvSqrt2Pi;
}

// ---------------------------------------------------------------------------
// Deficiency indices

struct BranchIntegral {
  std::string branch;    // "positive" (m, E_max) or "negative" (-E_max, -m)
  double log_integral_at_emax = 0;  // log int |phi|^2 over the truncated branch
  double log_integral_at_2emax = 0;
  bool normalizable = false;
};

struct DeficiencyReport {
  double m = 1.0;
  double e_max = 10.0;
  BranchIntegral plus_positive, plus_negative;    // solutions of T phi = +i phi: exp(-E)
  BranchIntegral minus_positive, minus_negative;  // solutions of T phi = -i phi: exp(+E)
  int n_plus = 0;
  int n_minus = 0;
  bool equal() const { return n_plus == n_minus; }
};

namespace detail {

/// log int_a^b exp(2 k E) dE by Gauss-Legendre and log-sum-exp.
inline double log_exp_integral(double k, double a, double b) {
  // panels no wider than a quarter of the 1/2 decay length of exp(+-2E)
  const int panels = std::max(32, static_cast<int>(std::ceil((b - a) / 0.25)));
  const auto rule = quad::composite_gauss_legendre(panels, 8, a, b);
  double mx = -std::numeric_limits<double>::infinity();
  for (double e : rule.nodes) mx = std::max(mx, 2.0 * k * e);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * std::exp(2.0 * k * rule.nodes[i] - mx);
  return mx + std::log(acc);
}

inline BranchIntegral classify(const char* name, double k, double lo, double hi, double lo2,
                               double hi2) {
  BranchIntegral b;
  b.branch = name;
  b.log_integral_at_emax = log_exp_integral(k, lo, hi);
  b.log_integral_at_2emax = log_exp_integral(k, lo2, hi2);
  // convergent: doubling the truncation less than doubles the integral
  b.normalizable = b.log_integral_at_2emax - b.log_integral_at_emax < std::log(2.0);
  return b;
}

}  // namespace detail

/// Solves -i phi' = +-i phi on each branch (phi = exp(-+E)) and counts the
/// normalisable solutions per sign.
inline DeficiencyReport deficiency_diagnostic(double m, double e_max) {
  if (!(m > 0.0)) throw std::invalid_argument("deficiency_diagnostic: m must be > 0");
  if (!(e_max > m)) throw std::invalid_argument("deficiency_diagnostic: E_max must exceed m");
  DeficiencyReport r;
  r.m = m;
  r.e_max = e_max;
  const double E = e_max, E2 = 2.0 * e_max;
  r.plus_positive = detail::classify("positive", -1.0, m, E, m, E2);
  r.plus_negative = detail::classify("negative", -1.0, -E, -m, -E2, -m);
  r.minus_positive = detail::classify("positive", +1.0, m, E, m, E2);
  r.minus_negative = detail::classify("negative", +1.0, -E, -m, -E2, -m);
  r.n_plus = int(r.plus_positive.normalizable) + int(r.plus_negative.normalizable);
  r.n_minus = int(r.minus_positive.normalizable) + int(r.minus_negative.normalizable);
  return r;
}

}  // namespace reltoa
