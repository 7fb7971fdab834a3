// Free Dirac wave packets and their arrival-time distribution at x = 0.
//
// The distribution is the spectral-measure construction over the
// time-labelled eigenfunctions, summed coherently over the two energy
// branches at each spin:
//
//   Pi(t) = sum_s | A_{+s}(t) + A_{-s}(t) |^2,   A_{l s}(t) = <phi_{t l s}|psi>,
//
// so that Pi = Pi_pos + Pi_neg + Pi_interf with the cross term isolated.
// The probability current at the origin serves as an independent check.
#pragma once

#include "reltoa/eigensystem.hpp"
#include "reltoa/parallel.hpp"

#include <string>
#include <vector>

namespace reltoa {

struct PacketSpec {
  double m = 1.0;
  double x0 = -10.0;
  double p0 = 2.0;
  double sigma_p = 0.1;
  Complex c_plus = 1.0;
  Complex c_minus = 0.0;
  Spin s = Spin::Up;

  /// Throws on hard violations, returns soft warnings.
  std::vector<std::string> validate() const {
    if (!(m >= 0.0)) throw std::invalid_argument("packet: mass must be >= 0");
    if (!(sigma_p > 0.0)) throw std::invalid_argument("packet: sigma_p must be > 0");
    const double w = std::norm(c_plus) + std::norm(c_minus);
    if (std::abs(w - 1.0) > 1e-9)
      throw std::invalid_argument("packet: |c+|^2 + |c-|^2 must equal 1, got " +
                                  std::to_string(w));
    std::vector<std::string> warnings;
    if (!(std::abs(p0) > 3.0 * sigma_p))
      warnings.push_back("packet: |p0| <= 3 sigma_p, mass near the p = 0 exclusion is not negligible");
    return warnings;
  }
};

/// Normalised Gaussian amplitude, |G|^2 has standard deviation sigma.
inline double gaussian_amplitude(double p, double p0, double sigma) {
  const double d = p - p0;
  return std::pow(2.0 * kPi * sigma * sigma, -0.25) * std::exp(-d * d / (4.0 * sigma * sigma));
}

/// psi(p) = sum_l c_l G(p; p0, sigma_p) exp(-i p x0) phi_{l s}(p), renormalised on the grid.
inline GridSpinorField build_packet(const PacketSpec& spec, const GridPtr& grid) {
  spec.validate();
  const double reach = std::abs(spec.p0) + 6.0 * spec.sigma_p;
  if (grid->p_max() < reach)
    throw std::invalid_argument("packet: grid p_max = " + std::to_string(grid->p_max()) +
                                " does not cover |p0| + 6 sigma_p = " + std::to_string(reach));
  auto psi = GridSpinorField::sample(grid, [&](double p) {
    const Complex env = gaussian_amplitude(p, spec.p0, spec.sigma_p) * std::polar(1.0, -p * spec.x0);
    Spinor4 v = Spinor4::Zero();
    if (spec.c_plus != 0.0)
      v += spec.c_plus * energy_spinor(KinematicPoint(spec.m, p, Branch::Positive, spec.s));
    if (spec.c_minus != 0.0)
      v += spec.c_minus * energy_spinor(KinematicPoint(spec.m, p, Branch::Negative, spec.s));
    return Spinor4(env * v);
  });
  psi *= 1.0 / norm(psi);
  return psi;
}

/// exp(-i H(p) t) node by node: cos(E t) - i sin(E t) H / E.
inline GridSpinorField evolve(const GridSpinorField& psi, double m, double t) {
  if (t == 0.0) return psi;
  GridSpinorField out(psi.grid);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double p = psi.p(i);
    const double ep = std::hypot(p, m);
    const Spinor4 h = hamiltonian_matrix(p, m) * psi.values[i];
    out.values[i] = std::cos(ep * t) * psi.values[i] - I * (std::sin(ep * t) / ep) * h;
  }
  return out;
}

/// psi(t, x) = sum_i w_i exp(i p_i x) / sqrt(2 pi) psi(t, p_i) at each x.
inline std::vector<Spinor4> position_profile(const GridSpinorField& psi, double m, double t,
                                             const std::vector<double>& xs) {
  const GridSpinorField pt = evolve(psi, m, t);
  std::vector<Spinor4> out(xs.size(), Spinor4::Zero());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    Spinor4 acc = Spinor4::Zero();
    for (std::size_t i = 0; i < pt.size(); ++i)
      acc += (pt.grid->weight(i) * std::polar(1.0, pt.p(i) * xs[k])) * pt.values[i];
    out[k] = acc * kInvSqrt2Pi;
  }
  return out;
}

/// Dirac current J(t) = psi^dagger(t,0) alpha1 psi(t,0).
inline std::vector<double> flux_at_origin(const GridSpinorField& psi, double m,
                                          const std::vector<double>& ts, unsigned threads = 1) {
  const auto& a1 = dirac_basis().alpha[0];
  std::vector<double> j(ts.size());
  parallel_for(ts.size(), threads, [&](std::size_t k) {
    const Spinor4 v = position_profile(psi, m, ts[k], {0.0})[0];
    j[k] = v.dot(a1 * v).real();
  });
  return j;
}

inline std::vector<double> uniform_times(double t_min, double t_max, int n_t) {
  if (n_t < 2) throw std::invalid_argument("need at least two time samples");
  if (!(t_max > t_min)) throw std::invalid_argument("time window must have t_max > t_min");
  std::vector<double> ts(n_t);
  const double dt = (t_max - t_min) / (n_t - 1);
  for (int k = 0; k < n_t; ++k) ts[k] = t_min + k * dt;
  return ts;
}

inline double trapezoid(const std::vector<double>& ts, const std::vector<double>& f) {
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k)
    acc += 0.5 * (ts[k + 1] - ts[k]) * (f[k] + f[k + 1]);
  return acc;
}

/// Sample time of the largest value, refined by a parabola through its neighbours.
inline double peak_time(const std::vector<double>& ts, const std::vector<double>& f) {
  const auto it = std::max_element(f.begin(), f.end());
  const std::size_t k = static_cast<std::size_t>(it - f.begin());
  if (k == 0 || k + 1 >= f.size()) return ts[k];
  const double a = f[k - 1], b = f[k], c = f[k + 1];
  const double denom = a - 2.0 * b + c;
  if (denom == 0.0) return ts[k];
  const double shift = 0.5 * (a - c) / denom;
  return ts[k] + shift * (ts[k + 1] - ts[k]);
}

struct ArrivalDistribution {
  std::vector<double> t;
  std::vector<double> pi_total, pi_pos, pi_neg, pi_interf;
  double normalization = 1.0;  // raw window integral of Pi_total
  double captured_mass = 1.0;  // normalization / ||psi||^2
  std::vector<std::string> warnings;

  double peak() const { return peak_time(t, pi_total); }
};

inline constexpr double kMinCapturedMass = 0.99;

namespace detail {

inline ArrivalDistribution finish_distribution(std::vector<double> ts,
                                               const std::vector<std::array<Complex, 4>>& amp,
                                               double psi_norm2) {
  ArrivalDistribution d;
  const std::size_t n = ts.size();
  d.t = std::move(ts);
  d.pi_total.resize(n);
  d.pi_pos.resize(n);
  d.pi_neg.resize(n);
  d.pi_interf.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = amp[k];
    d.pi_pos[k] = std::norm(a[0]) + std::norm(a[1]);
    d.pi_neg[k] = std::norm(a[2]) + std::norm(a[3]);
    d.pi_interf[k] = 2.0 * (std::conj(a[0]) * a[2] + std::conj(a[1]) * a[3]).real();
    d.pi_total[k] = std::norm(a[0] + a[2]) + std::norm(a[1] + a[3]);
  }
  d.normalization = trapezoid(d.t, d.pi_total);
  d.captured_mass = d.normalization / psi_norm2;
  if (d.normalization > 0.0) {
    for (std::size_t k = 0; k < n; ++k) {
      d.pi_total[k] /= d.normalization;
      d.pi_pos[k] /= d.normalization;
      d.pi_neg[k] /= d.normalization;
      d.pi_interf[k] /= d.normalization;
    }
  }
  if (d.captured_mass < kMinCapturedMass)
    d.warnings.push_back("time window captures only " + std::to_string(d.captured_mass) +
                         " of the arrival probability (< 0.99)");
  return d;
}

}  // namespace detail

/// Arrival-time distribution over a uniform window.  With strip_rest_phase the
/// amplitudes are multiplied by exp(i l m t), removing the rest-mass phase
/// (affects only the interference term).
inline ArrivalDistribution arrival_distribution(const GridSpinorField& psi, double m, double t_min,
                                                double t_max, int n_t, unsigned threads = 1,
                                                bool strip_rest_phase = false) {
  const double n2 = inner_product(psi, psi).real();
  if (std::abs(n2 - 1.0) > 1e-8) throw std::invalid_argument("arrival_distribution: psi must be normalised");
  auto ts = uniform_times(t_min, t_max, n_t);
  const auto c = time_projection_coefficients(psi, m);
  std::vector<std::array<Complex, 4>> amp(ts.size());
  parallel_for(ts.size(), threads, [&](std::size_t k) {
    std::array<Complex, 4> a{};
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const double ep = std::hypot(psi.p(i), m);
      const Complex e_pos = std::polar(1.0, -ep * ts[k]);
      const Complex e_neg = std::conj(e_pos);
      a[0] += c[i][0] * e_pos;
      a[1] += c[i][1] * e_pos;
      a[2] += c[i][2] * e_neg;
      a[3] += c[i][3] * e_neg;
    }
    if (strip_rest_phase) {
      const Complex r = std::polar(1.0, m * ts[k]);
      a[0] *= r;
      a[1] *= r;
      a[2] *= std::conj(r);
      a[3] *= std::conj(r);
    }
    amp[k] = a;
  });
  return detail::finish_distribution(std::move(ts), amp, n2);
}

/// Same construction with the nonrelativistic eigenfunctions
/// (p^2/m^2)^{1/4} zeta_{l s} exp(i l p^2 t / 2m) / sqrt(2 pi).
inline ArrivalDistribution nonrel_arrival_distribution(const GridSpinorField& psi, double m,
                                                       double t_min, double t_max, int n_t,
                                                       unsigned threads = 1) {
  if (!(m > 0.0)) throw std::invalid_argument("nonrelativistic distribution needs m > 0");
  const double n2 = inner_product(psi, psi).real();
  auto ts = uniform_times(t_min, t_max, n_t);
  std::vector<std::array<Complex, 4>> c(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double p = psi.p(i);
    const double w = std::sqrt(std::abs(p) / m) * kInvSqrt2Pi * psi.grid->weight(i);
    for (Branch l : kBranches)
      for (Spin s : kSpins)
        c[i][2 * index_of(l) + index_of(s)] = w * nr_limit_spinor(l, s).dot(psi.values[i]);
  }
  std::vector<std::array<Complex, 4>> amp(ts.size());
  parallel_for(ts.size(), threads, [&](std::size_t k) {
    std::array<Complex, 4> a{};
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const double p = psi.p(i);
      const Complex e_pos = std::polar(1.0, -p * p * ts[k] / (2.0 * m));
      const Complex e_neg = std::conj(e_pos);
      a[0] += c[i][0] * e_pos;
      a[1] += c[i][1] * e_pos;
      a[2] += c[i][2] * e_neg;
      a[3] += c[i][3] * e_neg;
    }
    amp[k] = a;
  });
  return detail::finish_distribution(std::move(ts), amp, n2);
}

/// int |f - g| dt over a shared time axis.
inline double l1_distance(const std::vector<double>& ts, const std::vector<double>& f,
                          const std::vector<double>& g) {
  std::vector<double> d(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) d[k] = std::abs(f[k] - g[k]);
  return trapezoid(ts, d);
}

}  // namespace reltoa
