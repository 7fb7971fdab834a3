// Closed-form Dirac matrices and spinors for motion along the x axis.
//
// All spinors here share one algebraic shape,
//
//     sqrt((mu + lambda*eps) / (2 lambda eps)) * ( eta_s ; sigma1 k / (mu + lambda*eps) eta_s ),
//     eps = sqrt(k^2 + mu^2),
//
// with (k, mu) = (p, m) for energy spinors and (k, mu) = (x, tau) for event
// spinors.  The square root is evaluated in a cancellation-free form and the
// lambda = -1 sign is carried into the lower components, so every entry is real
// for real eta_s.
#pragma once

#include "reltoa/types.hpp"

#include <array>
#include <utility>

namespace reltoa {

struct DiracBasis {
  std::array<CMat4, 4> gamma;  // gamma^0 .. gamma^3, Dirac representation
  std::array<CMat4, 3> alpha;  // alpha_i = beta gamma^i
  CMat4 beta;                  // gamma^0
  CMat2 sigma1;
  CMat4 Sigma1;  // diag(sigma1, sigma1)
};

namespace detail {

inline CMat2 pauli(int i) {
  CMat2 s = CMat2::Zero();
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: s = CMat2::Identity();
  }
  return s;
}

inline DiracBasis make_dirac_basis() {
  DiracBasis d;
  d.beta = CMat4::Zero();
  d.beta.topLeftCorner<2, 2>() = CMat2::Identity();
  d.beta.bottomRightCorner<2, 2>() = -CMat2::Identity();
  d.gamma[0] = d.beta;
  for (int i = 1; i <= 3; ++i) {
    CMat4 g = CMat4::Zero();
    g.topRightCorner<2, 2>() = pauli(i);
    g.bottomLeftCorner<2, 2>() = -pauli(i);
    d.gamma[i] = g;
    d.alpha[i - 1] = d.beta * g;
  }
  d.sigma1 = pauli(1);
  d.Sigma1 = CMat4::Zero();
  d.Sigma1.topLeftCorner<2, 2>() = d.sigma1;
  d.Sigma1.bottomRightCorner<2, 2>() = d.sigma1;
  return d;
}

}  // namespace detail

inline const DiracBasis& dirac_basis() {
  static const DiracBasis basis = detail::make_dirac_basis();
  return basis;
}

/// Metric g^{mu nu} = diag(1, -1, -1, -1).
constexpr double metric(int mu, int nu) {
  if (mu != nu) return 0.0;
  return mu == 0 ? 1.0 : -1.0;
}

/// H(p) = alpha1 p + beta m.
inline CMat4 hamiltonian_matrix(double p, double m) {
  const auto& d = dirac_basis();
  return d.alpha[0] * p + d.beta * m;
}

/// Momentum-space label (m, p, lambda, s) of a Hamiltonian eigenstate.
struct KinematicPoint {
  double m = 1.0;
  double p = 1.0;
  Branch lambda = Branch::Positive;
  Spin s = Spin::Up;

  KinematicPoint() = default;
  KinematicPoint(double mass, double momentum, Branch l, Spin spin)
      : m(mass), p(momentum), lambda(l), s(spin) {
    if (!(m >= 0.0)) throw std::invalid_argument("mass must be >= 0");
    if (p == 0.0) throw std::invalid_argument("momentum must be nonzero");
  }

  double energy_p() const { return std::hypot(p, m); }
  double energy() const { return sign_of(lambda) * energy_p(); }
};

/// Event label (x, tau, b): position, proper time-of-arrival, sign.
struct EventPoint {
  double x = 1.0;
  double tau = 0.0;
  Branch b = Branch::Positive;

  EventPoint() = default;
  EventPoint(double pos, double proper_time, Branch sign)
      : x(pos), tau(proper_time), b(sign) {}

  double t_x() const { return std::hypot(x, tau); }
  /// Eigenvalue label t = b t_x of the dual equation.
  double t() const { return sign_of(b) * t_x(); }
};

/// eta_s: sigma1 eigenvector with eigenvalue 2s.
inline CVec2 helicity_spinor(Spin s) {
  const double r = 1.0 / std::sqrt(2.0);
  CVec2 eta;
  eta << r, (s == Spin::Up ? r : -r);
  return eta;
}

/// Upper/lower coefficients of a shell spinor, (U eta ; L sigma1 eta), and
/// their partial derivatives with respect to k and mu.
struct ShellCoefficients {
  double upper = 0, lower = 0;
  double upper_dk = 0, lower_dk = 0;
  double upper_dmu = 0, lower_dmu = 0;
};

inline ShellCoefficients shell_coefficients(double k, double mu, Branch lambda) {
  const double l = sign_of(lambda);
  const double eps = std::hypot(k, mu);
  if (eps == 0.0) throw std::invalid_argument("degenerate shell point k = mu = 0");
  const double q = l * mu;
  ShellCoefficients c;
  const double two_eps_32 = std::pow(2.0 * eps, 1.5);
  const double eps3 = eps * eps * eps;
  if (q >= 0.0) {
    const double root = std::sqrt(2.0 * eps * (eps + q));
    c.upper = std::sqrt((eps + q) / (2.0 * eps));
    c.lower = l * k / root;
    c.upper_dk = -q * k / (4.0 * c.upper * eps3);
    c.lower_dk = l * q * std::sqrt(eps + q) / (eps * two_eps_32);
    c.upper_dmu = l * k * k / (4.0 * eps3 * c.upper);
    c.lower_dmu = -0.5 * l * k / (root * root * root) *
                  (4.0 * mu + 2.0 * l * (eps * eps + mu * mu) / eps);
  } else {
    if (k == 0.0)
      throw std::invalid_argument("shell spinor is 0/0 at k = 0 on the opposite branch");
    const double root = std::sqrt(2.0 * eps * (eps - q));
    const double lo = std::sqrt((eps - q) / (2.0 * eps));
    c.upper = std::abs(k) / root;
    c.lower = l * sgn(k) * lo;
    c.upper_dk = sgn(k) * (-q) * std::sqrt(eps - q) / (eps * two_eps_32);
    c.lower_dk = l * sgn(k) * q * k / (4.0 * eps3 * lo);
    c.upper_dmu = -0.5 * std::abs(k) / (root * root * root) *
                  (4.0 * mu - 2.0 * l * (eps * eps + mu * mu) / eps);
    c.lower_dmu = -sgn(k) * k * k / (4.0 * eps3 * lo);
  }
  return c;
}

/// (a eta_s ; b sigma1 eta_s)
inline Spinor4 assemble_spinor(double a, double b, Spin s) {
  const CVec2 eta = helicity_spinor(s);
  const double sig = 2.0 * value_of(s);  // sigma1 eta_s = 2s eta_s
  Spinor4 out;
  out << a * eta, b * sig * eta;
  return out;
}

/// phi_{lambda s}(p): eigenvector of alpha1 p + beta m with eigenvalue lambda E_p.
inline Spinor4 energy_spinor(const KinematicPoint& k) {
  if (!(k.m >= 0.0)) throw std::invalid_argument("energy_spinor: mass must be >= 0");
  if (k.p == 0.0) throw std::invalid_argument("energy_spinor: p = 0 is excluded");
  const auto c = shell_coefficients(k.p, k.m, k.lambda);
  return assemble_spinor(c.upper, c.lower, k.s);
}

/// d phi_{lambda s} / dp at fixed m.
inline Spinor4 energy_spinor_dp(const KinematicPoint& k) {
  if (!(k.m >= 0.0)) throw std::invalid_argument("energy_spinor_dp: mass must be >= 0");
  if (k.p == 0.0) throw std::invalid_argument("energy_spinor_dp: p = 0 is excluded");
  const auto c = shell_coefficients(k.p, k.m, k.lambda);
  return assemble_spinor(c.upper_dk, c.lower_dk, k.s);
}

/// xi_{bs}(x) at proper time tau, the event-space counterpart of energy_spinor.
inline Spinor4 event_spinor(const EventPoint& e, Spin s) {
  if (e.t_x() == 0.0) throw std::invalid_argument("event_spinor: t_x = 0 (x = tau = 0)");
  const auto c = shell_coefficients(e.x, e.tau, e.b);
  return assemble_spinor(c.upper, c.lower, s);
}

/// d xi_{bs} / d tau at fixed x.
inline Spinor4 event_spinor_dtau(const EventPoint& e, Spin s) {
  if (e.t_x() == 0.0) throw std::invalid_argument("event_spinor_dtau: t_x = 0");
  const auto c = shell_coefficients(e.x, e.tau, e.b);
  return assemble_spinor(c.upper_dmu, c.lower_dmu, s);
}

/// u(p,s) = phi_{+s}(p) and w(p,s) = sqrt((m+E)/(2E)) (sigma1 p/(m+E) eta ; eta).
inline std::pair<Spinor4, Spinor4> uw_spinors(const KinematicPoint& k) {
  if (!(k.m > 0.0)) throw std::invalid_argument("uw_spinors: mass must be > 0");
  if (k.p == 0.0) throw std::invalid_argument("uw_spinors: p = 0 is excluded");
  const auto c = shell_coefficients(k.p, k.m, Branch::Positive);
  const CVec2 eta = helicity_spinor(k.s);
  Spinor4 w;
  w << c.lower * (dirac_basis().sigma1 * eta), c.upper * eta;
  return {assemble_spinor(c.upper, c.lower, k.s), w};
}

/// zeta_{lambda s}: (eta_s ; 0) for lambda = +1, (0 ; eta_s) for lambda = -1.
inline Spinor4 nr_limit_spinor(Branch lambda, Spin s) {
  const CVec2 eta = helicity_spinor(s);
  Spinor4 z = Spinor4::Zero();
  if (lambda == Branch::Positive)
    z.head<2>() = eta;
  else
    z.tail<2>() = eta;
  return z;
}

}  // namespace reltoa
