// Eigenfunction families of the Dirac time-of-arrival operator in the
// momentum representation, with closed-form p-derivatives.
//
//   time-labelled      phi_{t l s}(p) = w(p) phi_{l s}(p) exp(i l E_p t) / sqrt(2 pi)
//   position-labelled  phi_{x l s}(p) = w(p) phi_{l s}(p) exp(-i p x)    / sqrt(2 pi)
//   event-labelled     phi_{x b s}(p) = W(p) xi_{b s}(x; tau(p)) exp(-i p x) / sqrt(2 pi)
//
// with w = [p^2/(p^2+m^2)]^{1/4}, W = [x^2/(x^2+tau^2)]^{1/4}, tau(p) = x m / p.
// Only the time-labelled family has a p-independent eigenvalue; the other two
// satisfy (T phi)(p) = t(p) phi(p) node by node with t(p) = -l E_p x / p = -b t_x(p).
#pragma once

#include "reltoa/operators.hpp"

#include <Eigen/Dense>

namespace reltoa {

enum class EigenFamily { TimeLabeled, PositionLabeled, EventLabeled };

class ToaEigenfunction {
 public:
  EigenFamily family() const { return family_; }
  double mass() const { return m_; }
  /// t for the time-labelled family, x otherwise.
  double label() const { return label_; }
  Branch sign() const { return sign_; }  // lambda, or b for the event family
  Spin spin() const { return s_; }

  Spinor4 value(double p) const {
    check_p(p);
    return amplitude(p) * phase(p);
  }

  Spinor4 derivative(double p) const {
    check_p(p);
    const Complex ph = phase(p);
    switch (family_) {
      case EigenFamily::TimeLabeled:
      case EigenFamily::PositionLabeled: {
        const KinematicPoint k(m_, p, sign_, s_);
        const double ep = k.energy_p();
        const double w = weight(p);
        const double dw = w * m_ * m_ / (2.0 * p * ep * ep);
        const Spinor4 spin = energy_spinor(k);
        const Complex dtheta = family_ == EigenFamily::TimeLabeled
                                   ? Complex(0.0, sign_of(sign_) * p * label_ / ep)
                                   : Complex(0.0, -label_);
        return (dw * spin + w * energy_spinor_dp(k) + w * dtheta * spin) * ph * kInvSqrt2Pi;
      }
      case EigenFamily::EventLabeled: {
        const double x = label_;
        const double tau = x * m_ / p;
        const EventPoint e(x, tau, sign_);
        const double tx2 = x * x + tau * tau;
        const double W = std::pow(x * x / tx2, 0.25);
        const double dW_dtau = -W * tau / (2.0 * tx2);
        const double dtau_dp = -x * m_ / (p * p);
        const Spinor4 xi = event_spinor(e, s_);
        const Spinor4 dxi = event_spinor_dtau(e, s_);
        return ((dW_dtau * xi + W * dxi) * dtau_dp + W * Complex(0.0, -x) * xi) * ph *
               kInvSqrt2Pi;
      }
    }
    return Spinor4::Zero();
  }

  /// Node-wise eigenvalue t(p); constant for the time-labelled family.
  double eigenvalue(double p) const {
    switch (family_) {
      case EigenFamily::TimeLabeled: return label_;
      case EigenFamily::PositionLabeled: return -sign_of(sign_) * std::hypot(p, m_) * label_ / p;
      case EigenFamily::EventLabeled: {
        const double tau = label_ * m_ / p;
        return -sign_of(sign_) * std::hypot(label_, tau);
      }
    }
    return 0.0;
  }

  /// Phase exp(i theta(p)).
  Complex phase(double p) const {
    const double theta = family_ == EigenFamily::TimeLabeled
                             ? sign_of(sign_) * std::hypot(p, m_) * label_
                             : -p * label_;
    return std::polar(1.0, theta);
  }

  /// value(p) / phase(p): the real spinor amplitude including 1/sqrt(2 pi).
  Spinor4 amplitude(double p) const {
    if (family_ == EigenFamily::EventLabeled) {
      const double tau = label_ * m_ / p;
      const double W = std::pow(label_ * label_ / (label_ * label_ + tau * tau), 0.25);
      return W * event_spinor(EventPoint(label_, tau, sign_), s_) * kInvSqrt2Pi;
    }
    return weight(p) * energy_spinor(KinematicPoint(m_, p, sign_, s_)) * kInvSqrt2Pi;
  }

  /// [p^2/(p^2+m^2)]^{1/4}
  double weight(double p) const {
    if (m_ == 0.0) return 1.0;
    return std::sqrt(std::abs(p) / std::hypot(p, m_));
  }

  GridSpinorField sample(const GridPtr& grid) const {
    return GridSpinorField::sample(grid, [this](double p) { return value(p); });
  }
  GridSpinorField sample_derivative(const GridPtr& grid) const {
    return GridSpinorField::sample(grid, [this](double p) { return derivative(p); });
  }

  /// Throws std::out_of_range if the phase advances by more than pi between
  /// adjacent nodes anywhere on the grid.
  void check_resolvable(const MomentumGrid& grid) const {
    const auto& x = grid.nodes();
    auto theta = [this](double p) {
      return family_ == EigenFamily::TimeLabeled ? sign_of(sign_) * std::hypot(p, m_) * label_
                                                 : -p * label_;
    };
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      if (x[i] < 0 && x[i + 1] > 0) continue;
      if (std::abs(theta(x[i + 1]) - theta(x[i])) > kPi)
        throw std::out_of_range("eigenfunction label " + std::to_string(label_) +
                                " is not resolvable on this grid");
    }
  }

  friend ToaEigenfunction build_eigenfunction_t(double, Branch, Spin, double);
  friend ToaEigenfunction build_eigenfunction_x(double, Branch, Spin, double);
  friend ToaEigenfunction build_eigenfunction_xb(double, Branch, Spin, double);

 private:
  ToaEigenfunction(EigenFamily f, double label, Branch sign, Spin s, double m)
      : family_(f), label_(label), sign_(sign), s_(s), m_(m) {
    if (!(m >= 0.0)) throw std::invalid_argument("eigenfunction: mass must be >= 0");
  }
  static void check_p(double p) {
    if (p == 0.0) throw std::invalid_argument("eigenfunction evaluated at p = 0");
  }

  EigenFamily family_;
  double label_;
  Branch sign_;
  Spin s_;
  double m_;
};

inline ToaEigenfunction build_eigenfunction_t(double t, Branch lambda, Spin s, double m) {
  return ToaEigenfunction(EigenFamily::TimeLabeled, t, lambda, s, m);
}

inline ToaEigenfunction build_eigenfunction_x(double x, Branch lambda, Spin s, double m) {
  return ToaEigenfunction(EigenFamily::PositionLabeled, x, lambda, s, m);
}

inline ToaEigenfunction build_eigenfunction_xb(double x, Branch b, Spin s, double m) {
  if (x == 0.0) throw std::invalid_argument("event-labelled eigenfunction needs x != 0");
  return ToaEigenfunction(EigenFamily::EventLabeled, x, b, s, m);
}

/// Branch of the position-labelled function that coincides with the
/// event-labelled one at node p: lambda = b sign(x p).
inline Branch event_to_energy_branch(Branch b, double x, double p) {
  return sgn(x) * sgn(p) > 0 ? b : flip(b);
}

/// Node-wise residual max_i |(T phi)(p_i) - t(p_i) phi(p_i)| / max_i |phi(p_i)|
/// using the closed-form derivative.
inline double pointwise_residual(const ToaEigenfunction& ef, const GridPtr& grid) {
  const GridSpinorField f = ef.sample(grid);
  const GridSpinorField tf = apply_T_dirac(f, ef.sample_derivative(grid), ef.mass());
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double p = f.p(i);
    worst = std::max(worst, (tf.values[i] - ef.eigenvalue(p) * f.values[i]).norm());
    scale = std::max(scale, f.values[i].norm());
  }
  return worst / scale;
}

/// ||T phi - t phi|| / ||phi|| for the time-labelled family (grid quadrature norm).
inline double eigen_residual(const ToaEigenfunction& ef, const GridPtr& grid) {
  const GridSpinorField f = ef.sample(grid);
  GridSpinorField r = apply_T_dirac(f, ef.sample_derivative(grid), ef.mass());
  for (std::size_t i = 0; i < f.size(); ++i) r.values[i] -= ef.eigenvalue(f.p(i)) * f.values[i];
  return norm(r) / norm(f);
}

/// Gram matrix G_ij = <a_i | b_j> under grid quadrature.
inline Eigen::MatrixXcd overlap_scan(const std::vector<ToaEigenfunction>& a,
                                     const std::vector<ToaEigenfunction>& b,
                                     const GridPtr& grid) {
  std::vector<GridSpinorField> fa, fb;
  for (const auto& e : a) fa.push_back(e.sample(grid));
  for (const auto& e : b) fb.push_back(e.sample(grid));
  Eigen::MatrixXcd g(fa.size(), fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i)
    for (std::size_t j = 0; j < fb.size(); ++j) g(i, j) = inner_product(fa[i], fb[j]);
  return g;
}

/// A_{l s}(t_k) = <phi_{t_k l s} | psi> for every sample time.
struct TimeAmplitudes {
  std::vector<double> times;
  // amp[k][2*index_of(lambda) + index_of(s)]
  std::vector<std::array<Complex, 4>> amp;

  Complex at(std::size_t k, Branch l, Spin s) const {
    return amp[k][2 * index_of(l) + index_of(s)];
  }
};

/// Per-node coefficients w_i * conj(amplitude_{l s}(p_i)) . psi(p_i) so that
/// A_{l s}(t) = sum_i coeff_i exp(-i l E_{p_i} t).
inline std::vector<std::array<Complex, 4>> time_projection_coefficients(const GridSpinorField& psi,
                                                                       double m) {
  std::vector<std::array<Complex, 4>> c(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double p = psi.p(i);
    for (Branch l : kBranches)
      for (Spin s : kSpins) {
        const auto ef = build_eigenfunction_t(0.0, l, s, m);
        c[i][2 * index_of(l) + index_of(s)] =
            psi.grid->weight(i) * ef.amplitude(p).dot(psi.values[i]);
      }
  }
  return c;
}

inline TimeAmplitudes time_amplitudes(const GridSpinorField& psi, double m,
                                      const std::vector<double>& times) {
  const auto c = time_projection_coefficients(psi, m);
  TimeAmplitudes out{times, std::vector<std::array<Complex, 4>>(times.size())};
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::array<Complex, 4> a{};
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const double ep = std::hypot(psi.p(i), m);
      const Complex e_pos = std::polar(1.0, -ep * times[k]);
      const Complex e_neg = std::conj(e_pos);
      a[0] += c[i][0] * e_pos;
      a[1] += c[i][1] * e_pos;
      a[2] += c[i][2] * e_neg;
      a[3] += c[i][3] * e_neg;
    }
    out.amp[k] = a;
  }
  return out;
}

/// sum_{l s} sum_k dt_k phi_{t_k l s}(p) A_{l s}(t_k): resynthesis from a
/// t-lattice with quadrature weights dt.
inline GridSpinorField resynthesize(const TimeAmplitudes& a, const std::vector<double>& dt,
                                    const GridPtr& grid, double m) {
  GridSpinorField out(grid);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double p = grid->node(i);
    const double ep = std::hypot(p, m);
    for (Branch l : kBranches)
      for (Spin s : kSpins) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < a.times.size(); ++k)
          acc += dt[k] * a.at(k, l, s) * std::polar(1.0, sign_of(l) * ep * a.times[k]);
        out.values[i] += acc * build_eigenfunction_t(0.0, l, s, m).amplitude(p);
      }
  }
  return out;
}

}  // namespace reltoa
