// Scalar, vector and matrix types shared by the whole library.
//
// Natural units throughout: hbar = c = 1, the rest mass m sets the scale.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace reltoa {

using Complex = std::complex<double>;
using CVec2 = Eigen::Matrix<Complex, 2, 1>;
using Spinor4 = Eigen::Matrix<Complex, 4, 1>;
using CMat2 = Eigen::Matrix<Complex, 2, 2>;
using CMat4 = Eigen::Matrix<Complex, 4, 4>;

inline constexpr Complex I{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;
inline const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

/// Energy branch lambda (or the event sign b): +1 or -1.
enum class Branch : int { Positive = +1, Negative = -1 };

/// Spin label s = +1/2 or -1/2.
enum class Spin : int { Up = +1, Down = -1 };

constexpr double sign_of(Branch b) { return static_cast<int>(b); }
constexpr double value_of(Spin s) { return 0.5 * static_cast<int>(s); }
constexpr Branch flip(Branch b) {
  return b == Branch::Positive ? Branch::Negative : Branch::Positive;
}
constexpr int index_of(Branch b) { return b == Branch::Positive ? 0 : 1; }
constexpr int index_of(Spin s) { return s == Spin::Up ? 0 : 1; }

inline constexpr Branch kBranches[] = {Branch::Positive, Branch::Negative};
inline constexpr Spin kSpins[] = {Spin::Up, Spin::Down};

inline Branch branch_from_sign(double v) {
  return v < 0 ? Branch::Negative : Branch::Positive;
}

inline Spin spin_from_value(double s) {
  if (s == 0.5) return Spin::Up;
  if (s == -0.5) return Spin::Down;
  throw std::invalid_argument("spin label must be +1/2 or -1/2, got " +
                              std::to_string(s));
}

/// sign(x) with sign(0) = +1.
inline double sgn(double x) { return x < 0 ? -1.0 : 1.0; }

/// Hermitian inner product sum conj(a_i) b_i.
template <typename A, typename B>
Complex dot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a.dot(b);  // Eigen conjugates the left argument
}

}  // namespace reltoa
