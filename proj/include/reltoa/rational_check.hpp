// Exact-rational cross-check of the position/event eigenvalue labels on
// scaled Pythagorean triples (m, p, E).
#pragma once

#include <boost/rational.hpp>

#include <array>
#include <string>
#include <vector>

namespace reltoa::rational_check {

using Q = boost::rational<long long>;

struct Triple {
  long long m, p, e;
};

inline std::vector<Triple> triples() {
  std::vector<Triple> out;
  for (auto [a, b, c] : {std::array<long long, 3>{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}})
    for (long long k : {1LL, 2LL, 3LL}) {
      out.push_back({k * a, k * b, k * c});
      out.push_back({k * b, k * a, k * c});
    }
  return out;
}

inline Q abs(Q q) { return q < 0 ? -q : q; }
inline int sign(Q q) { return q < 0 ? -1 : 1; }

struct Result {
  int checked = 0;
  std::vector<std::string> failures;
};

/// For every triple, x in a rational set, both momentum signs and both
/// branches: tau = x m / p, t_x = |x| E / |p|, t_x^2 = x^2 + tau^2, and the
/// position-family label -lambda x E / p equals -b t_x with b = lambda sign(x p).
inline Result check() {
  Result r;
  const std::vector<Q> xs{Q(3), Q(-3), Q(1, 2), Q(-7, 3), Q(11, 4)};
  for (const auto& t : triples())
    for (int ps : {1, -1})
      for (int lambda : {1, -1})
        for (const Q& x : xs) {
          const Q m(t.m), p(ps * t.p), e(t.e);
          if (e * e != p * p + m * m) r.failures.push_back("not a triple");
          const Q tau = x * m / p;
          const Q tx = abs(x) * e / abs(p);
          const int b = lambda * sign(x) * sign(p);
          const Q lhs = -Q(lambda) * x * e / p;
          const Q rhs = -Q(b) * tx;
          ++r.checked;
          if (tx * tx != x * x + tau * tau) r.failures.push_back("t_x^2 != x^2 + tau^2");
          if (lhs != rhs) r.failures.push_back("-lambda x E/p != -b t_x");
        }
  return r;
}

}  // namespace reltoa::rational_check
