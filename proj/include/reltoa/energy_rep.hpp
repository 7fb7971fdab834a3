// Energy representation on the spectrum (-inf, -m) U (m, inf).
//
// The grid is induced from the positive half of the momentum grid by
// E = lambda E_p, with weights rescaled by |dE/dp| = |p|/E_p; no
// re-interpolation.  Because p and -p share the same energy, every node
// carries four channels: (direction sign(p)) x (spin s).
#pragma once

#include "reltoa/operators.hpp"

#include <array>
#include <functional>
#include <utility>

namespace reltoa {

class BoundaryConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Channel index for (direction, spin); direction +1 means p > 0.
constexpr int energy_channel(int direction, Spin s) {
  return 2 * (direction > 0 ? 0 : 1) + index_of(s);
}

struct EnergyGridFunction {
  GridPtr grid;
  double mass = 1.0;
  Branch branch = Branch::Positive;
  std::vector<double> energies;  // lambda E_p at the positive-side nodes, in grid order
  std::vector<double> weights;   // dE quadrature weights
  std::vector<std::array<Complex, 4>> values;

  EnergyGridFunction() = default;
  EnergyGridFunction(GridPtr g, double m, Branch b) : grid(std::move(g)), mass(m), branch(b) {
    if (!(m > 0.0))
      throw std::invalid_argument("energy representation needs m > 0 (degenerate at m = 0)");
    const int n = grid->per_side();
    energies.resize(n);
    weights.resize(n);
    values.assign(n, {});
    for (int j = 0; j < n; ++j) {
      const double p = grid->node(n + j);
      const double ep = std::hypot(p, m);
      energies[j] = sign_of(b) * ep;
      weights[j] = grid->weight(n + j) * p / ep;
    }
  }

  using Sampler = std::function<Complex(double energy, int direction, Spin s)>;
  static EnergyGridFunction sample(GridPtr g, double m, Branch b, const Sampler& fn) {
    EnergyGridFunction out(std::move(g), m, b);
    for (std::size_t j = 0; j < out.size(); ++j)
      for (int dir : {+1, -1})
        for (Spin s : kSpins) out.values[j][energy_channel(dir, s)] = fn(out.energies[j], dir, s);
    return out;
  }

  std::size_t size() const { return energies.size(); }
  /// Momentum |p| of node j.
  double momentum(std::size_t j) const { return grid->node(grid->per_side() + j); }
};

inline Complex inner_product(const EnergyGridFunction& a, const EnergyGridFunction& b) {
  if (a.grid != b.grid || a.branch != b.branch || a.mass != b.mass)
    throw std::invalid_argument("energy functions live on different grids");
  Complex acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    Complex s = 0.0;
    for (int c = 0; c < 4; ++c) s += std::conj(a.values[j][c]) * b.values[j][c];
    acc += a.weights[j] * s;
  }
  return acc;
}

inline double norm(const EnergyGridFunction& g) { return std::sqrt(inner_product(g, g).real()); }

using EnergyRepresentation = std::pair<EnergyGridFunction, EnergyGridFunction>;  // (E>m, E<-m)

/// Project onto phi_{lambda s}(p) and rescale by [E^2/(E^2-m^2)]^{1/4} = sqrt(E_p/|p|).
inline EnergyRepresentation to_energy_rep(const GridSpinorField& f, double m) {
  EnergyRepresentation out{EnergyGridFunction(f.grid, m, Branch::Positive),
                           EnergyGridFunction(f.grid, m, Branch::Negative)};
  const int n = f.grid->per_side();
  for (int j = 0; j < n; ++j) {
    for (int dir : {+1, -1}) {
      const std::size_t i = dir > 0 ? n + j : n - 1 - j;
      const double p = f.p(i);
      const double scale = std::sqrt(std::hypot(p, m) / std::abs(p));
      for (Branch l : kBranches) {
        auto& g = l == Branch::Positive ? out.first : out.second;
        for (Spin s : kSpins) {
          const Spinor4 phi = energy_spinor(KinematicPoint(m, p, l, s));
          g.values[j][energy_channel(dir, s)] = scale * phi.dot(f.values[i]);
        }
      }
    }
  }
  return out;
}

/// Inverse of to_energy_rep.
inline GridSpinorField from_energy_rep(const EnergyRepresentation& rep) {
  const auto& grid = rep.first.grid;
  const double m = rep.first.mass;
  GridSpinorField f(grid);
  const int n = grid->per_side();
  for (int j = 0; j < n; ++j) {
    for (int dir : {+1, -1}) {
      const std::size_t i = dir > 0 ? n + j : n - 1 - j;
      const double p = f.p(i);
      const double scale = std::sqrt(std::abs(p) / std::hypot(p, m));
      for (Branch l : kBranches) {
        const auto& g = l == Branch::Positive ? rep.first : rep.second;
        for (Spin s : kSpins)
          f.values[i] += scale * g.values[j][energy_channel(dir, s)] *
                         energy_spinor(KinematicPoint(m, p, l, s));
      }
    }
  }
  return f;
}

/// Largest |g| extrapolated to the spectrum edge E = lambda m, from a cubic
/// through the four nodes nearest the edge.
inline double edge_value(const EnergyGridFunction& g) {
  const std::size_t k = std::min<std::size_t>(4, g.size());
  std::vector<double> e(g.energies.begin(), g.energies.begin() + k);
  const auto l = quad::lagrange_weights(sign_of(g.branch) * g.mass, e);
  double worst = 0.0;
  for (int c = 0; c < 4; ++c) {
    Complex v = 0.0;
    for (std::size_t j = 0; j < k; ++j) v += l[j] * g.values[j][c];
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

inline constexpr double kBoundaryTolerance = 1e-6;

/// Throws BoundaryConditionError unless g(+-m) = 0 within tol * ||g||.
inline void check_boundary(const EnergyGridFunction& g, double tol = kBoundaryTolerance) {
  const double edge = edge_value(g);
  const double nrm = norm(g);
  if (edge > tol * nrm) {
    throw BoundaryConditionError(
        "boundary condition phi(" + std::string(g.branch == Branch::Positive ? "+" : "-") +
        "m) = 0 violated: |g(edge)| = " + std::to_string(edge) + " > " + std::to_string(tol) +
        " * ||g|| = " + std::to_string(tol * nrm));
  }
}

/// -i d/dE on one branch; d/dE = (E_p / (lambda p)) d/dp along the induced nodes.
inline EnergyGridFunction T_energy_rep(const EnergyGridFunction& g,
                                       DerivativeScheme scheme = DerivativeScheme::Spectral,
                                       bool enforce_boundary = true) {
  if (enforce_boundary) check_boundary(g);
  const auto& grid = *g.grid;
  const int n = grid.per_side();
  EnergyGridFunction out = g;
  for (int c = 0; c < 4; ++c) {
    std::vector<Complex> full(grid.size());
    for (int j = 0; j < n; ++j) {
      full[n + j] = g.values[j][c];
      full[n - 1 - j] = g.values[j][c];
    }
    const auto dfull = grid.differentiate(full, scheme);
    for (int j = 0; j < n; ++j) {
      const double p = g.momentum(j);
      const double de_dp = sign_of(g.branch) * p / std::hypot(p, g.mass);
      out.values[j][c] = -I * dfull[n + j] / de_dp;
    }
  }
  return out;
}

/// <g1|T g2> - <T g1|g2>; vanishes for a symmetric operator.
inline Complex symmetry_defect(const EnergyGridFunction& g1, const EnergyGridFunction& g2,
                               DerivativeScheme scheme = DerivativeScheme::Spectral) {
  const auto t1 = T_energy_rep(g1, scheme);
  const auto t2 = T_energy_rep(g2, scheme);
  return inner_product(g1, t2) - inner_product(t1, g2);
}

/// sum_lambda int_{p>0} h(lambda E_p) (p / E_p) dp on the grid: the
/// momentum-side of dE = p dp / E.
inline double spectrum_integral(const MomentumGrid& grid, double m,
                                const std::function<double(double)>& h) {
  const int n = grid.per_side();
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double p = grid.node(n + j);
    const double ep = std::hypot(p, m);
    acc += grid.weight(n + j) * (h(ep) + h(-ep)) * p / ep;
  }
  return acc;
}

}  // namespace reltoa
