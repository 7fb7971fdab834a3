// Momentum-representation operators: H, the Dirac time-of-arrival operator
// and its nonrelativistic (proper-time) counterpart, plus the quadrature
// inner product.
//
// Position acts as x = i d/dp (from <x|p> = exp(ipx)/sqrt(2 pi)), so
//
//   T_Dirac f = (1/p) H(p) (-i f') + i beta m f / (2 p^2)
//   T_non   f = -i m f' / p + i m f / (2 p^2)
#pragma once

#include "reltoa/grid.hpp"
#include "reltoa/spinor.hpp"

#include <optional>

namespace reltoa {

inline Complex inner_product(const GridSpinorField& f, const GridSpinorField& g) {
  f.check_same(g);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    acc += f.grid->weight(i) * f.values[i].dot(g.values[i]);
  return acc;
}

inline double norm(const GridSpinorField& f) { return std::sqrt(inner_product(f, f).real()); }

inline GridSpinorField apply_hamiltonian(const GridSpinorField& f, double m) {
  GridSpinorField out(f.grid);
  const auto& d = dirac_basis();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double p = f.p(i);
    out.values[i] = p * (d.alpha[0] * f.values[i]) + m * (d.beta * f.values[i]);
  }
  return out;
}

namespace detail {

inline GridSpinorField derivative_of(const GridSpinorField& f) {
  if (f.grid->scheme() == DerivativeScheme::Analytic)
    throw std::invalid_argument("grid scheme is analytic: supply the derivative field");
  GridSpinorField df(f.grid, f.grid->differentiate(f.values));
  if (f.grid->scheme() != DerivativeScheme::Spectral)
    df.degraded_nodes = f.grid->one_sided_nodes().size();
  return df;
}

}  // namespace detail

/// T_Dirac f using the supplied derivative values df = f'.
inline GridSpinorField apply_T_dirac(const GridSpinorField& f, const GridSpinorField& df,
                                     double m) {
  f.check_same(df);
  const auto& d = dirac_basis();
  GridSpinorField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double p = f.p(i);
    const Spinor4 h_df = p * (d.alpha[0] * df.values[i]) + m * (d.beta * df.values[i]);
    out.values[i] = (-I / p) * h_df + (I * m / (2.0 * p * p)) * (d.beta * f.values[i]);
  }
  out.degraded_nodes = df.degraded_nodes;
  return out;
}

/// T_Dirac f with the derivative taken by the grid's scheme.
inline GridSpinorField apply_T_dirac(const GridSpinorField& f, double m) {
  return apply_T_dirac(f, detail::derivative_of(f), m);
}

inline GridSpinorField apply_T_nonrel(const GridSpinorField& f, const GridSpinorField& df,
                                      double m) {
  f.check_same(df);
  GridSpinorField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double p = f.p(i);
    out.values[i] = (-I * m / p) * df.values[i] + (I * m / (2.0 * p * p)) * f.values[i];
  }
  out.degraded_nodes = df.degraded_nodes;
  return out;
}

inline GridSpinorField apply_T_nonrel(const GridSpinorField& f, double m) {
  return apply_T_nonrel(f, detail::derivative_of(f), m);
}

/// ||([T, H] + i) f|| / ||f||; zero for the canonical pair.
///
/// With `df` given, d(Hf)/dp = alpha1 f + H f' is formed analytically;
/// otherwise Hf is differentiated by the grid scheme.
inline double commutator_residual(const GridSpinorField& f, double m,
                                  const std::optional<GridSpinorField>& df = std::nullopt) {
  const double nf = norm(f);
  if (!(nf > 0.0)) throw std::invalid_argument("commutator_residual: zero field");
  const GridSpinorField hf = apply_hamiltonian(f, m);
  GridSpinorField t_hf, h_tf;
  if (df) {
    const auto& d = dirac_basis();
    GridSpinorField dhf = apply_hamiltonian(*df, m);
    for (std::size_t i = 0; i < f.size(); ++i) dhf.values[i] += d.alpha[0] * f.values[i];
    t_hf = apply_T_dirac(hf, dhf, m);
    h_tf = apply_hamiltonian(apply_T_dirac(f, *df, m), m);
  } else {
    t_hf = apply_T_dirac(hf, m);
    h_tf = apply_hamiltonian(apply_T_dirac(f, m), m);
  }
  GridSpinorField r = t_hf - h_tf;
  for (std::size_t i = 0; i < f.size(); ++i) r.values[i] += I * f.values[i];
  return norm(r) / nf;
}

}  // namespace reltoa
