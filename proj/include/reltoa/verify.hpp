// The invariant suite behind `reltoa verify`: one record per check.
#pragma once

#include "reltoa/config.hpp"
#include "reltoa/energy_rep.hpp"
#include "reltoa/limits.hpp"
#include "reltoa/rational_check.hpp"

#include <functional>
#include <random>

namespace reltoa {

struct CheckRecord {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

namespace detail {

inline CheckRecord make_check(std::string name, double residual, double tol) {
  return {std::move(name), residual, tol, std::isfinite(residual) && residual <= tol};
}

inline GridSpinorField verify_bump(const GridPtr& g) {
  const double span = g->p_max() - g->p_min();
  const double c = g->p_min() + 0.2 * span, w = 0.03 * span;
  return GridSpinorField::sample(g, [=](double p) {
    const double e = std::exp(-(p - c) * (p - c) / (2.0 * w * w));
    Spinor4 v;
    v << e, 0.5 * e, Complex(0.3, 0.2) * e, -e;
    return v;
  });
}

inline double max_cmat(const CMat4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace detail

inline std::vector<CheckRecord> run_checks(const RunConfig& cfg, unsigned threads = 1) {
  using detail::make_check;
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& d = dirac_basis();
  const double m = cfg.mass;
  const double me = m > 0.0 ? m : 1.0;  // energy-representation checks need m > 0
  const auto grid = cfg.make_grid();
  // a group that throws is reported as one failed record instead of aborting the run
  auto section = [&out](const char* group, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception&) {
      out.push_back({std::string(group) + "_error", std::numeric_limits<double>::infinity(), 0.0, false});
    }
  };

  // --- spinor core
  section("algebra", [&] {
    double r = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        r = std::max(r, detail::max_cmat(d.gamma[mu] * d.gamma[nu] + d.gamma[nu] * d.gamma[mu] -
                                         2.0 * metric(mu, nu) * CMat4::Identity()));
    out.push_back(make_check("clifford_anticommutators", r, 1e-15));
    const CMat4& a1 = d.alpha[0];
    r = std::max({detail::max_cmat(a1 - a1.adjoint()), detail::max_cmat(d.beta - d.beta.adjoint()),
                  detail::max_cmat(a1 * a1 - CMat4::Identity()),
                  detail::max_cmat(d.beta * d.beta - CMat4::Identity()),
                  detail::max_cmat(a1 * d.beta + d.beta * a1)});
    out.push_back(make_check("alpha_beta_hermitian_involutive", r, 1e-15));
  });
  section("spinors", [&] {
    double norm_r = 0.0, eig_r = 0.0, orth_r = 0.0, w_r = 0.0, dual_r = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double mm = 5.0 * unit(rng), p = (unit(rng) < 0.5 ? -1 : 1) * (1e-3 + 20.0 * unit(rng));
      const CMat4 h = hamiltonian_matrix(p, mm);
      CMat4 proj = CMat4::Zero();
      std::vector<Spinor4> basis;
      for (Branch l : kBranches)
        for (Spin s : kSpins) {
          const KinematicPoint k(mm, p, l, s);
          const Spinor4 phi = energy_spinor(k);
          norm_r = std::max(norm_r, std::abs(phi.norm() - 1.0));
          eig_r = std::max(eig_r, (h * phi - k.energy() * phi).norm());
          proj += phi * phi.adjoint();
          basis.push_back(phi);
          const Spinor4 xi = event_spinor(EventPoint(p, mm, l), s);  // (x, tau) = (p, m)
          norm_r = std::max(norm_r, std::abs(xi.norm() - 1.0));
          dual_r = std::max(dual_r, (xi - phi).norm());
        }
      orth_r = std::max(orth_r, detail::max_cmat(proj - CMat4::Identity()));
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
          orth_r = std::max(orth_r, std::abs(std::abs(basis[a].dot(basis[b])) - (a == b ? 1.0 : 0.0)));
      if (mm > 0.0)
        for (Spin s : kSpins) {
          const auto [u, w] = uw_spinors(KinematicPoint(mm, p, Branch::Positive, s));
          const Spinor4 rhs = sgn(p) * (d.Sigma1 * energy_spinor(KinematicPoint(mm, -p, Branch::Negative, s)));
          w_r = std::max(w_r, (w - rhs).cwiseAbs().maxCoeff());
        }
    }
    out.push_back(make_check("spinor_unit_norm", norm_r, 1e-13));
    out.push_back(make_check("spinor_hamiltonian_eigen", eig_r, 1e-12));
    out.push_back(make_check("spinor_orthonormal_complete", orth_r, 1e-13));
    out.push_back(make_check("w_relation", w_r, 1e-14));
    out.push_back(make_check("event_spinor_duality", dual_r, 1e-12));
  });

  // --- grid and operators
  section("grid", [&] {
    double side = 0.0, odd = 0.0, gauss = 0.0;
    const int n = grid->per_side();
    for (std::size_t i = 0; i < grid->size(); ++i) {
      if (static_cast<int>(i) >= n) side += grid->weight(i);
      odd += grid->weight(i) * grid->node(i);
      gauss += grid->weight(i) * std::exp(-grid->node(i) * grid->node(i));
    }
    const double span = grid->p_max() - grid->p_min();
    out.push_back(make_check("grid_weight_sum", std::abs(side - span) / span, 1e-12));
    out.push_back(make_check("grid_odd_integral", std::abs(odd), 1e-12));
    const double exact = std::sqrt(kPi) * (std::erf(grid->p_max()) - std::erf(grid->p_min()));
    out.push_back(make_check("grid_gaussian_integral", std::abs(gauss - exact), 1e-10));
  });
  section("commutator", [&] {
    const int k = cfg.grid.deriv_order;
    const int n = cfg.grid.n_points;
    std::vector<double> ns, rs;
    for (int nn : {std::max(8, n / 4), std::max(8, n / 2), n}) {
      const auto g = build_grid(cfg.grid.p_min, cfg.grid.p_max, nn, k, cfg.grid.panels);
      ns.push_back(nn);
      rs.push_back(commutator_residual(detail::verify_bump(g), m));
    }
    out.push_back(make_check("commutator_residual_config_grid", rs.back(), 1e-2));
    out.push_back(make_check("commutator_convergence_order", std::abs(-fit_loglog_slope(ns, rs) - k), 0.5));
    double r = 0.0;
    for (double t : {-3.0, 0.0, 2.0})
      for (Branch l : kBranches) {
        const auto ef = build_eigenfunction_t(t, l, Spin::Up, m);
        r = std::max(r, commutator_residual(ef.sample(grid), m, ef.sample_derivative(grid)));
      }
    out.push_back(make_check("commutator_analytic_time_eigenfunctions", r, 1e-9));
  });

  // --- eigensystem
  section("eigenfunctions", [&] {
    double r15 = 0.0, r16 = 0.0, r17 = 0.0, map_r = 0.0;
    for (double mm : {0.0, 0.5, 1.0, 3.0}) {
      for (int t = -5; t <= 5; ++t)
        for (Branch l : kBranches)
          for (Spin s : kSpins) r15 = std::max(r15, eigen_residual(build_eigenfunction_t(t, l, s, mm), grid));
      for (double x : {-3.0, -1.0, 0.5, 2.0})
        for (Branch l : kBranches) {
          r16 = std::max(r16, pointwise_residual(build_eigenfunction_x(x, l, Spin::Up, mm), grid));
          r17 = std::max(r17, pointwise_residual(build_eigenfunction_xb(x, l, Spin::Down, mm), grid));
        }
    }
    for (int i = 0; i < 100; ++i) {
      const double x = 12.0 * unit(rng) - 6.0, p = 12.0 * unit(rng) - 6.0, mm = 4.0 * unit(rng);
      if (std::abs(x) < 1e-3 || std::abs(p) < 1e-3) continue;
      for (Branch b : kBranches) {
        const auto ev = build_eigenfunction_xb(x, b, Spin::Up, mm);
        const auto pos = build_eigenfunction_x(x, event_to_energy_branch(b, x, p), Spin::Up, mm);
        map_r = std::max(map_r, (ev.value(p) - pos.value(p)).norm());
      }
    }
    out.push_back(make_check("time_family_eigen_residual", r15, 1e-9));
    out.push_back(make_check("position_family_pointwise_identity", r16, 1e-9));
    out.push_back(make_check("event_family_pointwise_identity", r17, 1e-9));
    out.push_back(make_check("event_position_label_map", map_r, 1e-12));
    const auto q = rational_check::check();
    out.push_back(make_check("exact_rational_label_identity", static_cast<double>(q.failures.size()), 0.0));
  });
  section("label_orthogonality", [&] {
    double r = 0.0;
    for (double x : {-1.0, 0.0, 2.5}) {
      std::vector<ToaEigenfunction> efs;
      for (Branch l : kBranches)
        for (Spin s : kSpins) efs.push_back(build_eigenfunction_x(x, l, s, m));
      const auto gram = overlap_scan(efs, efs, grid);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (i != j) r = std::max(r, std::abs(gram(i, j)));
    }
    out.push_back(make_check("position_family_label_orthogonality", r, 1e-10));
  });
  section("completeness", [&] {
    // completeness of the time family on one momentum-sign sector
    const auto g = build_grid(1e-3, 4.0, 512, 4);
    const auto psi = GridSpinorField::sample(g, [&](double p) {
      if (p < 0) return Spinor4(Spinor4::Zero());
      const double e = std::exp(-(p - 2.0) * (p - 2.0) / 0.18);
      return Spinor4(e * energy_spinor(KinematicPoint(me, p, Branch::Positive, Spin::Up)) +
                     Complex(0.3, -0.4) * e * energy_spinor(KinematicPoint(me, p, Branch::Negative, Spin::Down)));
    });
    std::vector<double> ts, w;
    for (int i = 0; i <= 400; ++i) {
      ts.push_back(-100.0 + 0.5 * i);
      w.push_back(0.5 * (i == 0 || i == 400 ? 0.5 : 1.0));
    }
    const auto r = resynthesize(time_amplitudes(psi, me, ts), w, g, me);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i)
      if (g->node(i) > 0) {
        num += g->weight(i) * (r.values[i] - psi.values[i]).squaredNorm();
        den += g->weight(i) * psi.values[i].squaredNorm();
      }
    out.push_back(make_check("time_family_completeness", std::sqrt(num / den), 1e-6));
  });

  // --- energy representation and self-adjointness
  section("energy_representation", [&] {
    auto h = [](double e) { return std::exp(-(e - 2.0) * (e - 2.0)); };
    const auto g = build_grid(cfg.grid.p_min, std::max(cfg.grid.p_max, 10.0), cfg.grid.n_points, 4);
    const double lhs = spectrum_integral(*g, 1.0, h);
    const double lo = std::hypot(g->p_min(), 1.0), hi = std::hypot(g->p_max(), 1.0);
    const double rhs = 0.5 * std::sqrt(kPi) *
                       ((std::erf(hi - 2.0) - std::erf(lo - 2.0)) + (std::erf(-lo - 2.0) - std::erf(-hi - 2.0)));
    out.push_back(make_check("measure_identity", std::abs(lhs - rhs), 1e-8));

    PacketSpec spec = cfg.has_packet ? cfg.packet : PacketSpec{};
    spec.m = me;
    const auto psi = build_packet(spec, grid);
    const auto rep = to_energy_rep(psi, me);
    const double parseval = std::abs(std::pow(norm(rep.first), 2) + std::pow(norm(rep.second), 2) - 1.0);
    out.push_back(make_check("energy_parseval", parseval, 1e-8));
    out.push_back(make_check("energy_round_trip", norm(from_energy_rep(rep) - psi), 1e-12));
  });
  section("symmetry", [&] {
    // states vanish at E = +-m and decay to ~e^-25 at the far end of the grid
    const double span = std::hypot(cfg.grid.p_max, me) - me;
    const double kappa = 25.0 / span;
    auto make = [&](Branch b, double t0) {
      return EnergyGridFunction::sample(grid, me, b, [=](double e, int dir, Spin s) {
        const double dd = std::abs(e) - me;
        return Complex(dd * std::exp(-kappa * dd)) * std::polar(1.0, t0 * e) * (dir > 0 ? 1.0 : 0.4) *
               (s == Spin::Up ? 1.0 : Complex(0.0, 0.7));
      });
    };
    double r = 0.0;
    for (Branch b : kBranches) r = std::max(r, std::abs(symmetry_defect(make(b, 0.0), make(b, 0.7 * kappa))));
    out.push_back(make_check("symmetry_defect", r, 1e-8));
    const auto bad = EnergyGridFunction::sample(grid, me, Branch::Positive, [&](double e, int, Spin) {
      return Complex(std::exp(-kappa * (e - me)));
    });
    bool rejected = false;
    try {
      T_energy_rep(bad);
    } catch (const BoundaryConditionError&) {
      rejected = true;
    }
    out.push_back(make_check("boundary_violation_rejected", rejected ? 0.0 : 1.0, 0.0));
  });
  section("deficiency", [&] {
    double r = 0.0;
    for (double f : cfg.limits.e_max_factors) {
      const auto rep = deficiency_diagnostic(me, f * me);
      r = std::max(r, double(std::abs(rep.n_plus - 1) + std::abs(rep.n_minus - 1)));
    }
    out.push_back(make_check("deficiency_indices_1_1", r, 0.0));
  });

  // --- arrival
  section("arrival", [&] {
    PacketSpec spec = cfg.has_packet ? cfg.packet : PacketSpec{};
    if (!cfg.has_packet) spec.m = m;
    TimeConfig tc = cfg.has_time ? cfg.time : TimeConfig{};
    const auto psi = build_packet(spec, grid);
    const auto dist = arrival_distribution(psi, spec.m, tc.t_min, tc.t_max, tc.n_t, threads);
    double decomp = 0.0;
    for (std::size_t k = 0; k < dist.t.size(); ++k)
      decomp = std::max(decomp, std::abs(dist.pi_total[k] - dist.pi_pos[k] - dist.pi_neg[k] - dist.pi_interf[k]));
    out.push_back(make_check("arrival_component_sum", decomp, 1e-12));
    out.push_back(make_check("arrival_window_capture", std::max(0.0, 1.0 - dist.captured_mass), 1.0 - kMinCapturedMass));
    double drift = 0.0;
    for (double t : {tc.t_min, 0.5 * (tc.t_min + tc.t_max), tc.t_max}) drift = std::max(drift, std::abs(norm(evolve(psi, spec.m, t)) - 1.0));
    out.push_back(make_check("evolution_norm_drift", drift, 1e-12));
    if (spec.c_plus == 0.0 || spec.c_minus == 0.0) {
      double interf = 0.0;
      for (double v : dist.pi_interf) interf = std::max(interf, std::abs(v));
      out.push_back(make_check("single_branch_interference", interf, 1e-12));
      const double lambda = spec.c_minus == 0.0 ? 1.0 : -1.0;
      const double e0 = std::hypot(spec.p0, spec.m);
      const double classical = -lambda * spec.x0 * e0 / spec.p0;
      const double sigma_t = std::abs(spec.x0) * spec.m * spec.m * spec.sigma_p / (spec.p0 * spec.p0 * e0);
      const double tol = std::max(0.5, 3.0 * sigma_t);
      out.push_back(make_check("arrival_peak_vs_classical", std::abs(dist.peak() - classical), tol));
      if (lambda > 0 && spec.p0 * spec.x0 < 0) {
        const auto j = flux_at_origin(psi, spec.m, dist.t, threads);
        out.push_back(make_check("flux_peak_vs_arrival_peak", std::abs(peak_time(dist.t, j) - dist.peak()), tol));
      }
    }
  });
  section("nonrelativistic_arrival", [&] {
    PacketSpec s;
    s.m = 100.0;
    s.p0 = 1.0;
    s.sigma_p = 0.1;
    s.x0 = -50.0;
    const auto psi = build_packet(s, build_grid(1e-3, 2.0, 1024, 4));
    const auto dr = arrival_distribution(psi, s.m, 0.0, 15000.0, 3001, threads, true);
    const auto dn = nonrel_arrival_distribution(psi, s.m, 0.0, 15000.0, 3001, threads);
    out.push_back(make_check("nonrelativistic_arrival_l1", l1_distance(dr.t, dr.pi_total, dn.pi_total), 0.05));
  });

  // --- limits and duality
  section("limits", [&] {
    const auto rep = spinor_limit_report(log_ratios(cfg.limits.ratio_max, cfg.limits.ratio_min, cfg.limits.per_decade));
    out.push_back(make_check("nr_spinor_slope", std::abs(rep.order - 1.0), 0.05));
    out.push_back(make_check("nr_spinor_monotone", rep.monotone() ? 0.0 : 1.0, 0.0));
    double gap = 0.0;
    for (double r : {1e-4, 1e-3, 0.01, 0.1, 1.0}) {
      const double exact = r * r / (std::sqrt(1.0 + r * r) + 1.0);
      gap = std::max(gap, std::abs(nr_eigen_limit_check(1.3, r * me, me).relative_gap - exact) / exact);
    }
    out.push_back(make_check("nr_eigenvalue_gap", gap, 1e-12));
    const auto er = eigenfunction_limit_report(log_ratios(cfg.limits.ratio_max, cfg.limits.ratio_min, cfg.limits.per_decade),
                                               cfg.limits.eigfun_t, me);
    out.push_back(make_check("nr_eigenfunction_order", std::max(0.0, 1.0 - er.order), 0.0));
  });
  section("duality", [&] {
    double res = 0.0, bij = 0.0, hyp = 0.0;
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i < 20; ++i) samples.emplace_back(10.0 * unit(rng) - 5.0, 10.0 * unit(rng) - 5.0);
    for (int i = 0; i < 100; ++i) {
      const double x = 10.0 * unit(rng) - 5.0, tau = 10.0 * unit(rng) - 5.0;
      const double e = 10.0 * unit(rng) - 5.0, p = 10.0 * unit(rng) - 5.0;
      for (Branch b : kBranches)
        for (Spin s : kSpins) {
          const auto ds = dual_solution(x, b, s, tau);
          res = std::max(res, dual_residual(ds, samples));
          hyp = std::max(hyp, std::abs(ds.t() * ds.t() - x * x - tau * tau) / (ds.t() * ds.t()));
          if (tau >= 0.0)
            bij = std::max(bij, (ds.value(e, p) - ds.weight() * plane_wave(x, tau, b, s, e, p).conjugate()).norm());
          else
            bij = std::max(bij, (ds.spinor() - event_spinor(EventPoint(x, tau, b), s)).norm());
        }
    }
    out.push_back(make_check("dual_residual", res, 1e-13));
    out.push_back(make_check("duality_substitution_bijection", bij, 1e-12));
    out.push_back(make_check("dual_hyperbola_relation", hyp, 4e-16));
  });
  return out;
}

}  // namespace reltoa
