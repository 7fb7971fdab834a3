#include <reltoa/eigensystem.hpp>
#include <reltoa/limits.hpp>
#include <reltoa/operators.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace reltoa;

namespace {

GridSpinorField bump(const GridPtr& g, double center, double width) {
  return GridSpinorField::sample(g, [=](double p) {
    const double e = std::exp(-(p - center) * (p - center) / (2.0 * width * width));
    Spinor4 v;
    v << e, 0.5 * e, Complex(0.3, 0.2) * e, -e;
    return v;
  });
}

GridSpinorField random_field(const GridPtr& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  GridSpinorField f(g);
  for (auto& v : f.values)
    for (int c = 0; c < 4; ++c) v(c) = Complex(n(rng), n(rng));
  return f;
}

}  // namespace

TEST(InnerProduct, HermitianPositive) {
  const auto g = build_grid(1e-3, 5.0, 64, 4);
  const auto f = random_field(g, 1), h = random_field(g, 2);
  const Complex ff = inner_product(f, f);
  EXPECT_GT(ff.real(), 0.0);
  EXPECT_EQ(ff.imag(), 0.0);
  EXPECT_LE(std::abs(inner_product(f, h) - std::conj(inner_product(h, f))), 1e-12);
  EXPECT_THROW(inner_product(f, GridSpinorField(build_grid(1e-3, 5.0, 64, 4))),
               std::invalid_argument);
}

TEST(Hamiltonian, EigenvectorFields) {
  const auto g = build_grid(1e-3, 5.0, 64, 4);
  for (double m : {0.0, 1.3})
    for (Branch l : kBranches) {
      const auto f = GridSpinorField::sample(
          g, [&](double p) { return energy_spinor(KinematicPoint(m, p, l, Spin::Down)); });
      const auto hf = apply_hamiltonian(f, m);
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double e = sign_of(l) * std::hypot(f.p(i), m);
        EXPECT_LE((hf.values[i] - e * f.values[i]).norm(), 1e-12);
      }
    }
}

TEST(TDirac, TimeEigenfunctionWithAnalyticDerivative) {
  const auto g = build_grid(1e-3, 10.0, 256, 4);
  const auto ef = build_eigenfunction_t(2.0, Branch::Positive, Spin::Up, 1.0);
  const auto f = ef.sample(g);
  const auto tf = apply_T_dirac(f, ef.sample_derivative(g), 1.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    EXPECT_LE((tf.values[i] - 2.0 * f.values[i]).norm(), 1e-10) << "p=" << f.p(i);
}

TEST(TDirac, MasslessActsAsMinusAlphaTimesPosition) {
  const auto g = build_grid(1e-3, 6.0, 256, 4);
  const auto f = bump(g, 2.0, 0.3);
  const auto df = GridSpinorField::sample(g, [](double p) {
    const double e = std::exp(-(p - 2.0) * (p - 2.0) / 0.18) * (-(p - 2.0) / 0.09);
    Spinor4 v;
    v << e, 0.5 * e, Complex(0.3, 0.2) * e, -e;
    return v;
  });
  const auto tf = apply_T_dirac(f, df, 0.0);
  const CMat4& a1 = dirac_basis().alpha[0];
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Spinor4 x_f = I * df.values[i];  // x = i d/dp
    EXPECT_LE((tf.values[i] + a1 * x_f).norm(), 1e-13);
  }
  const auto tf_grid = apply_T_dirac(f, 0.0);
  EXPECT_EQ(tf_grid.degraded_nodes, g->one_sided_nodes().size());
}

TEST(TDirac, GridDerivativeConvergesToAnalytic) {
  // FD4 error against the closed-form eigenfunction derivative, n -> 2n
  std::vector<double> errs;
  for (int n : {256, 512}) {
    const auto g = build_grid(1e-3, 10.0, n, 4);
    const auto ef = build_eigenfunction_t(0.5, Branch::Positive, Spin::Up, 1.0);
    const auto f = ef.sample(g);
    auto w = bump(g, 2.0, 0.3);
    for (std::size_t i = 0; i < f.size(); ++i) w.values[i] = w.values[i](0) * f.values[i];
    auto dw = ef.sample_derivative(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double p = f.p(i), e = std::exp(-(p - 2.0) * (p - 2.0) / 0.18);
      dw.values[i] = e * dw.values[i] - (p - 2.0) / 0.09 * e * f.values[i];
    }
    errs.push_back(norm(apply_T_dirac(w, 1.0) - apply_T_dirac(w, dw, 1.0)) / norm(w));
  }
  EXPECT_GE(errs[0] / errs[1], 12.0) << errs[0] << " " << errs[1];
}

TEST(TNonrel, EigenfunctionWithAnalyticDerivative) {
  const auto g = build_grid(1e-3, 10.0, 256, 4);
  const double m = 2.0, t = 1.5;
  const Spinor4 zeta = nr_limit_spinor(Branch::Positive, Spin::Up);
  auto fn = [&](double p) {
    return Spinor4(std::sqrt(std::abs(p) / m) * zeta * std::polar(1.0, p * p * t / (2 * m)) *
                   kInvSqrt2Pi);
  };
  const auto f = GridSpinorField::sample(g, fn);
  const auto df = GridSpinorField::sample(g, [&](double p) {
    return Spinor4(fn(p) * (1.0 / (2.0 * p) + I * p * t / m));
  });
  const auto tf = apply_T_nonrel(f, df, m);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::max(worst, (tf.values[i] - t * f.values[i]).norm() / f.values[i].norm());
  EXPECT_LE(worst, 1e-8);
}

TEST(TNonrel, ConstantFieldGivesImaginaryResponse) {
  const auto g = build_grid(0.1, 2.0, 32, 4);
  const auto f = GridSpinorField::sample(g, [](double) { return Spinor4::Ones().eval(); });
  const auto tf = apply_T_nonrel(f, 1.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double p = f.p(i);
    EXPECT_NEAR(tf.values[i](0).real(), 0.0, 1e-10);
    EXPECT_NEAR(tf.values[i](0).imag(), 1.0 / (2.0 * p * p), 1e-10 / (p * p));
  }
}

TEST(Operators, Linearity) {
  const auto g = build_grid(1e-3, 5.0, 64, 4);
  const auto f = random_field(g, 3), h = random_field(g, 4);
  const Complex a(0.7, -1.1), b(-0.2, 0.4);
  const auto lhs_d = apply_T_dirac(a * f + b * h, 1.0);
  const auto rhs_d = a * apply_T_dirac(f, 1.0) + b * apply_T_dirac(h, 1.0);
  EXPECT_LE(norm(lhs_d - rhs_d) / norm(rhs_d), 1e-13);
  const auto lhs_n = apply_T_nonrel(a * f + b * h, 1.0);
  const auto rhs_n = a * apply_T_nonrel(f, 1.0) + b * apply_T_nonrel(h, 1.0);
  EXPECT_LE(norm(lhs_n - rhs_n) / norm(rhs_n), 1e-13);
}

TEST(Commutator, ConvergesAtStencilOrder) {
  for (auto [order, lo, hi] : {std::tuple{4, 3.5, 4.5}, std::tuple{2, 1.5, 2.5}}) {
    std::vector<double> ns, rs;
    for (int n : {128, 256, 512}) {
      ns.push_back(n);
      rs.push_back(commutator_residual(bump(build_grid(1e-3, 10.0, n, order), 2.0, 0.3), 1.0));
    }
    const double slope = -fit_loglog_slope(ns, rs);
    EXPECT_GT(slope, lo) << "order " << order;
    EXPECT_LT(slope, hi) << "order " << order;
    if (order == 4) EXPECT_GE(rs[1] / rs[2], 12.0);
  }
}

TEST(Commutator, AnalyticOnTimeEigenfunctions) {
  const auto g = build_grid(1e-3, 10.0, 256, 4);
  for (double m : {0.0, 1.0, 3.0})
    for (double t : {-3.0, 0.0, 2.0})
      for (Branch l : kBranches) {
        const auto ef = build_eigenfunction_t(t, l, Spin::Up, m);
        EXPECT_LE(commutator_residual(ef.sample(g), m, ef.sample_derivative(g)), 1e-9);
      }
}

TEST(Commutator, ZeroFieldRejected) {
  const auto g = build_grid(1e-3, 5.0, 32, 4);
  EXPECT_THROW(commutator_residual(GridSpinorField(g), 1.0), std::invalid_argument);
}

TEST(Commutator, AnalyticSchemeNeedsSuppliedDerivative) {
  const auto g = build_grid(1e-3, 5.0, 32, DerivativeScheme::Analytic);
  EXPECT_THROW(apply_T_dirac(bump(g, 2.0, 0.3), 1.0), std::invalid_argument);
}
