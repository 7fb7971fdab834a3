#include <reltoa/eigensystem.hpp>
#include <reltoa/rational_check.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

#include <random>

using namespace reltoa;

TEST(TimeFamily, EigenResidualOverLattice) {
  const auto g = build_grid(1e-3, 10.0, 256, 4);
  for (double m : {0.0, 0.5, 1.0, 3.0})
    for (int t = -5; t <= 5; ++t)
      for (Branch l : kBranches)
        for (Spin s : kSpins)
          EXPECT_LE(eigen_residual(build_eigenfunction_t(t, l, s, m), g), 1e-9)
              << "m=" << m << " t=" << t;
}

TEST(TimeFamily, ZeroTimeIsRealWeightedSpinor) {
  const auto ef = build_eigenfunction_t(0.0, Branch::Positive, Spin::Up, 1.0);
  for (double p : {-3.0, 0.2, 4.0}) {
    const Spinor4 ref = std::pow(p * p / (p * p + 1.0), 0.25) * kInvSqrt2Pi *
                        energy_spinor(KinematicPoint(1.0, p, Branch::Positive, Spin::Up));
    EXPECT_LE((ef.value(p) - ref).norm(), 1e-15);
    EXPECT_EQ(ef.value(p).imag().norm(), 0.0);
  }
}

TEST(TimeFamily, ModulusIndependentOfTime) {
  for (double p : {-2.0, 0.5, 7.0}) {
    const double ref = build_eigenfunction_t(0.0, Branch::Negative, Spin::Down, 2.0).value(p).norm();
    for (double t : {-4.0, 1.0, 30.0})
      EXPECT_NEAR(build_eigenfunction_t(t, Branch::Negative, Spin::Down, 2.0).value(p).norm(), ref, 1e-15);
  }
}

TEST(Families, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.2, 5.0), lab(-4.0, 4.0);
  for (int i = 0; i < 60; ++i) {
    const double m = i % 5 == 0 ? 0.0 : u(rng), p = (i % 2 ? 1 : -1) * u(rng), label = lab(rng);
    for (Branch l : kBranches) {
      std::vector<ToaEigenfunction> efs{build_eigenfunction_t(label, l, Spin::Up, m),
                                        build_eigenfunction_x(label, l, Spin::Down, m)};
      if (std::abs(label) > 0.1) efs.push_back(build_eigenfunction_xb(label, l, Spin::Up, m));
      for (const auto& ef : efs) {
        const Spinor4 fd = oracle::numeric_derivative([&](double q) { return ef.value(q); }, p, 1e-3);
        const Spinor4 an = ef.derivative(p);
        EXPECT_LE((an - fd).norm(), 1e-7 * (1.0 + an.norm()))
            << "family " << int(ef.family()) << " m=" << m << " p=" << p;
      }
    }
  }
}

TEST(PositionFamily, PointwiseIdentity) {
  const auto g = build_grid(1e-3, 10.0, 256, 4);
  for (double m : {0.0, 0.5, 1.0, 3.0})
    for (double x : {-3.0, -1.0, 0.0, 0.5, 2.0})
      for (Branch l : kBranches)
        for (Spin s : kSpins)
          EXPECT_LE(pointwise_residual(build_eigenfunction_x(x, l, s, m), g), 1e-9)
              << "m=" << m << " x=" << x;
}

TEST(PositionFamily, ThreeFourFiveFactor) {
  const auto ef = build_eigenfunction_x(2.0, Branch::Positive, Spin::Up, 3.0);
  EXPECT_DOUBLE_EQ(ef.eigenvalue(4.0), -2.5);
}

TEST(PositionFamily, MasslessFactorIsConstantPerHalfLine) {
  for (Branch l : kBranches) {
    const auto ef = build_eigenfunction_x(1.7, l, Spin::Up, 0.0);
    for (double p : {0.1, 1.0, 9.0}) {
      EXPECT_DOUBLE_EQ(ef.eigenvalue(p), -sign_of(l) * 1.7);
      EXPECT_DOUBLE_EQ(ef.eigenvalue(-p), sign_of(l) * 1.7);
    }
  }
}

TEST(EventFamily, PointwiseIdentityAndRejection) {
  const auto g = build_grid(1e-3, 10.0, 256, 4);
  for (double m : {0.0, 0.5, 1.0, 3.0})
    for (double x : {-3.0, -1.0, 0.5, 2.0})
      for (Branch b : kBranches)
        EXPECT_LE(pointwise_residual(build_eigenfunction_xb(x, b, Spin::Down, m), g), 1e-9);
  EXPECT_THROW(build_eigenfunction_xb(0.0, Branch::Positive, Spin::Up, 1.0), std::invalid_argument);
}

TEST(EventFamily, ThreeFourFiveNode) {
  const auto ef = build_eigenfunction_xb(3.0, Branch::Positive, Spin::Up, 3.0);
  EXPECT_DOUBLE_EQ(ef.eigenvalue(4.0), -15.0 / 4.0);
  EXPECT_DOUBLE_EQ(build_eigenfunction_x(3.0, Branch::Positive, Spin::Up, 3.0).eigenvalue(4.0), -15.0 / 4.0);
  // spinor factor at the node is the (x = 3, tau = 9/4) event spinor
  const Spinor4 xi = event_spinor(EventPoint(3.0, 9.0 / 4.0, Branch::Positive), Spin::Up);
  const Spinor4 v = ef.value(4.0) / ef.phase(4.0);
  const double w = std::pow(9.0 / (9.0 + 81.0 / 16.0), 0.25) * kInvSqrt2Pi;
  EXPECT_LE((v - w * xi).norm(), 1e-15);
}

TEST(EventFamily, AgreesWithPositionFamilyUnderLabelMap) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-6.0, 6.0), mass(0.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng), p = u(rng), m = mass(rng);
    if (std::abs(x) < 1e-3 || std::abs(p) < 1e-3) continue;
    for (Branch b : kBranches)
      for (Spin s : kSpins) {
        const auto ev = build_eigenfunction_xb(x, b, s, m);
        const auto pos = build_eigenfunction_x(x, event_to_energy_branch(b, x, p), s, m);
        EXPECT_LE((ev.value(p) - pos.value(p)).norm(), 1e-12);
        EXPECT_NEAR(ev.eigenvalue(p), pos.eigenvalue(p), 1e-12 * std::abs(pos.eigenvalue(p)));
      }
  }
}

TEST(EventFamily, MasslessReducesToConstantSpinFactor) {
  const auto ef = build_eigenfunction_xb(2.0, Branch::Positive, Spin::Up, 0.0);
  const CVec2 eta = helicity_spinor(Spin::Up);
  for (double p : {-3.0, 0.5, 4.0}) {
    Spinor4 ref;
    ref << eta, dirac_basis().sigma1 * eta;
    ref *= kInvSqrt2Pi / std::sqrt(2.0) * std::polar(1.0, -p * 2.0);
    EXPECT_LE((ef.value(p) - ref).norm(), 1e-15);
  }
}

TEST(ExactRationals, ThreeFourFiveLattice) {
  const auto r = rational_check::check();
  EXPECT_GT(r.checked, 400);
  EXPECT_TRUE(r.failures.empty()) << r.failures.front();
}

TEST(Overlaps, DistinctLabelsAtEqualPositionVanish) {
  const auto g = build_grid(1e-3, 10.0, 256, 4);
  for (double m : {0.0, 1.0})
    for (double x : {-1.0, 0.0, 2.5}) {
      std::vector<ToaEigenfunction> efs;
      for (Branch l : kBranches)
        for (Spin s : kSpins) efs.push_back(build_eigenfunction_x(x, l, s, m));
      const auto gram = overlap_scan(efs, efs, g);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          if (i != j)
            EXPECT_LE(std::abs(gram(i, j)), 1e-10);
          else
            EXPECT_GT(gram(i, i).real(), 0.0);
        }
    }
}

namespace {

double half_max_width(double p_max) {
  const auto g = build_grid(1e-3, p_max, 512, 4);
  const auto ref = build_eigenfunction_x(0.5, Branch::Positive, Spin::Up, 1.0);
  const double peak = std::abs(overlap_scan({ref}, {ref}, g)(0, 0));
  // bisection on the first half-maximum crossing of the sinc-like profile
  auto level = [&](double d) {
    return std::abs(overlap_scan({ref}, {build_eigenfunction_x(0.5 + d, Branch::Positive, Spin::Up, 1.0)}, g)(0, 0)) /
           peak;
  };
  double hi = 0.0;
  while (level(hi) > 0.5) hi += 0.01;
  double lo = hi - 0.01;
  for (int k = 0; k < 40; ++k) {
    const double mid = 0.5 * (lo + hi);
    (level(mid) > 0.5 ? lo : hi) = mid;
  }
  return 2.0 * hi;
}

}  // namespace

TEST(Overlaps, DeltaFamilyConcentratesAsMomentumRangeGrows) {
  const double w20 = half_max_width(20.0), w40 = half_max_width(40.0);
  EXPECT_GT(w20 / w40, 1.8);
  EXPECT_LT(w20 / w40, 2.2);
}

TEST(Completeness, TimeLatticeResynthesisRecoversState) {
  const double m = 1.0;
  const auto g = build_grid(1e-3, 4.0, 512, 4);
  // a single momentum-sign sector; E = lambda E_p cannot separate p from -p
  const auto psi = GridSpinorField::sample(g, [&](double p) {
    if (p < 0) return Spinor4(Spinor4::Zero());
    const double e = std::exp(-(p - 2.0) * (p - 2.0) / 0.18);
    return Spinor4(e * energy_spinor(KinematicPoint(m, p, Branch::Positive, Spin::Up)) +
                   Complex(0.3, -0.4) * e * energy_spinor(KinematicPoint(m, p, Branch::Negative, Spin::Down)));
  });
  const double T = 100.0, dt = 0.5;
  const int k = static_cast<int>(2 * T / dt) + 1;
  std::vector<double> ts, w;
  for (int i = 0; i < k; ++i) {
    ts.push_back(-T + i * dt);
    w.push_back(dt * (i == 0 || i == k - 1 ? 0.5 : 1.0));
  }
  const auto r = resynthesize(time_amplitudes(psi, m, ts), w, g, m);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i)
    if (g->node(i) > 0) {
      num += g->weight(i) * (r.values[i] - psi.values[i]).squaredNorm();
      den += g->weight(i) * psi.values[i].squaredNorm();
    }
  EXPECT_LE(std::sqrt(num / den), 1e-6);
}

TEST(Resolvability, RejectsUnresolvedPhase) {
  const auto g = build_grid(1e-3, 10.0, 64, 4);
  EXPECT_NO_THROW(build_eigenfunction_t(2.0, Branch::Positive, Spin::Up, 1.0).check_resolvable(*g));
  EXPECT_THROW(build_eigenfunction_t(1e4, Branch::Positive, Spin::Up, 1.0).check_resolvable(*g),
               std::out_of_range);
}
