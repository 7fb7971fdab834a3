#include <reltoa/grid.hpp>
#include <reltoa/quadrature.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace reltoa;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto r = quad::gauss_legendre(6, -1.0, 2.0);
  // exact for degree <= 11
  for (int k = 0; k <= 11; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], k);
    const double exact = (std::pow(2.0, k + 1) - std::pow(-1.0, k + 1)) / (k + 1);
    EXPECT_NEAR(acc, exact, 1e-12 * std::max(1.0, std::abs(exact))) << "degree " << k;
  }
  EXPECT_TRUE(std::is_sorted(r.nodes.begin(), r.nodes.end()));
}

TEST(Fornberg, RecoversClassicalCentralWeights) {
  const std::vector<double> x{-2, -1, 0, 1, 2};
  const auto w = quad::fornberg_first_derivative(0.0, x);
  const double ref[] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(w[i], ref[i], 1e-15);
}

TEST(MomentumGrid, ConstructionContract) {
  const auto g = build_grid(1e-3, 10.0, 256, 4);
  ASSERT_EQ(g->size(), 512u);
  for (double p : g->nodes()) EXPECT_GE(std::abs(p), 1e-3);
  for (std::size_t i = 1; i < g->size(); ++i) EXPECT_LT(g->node(i - 1), g->node(i));
  for (std::size_t i = 0; i < g->size(); ++i) {
    EXPECT_EQ(g->node(i), -g->node(g->mirror(i)));
    EXPECT_EQ(g->weight(i), g->weight(g->mirror(i)));
  }
  const double side = std::accumulate(g->weights().begin() + 256, g->weights().end(), 0.0);
  EXPECT_NEAR(side, 10.0 - 1e-3, 1e-12 * 10.0);
}

TEST(MomentumGrid, RefinementKeepsBounds) {
  double prev_gap = 1e300;
  for (int n : {16, 100, 256, 1024}) {
    const auto g = build_grid(0.01, 5.0, n, 2);
    EXPECT_EQ(g->size(), std::size_t(2 * n));
    EXPECT_EQ(g->p_min(), 0.01);
    EXPECT_EQ(g->p_max(), 5.0);
    EXPECT_LT(g->nodes().back(), 5.0);
    EXPECT_GT(g->node(n), 0.01);
    const double gap = g->node(n) - 0.01;
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
}

TEST(MomentumGrid, GaussianIntegralMatchesErf) {
  const double a = 1e-3, b = 10.0;
  const auto g = build_grid(a, b, 256, 4);
  double acc = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) acc += g->weight(i) * std::exp(-g->node(i) * g->node(i));
  const double exact = std::sqrt(kPi) * (std::erf(b) - std::erf(a));
  EXPECT_NEAR(acc, exact, 1e-10);
}

TEST(MomentumGrid, OddIntegrandVanishes) {
  const auto g = build_grid(1e-3, 10.0, 256, 4);
  double acc = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) acc += g->weight(i) * g->node(i);
  EXPECT_NEAR(acc, 0.0, 1e-12);
}

TEST(MomentumGrid, RejectsInvalidBounds) {
  EXPECT_THROW(build_grid(0.0, 10.0, 64, 4), std::invalid_argument);
  EXPECT_THROW(build_grid(-1.0, 10.0, 64, 4), std::invalid_argument);
  EXPECT_THROW(build_grid(2.0, 1.0, 64, 4), std::invalid_argument);
  EXPECT_THROW(build_grid(1e-3, 10.0, 4, 4), std::invalid_argument);
  EXPECT_THROW(build_grid(1e-3, 10.0, 64, 3), std::invalid_argument);
}

namespace {

double derivative_error(int n, DerivativeScheme scheme) {
  const auto g = build_grid(0.1, 4.0, n, scheme);
  std::vector<double> f(g->size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(1.3 * g->node(i));
  const auto df = g->differentiate(f);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::max(worst, std::abs(df[i] - 1.3 * std::cos(1.3 * g->node(i))));
  return worst;
}

}  // namespace

TEST(MomentumGrid, FiniteDifferenceOrders) {
  for (auto [scheme, order] : {std::pair{DerivativeScheme::FiniteDifference2, 2.0},
                               std::pair{DerivativeScheme::FiniteDifference4, 4.0}}) {
    const double e1 = derivative_error(128, scheme), e2 = derivative_error(256, scheme),
                 e3 = derivative_error(512, scheme);
    const double fitted = std::log(e1 / e3) / std::log(4.0);
    // one-sided closures at the side ends cost one order in the max norm
    EXPECT_GT(fitted, order - 1.0 - 0.5) << "e=" << e1 << "," << e2 << "," << e3;
    EXPECT_LT(e3, e1);
  }
}

TEST(MomentumGrid, SpectralDerivativeIsExactForPanelPolynomials) {
  const auto g = build_grid(0.5, 3.0, 64, DerivativeScheme::Spectral);
  std::vector<double> f(g->size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(g->node(i), 5);
  const auto df = g->differentiate(f);
  for (std::size_t i = 0; i < f.size(); ++i)
    EXPECT_NEAR(df[i], 5.0 * std::pow(g->node(i), 4), 1e-9 * 405.0);
}

TEST(MomentumGrid, OneSidedNodesReported) {
  const auto g4 = build_grid(0.1, 4.0, 64, 4);
  const auto g2 = build_grid(0.1, 4.0, 64, 2);
  EXPECT_EQ(g4->one_sided_nodes().size(), 8u);  // two per side end
  EXPECT_EQ(g2->one_sided_nodes().size(), 4u);
}

TEST(GridSpinorField, LengthAndGridChecks) {
  const auto g = build_grid(0.1, 4.0, 16, 4);
  const auto h = build_grid(0.1, 4.0, 16, 4);
  EXPECT_THROW(GridSpinorField(g, std::vector<Spinor4>(3)), std::invalid_argument);
  GridSpinorField a(g), b(h);
  EXPECT_THROW(a += b, std::invalid_argument);
  EXPECT_NO_THROW(a += GridSpinorField(g));
}
