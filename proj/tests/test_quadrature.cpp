#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hyperdist/quadrature.hpp"
#include "hyperdist/smooth.hpp"
#include "oracles.hpp"

using namespace hyperdist;

namespace {
QuadratureConfig gk(double tol = 1e-12) { return {tol, 2000, QuadratureRule::GaussKronrod15}; }
QuadratureConfig simpson(double tol = 1e-12) { return {tol, 4000, QuadratureRule::AdaptiveSimpson}; }
}  // namespace

TEST(Quadrature, PolynomialsAreExactUnderGK) {
  auto r = integrate<double>([](double x) { return x * x * x - 2 * x + 1; }, 0.0, 2.0, gk(), 0.0);
  EXPECT_NEAR(r.value, 4.0 - 4.0 + 2.0, 1e-14);
  EXPECT_TRUE(r.converged);
}

TEST(Quadrature, BumpIntegralBothRules) {
  for (const QuadratureConfig& cfg : {gk(), simpson()}) {
    auto r = integrate<double>(smooth::bump, -1.0, 1.0, cfg, 0.0);
    EXPECT_TRUE(r.converged) << to_string(cfg.rule);
    EXPECT_NEAR(r.value, oracle::kBumpIntegral, 1e-11) << to_string(cfg.rule);
  }
  auto sq = integrate<double>([](double u) { return smooth::bump(u) * smooth::bump(u); }, -1.0, 1.0,
                              gk(), 0.0);
  EXPECT_NEAR(sq.value, oracle::kBumpSquaredIntegral, 1e-11);
  auto cb = integrate<double>([](double u) { return std::cos(u) * smooth::bump(u); }, -1.0, 1.0, gk(),
                              0.0);
  EXPECT_NEAR(cb.value, oracle::kCosBumpIntegral, 1e-11);
}

TEST(Quadrature, AgreesWithIndependentSimpson) {
  auto f = [](double x) { return std::sin(3 * x) * std::exp(-x * x); };
  auto r = integrate<double>(f, -0.3, 2.1, gk(), 0.0);
  EXPECT_NEAR(r.value, oracle_tools::simpson(f, -0.3, 2.1), 1e-10);
}

TEST(Quadrature, BreakpointsHandleKinks) {
  auto f = [](double x) { return std::abs(x - 0.3); };
  const std::vector<double> pts{-1.0, 0.3, 1.0};
  auto r = integrate<double>(f, std::span<const double>(pts), gk(), 0.0);
  EXPECT_NEAR(r.value, 0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7, 1e-14);
}

TEST(Quadrature, VectorValued) {
  auto f = [](double x) { return std::vector<double>{1.0, x, x * x}; };
  auto r = integrate<std::vector<double>>(f, 0.0, 3.0, gk(), std::vector<double>(3, 0.0));
  ASSERT_EQ(r.value.size(), 3u);
  EXPECT_NEAR(r.value[0], 3.0, 1e-14);
  EXPECT_NEAR(r.value[1], 4.5, 1e-13);
  EXPECT_NEAR(r.value[2], 9.0, 1e-13);
}

TEST(Quadrature, HyperrealCoefficientwise) {
  const TruncationPolicy pol;
  auto f = [&](double x) {
    return HyperReal::from_terms({{ExponentQ(0), x}, {ExponentQ(1), x * x}, {ExponentQ(-1), 1.0}}, pol);
  };
  auto r = integrate<HyperReal>(f, 0.0, 1.0, gk(), HyperReal(pol));
  EXPECT_NEAR(r.value.coefficient(ExponentQ(0)), 0.5, 1e-14);
  EXPECT_NEAR(r.value.coefficient(ExponentQ(1)), 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(r.value.coefficient(ExponentQ(-1)), 1.0, 1e-14);
}

TEST(Quadrature, DeterministicBitIdentical) {
  auto f = [](double x) { return smooth::bump(x) * std::sin(5 * x + 0.2); };
  for (const QuadratureConfig& cfg : {gk(1e-13), simpson(1e-11)}) {
    auto a = integrate<double>(f, -1.0, 1.0, cfg, 0.0);
    auto b = integrate<double>(f, -1.0, 1.0, cfg, 0.0);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error, b.error);
    EXPECT_EQ(a.subdivisions, b.subdivisions);
  }
}

TEST(Quadrature, CheckedThrowsWhenBudgetExhausted) {
  QuadratureConfig cfg{1e-15, 3, QuadratureRule::AdaptiveSimpson};
  auto f = [](double x) { return std::sin(200 * x); };
  const std::vector<double> pts{0.0, 3.0};
  try {
    integrate_checked<double>(f, std::span<const double>(pts), cfg, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::QuadratureFailure);
  }
}

TEST(Quadrature, ConfigValidation) {
  EXPECT_THROW((QuadratureConfig{0.0, 10, QuadratureRule::GaussKronrod15}.validate()), Error);
  EXPECT_THROW((QuadratureConfig{1e-8, 0, QuadratureRule::GaussKronrod15}.validate()), Error);
  EXPECT_EQ(parse_quadrature_rule(to_string(QuadratureRule::AdaptiveSimpson)), QuadratureRule::AdaptiveSimpson);
  EXPECT_EQ(parse_quadrature_rule(to_string(QuadratureRule::GaussKronrod15)), QuadratureRule::GaussKronrod15);
  EXPECT_THROW(parse_quadrature_rule("trapezoid"), Error);
}

TEST(Quadrature, GaussLegendreRule) {
  const GaussLegendre& g = GaussLegendre::rule(10);
  ASSERT_EQ(g.nodes.size(), 10u);
  double s = 0, m = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    s += g.weights[i];
    m += g.weights[i] * std::pow(g.nodes[i], 18);
  }
  EXPECT_NEAR(s, 2.0, 1e-14);
  EXPECT_NEAR(m, 2.0 / 19.0, 1e-14);
}
