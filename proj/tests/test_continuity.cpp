#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hyperdist/continuity.hpp"
#include "hyperdist/error.hpp"
#include "hyperdist/functional.hpp"

using namespace hyperdist;

namespace {

const HyperReal kEps = HyperReal::epsilon();
HyperReal real(double x) { return HyperReal::from_real(x); }

InternalExpr lambda_sine() { return sin(mul(constant(recip(kEps)), var())); }

// eps + a below b, a from b on.
InternalExpr step(double a, double b) {
  return piecewise(var(), CmpOp::Less, constant(b), constant(kEps + real(a)), constant(a));
}

// 1 on [-eps, 0) and (0, eps], 0 elsewhere.
InternalExpr compressed_indicator() {
  const InternalExpr one = constant(1.0), zero = constant(0.0);
  const InternalExpr punctured =
      piecewise(var(), CmpOp::Less, zero, one, piecewise(var(), CmpOp::Greater, zero, one, zero));
  return piecewise(var(), CmpOp::Less, constant(-kEps), zero,
                   piecewise(var(), CmpOp::Greater, constant(kEps), zero, punctured));
}

// A refutation must survive direct re-evaluation.
void expect_witness_rechecks(const InternalExpr& f, double p, const Verdict& v) {
  ASSERT_EQ(v.kind, VerdictKind::Refuted);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(classify(*v.witness), NumClass::NonzeroInfinitesimal);
  const HyperReal at_probe = eval_at(f, real(p) + *v.witness);
  const HyperReal at_p = eval_at(f, real(p));
  EXPECT_FALSE(infinitely_close(at_probe, at_p));
  ASSERT_GE(v.values.size(), 2u);
  EXPECT_EQ(v.values[0], at_probe);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Continuity, ProbeDefaults) {
  const MonadProbeSet s = MonadProbeSet::defaults();
  EXPECT_EQ(s.deltas.size(), 12u);
  for (const HyperReal& d : s.ordered()) EXPECT_EQ(classify(d), NumClass::NonzeroInfinitesimal);
  const MonadProbeSet m = MonadProbeSet::for_expr(make_dirac());
  EXPECT_FALSE(m.extra.empty());
  EXPECT_EQ(m.ordered().front(), m.extra.front());
}

TEST(Continuity, LambdaSineRefutedAtZero) {
  const InternalExpr f = lambda_sine();
  const Verdict v = s_continuity(f, 0.0);
  expect_witness_rechecks(f, 0.0, v);
  EXPECT_EQ(*v.witness, kEps * (std::numbers::pi / 2));
  EXPECT_NEAR(standard_part(v.values[0]), 1.0, 1e-12);
  EXPECT_EQ(to_string(v.kind), "REFUTED");
}

TEST(Continuity, StepProvedAtJump) {
  const Verdict v = s_continuity(step(2.0, 1.0), 1.0);
  EXPECT_EQ(v.kind, VerdictKind::Proved);
  EXPECT_EQ(v.rule, "infinitesimal-jump");
}

TEST(Continuity, IndicatorRefutedAtZero) {
  const InternalExpr k = compressed_indicator();
  const Verdict v = s_continuity(k, 0.0);
  expect_witness_rechecks(k, 0.0, v);
  EXPECT_EQ(*v.witness, kEps * 0.5);
  EXPECT_EQ(v.values[0], real(1));
  for (double p : {-1.0, 0.5, 3.0}) {
    EXPECT_TRUE(eval_at(k, real(p)).is_zero());
    EXPECT_NE(s_continuity(k, p).kind, VerdictKind::Refuted) << p;
  }
}

TEST(Continuity, DiracSContinuity) {
  const InternalExpr d = make_dirac();
  expect_witness_rechecks(d, 0.0, s_continuity(d, 0.0));
  EXPECT_NE(s_continuity(d, 1.0).kind, VerdictKind::Refuted);
}

TEST(Continuity, StarContinuity) {
  EXPECT_EQ(star_continuity(lambda_sine(), real(0)).kind, VerdictKind::Proved);
  EXPECT_EQ(star_continuity(lambda_sine(), kEps * 3.0).kind, VerdictKind::Proved);
  const Verdict s = star_continuity(step(2.0, 1.0), real(1));
  EXPECT_EQ(s.kind, VerdictKind::Refuted);
  ASSERT_TRUE(s.witness.has_value());
  EXPECT_EQ(*s.witness, real(1));
  ASSERT_EQ(s.values.size(), 2u);
  EXPECT_EQ(s.values[0] - s.values[1], kEps);
  EXPECT_EQ(star_continuity(step(2.0, 1.0), real(0.5)).kind, VerdictKind::Proved);
  for (const HyperReal& q : {real(0), kEps, real(1) + kEps, recip(kEps)}) {
    EXPECT_EQ(star_continuity(make_dirac(), q).kind, VerdictKind::Proved);
  }
  const InternalExpr matching = piecewise(var(), CmpOp::Less, constant(0.0), sin(var()), ipow(var(), 3));
  EXPECT_EQ(star_continuity(matching, real(0)).kind, VerdictKind::Proved);
}

TEST(Continuity, SConvergence) {
  const HyperReal zero = real(0);
  const Verdict a = s_convergence(recip(var()), zero);
  EXPECT_EQ(a.kind, VerdictKind::NotRefuted);
  ASSERT_TRUE(a.crosscheck.has_value());
  EXPECT_TRUE(*a.crosscheck);
  const InternalExpr s = add(constant(1.0), recip(ipow(var(), 2)));
  const Verdict b = s_convergence(s, real(2));
  EXPECT_EQ(b.kind, VerdictKind::Refuted);
  EXPECT_EQ(*b.witness, recip(kEps));
  ASSERT_TRUE(b.crosscheck.has_value());
  EXPECT_TRUE(*b.crosscheck);
  // sin(n) has no limit; parity-style sequences cannot be evaluated at infinite indices.
  EXPECT_EQ(kind_of([] { s_convergence(sin(var() * constant(std::numbers::pi)), real(0)); }),
            ErrorKind::UnsupportedEvaluation);
}

TEST(Continuity, CompositionOfConvergentSequence) {
  // f continuous and s_n -> q implies f(s_n) -> f(q).
  const InternalExpr s = add(constant(0.5), recip(var()));
  ASSERT_NE(s_convergence(s, real(0.5)).kind, VerdictKind::Refuted);
  const std::vector<std::pair<InternalExpr, InternalExpr>> cases{
      {sin(var()), sin(s)}, {exp(var()), exp(s)}, {ipow(var(), 2) + cos(var()), ipow(s, 2) + cos(s)}};
  for (const auto& [f, composed] : cases) {
    ASSERT_EQ(s_continuity(f, 0.5).kind, VerdictKind::Proved);
    EXPECT_NE(s_convergence(composed, eval_at(f, real(0.5))).kind, VerdictKind::Refuted);
  }
}

TEST(Continuity, LimitedPoints) {
  EXPECT_FALSE(limited_point(recip(kEps), real(0)));
  EXPECT_TRUE(limited_point(real(5) + kEps, real(3)));
  EXPECT_TRUE(limited_point(recip(kEps), recip(kEps) + real(7)));
  for (double p : {-3.0, 0.0, 2.5}) {
    for (const HyperReal& x : {recip(kEps), real(4) + kEps, kEps, -recip(kEps * kEps)}) {
      EXPECT_EQ(limited_point(x, real(p)), limited_point(x, real(0)));
    }
  }
}

TEST(Continuity, Shadow) {
  std::vector<double> grid;
  for (int i = -20; i <= 20; ++i) grid.push_back(i * 0.1);
  const ShadowResult s = shadow(sin(var() + constant(kEps)), grid);
  ASSERT_TRUE(s.ast.has_value());
  EXPECT_TRUE(structurally_equal(*s.ast, sin(var())));
  EXPECT_EQ(s.max_defect, 0.0);
  EXPECT_EQ(equivalent(sin(var() + constant(kEps)), *s.ast, default_corpus()).kind,
            EquivalenceKind::EquivalentNotRefuted);

  const ShadowResult st = shadow(step(2.0, 1.0), grid);
  ASSERT_TRUE(st.ast.has_value());
  EXPECT_TRUE(structurally_equal(*st.ast, constant(2.0)));

  std::vector<double> no_zero;
  for (double p : grid) if (std::abs(p) > 1e-9) no_zero.push_back(p);
  const ShadowResult k = shadow(compressed_indicator(), no_zero);
  EXPECT_FALSE(k.ast.has_value());
  ASSERT_EQ(k.table.size(), no_zero.size());
  for (const auto& [p, v] : k.table) EXPECT_EQ(v, 0.0) << p;
  EXPECT_EQ(kind_of([&] { shadow(compressed_indicator(), grid); }), ErrorKind::NotSContinuousHere);
}

TEST(Continuity, ProductSContinuity) {
  const InternalExpr s = sin(var() + constant(kEps)), c = cos(var() + constant(kEps));
  EXPECT_NE(product_s_continuity(s, c, 0.0).kind, VerdictKind::Refuted);
  EXPECT_NE(product_s_continuity(step(2.0, 1.0), constant(real(2) + kEps), 1.0).kind, VerdictKind::Refuted);
  const Verdict v = product_s_continuity(lambda_sine(), lambda_sine(), 0.0);
  expect_witness_rechecks(mul(lambda_sine(), lambda_sine()), 0.0, v);
}

TEST(Continuity, StandardTreesAgreeWithEpsilonDelta) {
  std::vector<InternalExpr> trees{sin(var()), cos(var()) * exp(var()), ipow(var(), 4), bump(), plateau(1.0),
                                  recip(var() * var() + constant(1.0)), test_ref(TestFn::bump(0.5, 0.5))};
  for (double b : {-0.7, 0.0, 0.2, 0.3, 0.5, 0.9}) trees.push_back(piecewise(var(), CmpOp::Less, constant(b), constant(0.0), constant(1.0)));
  for (int k = 1; k <= 7; ++k) trees.push_back(sin(var() * constant(k)) + ipow(var(), k % 3));
  ASSERT_EQ(trees.size(), 20u);
  for (const InternalExpr& f : trees) {
    for (double p : {-0.7, 0.0, 0.2, 0.3, 0.5}) {
      auto F = [&](double x) { return standard_part(eval_at(f, real(x))); };
      bool continuous = true;
      for (double h : {1e-6, -1e-6, 1e-8, -1e-8}) {
        if (std::abs(F(p + h) - F(p)) > 1e-4) continuous = false;
      }
      const Verdict v = s_continuity(f, p);
      EXPECT_EQ(v.kind == VerdictKind::Refuted, !continuous) << to_string(f) << " at " << p;
    }
  }
}

TEST(Continuity, UnrefutedFunctionsStayLimited) {
  for (const InternalExpr& f : {sin(var() + constant(kEps)), step(2.0, 1.0), cos(var()) * exp(var() * constant(0.1))}) {
    for (int s = -10; s <= 10; ++s) {
      for (const HyperReal& d : MonadProbeSet::defaults().ordered()) {
        EXPECT_NE(classify(eval_at(f, real(s) + d)), NumClass::Infinite);
      }
    }
  }
}

TEST(Continuity, SeminormLaws) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1, 1);
  const SeminormFamily norms;
  const std::vector<TestFn> corpus = default_corpus();
  for (int i = 0; i < 100; ++i) {
    const TestFn& g = corpus[rng() % corpus.size()];
    const TestFn& h = corpus[rng() % corpus.size()];
    const double lam = 3 * u(rng);
    const unsigned k = static_cast<unsigned>(rng() % 3);
    const double ng = norms.seminorm(g, k), nh = norms.seminorm(h, k);
    EXPECT_LE(norms.seminorm(TestFn::lin_comb({{1, g}, {1, h}}), k), ng + nh + 1e-9);
    EXPECT_NEAR(norms.seminorm(TestFn::lin_comb({{lam, g}}), k), std::abs(lam) * ng, 1e-9 * std::max(1.0, ng));
  }
  EXPECT_NEAR(norms.seminorm(TestFn::bump(0, 1), 0), std::exp(-1.0), 1e-15);
  EXPECT_EQ(norms.seminorm(TestFn::zero(), 2), 0.0);
}
