#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hyperdist/error.hpp"
#include "hyperdist/pairing.hpp"
#include "hyperdist/smooth.hpp"
#include "oracles.hpp"

using namespace hyperdist;

namespace {

const HyperReal kEps = HyperReal::epsilon();
HyperReal real(double x) { return HyperReal::from_real(x); }

double coef(const PairingResult& r, ExponentQ e) { return r.value.coefficient(e); }

void expect_series_near(const HyperReal& a, const HyperReal& b, double tol) {
  for (const auto& t : a.terms()) EXPECT_NEAR(t.coef, b.coefficient(t.exp), tol) << t.exp.to_string();
  for (const auto& t : b.terms()) EXPECT_NEAR(t.coef, a.coefficient(t.exp), tol) << t.exp.to_string();
}

}  // namespace

TEST(Pairing, ConstantEpsilon) {
  const PairingResult r = pair(constant(kEps), TestFn::bump(0, 1));
  EXPECT_EQ(r.status, PairingStatus::Infinitesimal);
  EXPECT_EQ(r.value.leading_exponent(), ExponentQ(1));
  EXPECT_NEAR(r.value.leading_coefficient(), oracle::kBumpIntegral, 1e-10);
  EXPECT_EQ(r.value.terms().size(), 1u);
  EXPECT_EQ(to_string(r.status), "INFINITESIMAL");
}

TEST(Pairing, DiracReproducesPointValue) {
  const TestFn b = TestFn::bump(0, 1);
  const PairingResult r = pair(make_dirac(), b);
  EXPECT_EQ(r.status, PairingStatus::Limited);
  EXPECT_EQ(r.form, PairingForm::Mollified);
  EXPECT_NEAR(standard_part(r.value), oracle::kInvE, 1e-10);
  // (m2/2) g''(0) with g''(0) = -2/e, and (m4/24) g''''(0) with g''''(0) = -12/e.
  EXPECT_NEAR(coef(r, ExponentQ(2)), -oracle::kNormalizedSecondMoment * oracle::kInvE, 1e-10);
  const double m4 = oracle::kBumpFourthMoment / oracle::kBumpIntegral;
  EXPECT_NEAR(coef(r, ExponentQ(4)), -m4 * oracle::kInvE / 2, 1e-10);
  EXPECT_NEAR(coef(r, ExponentQ(1)), 0.0, 1e-10);
  EXPECT_NEAR(coef(r, ExponentQ(3)), 0.0, 1e-10);
  EXPECT_NEAR(oracle::kBumpSecondMoment / oracle::kBumpIntegral, oracle::kNormalizedSecondMoment, 1e-15);
}

TEST(Pairing, DiracAgainstShiftedAndPolynomialTests) {
  const std::vector<TestFn> gs{TestFn::bump(0.3, 0.5), TestFn::poly_mod({2, -1, 0, 1}, TestFn::bump(0, 1)),
                               TestFn::plateau(0.5, 1.0), TestFn::bump(-1.5, 2.0)};
  for (const TestFn& g : gs) {
    const PairingResult r = pair(make_dirac(), g);
    EXPECT_NEAR(standard_part(r.value), g(0.0), 1e-10);
    EXPECT_NEAR(coef(r, ExponentQ(2)), oracle::kNormalizedSecondMoment / 2 * deriv_eval(g, 2, 0.0), 1e-9);
  }
}

TEST(Pairing, DiracIntegratesToOne) {
  const PairingResult r = pair(make_dirac(), TestFn::plateau(1, 2));
  EXPECT_NEAR(standard_part(r.value), 1.0, 1e-12);
  for (const auto& t : r.value.terms()) {
    if (!t.exp.is_zero()) { EXPECT_NEAR(t.coef, 0.0, 1e-12) << t.exp.to_string(); }
  }
}

TEST(Pairing, ShiftedSine) {
  const PairingResult r = pair(sin(var() + constant(kEps)), TestFn::bump(0, 1));
  EXPECT_NEAR(coef(r, ExponentQ(0)), 0.0, 1e-10);
  EXPECT_NEAR(coef(r, ExponentQ(1)), oracle::kCosBumpIntegral, 1e-10);
  EXPECT_NEAR(coef(r, ExponentQ(2)), 0.0, 1e-10);
  EXPECT_NEAR(coef(r, ExponentQ(3)), -oracle::kCosBumpIntegral / 6, 1e-10);
  EXPECT_EQ(r.status, PairingStatus::Infinitesimal);
}

TEST(Pairing, Energies) {
  const PairingResult e1 = energy(constant(kEps), -0.5, 2.0);
  EXPECT_EQ(e1.status, PairingStatus::Infinitesimal);
  EXPECT_NEAR(coef(e1, ExponentQ(2)), 2.5, 1e-12);
  EXPECT_EQ(e1.value.terms().size(), 1u);

  const PairingResult e2 = energy(sin(var() + constant(kEps)), 0, 1);
  EXPECT_EQ(e2.status, PairingStatus::Limited);
  EXPECT_NEAR(standard_part(e2.value), oracle::kSinSquaredUnit, 1e-10);
  EXPECT_NEAR(standard_part(e2.value), (1 - std::sin(2.0) / 2) / 2, 1e-10);

  const PairingResult e3 = energy(make_dirac(), -1, 1);
  EXPECT_EQ(e3.status, PairingStatus::Unlimited);
  EXPECT_EQ(e3.value.leading_exponent(), ExponentQ(-1));
  EXPECT_NEAR(e3.value.leading_coefficient(), oracle::kDiracEnergy, 1e-9);
}

TEST(Pairing, DiracSquaredIsUnlimited) {
  const TestFn g = TestFn::bump(0, 1);
  const PairingResult r = pair(mul(make_dirac(), make_dirac()), g);
  EXPECT_EQ(r.status, PairingStatus::Unlimited);
  EXPECT_EQ(r.value.leading_exponent(), ExponentQ(-1));
  EXPECT_NEAR(r.value.leading_coefficient(), oracle::kDiracEnergy * oracle::kInvE, 1e-9);
}

TEST(Pairing, OscillatoryIsUnsupported) {
  try {
    pair(sin(constant(recip(kEps)) * var()), TestFn::bump(0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedForm);
  }
}

TEST(Pairing, Membership) {
  const std::vector<TestFn> corpus = default_corpus();
  ASSERT_EQ(corpus.size(), 32u);
  const MembershipResult d = member_T(make_dirac(), corpus);
  EXPECT_EQ(d.verdict, MembershipVerdict::Admitted);
  EXPECT_TRUE(d.energy_computable);
  EXPECT_FALSE(d.energy_limited);

  const MembershipResult l = member_T(mul(constant(recip(kEps)), bump()), corpus);
  EXPECT_EQ(l.verdict, MembershipVerdict::Rejected);
  ASSERT_TRUE(l.witness_pairing.has_value());
  EXPECT_EQ(l.witness_pairing->status, PairingStatus::Unlimited);
  ASSERT_TRUE(l.witness.has_value());
  ASSERT_TRUE(l.witness_index.has_value());
  const PairingResult again = pair(mul(constant(recip(kEps)), bump()), *l.witness);
  EXPECT_EQ(again.status, PairingStatus::Unlimited);

  const MembershipResult lb = member_T(mul(constant(recip(kEps)), bump()), {TestFn::bump(0, 1)});
  EXPECT_EQ(lb.verdict, MembershipVerdict::Rejected);
  EXPECT_NEAR(lb.witness_pairing->value.coefficient(ExponentQ(-1)), oracle::kBumpSquaredIntegral, 1e-10);

  EXPECT_EQ(member_T(constant(kEps), corpus).verdict, MembershipVerdict::Admitted);
  EXPECT_EQ(member_T(sin(var() + constant(kEps)), corpus).verdict, MembershipVerdict::Admitted);
}

TEST(Pairing, SchwarzCheck) {
  const TestFn b = TestFn::bump(0, 1);
  const SchwarzCheck c1 = schwarz_check(constant(1.0), b);
  EXPECT_TRUE(c1.holds);
  EXPECT_NEAR(c1.lhs, oracle::kBumpIntegral * oracle::kBumpIntegral, 1e-10);
  EXPECT_NEAR(c1.rhs, 2 * oracle::kBumpSquaredIntegral, 1e-10);
  const SchwarzCheck c2 = schwarz_check(test_ref(b), b);
  EXPECT_TRUE(c2.holds);
  EXPECT_NEAR(c2.lhs, c2.rhs, 1e-10);
  EXPECT_TRUE(schwarz_check(sin(var()), b).holds);
}

TEST(Pairing, Linearity) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2);
  const std::vector<TestFn> corpus = default_corpus();
  const QuadratureConfig cfg;
  for (int i = 0; i < 30; ++i) {
    const InternalExpr f = sin(var() + constant(kEps * u(rng))) * exp(var() * constant(0.3 * u(rng))) +
                           constant(real(u(rng)) + kEps * u(rng));
    const TestFn& g1 = corpus[rng() % corpus.size()];
    const TestFn& g2 = corpus[rng() % corpus.size()];
    const double a = u(rng), b = u(rng);
    const PairingResult lhs = pair(f, TestFn::lin_comb({{a, g1}, {b, g2}}), cfg);
    const HyperReal rhs = pair(f, g1, cfg).value * a + pair(f, g2, cfg).value * b;
    expect_series_near(lhs.value, rhs, 10 * cfg.abs_tol);
  }
}

TEST(Pairing, ModuleLawIsExact) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2, 2);
  const std::vector<TestFn> corpus = default_corpus();
  const std::vector<InternalExpr> fs{sin(var() + constant(kEps)), make_dirac(), constant(kEps), bump(var() * constant(0.5))};
  for (int i = 0; i < 20; ++i) {
    const HyperReal lambda = real(u(rng)) + kEps * u(rng) + HyperReal::monomial(u(rng), ExponentQ(3, 2));
    const InternalExpr& f = fs[i % fs.size()];
    const TestFn& g = corpus[rng() % corpus.size()];
    EXPECT_EQ(pair(mul(constant(lambda), f), g).value, lambda * pair(f, g).value);
  }
}

TEST(Pairing, InnerProductLaws) {
  const std::vector<TestFn> corpus = default_corpus();
  for (std::size_t i = 0; i < corpus.size(); i += 3) {
    for (std::size_t j = 1; j < corpus.size(); j += 5) {
      const double gh = standard_part(pair(test_ref(corpus[i]), corpus[j]).value);
      const double hg = standard_part(pair(test_ref(corpus[j]), corpus[i]).value);
      EXPECT_NEAR(gh, hg, 1e-9);
    }
    EXPECT_GT(standard_part(pair(test_ref(corpus[i]), corpus[i]).value), 0.0);
  }
  const PairingResult z = pair(test_ref(TestFn::zero()), TestFn::zero());
  EXPECT_TRUE(z.value.is_zero() || std::abs(standard_part(z.value)) == 0.0);
}

TEST(Pairing, MollifiedParity) {
  const QuadratureConfig cfg;
  const InternalExpr d = make_dirac();
  // Even g: odd coefficients vanish; odd g: even coefficients vanish.
  const TestFn even = TestFn::poly_mod({1, 0, 3}, TestFn::bump(0, 1.5));
  const TestFn odd = TestFn::poly_mod({0, 1, 0, -2}, TestFn::bump(0, 1.5));
  const PairingResult re = pair(d, even, cfg), ro = pair(d, odd, cfg);
  for (int k = -1; k <= 6; ++k) {
    if (k % 2 != 0) { EXPECT_NEAR(re.value.coefficient(ExponentQ(k)), 0.0, 10 * cfg.abs_tol) << k; }
    if (k % 2 == 0) { EXPECT_NEAR(ro.value.coefficient(ExponentQ(k)), 0.0, 10 * cfg.abs_tol) << k; }
  }
  EXPECT_NEAR(ro.value.coefficient(ExponentQ(0)), 0.0, 10 * cfg.abs_tol);
}

TEST(Pairing, Deterministic) {
  const TestFn g = TestFn::poly_mod({1, 2}, TestFn::bump(0.2, 1.3));
  for (const QuadratureRule rule : {QuadratureRule::GaussKronrod15, QuadratureRule::AdaptiveSimpson}) {
    const QuadratureConfig cfg{1e-10, 2000, rule};
    for (const InternalExpr& f : {sin(var() + constant(kEps)), make_dirac()}) {
      const PairingResult a = pair(f, g, cfg), b = pair(f, g, cfg);
      EXPECT_EQ(a.value, b.value);
      EXPECT_EQ(a.quad_error, b.quad_error);
    }
  }
}

TEST(Pairing, SumFormAndIntegral) {
  const TestFn g = TestFn::bump(0, 1);
  const PairingResult r = pair(add(make_dirac(), constant(kEps)), g);
  EXPECT_EQ(r.form, PairingForm::Sum);
  EXPECT_NEAR(coef(r, ExponentQ(1)), oracle::kBumpIntegral, 1e-10);
  EXPECT_NEAR(standard_part(integral(bump(), -1, 1).value), oracle::kBumpIntegral, 1e-10);
  EXPECT_NEAR(standard_part(integral(make_dirac(), -1, 1).value), 1.0, 1e-12);
}
