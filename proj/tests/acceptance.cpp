// Acceptance driver: one [PASS]/[FAIL] line per criterion, nonzero exit on
// any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperdist/continuity.hpp"
#include "hyperdist/error.hpp"
#include "hyperdist/functional.hpp"
#include "hyperdist/legendre.hpp"
#include "hyperdist/pairing.hpp"
#include "oracles.hpp"

using namespace hyperdist;

namespace {

using Clock = std::chrono::steady_clock;

const HyperReal kEps = HyperReal::epsilon();
HyperReal real(double x, const TruncationPolicy& p = {}) { return HyperReal::from_real(x, p); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the first failure message of a criterion.
struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

std::vector<TestFn> dirac_corpus() {
  std::vector<TestFn> c;
  for (double center : {-0.5, -0.2, 0.0, 0.3, 0.6}) c.push_back(TestFn::bump(center, 1.0));
  for (double h : {0.25, 0.5, 2.0}) c.push_back(TestFn::bump(0.1, h));
  for (double f : {0.5, 1.5, 3.0}) c.push_back(TestFn::scale(f, TestFn::bump(0.2, 1.0)));
  for (double s : {-0.4, 0.7}) c.push_back(TestFn::shift(s, TestFn::bump(0.0, 1.2)));
  c.push_back(TestFn::poly_mod({1, 2}, TestFn::bump(0, 1)));
  c.push_back(TestFn::poly_mod({0.5, -1, 3}, TestFn::bump(0.2, 0.8)));
  c.push_back(TestFn::poly_mod({0, 1}, TestFn::bump(0, 1)));
  c.push_back(TestFn::poly_mod({2, 0, 0, 1}, TestFn::bump(-0.3, 1.1)));
  c.push_back(TestFn::poly_mod({-1, 0.5, 0, 0, 1}, TestFn::bump(0.1, 0.9)));
  c.push_back(TestFn::lin_comb({{1.5, TestFn::bump(0, 1)}, {-0.5, TestFn::bump(0.4, 0.6)}}));
  c.push_back(TestFn::plateau(0.5, 1.0));
  return c;
}

Check criterion1() {
  Check ch;
  const GenFunctional d = dirac();
  const std::vector<TestFn> corpus = dirac_corpus();
  ch.require(corpus.size() == 20, "corpus size");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto t0 = Clock::now();
    const double v = apply(d, corpus[i]);
    const double dt = seconds_since(t0);
    const double err = std::abs(v - corpus[i](0.0));
    ch.require(err <= 1e-8, "g#" + std::to_string(i) + " error " + fmt(err));
    ch.require(dt < 1.0, "g#" + std::to_string(i) + " took " + fmt(dt) + " s");
  }
  return ch;
}

Check criterion2() {
  Check ch;
  GenFunctional d = dirac();
  for (unsigned k = 1; k <= 3; ++k) {
    d = derivative(d);
    for (const TestFn& g : dirac_corpus()) {
      const double err = std::abs(apply(d, g) - std::pow(-1.0, k) * deriv_eval(g, k, 0.0));
      ch.require(err <= 1e-6, "k=" + std::to_string(k) + " error " + fmt(err));
    }
  }
  return ch;
}

Check criterion3() {
  Check ch;
  std::mt19937_64 rng(4300);
  std::uniform_real_distribution<double> target(-1, 1), center(-1, 1), width(0.3, 1.0), coef(-1, 1);
  std::uniform_int_distribution<int> size(1, 5);
  const auto t0 = Clock::now();
  for (int inst = 0; inst < 50; ++inst) {
    const int m = size(rng);
    std::vector<TestFn> gs;
    std::vector<double> a;
    for (int j = 0; j < m; ++j) {
      TestFn g = TestFn::bump(center(rng), width(rng));
      if (j % 2 == 1) g = TestFn::poly_mod({coef(rng), coef(rng)}, g);
      gs.push_back(g);
      a.push_back(target(rng));
    }
    try {
      const MatchResult r = match(gs, a, 64);
      const OraclePolynomial o = brute_force_oracle(gs, a, 64);
      const auto pm = functional_values(r.legendre, r.matrix.basis.c, gs);
      const auto po = functional_values(o.legendre, o.c, gs);
      for (int j = 0; j < m; ++j) {
        ch.require(r.residuals[j] <= 1e-6, "instance " + std::to_string(inst) + " residual " + fmt(r.residuals[j]));
        ch.require(std::abs(pm[j] - po[j]) <= 1e-8,
                   "instance " + std::to_string(inst) + " oracle gap " + fmt(std::abs(pm[j] - po[j])));
      }
    } catch (const Error& e) {
      ch.require(false, "instance " + std::to_string(inst) + ": " + e.what());
    }
  }
  const double dt = seconds_since(t0);
  ch.require(dt < 60.0, "suite took " + fmt(dt) + " s");
  return ch;
}

// Small-integer coefficients keep every operation exact in double.
HyperReal random_series(std::mt19937_64& rng, const TruncationPolicy& p, int lo, int hi) {
  std::uniform_int_distribution<int> count(0, 4), ex(lo, hi), c(-5, 5);
  std::vector<Term> terms;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) terms.push_back(Term{ExponentQ(ex(rng)), static_cast<double>(c(rng))});
  return HyperReal::from_terms(std::move(terms), p);
}

Check criterion4() {
  Check ch;
  TruncationPolicy p;
  p.max_order = ExponentQ(12);
  const HyperReal zero(p), one = real(1, p);
  std::mt19937_64 rng(10000);
  for (int i = 0; i < 10000 && ch.ok; ++i) {
    const HyperReal a = random_series(rng, p, -2, 3), b = random_series(rng, p, -2, 3),
                    c = random_series(rng, p, -2, 3);
    ch.require(a + b == b + a && a * b == b * a, "commutativity");
    ch.require((a + b) + c == a + (b + c) && (a * b) * c == a * (b * c), "associativity");
    ch.require(a * (b + c) == a * b + a * c, "distributivity");
    ch.require(a + zero == a && a * one == a && (a + (-a)).is_zero(), "identities");
    if (a < b) {
      ch.require(a + c < b + c, "additive order");
      if (zero < c) ch.require(a * c < b * c, "multiplicative order");
    }
    ch.require((compare(a, b) < 0) == (compare(b, a) > 0), "antisymmetry");
    if (!a.is_zero() && a.terms().size() == 1) {
      const HyperReal m = HyperReal::monomial(std::ldexp(1.0, static_cast<int>(rng() % 7) - 3),
                                              a.leading_exponent(), p);
      ch.require(m * recip(m) == one, "monomial inverse");
    }
    const HyperReal la = random_series(rng, p, 0, 3), lb = random_series(rng, p, 0, 3);
    ch.require(standard_part(la + lb) == standard_part(la) + standard_part(lb), "st additive");
    ch.require(standard_part(la * lb) == standard_part(la) * standard_part(lb), "st multiplicative");
  }
  return ch;
}

Check criterion5() {
  Check ch;
  const QuadratureConfig cfg;
  const double tol = 10 * cfg.abs_tol;
  const std::vector<TestFn> corpus = default_corpus();
  std::mt19937_64 rng(500);
  std::uniform_real_distribution<double> u(-2, 2);
  auto pick = [&] { return corpus[rng() % corpus.size()]; };
  for (int i = 0; i < 200; ++i) {
    const InternalExpr f = sin(var() * constant(u(rng)) + constant(kEps * u(rng))) +
                           constant(real(u(rng)) + kEps * u(rng)) * exp(var() * constant(0.25 * u(rng)));
    const TestFn g1 = pick(), g2 = pick();
    const double a = u(rng), b = u(rng);
    const HyperReal lhs = pair(f, TestFn::lin_comb({{a, g1}, {b, g2}}), cfg).value;
    const HyperReal rhs = pair(f, g1, cfg).value * a + pair(f, g2, cfg).value * b;
    const HyperReal diff = lhs - rhs;
    for (const Term& t : diff.terms()) {
      ch.require(std::abs(t.coef) <= tol, "linearity gap " + fmt(t.coef) + " at instance " + std::to_string(i));
    }
    const HyperReal lambda = real(u(rng)) + kEps * u(rng);
    ch.require(pair(mul(constant(lambda), f), g1, cfg).value == lambda * pair(f, g1, cfg).value,
               "module law at instance " + std::to_string(i));
  }
  for (int i = 0; i < 40; ++i) {
    const TestFn g = pick(), h = pick();
    const double gh = standard_part(pair(test_ref(g), h, cfg).value);
    const double hg = standard_part(pair(test_ref(h), g, cfg).value);
    ch.require(std::abs(gh - hg) <= 1e-9, "symmetry gap " + fmt(gh - hg));
    ch.require(standard_part(pair(test_ref(g), g, cfg).value) > 0.0, "positivity");
  }
  const PairingResult z = pair(test_ref(TestFn::zero()), TestFn::zero(), cfg);
  ch.require(z.value.is_zero() || standard_part(z.value) == 0.0, "zero test function");
  return ch;
}

Check criterion6() {
  Check ch;
  const std::vector<TestFn> corpus = default_corpus();
  ch.require(member_T(constant(kEps), corpus).verdict == MembershipVerdict::Admitted, "Const(eps)");
  ch.require(member_T(sin(var() + constant(kEps)), corpus).verdict == MembershipVerdict::Admitted, "sin(x+eps)");
  ch.require(member_T(make_dirac(), corpus).verdict == MembershipVerdict::Admitted, "dirac");
  const InternalExpr big = mul(constant(recip(kEps)), bump());
  const MembershipResult r = member_T(big, corpus);
  ch.require(r.verdict == MembershipVerdict::Rejected, "(1/eps) bump verdict");
  ch.require(r.witness.has_value() && r.witness_pairing.has_value(), "(1/eps) bump witness");
  if (r.witness) {
    ch.require(pair(big, *r.witness).status == PairingStatus::Unlimited, "witness pairing re-check");
  }
  const MembershipResult rb = member_T(big, {TestFn::bump(0, 1)});
  ch.require(rb.verdict == MembershipVerdict::Rejected && rb.witness_pairing &&
                 std::abs(rb.witness_pairing->value.coefficient(ExponentQ(-1)) - oracle::kBumpSquaredIntegral) < 1e-10,
             "(1/eps) <b, b>");
  return ch;
}

bool refutation_rechecks(const InternalExpr& f, double p, const Verdict& v) {
  if (v.kind != VerdictKind::Refuted || !v.witness) return false;
  if (classify(*v.witness) != NumClass::NonzeroInfinitesimal) return false;
  return !infinitely_close(eval_at(f, real(p) + *v.witness), eval_at(f, real(p)));
}

InternalExpr compressed_indicator() {
  const InternalExpr one = constant(1.0), zero = constant(0.0);
  const InternalExpr punctured =
      piecewise(var(), CmpOp::Less, zero, one, piecewise(var(), CmpOp::Greater, zero, one, zero));
  return piecewise(var(), CmpOp::Less, constant(-kEps), zero,
                   piecewise(var(), CmpOp::Greater, constant(kEps), zero, punctured));
}

Check criterion7() {
  Check ch;
  const InternalExpr ls = sin(mul(constant(recip(kEps)), var()));
  for (const HyperReal& q : {real(0), real(1.5), kEps, recip(kEps)}) {
    ch.require(star_continuity(ls, q).kind == VerdictKind::Proved, "sin(x/eps) *-continuity");
  }
  const Verdict v65 = s_continuity(ls, 0.0);
  ch.require(refutation_rechecks(ls, 0.0, v65), "sin(x/eps) S-continuity refutation");
  ch.require(v65.witness && *v65.witness == kEps * (std::numbers::pi / 2), "witness (pi/2) eps");

  const InternalExpr d = make_dirac();
  for (const HyperReal& q : {real(0), kEps * 0.5, kEps, real(2)}) {
    ch.require(star_continuity(d, q).kind == VerdictKind::Proved, "dirac *-continuity");
  }
  ch.require(refutation_rechecks(d, 0.0, s_continuity(d, 0.0)), "dirac S-continuity refutation");

  const double a = 2.0, b = 1.0;
  const InternalExpr step = piecewise(var(), CmpOp::Less, constant(b), constant(kEps + real(a)), constant(a));
  const Verdict sv = star_continuity(step, real(b));
  ch.require(sv.kind == VerdictKind::Refuted && sv.rule == "branch gap at the boundary", "step *-discontinuity");
  ch.require(sv.values.size() == 2 && sv.values[0] - sv.values[1] == kEps, "step gap equals eps");
  ch.require(s_continuity(step, b).kind == VerdictKind::Proved, "step S-continuity proved");

  const InternalExpr k = compressed_indicator();
  const Verdict kv = s_continuity(k, 0.0);
  ch.require(refutation_rechecks(k, 0.0, kv) && kv.witness && *kv.witness == kEps * 0.5, "indicator refutation");
  std::vector<double> grid;
  for (int i = -20; i <= 20; ++i) if (i != 0) grid.push_back(i * 0.1);
  try {
    const ShadowResult s = shadow(k, grid);
    for (const auto& [p, val] : s.table) ch.require(val == 0.0, "indicator shadow nonzero at " + fmt(p));
  } catch (const Error& e) {
    ch.require(false, std::string("indicator shadow: ") + e.what());
  }
  return ch;
}

Check criterion8() {
  Check ch;
  const InternalExpr f = sin(var() + constant(kEps));
  std::vector<double> grid;
  for (int i = -30; i <= 30; ++i) grid.push_back(i * 0.1);
  const ShadowResult s = shadow(f, grid);
  ch.require(s.ast.has_value() && structurally_equal(*s.ast, sin(var())), "shadow is sin");
  ch.require(s.max_defect == 0.0, "grid defect " + fmt(s.max_defect));
  if (s.ast) {
    ch.require(equivalent(f, *s.ast, default_corpus()).kind == EquivalenceKind::EquivalentNotRefuted,
               "equivalence with the shadow");
  }

  const std::vector<InternalExpr> factors{sin(var()),           cos(var()),
                                          exp(var() * constant(0.5)), ipow(var(), 2),
                                          bump(),                plateau(1.5),
                                          ipow(var(), 3) - var()};
  std::vector<std::pair<InternalExpr, InternalExpr>> pairs;
  for (std::size_t i = 0; i < factors.size() && pairs.size() < 20; ++i)
    for (std::size_t j = i; j < factors.size() && pairs.size() < 20; ++j) pairs.emplace_back(factors[i], factors[j]);
  ch.require(pairs.size() == 20, "pair count");
  const std::vector<TestFn> corpus = default_corpus();
  for (const auto& [u, w] : pairs) {
    const auto du = derivative_tree(u), dw = derivative_tree(w);
    if (!du || !dw) {
      ch.require(false, "no derivative tree for " + to_string(u) + " or " + to_string(w));
      continue;
    }
    const GenFunctional W{w, 0, "", std::nullopt};
    const GenFunctional product = customary_product(u, W);
    for (const TestFn& g : corpus) {
      // (uw)'[g] against u'w[g] + uw'[g].
      const double lhs = apply(derivative(product), g);
      const double rhs = standard_part(pair(mul(*du, w), g).value) + standard_part(pair(mul(u, *dw), g).value);
      ch.require(std::abs(lhs - rhs) <= 1e-7, "Leibniz gap " + fmt(lhs - rhs) + " for " + to_string(u) + ", " + to_string(w));
    }
  }
  return ch;
}

Check criterion9() {
  Check ch;
  const InternalExpr d = make_dirac();
  for (const TestFn& g : {TestFn::bump(0, 1), TestFn::bump(0.2, 0.7), TestFn::plateau(0.5, 1)}) {
    const PairingResult r = pair(mul(d, d), g);
    ch.require(r.status == PairingStatus::Unlimited, "status " + std::string(to_string(r.status)));
    ch.require(!r.value.is_zero() && r.value.leading_exponent() == ExponentQ(-1), "leading exponent");
    ch.require(std::abs(r.value.leading_coefficient() - oracle::kDiracEnergy * g(0.0)) <= 1e-9,
               "leading coefficient");
  }
  return ch;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"Dirac shifting on a 20-function corpus", criterion1},
      {"Dirac derivatives k = 1..3", criterion2},
      {"polynomial matching on 50 random instances", criterion3},
      {"ordered-field and standard-part laws", criterion4},
      {"pairing linearity, module law, inner-product laws", criterion5},
      {"membership verdicts", criterion6},
      {"continuity verdicts with re-verified witnesses", criterion7},
      {"shadow pipeline and Leibniz rule", criterion8},
      {"square of the Dirac mollifier is unlimited", criterion9},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = Clock::now();
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double dt = seconds_since(t0);
    std::printf("[%s] criterion %zu: %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), dt,
                c.ok ? "" : " -- ", c.detail.c_str());
    if (!c.ok) ++failures;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
