#include "hyperdist/pairing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hyperdist/error.hpp"

namespace hyperdist {

namespace n = expr_nodes;

std::string_view to_string(PairingStatus s) {
  switch (s) {
    case PairingStatus::Limited: return "LIMITED";
    case PairingStatus::Infinitesimal: return "INFINITESIMAL";
    case PairingStatus::Unlimited: return "UNLIMITED";
  }
  return "?";
}

std::string_view to_string(PairingForm f) {
  switch (f) {
    case PairingForm::Regular: return "REGULAR";
    case PairingForm::Mollified: return "MOLLIFIED";
    case PairingForm::Sum: return "SUM";
  }
  return "?";
}

std::string_view to_string(MembershipVerdict v) {
  return v == MembershipVerdict::Admitted ? "ADMITTED" : "REJECTED";
}

PairingStatus status_of(const HyperReal& value) {
  switch (classify(value)) {
    case NumClass::Infinite: return PairingStatus::Unlimited;
    case NumClass::Appreciable: return PairingStatus::Limited;
    default: return PairingStatus::Infinitesimal;
  }
}

namespace {

constexpr std::size_t kMaxProductTerms = 4096;

struct ProductTerm {
  HyperReal scalar;
  std::vector<InternalExpr> factors;
};

bool is_infinitesimal_mollifier(const InternalExpr& e) {
  const auto* m = std::get_if<n::Mollify>(&e.node().value);
  return m && !m->scale.is_real();
}

bool contains_infinitesimal_mollifier(const InternalExpr& e) {
  return any_node(e, is_infinitesimal_mollifier);
}

bool has_infinite_constant(const InternalExpr& e) {
  return any_node(e, [](const InternalExpr& x) {
    const auto* c = std::get_if<n::Const>(&x.node().value);
    return c && !c->value.is_zero() && c->value.leading_exponent().sign() < 0;
  });
}

void reject_unlimited_oscillation(const InternalExpr& f) {
  any_node(f, [&](const InternalExpr& e) {
    const InternalExpr* arg = nullptr;
    if (const auto* s = std::get_if<n::Sin>(&e.node().value)) arg = &s->arg;
    if (const auto* c = std::get_if<n::Cos>(&e.node().value)) arg = &c->arg;
    if (const auto* x = std::get_if<n::Exp>(&e.node().value)) arg = &x->arg;
    if (arg && contains_var(*arg) && has_infinite_constant(*arg)) {
      throw Error(ErrorKind::UnsupportedForm,
                  "oscillatory or exponential factor with unlimited frequency: " + to_string(e));
    }
    return false;
  });
}

std::vector<ProductTerm> flatten(const InternalExpr& f, const TruncationPolicy& policy) {
  using Terms = std::vector<ProductTerm>;
  const HyperReal one = HyperReal::from_real(1.0, policy);
  auto product = [&](const Terms& a, const Terms& b) {
    if (a.size() * b.size() > kMaxProductTerms) {
      throw Error(ErrorKind::UnsupportedForm, "normal form too large");
    }
    Terms out;
    out.reserve(a.size() * b.size());
    for (const ProductTerm& x : a) {
      for (const ProductTerm& y : b) {
        ProductTerm t{x.scalar * y.scalar, x.factors};
        t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
        out.push_back(std::move(t));
      }
    }
    return out;
  };
  const auto& v = f.node().value;
  if (const auto* c = std::get_if<n::Const>(&v)) return {ProductTerm{c->value, {}}};
  if (const auto* a = std::get_if<n::Add>(&v)) {
    Terms l = flatten(a->lhs, policy);
    Terms r = flatten(a->rhs, policy);
    l.insert(l.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    return l;
  }
  if (const auto* ng = std::get_if<n::Neg>(&v)) {
    Terms t = flatten(ng->arg, policy);
    for (ProductTerm& p : t) p.scalar = -p.scalar;
    return t;
  }
  if (const auto* m = std::get_if<n::Mul>(&v)) {
    return product(flatten(m->lhs, policy), flatten(m->rhs, policy));
  }
  if (const auto* p = std::get_if<n::IntPow>(&v); p && contains_infinitesimal_mollifier(p->arg)) {
    Terms acc{ProductTerm{one, {}}};
    const Terms base = flatten(p->arg, policy);
    for (unsigned i = 0; i < p->n; ++i) acc = product(acc, base);
    return acc;
  }
  return {ProductTerm{one, {f}}};
}

/// Roots of Piecewise conditions; all must be standard and affine.
void collect_breakpoints(const InternalExpr& f, std::vector<double>& out) {
  any_node(f, [&](const InternalExpr& e) {
    const auto* p = std::get_if<n::Piecewise>(&e.node().value);
    if (!p) return false;
    const InternalExpr diff = sub(p->lhs, p->rhs);
    if (!contains_var(diff)) return false;
    auto aff = affine_in_var(diff);
    if (!aff) {
      throw Error(ErrorKind::UnsupportedForm,
                  "piecewise condition is not affine with standard constants: " + to_string(e));
    }
    if (aff->first != 0.0) out.push_back(-aff->second / aff->first);
    return false;
  });
}

std::vector<double> split_points(double lo, double hi, std::vector<double> breaks) {
  std::vector<double> pts{lo};
  std::sort(breaks.begin(), breaks.end());
  for (double b : breaks) {
    if (b > pts.back() && b < hi) pts.push_back(b);
  }
  pts.push_back(hi);
  return pts;
}

struct Domain {
  double lo;
  double hi;
  const TestFn* weight;  // null means weight 1
};

struct TermValue {
  HyperReal value;
  double error;
};

HyperReal product_at(const std::vector<InternalExpr>& factors, const HyperReal& x,
                     const TruncationPolicy& policy) {
  HyperReal v = HyperReal::from_real(1.0, policy);
  for (const InternalExpr& f : factors) {
    v *= eval_at(f, x);
    if (v.is_zero()) break;
  }
  return v;
}

TermValue regular_term(const ProductTerm& term, const Domain& dom, const QuadratureConfig& cfg,
                       const TruncationPolicy& policy) {
  double lo = dom.lo;
  double hi = dom.hi;
  std::vector<double> breaks;
  for (const InternalExpr& f : term.factors) {
    if (auto s = expr_support(f)) {
      lo = std::max(lo, s->lo);
      hi = std::min(hi, s->hi);
    }
    collect_breakpoints(f, breaks);
  }
  const HyperReal zero(policy);
  if (!(lo < hi) || term.scalar.is_zero()) return {zero, 0.0};
  const std::vector<double> pts = split_points(lo, hi, std::move(breaks));
  auto integrand = [&](double x) {
    const double w = dom.weight ? (*dom.weight)(x) : 1.0;
    if (w == 0.0) return zero;
    return product_at(term.factors, HyperReal::from_real(x, policy), policy) * w;
  };
  QuadResult<HyperReal> r = integrate_checked<HyperReal>(integrand, pts, cfg, zero);
  return {term.scalar * r.value, r.error};
}

TermValue mollified_term(const ProductTerm& term, const Domain& dom, const QuadratureConfig& cfg,
                         const TruncationPolicy& policy) {
  std::vector<InternalExpr> bases;
  std::vector<InternalExpr> regular;
  std::optional<HyperReal> scale;
  HyperReal amplitude = HyperReal::from_real(1.0, policy);
  for (const InternalExpr& f : term.factors) {
    if (is_infinitesimal_mollifier(f)) {
      const auto& m = std::get<n::Mollify>(f.node().value);
      if (scale && !(*scale == m.scale)) {
        throw Error(ErrorKind::UnsupportedForm, "product of mollifiers with different scales");
      }
      scale = m.scale;
      amplitude *= m.amplitude;
      bases.push_back(m.base);
    } else if (contains_infinitesimal_mollifier(f)) {
      throw Error(ErrorKind::UnsupportedForm,
                  "infinitesimal-scale mollifier inside a nonlinear node: " + to_string(f));
    } else {
      regular.push_back(f);
    }
  }
  const HyperReal zero(policy);
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  std::vector<double> breaks{0.0};
  for (const InternalExpr& b : bases) {
    auto s = expr_support(b);
    if (!s) throw Error(ErrorKind::UnsupportedForm, "mollifier base without compact support");
    lo = std::max(lo, s->lo);
    hi = std::min(hi, s->hi);
    collect_breakpoints(b, breaks);
  }
  // x = scale * u is infinitesimal, so a standard domain cuts u only at 0.
  if (dom.lo > 0.0 || dom.hi < 0.0) return {zero, 0.0};
  if (dom.lo == 0.0) lo = std::max(lo, 0.0);
  if (dom.hi == 0.0) hi = std::min(hi, 0.0);
  if (!(lo < hi) || term.scalar.is_zero()) return {zero, 0.0};

  const HyperReal& sigma = *scale;
  const std::vector<double> pts = split_points(lo, hi, std::move(breaks));
  auto integrand = [&](double u) {
    HyperReal v = product_at(bases, HyperReal::from_real(u, policy), policy);
    if (v.is_zero()) return zero;
    const HyperReal x = sigma * u;
    if (!regular.empty()) v *= product_at(regular, x, policy);
    if (dom.weight) v *= dom.weight->at(x);
    return v;
  };
  QuadResult<HyperReal> r = integrate_checked<HyperReal>(integrand, pts, cfg, zero);
  return {term.scalar * sigma * amplitude * r.value, r.error};
}

PairingResult integrate_over(const InternalExpr& f, const Domain& dom, const QuadratureConfig& cfg,
                             const TruncationPolicy& policy) {
  // Leading constant multipliers are applied last so that pairing a scaled
  // function equals scaling the pairing exactly.
  if (const auto* m = std::get_if<n::Mul>(&f.node().value)) {
    const InternalExpr* scalar = nullptr;
    const InternalExpr* rest = nullptr;
    if (std::holds_alternative<n::Const>(m->lhs.node().value)) {
      scalar = &m->lhs;
      rest = &m->rhs;
    } else if (std::holds_alternative<n::Const>(m->rhs.node().value)) {
      scalar = &m->rhs;
      rest = &m->lhs;
    }
    if (scalar) {
      PairingResult r = integrate_over(*rest, dom, cfg, policy);
      r.value = std::get<n::Const>(scalar->node().value).value * r.value;
      r.status = status_of(r.value);
      return r;
    }
  }
  if (const auto* ng = std::get_if<n::Neg>(&f.node().value)) {
    PairingResult r = integrate_over(ng->arg, dom, cfg, policy);
    r.value = -r.value;
    return r;
  }

  reject_unlimited_oscillation(f);
  const std::vector<ProductTerm> terms = flatten(f, policy);
  PairingResult out{HyperReal(policy), PairingStatus::Infinitesimal, 0.0, PairingForm::Regular};
  bool any_regular = false;
  bool any_mollified = false;
  for (const ProductTerm& t : terms) {
    const bool mollified = std::any_of(t.factors.begin(), t.factors.end(),
                                       [](const InternalExpr& e) { return is_infinitesimal_mollifier(e); });
    TermValue v;
    try {
      v = mollified ? mollified_term(t, dom, cfg, policy) : regular_term(t, dom, cfg, policy);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnsupportedEvaluation) throw;
      throw Error(ErrorKind::UnsupportedForm, std::string("integrand not evaluable: ") + e.what());
    }
    (mollified ? any_mollified : any_regular) = true;
    out.value += v.value;
    out.quad_error += v.error;
  }
  out.form = any_regular && any_mollified ? PairingForm::Sum
             : any_mollified              ? PairingForm::Mollified
                                          : PairingForm::Regular;
  out.status = status_of(out.value);
  return out;
}

}  // namespace

PairingResult pair(const InternalExpr& f, const TestFn& g, const QuadratureConfig& cfg,
                   const TruncationPolicy& policy) {
  cfg.validate();
  const SupportInterval s = g.support();
  return integrate_over(f, Domain{s.lo, s.hi, &g}, cfg, policy);
}

PairingResult energy(const InternalExpr& f, double c, double d, const QuadratureConfig& cfg,
                     const TruncationPolicy& policy) {
  if (!(c <= d)) throw Error(ErrorKind::InvalidArgument, "energy interval needs c <= d");
  cfg.validate();
  return integrate_over(mul(f, f), Domain{c, d, nullptr}, cfg, policy);
}

PairingResult integral(const InternalExpr& f, double c, double d, const QuadratureConfig& cfg,
                       const TruncationPolicy& policy) {
  if (!(c <= d)) throw Error(ErrorKind::InvalidArgument, "integration interval needs c <= d");
  cfg.validate();
  return integrate_over(f, Domain{c, d, nullptr}, cfg, policy);
}

std::vector<TestFn> default_corpus() {
  std::vector<TestFn> out;
  for (double c : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    for (double h : {0.25, 0.5, 1.0, 2.0}) out.push_back(TestFn::bump(c, h));
  }
  for (double c : {-1.0, 0.0, 1.0}) {
    for (std::size_t k = 1; k <= 4; ++k) {
      std::vector<double> coeffs(k + 1, 0.0);
      coeffs[k] = 1.0;
      out.push_back(TestFn::poly_mod(std::move(coeffs), TestFn::bump(c, 1.0)));
    }
  }
  return out;
}

MembershipResult member_T(const InternalExpr& f, const std::vector<TestFn>& corpus,
                          const QuadratureConfig& cfg, const TruncationPolicy& policy) {
  if (corpus.empty()) throw Error(ErrorKind::InvalidArgument, "membership corpus is empty");
  MembershipResult out;
  for (auto [c, d] : std::array<std::pair<double, double>, 3>{{{-1.0, 1.0}, {-4.0, 4.0}, {-10.0, 10.0}}}) {
    EnergyProbe probe{c, d, std::nullopt, {}};
    try {
      probe.result = energy(f, c, d, cfg, policy);
      if (probe.result->status == PairingStatus::Unlimited) out.energy_limited = false;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::QuadratureFailure) throw;
      probe.failure = e.what();
      out.energy_computable = false;
      if (!out.witness_interval) out.witness_interval = std::pair{c, d};
    }
    out.energies.push_back(std::move(probe));
  }
  if (!out.energy_computable) {
    out.verdict = MembershipVerdict::Rejected;
    out.reason = "square integral is not *R-valued on a limited interval";
    return out;
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    PairingResult r = pair(f, corpus[i], cfg, policy);
    if (r.status == PairingStatus::Unlimited) {
      out.verdict = MembershipVerdict::Rejected;
      out.witness = corpus[i];
      out.witness_index = i;
      out.witness_pairing = std::move(r);
      out.reason = "pairing with a corpus test function is unlimited";
      return out;
    }
  }
  out.reason = "no corpus member or sampled interval refutes membership";
  return out;
}

SchwarzCheck schwarz_check(const InternalExpr& f, const TestFn& g, const QuadratureConfig& cfg,
                           const TruncationPolicy& policy) {
  SchwarzCheck out;
  const SupportInterval s = g.support();
  const PairingResult p = pair(f, g, cfg, policy);
  const PairingResult ef = energy(f, s.lo, s.hi, cfg, policy);
  const PairingResult eg = energy(test_ref(g), s.lo, s.hi, cfg, policy);
  if (p.status == PairingStatus::Unlimited || ef.status == PairingStatus::Unlimited) {
    out.diagnostic = "precondition failed: an operand is unlimited";
    return out;
  }
  const double sp = standard_part(p.value);
  out.lhs = sp * sp;
  out.rhs = standard_part(ef.value) * standard_part(eg.value);
  out.holds = out.lhs <= out.rhs + 1e-8;
  out.diagnostic = out.holds ? "inequality holds" : "inequality violated";
  return out;
}

}  // namespace hyperdist
