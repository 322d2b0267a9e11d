#include "hyperdist/continuity.hpp"

#include <cmath>
#include <numbers>

#include "hyperdist/detail/overloaded.hpp"
#include "hyperdist/error.hpp"

namespace hyperdist {

namespace n = expr_nodes;

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Refuted: return "REFUTED";
    case VerdictKind::NotRefuted: return "NOT_REFUTED";
    case VerdictKind::Proved: return "PROVED";
  }
  return "?";
}

namespace {

bool is_infinitesimal_nonzero(const HyperReal& h) {
  return !h.is_zero() && h.leading_exponent().sign() > 0;
}

bool is_infinite(const HyperReal& h) {
  return !h.is_zero() && h.leading_exponent().sign() < 0;
}

void push_unique(std::vector<HyperReal>& out, const HyperReal& h) {
  for (const HyperReal& x : out) {
    if (x == h) return;
  }
  out.push_back(h);
}

void push_symmetric(std::vector<HyperReal>& out, const HyperReal& h) {
  push_unique(out, h);
  push_unique(out, -h);
}

}  // namespace

MonadProbeSet MonadProbeSet::defaults(const TruncationPolicy& policy) {
  MonadProbeSet s;
  const auto mono = [&](double c, ExponentQ e) { return HyperReal::monomial(c, e, policy); };
  for (const HyperReal& d : {mono(1.0, ExponentQ(1)), mono(2.0, ExponentQ(1)), mono(0.5, ExponentQ(1)),
                             mono(1.0, ExponentQ(2)), mono(1.0, ExponentQ(3, 2)),
                             mono(1.0, ExponentQ(1, 2))}) {
    push_symmetric(s.deltas, d);
  }
  return s;
}

MonadProbeSet MonadProbeSet::for_expr(const InternalExpr& f, const TruncationPolicy& policy) {
  MonadProbeSet s = defaults(policy);
  const auto add_scale = [&](const HyperReal& c) {
    const HyperReal a = abs(c);
    push_symmetric(s.extra, a * 0.5);
    push_symmetric(s.extra, a);
  };
  any_node(f, [&](const InternalExpr& e) {
    const auto& v = e.node().value;
    if (const auto* p = std::get_if<n::Piecewise>(&v)) {
      for (const InternalExpr* side : {&p->lhs, &p->rhs}) {
        any_node(*side, [&](const InternalExpr& x) {
          if (const auto* c = std::get_if<n::Const>(&x.node().value); c && is_infinitesimal_nonzero(c->value)) {
            add_scale(c->value);
          }
          return false;
        });
      }
    } else if (const auto* m = std::get_if<n::Mollify>(&v); m && is_infinitesimal_nonzero(m->scale)) {
      add_scale(m->scale);
    } else if (const auto* mul = std::get_if<n::Mul>(&v)) {
      const auto* cl = std::get_if<n::Const>(&mul->lhs.node().value);
      const auto* cr = std::get_if<n::Const>(&mul->rhs.node().value);
      const bool vl = std::holds_alternative<n::Var>(mul->lhs.node().value);
      const bool vr = std::holds_alternative<n::Var>(mul->rhs.node().value);
      const n::Const* lambda = (cl && vr) ? cl : (cr && vl) ? cr : nullptr;
      if (lambda && is_infinite(lambda->value)) {
        push_symmetric(s.extra, abs(recip(lambda->value)) * (std::numbers::pi / 2.0));
      }
    }
    return false;
  });
  return s;
}

std::vector<HyperReal> MonadProbeSet::ordered() const {
  std::vector<HyperReal> out;
  for (const HyperReal& h : extra) push_unique(out, h);
  for (const HyperReal& h : deltas) push_unique(out, h);
  return out;
}

namespace {

struct Proof {
  bool ok = false;
  bool used_jump = false;
};

Proof combine(std::initializer_list<Proof> parts) {
  Proof out{true, false};
  for (const Proof& p : parts) {
    out.ok = out.ok && p.ok;
    out.used_jump = out.used_jump || p.used_jump;
  }
  return out;
}

// S-continuity at the point x by whitelisted rules: compositions of
// continuous nodes with limited constants, and Piecewise nodes that are
// either away from their boundary or jump only infinitesimally there.
Proof s_continuous_at(const InternalExpr& f, const HyperReal& x) {
  return std::visit(
      detail::Overloaded{
          [](const n::Var&) { return Proof{true, false}; },
          [](const n::Const& c) { return Proof{!is_infinite(c.value), false}; },
          [&](const n::Add& a) { return combine({s_continuous_at(a.lhs, x), s_continuous_at(a.rhs, x)}); },
          [&](const n::Mul& m) { return combine({s_continuous_at(m.lhs, x), s_continuous_at(m.rhs, x)}); },
          [&](const n::Neg& a) { return s_continuous_at(a.arg, x); },
          [&](const n::IntPow& p) { return s_continuous_at(p.arg, x); },
          [&](const n::Recip& r) {
            Proof p = s_continuous_at(r.arg, x);
            if (p.ok) p.ok = classify(eval_at(r.arg, x)) == NumClass::Appreciable;
            return p;
          },
          [&](const n::Sin& a) { return s_continuous_at(a.arg, x); },
          [&](const n::Cos& a) { return s_continuous_at(a.arg, x); },
          [&](const n::Exp& a) { return s_continuous_at(a.arg, x); },
          [&](const n::Bump& b) { return s_continuous_at(b.arg, x); },
          [&](const n::Plateau& p) { return s_continuous_at(p.arg, x); },
          [](const n::TestRef&) { return Proof{true, false}; },
          [&](const n::Mollify& m) {
            if (is_infinitesimal_nonzero(m.scale)) {
              // Vanishes on the monad of any point away from the origin.
              const bool away = classify(x) == NumClass::Appreciable || classify(x) == NumClass::Infinite;
              return Proof{away && expr_support(m.base).has_value(), false};
            }
            if (!m.scale.is_real() || is_infinite(m.amplitude)) return Proof{false, false};
            return s_continuous_at(m.base, x * recip(m.scale));
          },
          [&](const n::Piecewise& p) {
            Proof ops = combine({s_continuous_at(p.lhs, x), s_continuous_at(p.rhs, x)});
            if (!ops.ok) return ops;
            const HyperReal gap = eval_at(p.lhs, x) - eval_at(p.rhs, x);
            const NumClass c = classify(gap);
            if (c == NumClass::Appreciable || c == NumClass::Infinite) {
              const int s = compare(gap, HyperReal(gap.policy())) < 0 ? -1 : 1;
              bool take_then = false;
              switch (p.op) {
                case CmpOp::Less:
                case CmpOp::LessEq: take_then = s < 0; break;
                case CmpOp::Greater:
                case CmpOp::GreaterEq: take_then = s > 0; break;
              }
              return combine({ops, s_continuous_at(take_then ? p.then_branch : p.else_branch, x)});
            }
            Proof both = combine({ops, s_continuous_at(p.then_branch, x), s_continuous_at(p.else_branch, x)});
            if (!both.ok) return both;
            both.ok = infinitely_close(eval_at(p.then_branch, x), eval_at(p.else_branch, x));
            both.used_jump = true;
            return both;
          },
      },
      f.node().value);
}

}  // namespace

Verdict s_continuity(const InternalExpr& f, double p, const MonadProbeSet& probes) {
  const std::vector<HyperReal> order = probes.ordered();
  const TruncationPolicy policy = order.empty() ? TruncationPolicy{} : order.front().policy();
  const HyperReal at = HyperReal::from_real(p, policy);
  const HyperReal base = eval_at(f, at);
  for (const HyperReal& d : order) {
    const HyperReal v = eval_at(f, at + d);
    if (!infinitely_close(v, base)) {
      return Verdict{VerdictKind::Refuted, d, {v, base}, "probe value not infinitely close", {}};
    }
  }
  Proof proof;
  try {
    proof = s_continuous_at(f, at);
  } catch (const Error&) {
    proof.ok = false;
  }
  if (proof.ok) {
    return Verdict{VerdictKind::Proved, std::nullopt, {},
                   proof.used_jump ? "infinitesimal-jump" : "limited-smooth composition", {}};
  }
  return Verdict{VerdictKind::NotRefuted, std::nullopt, {}, "no probe refutes; no structural rule applies", {}};
}

Verdict s_continuity(const InternalExpr& f, double p, const TruncationPolicy& policy) {
  return s_continuity(f, p, MonadProbeSet::for_expr(f, policy));
}

namespace {

Verdict proved(std::string rule) { return Verdict{VerdictKind::Proved, std::nullopt, {}, std::move(rule), {}}; }

Verdict merge(std::initializer_list<Verdict> parts, std::string rule) {
  for (const Verdict& v : parts) {
    if (v.kind == VerdictKind::Refuted) return v;
  }
  for (const Verdict& v : parts) {
    if (v.kind == VerdictKind::NotRefuted) return v;
  }
  std::string r = std::move(rule);
  for (const Verdict& v : parts) {
    if (v.rule == "matching branches" || v.rule == "branch interior") r = v.rule;
  }
  return proved(std::move(r));
}

Verdict star_at(const InternalExpr& f, const HyperReal& q) {
  return std::visit(
      detail::Overloaded{
          [](const n::Var&) { return proved("analytic path"); },
          [](const n::Const&) { return proved("analytic path"); },
          [&](const n::Add& a) { return merge({star_at(a.lhs, q), star_at(a.rhs, q)}, "analytic path"); },
          [&](const n::Mul& m) { return merge({star_at(m.lhs, q), star_at(m.rhs, q)}, "analytic path"); },
          [&](const n::Neg& a) { return star_at(a.arg, q); },
          [&](const n::IntPow& p) { return star_at(p.arg, q); },
          [&](const n::Recip& r) {
            if (eval_at(r.arg, q).is_zero()) {
              return Verdict{VerdictKind::NotRefuted, std::nullopt, {}, "reciprocal of zero", {}};
            }
            return star_at(r.arg, q);
          },
          [&](const n::Sin& a) { return star_at(a.arg, q); },
          [&](const n::Cos& a) { return star_at(a.arg, q); },
          [&](const n::Exp& a) { return star_at(a.arg, q); },
          [&](const n::Bump& b) { return merge({star_at(b.arg, q)}, "smooth composite"); },
          [&](const n::Plateau& p) { return merge({star_at(p.arg, q)}, "smooth composite"); },
          [](const n::TestRef&) { return proved("smooth composite"); },
          [&](const n::Mollify& m) {
            return merge({star_at(m.base, q * recip(m.scale))}, "smooth composite");
          },
          [&](const n::Piecewise& p) {
            const Verdict ops = merge({star_at(p.lhs, q), star_at(p.rhs, q)}, "analytic path");
            if (ops.kind != VerdictKind::Proved) return ops;
            const HyperReal gap = eval_at(p.lhs, q) - eval_at(p.rhs, q);
            if (!gap.is_zero()) {
              const bool neg = compare(gap, HyperReal(gap.policy())) < 0;
              const bool take_then = (p.op == CmpOp::Less || p.op == CmpOp::LessEq) ? neg : !neg;
              Verdict v = star_at(take_then ? p.then_branch : p.else_branch, q);
              if (v.kind == VerdictKind::Proved) v.rule = "branch interior";
              return v;
            }
            const HyperReal t = eval_at(p.then_branch, q);
            const HyperReal e = eval_at(p.else_branch, q);
            if (!(t == e)) {
              return Verdict{VerdictKind::Refuted, q, {t, e}, "branch gap at the boundary", {}};
            }
            Verdict v = merge({star_at(p.then_branch, q), star_at(p.else_branch, q)}, "matching branches");
            if (v.kind == VerdictKind::Proved) v.rule = "matching branches";
            return v;
          },
      },
      f.node().value);
}

}  // namespace

Verdict star_continuity(const InternalExpr& f, const HyperReal& q) {
  try {
    return star_at(f, q);
  } catch (const Error& e) {
    return Verdict{VerdictKind::NotRefuted, std::nullopt, {}, std::string("evaluation failed: ") + e.what(), {}};
  }
}

Verdict s_convergence(const InternalExpr& s, const HyperReal& q, std::vector<HyperReal> omegas) {
  if (omegas.empty()) {
    const TruncationPolicy& policy = q.policy();
    const HyperReal inv = HyperReal::monomial(1.0, ExponentQ(-1), policy);
    omegas = {inv, inv * 2.0, HyperReal::monomial(1.0, ExponentQ(-2), policy)};
  }
  Verdict out{VerdictKind::NotRefuted, std::nullopt, {}, "every infinite index lands in the monad", {}};
  for (const HyperReal& w : omegas) {
    if (!is_infinite(w)) throw Error(ErrorKind::InvalidArgument, "omega must be infinite: " + to_string(w));
    const HyperReal v = eval_at(s, w);
    if (!infinitely_close(v, q)) {
      out = Verdict{VerdictKind::Refuted, w, {v, q}, "s at an infinite index is not infinitely close", {}};
      break;
    }
  }
  if (is_standard(s) && q.is_real()) {
    // Standard characterization on the ladder n = 10^k: the distance to q
    // must fall below a small bound and keep falling.
    const double target = q.coefficient(ExponentQ(0));
    std::vector<double> dist;
    for (int k = 2; k <= 7; ++k) {
      const double nk = std::pow(10.0, k);
      dist.push_back(std::abs(standard_part(eval_at(s, HyperReal::from_real(nk, q.policy()))) - target));
    }
    bool shrinking = dist.back() < 1e-3;
    for (std::size_t i = dist.size() / 2; i + 1 < dist.size(); ++i) shrinking = shrinking && dist[i + 1] <= dist[i];
    out.crosscheck = shrinking == (out.kind != VerdictKind::Refuted);
  }
  return out;
}

bool limited_point(const HyperReal& x, const HyperReal& q) {
  return classify(abs(x - q)) != NumClass::Infinite;
}

ShadowResult shadow(const InternalExpr& f, const std::vector<double>& grid,
                    const TruncationPolicy& policy) {
  ShadowResult out;
  for (double p : grid) {
    const Verdict v = s_continuity(f, p, policy);
    if (v.kind == VerdictKind::Refuted) {
      throw Error(ErrorKind::NotSContinuousHere,
                  "S-continuity refuted at grid point " + std::to_string(p) + " with probe " +
                      to_string(*v.witness));
    }
    out.table.emplace_back(p, standard_part(eval_at(f, HyperReal::from_real(p, policy))));
  }
  try {
    out.ast = shadow_ast(f);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotShadowable) throw;
    return out;
  }
  for (const auto& [p, value] : out.table) {
    const double shadow_value = standard_part(eval_at(*out.ast, HyperReal::from_real(p, policy)));
    out.max_defect = std::max(out.max_defect, std::abs(shadow_value - value));
  }
  return out;
}

Verdict product_s_continuity(const InternalExpr& f, const InternalExpr& h, double p,
                             const TruncationPolicy& policy) {
  return s_continuity(mul(f, h), p, policy);
}

double SeminormFamily::seminorm(const TestFn& g, unsigned k) const {
  const SupportInterval s = g.support();
  const auto first = static_cast<long long>(std::ceil(s.lo / lattice_step));
  const auto last = static_cast<long long>(std::floor(s.hi / lattice_step));
  double m = 0.0;
  for (long long i = first; i <= last; ++i) {
    m = std::max(m, std::abs(deriv_eval(g, k, static_cast<double>(i) * lattice_step)));
  }
  return m;
}

double SeminormFamily::max_seminorm(const TestFn& g) const {
  double m = 0.0;
  for (unsigned k = 0; k <= k_max; ++k) m = std::max(m, seminorm(g, k));
  return m;
}

}  // namespace hyperdist
