#include "hyperdist/expr.hpp"

#include <cmath>
#include <sstream>

#include "hyperdist/detail/overloaded.hpp"
#include "hyperdist/error.hpp"
#include "hyperdist/smooth.hpp"

namespace hyperdist {

namespace n = expr_nodes;
using detail::Overloaded;

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Less: return "<";
    case CmpOp::LessEq: return "<=";
    case CmpOp::GreaterEq: return ">=";
    case CmpOp::Greater: return ">";
  }
  return "?";
}

CmpOp parse_cmp_op(std::string_view text) {
  if (text == "<") return CmpOp::Less;
  if (text == "<=") return CmpOp::LessEq;
  if (text == ">=") return CmpOp::GreaterEq;
  if (text == ">") return CmpOp::Greater;
  throw Error(ErrorKind::ParseError, "unknown comparison '" + std::string(text) + "'");
}

InternalExpr::InternalExpr() {
  static const std::shared_ptr<const Node> var_node = std::make_shared<const Node>(Node{n::Var{}});
  node_ = var_node;
}

InternalExpr InternalExpr::from_node(Node node) {
  if (auto* m = std::get_if<n::Mollify>(&node.value)) {
    const NumClass c = classify(m->scale);
    if (m->scale.is_zero() || m->scale.leading_coefficient() <= 0.0 ||
        (c != NumClass::NonzeroInfinitesimal && c != NumClass::Appreciable)) {
      throw Error(ErrorKind::InvalidArgument,
                  "mollifier scale must be positive and limited, got " + to_string(m->scale));
    }
  }
  if (auto* p = std::get_if<n::Plateau>(&node.value); p && !(p->a > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "plateau width must be positive");
  }
  return InternalExpr(std::make_shared<const Node>(std::move(node)));
}

InternalExpr var() { return InternalExpr(); }
InternalExpr constant(HyperReal value) { return InternalExpr::from_node({n::Const{std::move(value)}}); }
InternalExpr constant(double value, const TruncationPolicy& policy) {
  return constant(HyperReal::from_real(value, policy));
}
InternalExpr add(InternalExpr a, InternalExpr b) { return InternalExpr::from_node({n::Add{std::move(a), std::move(b)}}); }
InternalExpr sub(InternalExpr a, InternalExpr b) { return add(std::move(a), neg(std::move(b))); }
InternalExpr mul(InternalExpr a, InternalExpr b) { return InternalExpr::from_node({n::Mul{std::move(a), std::move(b)}}); }
InternalExpr neg(InternalExpr a) { return InternalExpr::from_node({n::Neg{std::move(a)}}); }
InternalExpr ipow(InternalExpr a, unsigned k) { return InternalExpr::from_node({n::IntPow{std::move(a), k}}); }
InternalExpr recip(InternalExpr a) { return InternalExpr::from_node({n::Recip{std::move(a)}}); }
InternalExpr sin(InternalExpr a) { return InternalExpr::from_node({n::Sin{std::move(a)}}); }
InternalExpr cos(InternalExpr a) { return InternalExpr::from_node({n::Cos{std::move(a)}}); }
InternalExpr exp(InternalExpr a) { return InternalExpr::from_node({n::Exp{std::move(a)}}); }
InternalExpr bump(InternalExpr a) { return InternalExpr::from_node({n::Bump{std::move(a)}}); }
InternalExpr plateau(double a, InternalExpr arg) { return InternalExpr::from_node({n::Plateau{std::move(arg), a}}); }
InternalExpr piecewise(InternalExpr lhs, CmpOp op, InternalExpr rhs, InternalExpr then_branch,
                       InternalExpr else_branch) {
  return InternalExpr::from_node({n::Piecewise{std::move(lhs), op, std::move(rhs),
                                               std::move(then_branch), std::move(else_branch)}});
}
InternalExpr mollify(InternalExpr base, HyperReal scale, HyperReal amplitude) {
  return InternalExpr::from_node({n::Mollify{std::move(base), std::move(scale), std::move(amplitude)}});
}
InternalExpr test_ref(TestFn g) { return InternalExpr::from_node({n::TestRef{std::move(g)}}); }

namespace {

bool is_infinite_exact(const HyperReal& u) {
  return !u.is_zero() && u.leading_exponent().sign() < 0;
}

// Applies a smooth primitive, given by its jet about the standard part, at u.
template <class JetAt>
HyperReal taylor_apply(const HyperReal& u, JetAt&& jet_at) {
  const TruncationPolicy& policy = u.policy();
  const double s = u.coefficient(ExponentQ(0));
  const HyperReal delta = u - HyperReal::from_real(s, policy);
  if (delta.is_zero()) return HyperReal::from_real(jet_at(s, 0)[0], policy);
  return compose(jet_at(s, taylor_order_for(delta)), delta);
}

HyperReal analytic(const HyperReal& u, const char* name, Jet (*fn)(const Jet&)) {
  if (is_infinite_exact(u)) {
    throw Error(ErrorKind::UnsupportedEvaluation,
                std::string(name) + " at infinite argument " + to_string(u));
  }
  return taylor_apply(u, [&](double s, std::size_t k) { return fn(Jet::variable(s, k)); });
}

bool holds(std::strong_ordering c, CmpOp op) {
  switch (op) {
    case CmpOp::Less: return c < 0;
    case CmpOp::LessEq: return c <= 0;
    case CmpOp::GreaterEq: return c >= 0;
    case CmpOp::Greater: return c > 0;
  }
  return false;
}

HyperReal eval_node(const InternalExpr& f, const HyperReal& t, bool& degenerate) {
  const TruncationPolicy& policy = t.policy();
  return std::visit(
      Overloaded{
          [&](const n::Var&) { return t; },
          [&](const n::Const& c) { return c.value; },
          [&](const n::Add& a) { return eval_node(a.lhs, t, degenerate) + eval_node(a.rhs, t, degenerate); },
          [&](const n::Mul& m) { return eval_node(m.lhs, t, degenerate) * eval_node(m.rhs, t, degenerate); },
          [&](const n::Neg& a) { return -eval_node(a.arg, t, degenerate); },
          [&](const n::IntPow& p) { return pow(eval_node(p.arg, t, degenerate), p.n); },
          [&](const n::Recip& r) { return recip(eval_node(r.arg, t, degenerate)); },
          [&](const n::Sin& a) {
            return analytic(eval_node(a.arg, t, degenerate), "sin",
                            [](const Jet& j) { return sin(j); });
          },
          [&](const n::Cos& a) {
            return analytic(eval_node(a.arg, t, degenerate), "cos",
                            [](const Jet& j) { return cos(j); });
          },
          [&](const n::Exp& a) {
            return analytic(eval_node(a.arg, t, degenerate), "exp",
                            [](const Jet& j) { return exp(j); });
          },
          [&](const n::Bump& b) {
            const HyperReal u = eval_node(b.arg, t, degenerate);
            if (compare(abs(u), HyperReal::from_real(1.0, policy)) >= 0) return HyperReal(u.policy());
            return taylor_apply(u, [](double s, std::size_t k) { return smooth::bump_jet(s, k); });
          },
          [&](const n::Plateau& p) {
            const HyperReal u = eval_node(p.arg, t, degenerate);
            const HyperReal au = abs(u);
            if (compare(au, HyperReal::from_real(p.a, policy)) >= 0) return HyperReal(u.policy());
            if (compare(au, HyperReal::from_real(0.5 * p.a, policy)) <= 0) {
              return HyperReal::from_real(1.0, u.policy());
            }
            return taylor_apply(u, [&](double s, std::size_t k) {
              return smooth::plateau_jet(s, 0.5 * p.a, p.a, k);
            });
          },
          [&](const n::Piecewise& p) {
            const std::strong_ordering c =
                compare(eval_node(p.lhs, t, degenerate), eval_node(p.rhs, t, degenerate));
            if (c == 0) degenerate = true;
            return holds(c, p.op) ? eval_node(p.then_branch, t, degenerate)
                                  : eval_node(p.else_branch, t, degenerate);
          },
          [&](const n::Mollify& m) {
            const HyperReal u = t * recip(m.scale);
            return m.amplitude * eval_node(m.base, u, degenerate);
          },
          [&](const n::TestRef& r) { return r.fn.at(t); },
      },
      f.node().value);
}

}  // namespace

Evaluation evaluate(const InternalExpr& f, const HyperReal& t) {
  Evaluation out;
  out.value = eval_node(f, t, out.degenerate_branch);
  return out;
}

HyperReal eval_at(const InternalExpr& f, const HyperReal& t) { return evaluate(f, t).value; }

InternalExpr make_dirac(const TruncationPolicy& policy) {
  const HyperReal eps = HyperReal::epsilon(policy);
  const HyperReal mass = eps * smooth::bump_integral();
  return mollify(bump(var()), eps, recip(mass));
}

namespace {

bool is_const_value(const InternalExpr& f, double v) {
  const auto* c = std::get_if<n::Const>(&f.node().value);
  return c && c->value == HyperReal::from_real(v, c->value.policy());
}

InternalExpr shadow_node(const InternalExpr& f) {
  return std::visit(
      Overloaded{
          [&](const n::Var&) { return f; },
          [&](const n::Const& c) {
            if (is_infinite_exact(c.value)) {
              throw Error(ErrorKind::NotShadowable, "infinite constant " + to_string(c.value));
            }
            return constant(HyperReal::from_real(c.value.coefficient(ExponentQ(0)), c.value.policy()));
          },
          [&](const n::Add& a) {
            InternalExpr l = shadow_node(a.lhs);
            InternalExpr r = shadow_node(a.rhs);
            if (is_const_value(r, 0.0)) return l;
            if (is_const_value(l, 0.0)) return r;
            return add(std::move(l), std::move(r));
          },
          [&](const n::Mul& m) {
            InternalExpr l = shadow_node(m.lhs);
            InternalExpr r = shadow_node(m.rhs);
            if (is_const_value(r, 1.0)) return l;
            if (is_const_value(l, 1.0)) return r;
            return mul(std::move(l), std::move(r));
          },
          [&](const n::Neg& a) { return neg(shadow_node(a.arg)); },
          [&](const n::IntPow& p) { return ipow(shadow_node(p.arg), p.n); },
          [&](const n::Recip& r) { return recip(shadow_node(r.arg)); },
          [&](const n::Sin& a) { return sin(shadow_node(a.arg)); },
          [&](const n::Cos& a) { return cos(shadow_node(a.arg)); },
          [&](const n::Exp& a) { return exp(shadow_node(a.arg)); },
          [&](const n::Bump& b) { return bump(shadow_node(b.arg)); },
          [&](const n::Plateau& p) { return plateau(p.a, shadow_node(p.arg)); },
          [&](const n::Piecewise& p) {
            if (!is_standard(p.lhs) || !is_standard(p.rhs)) {
              throw Error(ErrorKind::NotShadowable,
                          "comparison against a non-standard operand: " + to_string(f));
            }
            InternalExpr t = shadow_node(p.then_branch);
            InternalExpr e = shadow_node(p.else_branch);
            if (structurally_equal(t, e)) return t;
            return piecewise(p.lhs, p.op, p.rhs, std::move(t), std::move(e));
          },
          [&](const n::Mollify& m) {
            if (m.scale.leading_exponent().sign() > 0) {
              throw Error(ErrorKind::NotShadowable,
                          "mollifier with infinitesimal scale " + to_string(m.scale));
            }
            if (is_infinite_exact(m.amplitude)) {
              throw Error(ErrorKind::NotShadowable, "mollifier with infinite amplitude");
            }
            const auto real = [](const HyperReal& h) {
              return HyperReal::from_real(h.coefficient(ExponentQ(0)), h.policy());
            };
            return mollify(shadow_node(m.base), real(m.scale), real(m.amplitude));
          },
          [&](const n::TestRef&) { return f; },
      },
      f.node().value);
}

}  // namespace

InternalExpr shadow_ast(const InternalExpr& f) { return shadow_node(f); }

std::optional<InternalExpr> derivative_tree(const InternalExpr& f) {
  using R = std::optional<InternalExpr>;
  return std::visit(
      Overloaded{
          [&](const n::Var&) -> R { return constant(1.0); },
          [&](const n::Const& c) -> R { return constant(HyperReal(c.value.policy())); },
          [&](const n::Add& a) -> R {
            auto l = derivative_tree(a.lhs);
            auto r = derivative_tree(a.rhs);
            if (!l || !r) return std::nullopt;
            return add(*l, *r);
          },
          [&](const n::Mul& m) -> R {
            auto l = derivative_tree(m.lhs);
            auto r = derivative_tree(m.rhs);
            if (!l || !r) return std::nullopt;
            return add(mul(*l, m.rhs), mul(m.lhs, *r));
          },
          [&](const n::Neg& a) -> R {
            auto d = derivative_tree(a.arg);
            if (!d) return std::nullopt;
            return neg(*d);
          },
          [&](const n::IntPow& p) -> R {
            if (p.n == 0) return constant(0.0);
            auto d = derivative_tree(p.arg);
            if (!d) return std::nullopt;
            return mul(mul(constant(static_cast<double>(p.n)), ipow(p.arg, p.n - 1)), *d);
          },
          [&](const n::Recip& r) -> R {
            auto d = derivative_tree(r.arg);
            if (!d) return std::nullopt;
            return neg(mul(*d, recip(ipow(r.arg, 2))));
          },
          [&](const n::Sin& a) -> R {
            auto d = derivative_tree(a.arg);
            if (!d) return std::nullopt;
            return mul(cos(a.arg), *d);
          },
          [&](const n::Cos& a) -> R {
            auto d = derivative_tree(a.arg);
            if (!d) return std::nullopt;
            return neg(mul(sin(a.arg), *d));
          },
          [&](const n::Exp& a) -> R {
            auto d = derivative_tree(a.arg);
            if (!d) return std::nullopt;
            return mul(exp(a.arg), *d);
          },
          [&](const n::Bump& b) -> R {
            if (!std::holds_alternative<n::Var>(b.arg.node().value)) return std::nullopt;
            return test_ref(TestFn::derivative(1, TestFn::bump(0.0, 1.0)));
          },
          [&](const n::Plateau& p) -> R {
            if (!std::holds_alternative<n::Var>(p.arg.node().value)) return std::nullopt;
            return test_ref(TestFn::derivative(1, TestFn::plateau(0.5 * p.a, p.a)));
          },
          [&](const n::Piecewise&) -> R { return std::nullopt; },
          [&](const n::Mollify&) -> R { return std::nullopt; },
          [&](const n::TestRef& r) -> R { return test_ref(TestFn::derivative(1, r.fn)); },
      },
      f.node().value);
}

namespace {

template <class Pred>
bool all_nodes(const InternalExpr& f, Pred&& pred) {
  if (!pred(f)) return false;
  return std::visit(
      Overloaded{
          [&](const n::Var&) { return true; },
          [&](const n::Const&) { return true; },
          [&](const n::Add& a) { return all_nodes(a.lhs, pred) && all_nodes(a.rhs, pred); },
          [&](const n::Mul& m) { return all_nodes(m.lhs, pred) && all_nodes(m.rhs, pred); },
          [&](const n::Neg& a) { return all_nodes(a.arg, pred); },
          [&](const n::IntPow& p) { return all_nodes(p.arg, pred); },
          [&](const n::Recip& r) { return all_nodes(r.arg, pred); },
          [&](const n::Sin& a) { return all_nodes(a.arg, pred); },
          [&](const n::Cos& a) { return all_nodes(a.arg, pred); },
          [&](const n::Exp& a) { return all_nodes(a.arg, pred); },
          [&](const n::Bump& b) { return all_nodes(b.arg, pred); },
          [&](const n::Plateau& p) { return all_nodes(p.arg, pred); },
          [&](const n::Piecewise& p) {
            return all_nodes(p.lhs, pred) && all_nodes(p.rhs, pred) &&
                   all_nodes(p.then_branch, pred) && all_nodes(p.else_branch, pred);
          },
          [&](const n::Mollify& m) { return all_nodes(m.base, pred); },
          [&](const n::TestRef&) { return true; },
      },
      f.node().value);
}

}  // namespace

bool any_node(const InternalExpr& f, const std::function<bool(const InternalExpr&)>& pred) {
  return !all_nodes(f, [&](const InternalExpr& e) { return !pred(e); });
}

bool is_standard(const InternalExpr& f) {
  return all_nodes(f, [](const InternalExpr& e) {
    if (const auto* c = std::get_if<n::Const>(&e.node().value)) return c->value.is_real();
    if (const auto* m = std::get_if<n::Mollify>(&e.node().value)) {
      return m->scale.is_real() && m->amplitude.is_real();
    }
    return true;
  });
}

bool is_standard_smooth(const InternalExpr& f) {
  return is_standard(f) && all_nodes(f, [](const InternalExpr& e) {
           return !std::holds_alternative<n::Piecewise>(e.node().value);
         });
}

bool contains_var(const InternalExpr& f) {
  return !all_nodes(f, [](const InternalExpr& e) {
    return !std::holds_alternative<n::Var>(e.node().value) &&
           !std::holds_alternative<n::TestRef>(e.node().value) &&
           !std::holds_alternative<n::Mollify>(e.node().value);
  });
}

std::optional<std::pair<double, double>> affine_in_var(const InternalExpr& f) {
  using R = std::optional<std::pair<double, double>>;
  return std::visit(
      Overloaded{
          [](const n::Var&) -> R { return std::pair{1.0, 0.0}; },
          [](const n::Const& c) -> R {
            if (!c.value.is_real()) return std::nullopt;
            return std::pair{0.0, c.value.coefficient(ExponentQ(0))};
          },
          [](const n::Add& a) -> R {
            auto l = affine_in_var(a.lhs);
            auto r = affine_in_var(a.rhs);
            if (!l || !r) return std::nullopt;
            return std::pair{l->first + r->first, l->second + r->second};
          },
          [](const n::Neg& a) -> R {
            auto v = affine_in_var(a.arg);
            if (!v) return std::nullopt;
            return std::pair{-v->first, -v->second};
          },
          [](const n::Mul& m) -> R {
            auto l = affine_in_var(m.lhs);
            auto r = affine_in_var(m.rhs);
            if (!l || !r) return std::nullopt;
            if (l->first == 0.0) return std::pair{l->second * r->first, l->second * r->second};
            if (r->first == 0.0) return std::pair{r->second * l->first, r->second * l->second};
            return std::nullopt;
          },
          [](const auto&) -> R { return std::nullopt; },
      },
      f.node().value);
}

namespace {

std::optional<SupportInterval> preimage_of_ball(const InternalExpr& arg, double radius) {
  auto aff = affine_in_var(arg);
  if (!aff || aff->first == 0.0) return std::nullopt;
  const double a = (-radius - aff->second) / aff->first;
  const double b = (radius - aff->second) / aff->first;
  return SupportInterval{std::min(a, b), std::max(a, b)};
}

}  // namespace

std::optional<SupportInterval> expr_support(const InternalExpr& f) {
  using R = std::optional<SupportInterval>;
  return std::visit(
      Overloaded{
          [](const n::Const& c) -> R {
            if (c.value.is_zero()) return SupportInterval{0.0, 0.0};
            return std::nullopt;
          },
          [](const n::Bump& b) -> R { return preimage_of_ball(b.arg, 1.0); },
          [](const n::Plateau& p) -> R { return preimage_of_ball(p.arg, p.a); },
          [](const n::TestRef& r) -> R { return r.fn.support(); },
          [](const n::Neg& a) -> R { return expr_support(a.arg); },
          [](const n::IntPow& p) -> R {
            if (p.n == 0) return std::nullopt;
            return expr_support(p.arg);
          },
          [](const n::Mul& m) -> R {
            auto l = expr_support(m.lhs);
            auto r = expr_support(m.rhs);
            if (l && r) {
              const double lo = std::max(l->lo, r->lo);
              const double hi = std::min(l->hi, r->hi);
              return lo <= hi ? SupportInterval{lo, hi} : SupportInterval{lo, lo};
            }
            return l ? l : r;
          },
          [](const n::Add& a) -> R {
            auto l = expr_support(a.lhs);
            auto r = expr_support(a.rhs);
            if (!l || !r) return std::nullopt;
            return SupportInterval{std::min(l->lo, r->lo), std::max(l->hi, r->hi)};
          },
          [](const n::Piecewise& p) -> R {
            auto l = expr_support(p.then_branch);
            auto r = expr_support(p.else_branch);
            if (!l || !r) return std::nullopt;
            return SupportInterval{std::min(l->lo, r->lo), std::max(l->hi, r->hi)};
          },
          [](const n::Mollify& m) -> R {
            if (!m.scale.is_real()) return std::nullopt;
            auto b = expr_support(m.base);
            if (!b) return std::nullopt;
            const double s = m.scale.coefficient(ExponentQ(0));
            return SupportInterval{b->lo * s, b->hi * s};
          },
          [](const auto&) -> R { return std::nullopt; },
      },
      f.node().value);
}

bool structurally_equal(const InternalExpr& a, const InternalExpr& b) {
  if (a.identity() == b.identity()) return true;
  const auto& va = a.node().value;
  const auto& vb = b.node().value;
  if (va.index() != vb.index()) return false;
  return std::visit(
      Overloaded{
          [](const n::Var&) { return true; },
          [&](const n::Const& x) { return x.value == std::get<n::Const>(vb).value; },
          [&](const n::Add& x) {
            const auto& y = std::get<n::Add>(vb);
            return structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
          },
          [&](const n::Mul& x) {
            const auto& y = std::get<n::Mul>(vb);
            return structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
          },
          [&](const n::Neg& x) { return structurally_equal(x.arg, std::get<n::Neg>(vb).arg); },
          [&](const n::IntPow& x) {
            const auto& y = std::get<n::IntPow>(vb);
            return x.n == y.n && structurally_equal(x.arg, y.arg);
          },
          [&](const n::Recip& x) { return structurally_equal(x.arg, std::get<n::Recip>(vb).arg); },
          [&](const n::Sin& x) { return structurally_equal(x.arg, std::get<n::Sin>(vb).arg); },
          [&](const n::Cos& x) { return structurally_equal(x.arg, std::get<n::Cos>(vb).arg); },
          [&](const n::Exp& x) { return structurally_equal(x.arg, std::get<n::Exp>(vb).arg); },
          [&](const n::Bump& x) { return structurally_equal(x.arg, std::get<n::Bump>(vb).arg); },
          [&](const n::Plateau& x) {
            const auto& y = std::get<n::Plateau>(vb);
            return x.a == y.a && structurally_equal(x.arg, y.arg);
          },
          [&](const n::Piecewise& x) {
            const auto& y = std::get<n::Piecewise>(vb);
            return x.op == y.op && structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs) &&
                   structurally_equal(x.then_branch, y.then_branch) &&
                   structurally_equal(x.else_branch, y.else_branch);
          },
          [&](const n::Mollify& x) {
            const auto& y = std::get<n::Mollify>(vb);
            return x.scale == y.scale && x.amplitude == y.amplitude &&
                   structurally_equal(x.base, y.base);
          },
          [&](const n::TestRef& x) {
            return structurally_equal(x.fn, std::get<n::TestRef>(vb).fn);
          },
      },
      va);
}

namespace {

void print(std::ostream& os, const InternalExpr& f);

void print_hyper(std::ostream& os, const HyperReal& h) {
  if (h.terms().size() <= 1 && (h.is_zero() || h.terms().front().coef >= 0)) {
    os << to_string(h);
  } else {
    os << "(" << to_string(h) << ")";
  }
}

void print(std::ostream& os, const InternalExpr& f) {
  std::visit(
      Overloaded{
          [&](const n::Var&) { os << "x"; },
          [&](const n::Const& c) { print_hyper(os, c.value); },
          [&](const n::Add& a) { os << "("; print(os, a.lhs); os << " + "; print(os, a.rhs); os << ")"; },
          [&](const n::Mul& m) { print(os, m.lhs); os << "*"; print(os, m.rhs); },
          [&](const n::Neg& a) { os << "-("; print(os, a.arg); os << ")"; },
          [&](const n::IntPow& p) { os << "("; print(os, p.arg); os << ")^" << p.n; },
          [&](const n::Recip& r) { os << "1/("; print(os, r.arg); os << ")"; },
          [&](const n::Sin& a) { os << "sin("; print(os, a.arg); os << ")"; },
          [&](const n::Cos& a) { os << "cos("; print(os, a.arg); os << ")"; },
          [&](const n::Exp& a) { os << "exp("; print(os, a.arg); os << ")"; },
          [&](const n::Bump& b) { os << "bump("; print(os, b.arg); os << ")"; },
          [&](const n::Plateau& p) { os << "plateau(" << p.a << ", "; print(os, p.arg); os << ")"; },
          [&](const n::Piecewise& p) {
            os << "(";
            print(os, p.lhs);
            os << " " << to_string(p.op) << " ";
            print(os, p.rhs);
            os << " ? ";
            print(os, p.then_branch);
            os << " : ";
            print(os, p.else_branch);
            os << ")";
          },
          [&](const n::Mollify& m) {
            print_hyper(os, m.amplitude);
            os << "*[";
            print(os, m.base);
            os << "](x/";
            print_hyper(os, m.scale);
            os << ")";
          },
          [&](const n::TestRef&) { os << "g(x)"; },
      },
      f.node().value);
}

}  // namespace

std::string to_string(const InternalExpr& f) {
  std::ostringstream os;
  os.precision(17);
  print(os, f);
  return os.str();
}

}  // namespace hyperdist
