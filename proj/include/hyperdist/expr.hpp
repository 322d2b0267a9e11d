#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "hyperdist/hyperreal.hpp"
#include "hyperdist/testfn.hpp"

namespace hyperdist {

enum class CmpOp { Less, LessEq, GreaterEq, Greater };

std::string_view to_string(CmpOp op);
CmpOp parse_cmp_op(std::string_view text);

/// Internal function *R -> *R as an immutable expression tree in one variable
/// with hyperreal constants. Subtrees are shared between copies.
class InternalExpr {
 public:
  struct Node;

  /// The variable itself.
  InternalExpr();

  const Node& node() const { return *node_; }
  const Node* identity() const { return node_.get(); }

  static InternalExpr from_node(Node node);

 private:
  explicit InternalExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace expr_nodes {
struct Var {};
struct Const {
  HyperReal value;
};
struct Add {
  InternalExpr lhs, rhs;
};
struct Mul {
  InternalExpr lhs, rhs;
};
struct Neg {
  InternalExpr arg;
};
struct IntPow {
  InternalExpr arg;
  unsigned n;
};
struct Recip {
  InternalExpr arg;
};
struct Sin {
  InternalExpr arg;
};
struct Cos {
  InternalExpr arg;
};
struct Exp {
  InternalExpr arg;
};
/// b(arg) with the Cauchy flat bump b.
struct Bump {
  InternalExpr arg;
};
/// Plateau of width parameter a: 1 on |arg| <= a/2, 0 on |arg| >= a.
struct Plateau {
  InternalExpr arg;
  double a;
};
/// (lhs op rhs) ? then_branch : else_branch.
struct Piecewise {
  InternalExpr lhs;
  CmpOp op;
  InternalExpr rhs;
  InternalExpr then_branch;
  InternalExpr else_branch;
};
/// x -> amplitude * base(x / scale); base is a tree in its own variable.
struct Mollify {
  InternalExpr base;
  HyperReal scale;
  HyperReal amplitude;
};
/// x -> g(x) for a test function g.
struct TestRef {
  TestFn fn;
};
}  // namespace expr_nodes

struct InternalExpr::Node {
  std::variant<expr_nodes::Var, expr_nodes::Const, expr_nodes::Add, expr_nodes::Mul,
               expr_nodes::Neg, expr_nodes::IntPow, expr_nodes::Recip, expr_nodes::Sin,
               expr_nodes::Cos, expr_nodes::Exp, expr_nodes::Bump, expr_nodes::Plateau,
               expr_nodes::Piecewise, expr_nodes::Mollify, expr_nodes::TestRef>
      value;
};

// Builders.
InternalExpr var();
InternalExpr constant(HyperReal value);
InternalExpr constant(double value, const TruncationPolicy& policy = {});
InternalExpr add(InternalExpr a, InternalExpr b);
InternalExpr sub(InternalExpr a, InternalExpr b);
InternalExpr mul(InternalExpr a, InternalExpr b);
InternalExpr neg(InternalExpr a);
InternalExpr ipow(InternalExpr a, unsigned n);
InternalExpr recip(InternalExpr a);
InternalExpr sin(InternalExpr a);
InternalExpr cos(InternalExpr a);
InternalExpr exp(InternalExpr a);
InternalExpr bump(InternalExpr a = var());
InternalExpr plateau(double a, InternalExpr arg = var());
InternalExpr piecewise(InternalExpr lhs, CmpOp op, InternalExpr rhs, InternalExpr then_branch,
                       InternalExpr else_branch);
/// Throws InvalidArgument unless scale is positive and limited.
InternalExpr mollify(InternalExpr base, HyperReal scale, HyperReal amplitude);
InternalExpr test_ref(TestFn g);

inline InternalExpr operator+(InternalExpr a, InternalExpr b) { return add(std::move(a), std::move(b)); }
inline InternalExpr operator-(InternalExpr a, InternalExpr b) { return sub(std::move(a), std::move(b)); }
inline InternalExpr operator*(InternalExpr a, InternalExpr b) { return mul(std::move(a), std::move(b)); }
inline InternalExpr operator-(InternalExpr a) { return neg(std::move(a)); }

struct Evaluation {
  HyperReal value;
  /// Set when some Piecewise compared exactly equal operands; the branch for
  /// the inclusive side of the comparison was taken.
  bool degenerate_branch = false;
};

/// Evaluates at a hyperreal point. Smooth primitives are expanded in Taylor
/// series about the standard part of their argument. Throws
/// UnsupportedEvaluation for sin/cos/exp at infinite arguments.
Evaluation evaluate(const InternalExpr& f, const HyperReal& t);
HyperReal eval_at(const InternalExpr& f, const HyperReal& t);

/// Dirac mollifier x -> b(x/eps) / (eps * I_b) with I_b the bump integral.
InternalExpr make_dirac(const TruncationPolicy& policy = {});

/// Standard counterpart: every constant replaced by its standard part.
/// Throws NotShadowable for infinitesimal-scale mollifiers, infinite
/// constants, and comparisons against non-standard constants.
InternalExpr shadow_ast(const InternalExpr& f);

/// Symbolic derivative where every node on the path has one; nullopt for
/// Piecewise, Mollify, and compositions of bumps with non-identity arguments.
std::optional<InternalExpr> derivative_tree(const InternalExpr& f);

/// True when every constant (and mollifier parameter) is a standard real.
bool is_standard(const InternalExpr& f);
/// Standard and built only from C-infinity nodes (no Piecewise).
bool is_standard_smooth(const InternalExpr& f);
bool contains_var(const InternalExpr& f);
/// True when pred holds at some node, visited in pre-order. Mollifier bases
/// are visited; test functions are leaves.
bool any_node(const InternalExpr& f, const std::function<bool(const InternalExpr&)>& pred);

/// Bounded interval outside which f vanishes, when the tree shows one.
std::optional<SupportInterval> expr_support(const InternalExpr& f);

/// (slope, intercept) when f is slope*x + intercept with standard
/// constants.
std::optional<std::pair<double, double>> affine_in_var(const InternalExpr& f);

bool structurally_equal(const InternalExpr& a, const InternalExpr& b);

std::string to_string(const InternalExpr& f);

}  // namespace hyperdist
