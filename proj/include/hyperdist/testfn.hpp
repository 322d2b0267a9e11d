#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "hyperdist/hyperreal.hpp"
#include "hyperdist/jet.hpp"

namespace hyperdist {

struct SupportInterval {
  double lo = 0.0;
  double hi = 0.0;

  double half_width_about_origin() const { return std::max(-lo, hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  friend bool operator==(const SupportInterval&, const SupportInterval&) = default;
};

/// Smooth compactly supported real function, built from bumps and plateaus
/// by polynomial modulation, dilation, translation, linear combination and
/// differentiation. Immutable; copies share structure.
class TestFn {
 public:
  struct Node;

  /// b((x - center) / halfwidth).
  static TestFn bump(double center, double halfwidth);
  /// 1 on |x| <= inner, 0 on |x| >= outer.
  static TestFn plateau(double inner, double outer);
  /// (sum_i coeffs[i] x^i) * inner(x).
  static TestFn poly_mod(std::vector<double> coeffs, TestFn inner);
  /// inner(x / factor).
  static TestFn scale(double factor, TestFn inner);
  /// inner(x - offset).
  static TestFn shift(double offset, TestFn inner);
  static TestFn lin_comb(std::vector<std::pair<double, TestFn>> terms);
  /// The order-th derivative of inner.
  static TestFn derivative(unsigned order, TestFn inner);
  static TestFn zero() { return lin_comb({}); }

  const Node& node() const { return *node_; }

  double operator()(double x) const;
  /// Taylor jet about x of the requested order.
  Jet jet(double x, std::size_t order) const;
  /// Value at a hyperreal point by Taylor composition about its standard
  /// part; zero at infinite points.
  HyperReal at(const HyperReal& t) const;

  /// Structural support: g vanishes identically outside it.
  SupportInterval support() const;

 private:
  explicit TestFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace testfn_nodes {
struct Bump {
  double center;
  double halfwidth;
};
struct Plateau {
  double inner;
  double outer;
};
struct PolyMod {
  std::vector<double> coeffs;
  TestFn inner;
};
struct Scale {
  double factor;
  TestFn inner;
};
struct Shift {
  double offset;
  TestFn inner;
};
struct LinComb {
  std::vector<std::pair<double, TestFn>> terms;
};
struct Derivative {
  unsigned order;
  TestFn inner;
};
}  // namespace testfn_nodes

struct TestFn::Node {
  std::variant<testfn_nodes::Bump, testfn_nodes::Plateau, testfn_nodes::PolyMod,
               testfn_nodes::Scale, testfn_nodes::Shift, testfn_nodes::LinComb,
               testfn_nodes::Derivative>
      value;
};

inline constexpr unsigned kDefaultDerivativeCap = 12;

/// g^(k)(x), zero outside the support. Throws OrderCap when k > cap.
double deriv_eval(const TestFn& g, unsigned k, double x, unsigned cap = kDefaultDerivativeCap);

SupportInterval support(const TestFn& g);

/// Same node kinds and parameters throughout.
bool structurally_equal(const TestFn& a, const TestFn& b);

}  // namespace hyperdist
