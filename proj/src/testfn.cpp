#include "hyperdist/testfn.hpp"

#include <algorithm>
#include <cmath>

#include "hyperdist/detail/overloaded.hpp"
#include "hyperdist/error.hpp"
#include "hyperdist/smooth.hpp"

namespace hyperdist {

namespace n = testfn_nodes;

namespace {

using detail::Overloaded;

Jet polynomial_jet(const std::vector<double>& coeffs, double x, std::size_t order) {
  Jet result(order);
  const Jet var = Jet::variable(x, order);
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    result = result * var;
    result[0] += coeffs[i];
  }
  return result;
}

double polynomial(const std::vector<double>& coeffs, double x) {
  double r = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
  return r;
}

}  // namespace

TestFn TestFn::bump(double center, double halfwidth) {
  if (!(halfwidth > 0.0) || !std::isfinite(center)) {
    throw Error(ErrorKind::InvalidArgument, "bump needs a finite center and positive halfwidth");
  }
  return TestFn(std::make_shared<const Node>(Node{n::Bump{center, halfwidth}}));
}

TestFn TestFn::plateau(double inner, double outer) {
  if (!(inner >= 0.0 && outer > inner)) {
    throw Error(ErrorKind::InvalidArgument, "plateau needs 0 <= inner < outer");
  }
  return TestFn(std::make_shared<const Node>(Node{n::Plateau{inner, outer}}));
}

TestFn TestFn::poly_mod(std::vector<double> coeffs, TestFn inner) {
  return TestFn(
      std::make_shared<const Node>(Node{n::PolyMod{std::move(coeffs), std::move(inner)}}));
}

TestFn TestFn::scale(double factor, TestFn inner) {
  if (factor == 0.0 || !std::isfinite(factor)) {
    throw Error(ErrorKind::InvalidArgument, "dilation factor must be finite and nonzero");
  }
  return TestFn(std::make_shared<const Node>(Node{n::Scale{factor, std::move(inner)}}));
}

TestFn TestFn::shift(double offset, TestFn inner) {
  return TestFn(std::make_shared<const Node>(Node{n::Shift{offset, std::move(inner)}}));
}

TestFn TestFn::lin_comb(std::vector<std::pair<double, TestFn>> terms) {
  return TestFn(std::make_shared<const Node>(Node{n::LinComb{std::move(terms)}}));
}

TestFn TestFn::derivative(unsigned order, TestFn inner) {
  return TestFn(std::make_shared<const Node>(Node{n::Derivative{order, std::move(inner)}}));
}

double TestFn::operator()(double x) const {
  return std::visit(
      Overloaded{
          [&](const n::Bump& b) { return smooth::bump((x - b.center) / b.halfwidth); },
          [&](const n::Plateau& p) { return smooth::plateau(x, p.inner, p.outer); },
          [&](const n::PolyMod& p) {
            const double v = p.inner(x);
            return v == 0.0 ? 0.0 : polynomial(p.coeffs, x) * v;
          },
          [&](const n::Scale& s) { return s.inner(x / s.factor); },
          [&](const n::Shift& s) { return s.inner(x - s.offset); },
          [&](const n::LinComb& l) {
            double acc = 0.0;
            for (const auto& [w, g] : l.terms) acc += w * g(x);
            return acc;
          },
          [&](const n::Derivative& d) { return d.inner.jet(x, d.order).derivative(d.order); },
      },
      node_->value);
}

Jet TestFn::jet(double x, std::size_t order) const {
  return std::visit(
      Overloaded{
          [&](const n::Bump& b) {
            return smooth::bump_jet((x - b.center) / b.halfwidth, order).rescaled(1.0 / b.halfwidth);
          },
          [&](const n::Plateau& p) { return smooth::plateau_jet(x, p.inner, p.outer, order); },
          [&](const n::PolyMod& p) {
            return polynomial_jet(p.coeffs, x, order) * p.inner.jet(x, order);
          },
          [&](const n::Scale& s) {
            return s.inner.jet(x / s.factor, order).rescaled(1.0 / s.factor);
          },
          [&](const n::Shift& s) { return s.inner.jet(x - s.offset, order); },
          [&](const n::LinComb& l) {
            Jet acc(order);
            for (const auto& [w, g] : l.terms) acc += g.jet(x, order) * w;
            return acc;
          },
          [&](const n::Derivative& d) {
            return d.inner.jet(x, order + d.order).differentiated(d.order);
          },
      },
      node_->value);
}

HyperReal TestFn::at(const HyperReal& t) const {
  const TruncationPolicy& policy = t.policy();
  if (!t.is_zero() && t.leading_exponent().sign() < 0) return HyperReal(policy);
  const double s = t.coefficient(ExponentQ(0));
  const HyperReal delta = t - HyperReal::from_real(s, policy);
  if (delta.is_zero()) return HyperReal::from_real((*this)(s), policy);
  return compose(jet(s, taylor_order_for(delta)), delta);
}

SupportInterval TestFn::support() const {
  return std::visit(
      Overloaded{
          [](const n::Bump& b) {
            return SupportInterval{b.center - b.halfwidth, b.center + b.halfwidth};
          },
          [](const n::Plateau& p) { return SupportInterval{-p.outer, p.outer}; },
          [](const n::PolyMod& p) { return p.inner.support(); },
          [](const n::Scale& s) {
            const SupportInterval in = s.inner.support();
            const double a = in.lo * s.factor;
            const double b = in.hi * s.factor;
            return SupportInterval{std::min(a, b), std::max(a, b)};
          },
          [](const n::Shift& s) {
            const SupportInterval in = s.inner.support();
            return SupportInterval{in.lo + s.offset, in.hi + s.offset};
          },
          [](const n::LinComb& l) {
            bool any = false;
            SupportInterval hull;
            for (const auto& [w, g] : l.terms) {
              if (w == 0.0) continue;
              const SupportInterval s = g.support();
              hull = any ? SupportInterval{std::min(hull.lo, s.lo), std::max(hull.hi, s.hi)} : s;
              any = true;
            }
            return hull;
          },
          [](const n::Derivative& d) { return d.inner.support(); },
      },
      node_->value);
}

double deriv_eval(const TestFn& g, unsigned k, double x, unsigned cap) {
  if (k > cap) {
    throw Error(ErrorKind::OrderCap, "derivative order " + std::to_string(k) +
                                         " exceeds the cap " + std::to_string(cap));
  }
  const SupportInterval s = g.support();
  if (!(x > s.lo && x < s.hi)) return 0.0;
  return g.jet(x, k).derivative(k);
}

SupportInterval support(const TestFn& g) { return g.support(); }

bool structurally_equal(const TestFn& a, const TestFn& b) {
  if (&a.node() == &b.node()) return true;
  const auto& va = a.node().value;
  const auto& vb = b.node().value;
  if (va.index() != vb.index()) return false;
  return std::visit(
      Overloaded{
          [&](const n::Bump& x) {
            const auto& y = std::get<n::Bump>(vb);
            return x.center == y.center && x.halfwidth == y.halfwidth;
          },
          [&](const n::Plateau& x) {
            const auto& y = std::get<n::Plateau>(vb);
            return x.inner == y.inner && x.outer == y.outer;
          },
          [&](const n::PolyMod& x) {
            const auto& y = std::get<n::PolyMod>(vb);
            return x.coeffs == y.coeffs && structurally_equal(x.inner, y.inner);
          },
          [&](const n::Scale& x) {
            const auto& y = std::get<n::Scale>(vb);
            return x.factor == y.factor && structurally_equal(x.inner, y.inner);
          },
          [&](const n::Shift& x) {
            const auto& y = std::get<n::Shift>(vb);
            return x.offset == y.offset && structurally_equal(x.inner, y.inner);
          },
          [&](const n::LinComb& x) {
            const auto& y = std::get<n::LinComb>(vb);
            if (x.terms.size() != y.terms.size()) return false;
            for (std::size_t i = 0; i < x.terms.size(); ++i) {
              if (x.terms[i].first != y.terms[i].first ||
                  !structurally_equal(x.terms[i].second, y.terms[i].second)) {
                return false;
              }
            }
            return true;
          },
          [&](const n::Derivative& x) {
            const auto& y = std::get<n::Derivative>(vb);
            return x.order == y.order && structurally_equal(x.inner, y.inner);
          },
      },
      va);
}

}  // namespace hyperdist
