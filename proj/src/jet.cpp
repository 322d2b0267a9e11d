#include "hyperdist/jet.hpp"

#include <cmath>

#include "hyperdist/error.hpp"

namespace hyperdist {

namespace {
constexpr std::size_t kMaxTaylorOrder = 256;
}

Jet Jet::constant(double value, std::size_t order) {
  Jet j(order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double x0, std::size_t order) {
  Jet j(order);
  j.c_[0] = x0;
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

double Jet::derivative(std::size_t k) const {
  double factorial = 1.0;
  for (std::size_t i = 2; i <= k; ++i) factorial *= static_cast<double>(i);
  return c_.at(k) * factorial;
}

Jet& Jet::operator+=(const Jet& rhs) {
  for (std::size_t k = 0; k < c_.size() && k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  for (std::size_t k = 0; k < c_.size() && k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const std::size_t n = std::min(a.order(), b.order());
  Jet out(n);
  for (std::size_t k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
    out.c_[k] = acc;
  }
  return out;
}

Jet Jet::rescaled(double s) const {
  Jet out = *this;
  double p = 1.0;
  for (double& v : out.c_) {
    v *= p;
    p *= s;
  }
  return out;
}

Jet Jet::differentiated(std::size_t k) const {
  if (k > order()) return Jet::constant(0.0, 0);
  Jet out(order() - k);
  for (std::size_t j = 0; j <= out.order(); ++j) {
    // (j+k)! / j!
    double falling = 1.0;
    for (std::size_t i = j + 1; i <= j + k; ++i) falling *= static_cast<double>(i);
    out.c_[j] = c_[j + k] * falling;
  }
  return out;
}

Jet recip(const Jet& a) {
  if (a[0] == 0.0) throw Error(ErrorKind::DivisionByZero, "jet reciprocal at a zero");
  Jet r(a.order());
  r[0] = 1.0 / a[0];
  for (std::size_t k = 1; k <= a.order(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * r[k - j];
    r[k] = -acc * r[0];
  }
  return r;
}

Jet exp(const Jet& a) {
  Jet e(a.order());
  e[0] = std::exp(a[0]);
  for (std::size_t k = 1; k <= a.order(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

namespace {

void sin_cos(const Jet& a, Jet& s, Jet& c) {
  s = Jet(a.order());
  c = Jet(a.order());
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (std::size_t k = 1; k <= a.order(); ++k) {
    double as = 0.0;
    double ac = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      const double w = static_cast<double>(j) * a[j];
      as += w * c[k - j];
      ac += w * s[k - j];
    }
    s[k] = as / static_cast<double>(k);
    c[k] = -ac / static_cast<double>(k);
  }
}

}  // namespace

Jet sin(const Jet& a) {
  Jet s, c;
  sin_cos(a, s, c);
  return s;
}

Jet cos(const Jet& a) {
  Jet s, c;
  sin_cos(a, s, c);
  return c;
}

Jet pow(const Jet& a, unsigned n) {
  Jet result = Jet::constant(1.0, a.order());
  for (unsigned i = 0; i < n; ++i) result = result * a;
  return result;
}

Jet compose(const Jet& outer, const Jet& inner_offset) {
  const std::size_t n = std::min(outer.order(), inner_offset.order());
  Jet result = Jet::constant(outer[n], n);
  for (std::size_t k = n; k-- > 0;) {
    result = result * inner_offset;
    result[0] += outer[k];
  }
  return result;
}

std::size_t taylor_order_for(const HyperReal& delta) {
  if (delta.is_zero()) return 0;
  const ExponentQ lead = delta.leading_exponent();
  if (lead.sign() <= 0) {
    throw Error(ErrorKind::InvalidArgument, "Taylor displacement must be infinitesimal");
  }
  const auto k = (delta.policy().max_order / lead).floor();
  if (k > static_cast<std::int64_t>(kMaxTaylorOrder)) {
    throw Error(ErrorKind::UnsupportedEvaluation,
                "displacement " + to_string(delta) + " needs Taylor order above 256");
  }
  return static_cast<std::size_t>(k);
}

HyperReal compose(const Jet& outer, const HyperReal& delta) {
  const std::size_t n = std::min(outer.order(), taylor_order_for(delta));
  HyperReal result = HyperReal::from_real(outer[n], delta.policy());
  for (std::size_t k = n; k-- > 0;) {
    result = result * delta + HyperReal::from_real(outer[k], delta.policy());
  }
  return result;
}

}  // namespace hyperdist
