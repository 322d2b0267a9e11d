#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hyperdist/hyperreal.hpp"

namespace hyperdist {

/// Truncated Taylor expansion sum_{k<=order} c_k h^k of a real function about
/// a point. Coefficient k equals f^(k)(x0) / k!.
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::size_t order) : c_(order + 1, 0.0) {}

  static Jet constant(double value, std::size_t order);
  /// x0 + h.
  static Jet variable(double x0, std::size_t order);

  std::size_t order() const noexcept { return c_.size() - 1; }
  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }
  std::span<const double> coefficients() const noexcept { return c_; }

  /// f^(k)(x0).
  double derivative(std::size_t k) const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(double s);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);
  Jet operator-() const { return *this * -1.0; }

  /// Jet of h -> f(x0 + s h), i.e. coefficient k scaled by s^k.
  Jet rescaled(double s) const;
  /// Jet of the k-th derivative, of order order() - k.
  Jet differentiated(std::size_t k) const;

 private:
  std::vector<double> c_;
};

Jet recip(const Jet& a);
Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet pow(const Jet& a, unsigned n);

/// f(x0 + h) given the jet of f about x0 and a jet for the perturbation h
/// with zero constant term.
Jet compose(const Jet& outer, const Jet& inner_offset);

/// Substitutes an infinitesimal displacement: sum_k c_k delta^k, truncated by
/// the policy of delta. delta must have positive leading order.
HyperReal compose(const Jet& outer, const HyperReal& delta);

/// Number of Taylor orders that can reach the retained part of the series
/// when the displacement has the given positive leading exponent.
std::size_t taylor_order_for(const HyperReal& delta);

}  // namespace hyperdist
