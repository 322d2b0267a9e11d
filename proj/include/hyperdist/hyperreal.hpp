#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "hyperdist/exponent.hpp"

namespace hyperdist {

/// How far a series is carried. Terms above max_order are flushed; at most
/// max_terms lowest-order terms are kept. zero_tol is consulted only by
/// classification queries, never by arithmetic.
struct TruncationPolicy {
  ExponentQ max_order{6};
  std::size_t max_terms = 64;
  double zero_tol = 1e-12;

  void validate() const;

  /// The coarser of two policies: smaller order and term budget, larger
  /// tolerance.
  static TruncationPolicy coarsest(const TruncationPolicy& a, const TruncationPolicy& b);

  friend bool operator==(const TruncationPolicy&, const TruncationPolicy&) = default;
};

enum class NumClass { Zero, NonzeroInfinitesimal, Appreciable, Infinite };

std::string_view to_string(NumClass c);

struct Term {
  ExponentQ exp;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Truncated Levi-Civita style series sum_k c_k eps^{q_k} with exact rational
/// exponents. Terms are strictly ascending in exponent with nonzero
/// coefficients; the empty series is zero.
class HyperReal {
 public:
  HyperReal() = default;
  explicit HyperReal(TruncationPolicy policy);

  static HyperReal from_real(double r, const TruncationPolicy& policy = {});
  static HyperReal epsilon(const TruncationPolicy& policy = {});
  static HyperReal monomial(double coef, ExponentQ exp, const TruncationPolicy& policy = {});
  /// Sorts, merges equal exponents, drops exact zeros and truncates.
  static HyperReal from_terms(std::vector<Term> terms, const TruncationPolicy& policy = {});

  const std::vector<Term>& terms() const noexcept { return terms_; }
  const TruncationPolicy& policy() const noexcept { return policy_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  /// True when the only exponent present is 0 (or the value is zero).
  bool is_real() const noexcept;
  /// Exponent and coefficient of the lowest-order term; the value must be
  /// nonzero.
  ExponentQ leading_exponent() const;
  double leading_coefficient() const;
  double coefficient(ExponentQ exp) const;

  /// Same value re-truncated under another policy.
  HyperReal with_policy(const TruncationPolicy& policy) const;

  HyperReal operator-() const;
  HyperReal& operator+=(const HyperReal& rhs);
  HyperReal& operator-=(const HyperReal& rhs);
  HyperReal& operator*=(const HyperReal& rhs);
  HyperReal& operator*=(double scalar);

  friend HyperReal operator+(HyperReal a, const HyperReal& b) { return a += b; }
  friend HyperReal operator-(HyperReal a, const HyperReal& b) { return a -= b; }
  friend HyperReal operator*(const HyperReal& a, const HyperReal& b);
  friend HyperReal operator*(HyperReal a, double s) { return a *= s; }
  friend HyperReal operator*(double s, HyperReal a) { return a *= s; }

  /// Exact term-by-term equality (policies are not compared).
  friend bool operator==(const HyperReal& a, const HyperReal& b) { return a.terms_ == b.terms_; }

 private:
  void normalize();

  std::vector<Term> terms_;
  TruncationPolicy policy_;
};

HyperReal recip(const HyperReal& a);
HyperReal operator/(const HyperReal& a, const HyperReal& b);
HyperReal pow(const HyperReal& a, unsigned n);
HyperReal abs(const HyperReal& a);

/// Order of the field: the sign of the lowest-order coefficient of a - b.
std::strong_ordering compare(const HyperReal& a, const HyperReal& b);
inline std::strong_ordering operator<=>(const HyperReal& a, const HyperReal& b) {
  return compare(a, b);
}

/// Coefficient of eps^0. Throws NotLimited for infinite values.
double standard_part(const HyperReal& a);
NumClass classify(const HyperReal& a);
bool infinitely_close(const HyperReal& a, const HyperReal& b);

/// Human-readable form such as "3 + 2*eps - eps^(3/2)".
std::string to_string(const HyperReal& a);

}  // namespace hyperdist
