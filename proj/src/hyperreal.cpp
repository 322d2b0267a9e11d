#include "hyperdist/hyperreal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperdist/error.hpp"

namespace hyperdist {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotLimited: return "NotLimited";
    case ErrorKind::UnsupportedEvaluation: return "UnsupportedEvaluation";
    case ErrorKind::OrderCap: return "OrderCap";
    case ErrorKind::NotShadowable: return "NotShadowable";
    case ErrorKind::UnsupportedForm: return "UnsupportedForm";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::IndependenceError: return "IndependenceError";
    case ErrorKind::NotSContinuousHere: return "NotSContinuousHere";
    case ErrorKind::NotStandardSmooth: return "NotStandardSmooth";
    case ErrorKind::NotAdmitted: return "NotAdmitted";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string_view to_string(NumClass c) {
  switch (c) {
    case NumClass::Zero: return "ZERO";
    case NumClass::NonzeroInfinitesimal: return "NONZERO_INFINITESIMAL";
    case NumClass::Appreciable: return "APPRECIABLE";
    case NumClass::Infinite: return "INFINITE";
  }
  return "UNKNOWN";
}

void TruncationPolicy::validate() const {
  if (max_order.sign() <= 0) {
    throw Error(ErrorKind::InvalidArgument, "max_order must be positive");
  }
  if (max_terms < 8) throw Error(ErrorKind::InvalidArgument, "max_terms must be >= 8");
  if (!(zero_tol >= 0.0)) throw Error(ErrorKind::InvalidArgument, "zero_tol must be >= 0");
}

TruncationPolicy TruncationPolicy::coarsest(const TruncationPolicy& a, const TruncationPolicy& b) {
  if (a == b) return a;
  return TruncationPolicy{std::min(a.max_order, b.max_order), std::min(a.max_terms, b.max_terms),
                          std::max(a.zero_tol, b.zero_tol)};
}

namespace {

// Sorts by exponent and merges equal exponents in input order; exact zeros go.
std::vector<Term> merge_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& l, const Term& r) { return l.exp < r.exp; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().exp == t.exp) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  return merged;
}

// Cauchy product keeping exponents <= bound. Inputs are sorted ascending.
std::vector<Term> mul_bounded(const std::vector<Term>& a, const std::vector<Term>& b,
                              ExponentQ bound) {
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const Term& x : a) {
    for (const Term& y : b) {
      const ExponentQ e = x.exp + y.exp;
      if (e > bound) break;
      out.push_back({e, x.coef * y.coef});
    }
  }
  // The stable merge keeps the (i, j) accumulation order fixed.
  return merge_terms(std::move(out));
}

}  // namespace

HyperReal::HyperReal(TruncationPolicy policy) : policy_(policy) { policy_.validate(); }

HyperReal HyperReal::from_real(double r, const TruncationPolicy& policy) {
  return monomial(r, ExponentQ(0), policy);
}

HyperReal HyperReal::epsilon(const TruncationPolicy& policy) {
  return monomial(1.0, ExponentQ(1), policy);
}

HyperReal HyperReal::monomial(double coef, ExponentQ exp, const TruncationPolicy& policy) {
  HyperReal h(policy);
  if (coef != 0.0 && exp <= policy.max_order) h.terms_.push_back({exp, coef});
  return h;
}

HyperReal HyperReal::from_terms(std::vector<Term> terms, const TruncationPolicy& policy) {
  HyperReal h(policy);
  h.terms_ = merge_terms(std::move(terms));
  h.normalize();
  return h;
}

void HyperReal::normalize() {
  std::erase_if(terms_, [&](const Term& t) {
    return t.coef == 0.0 || t.exp > policy_.max_order;
  });
  if (terms_.size() > policy_.max_terms) terms_.resize(policy_.max_terms);
}

bool HyperReal::is_real() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().exp.is_zero());
}

ExponentQ HyperReal::leading_exponent() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "zero has no leading exponent");
  return terms_.front().exp;
}

double HyperReal::leading_coefficient() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "zero has no leading coefficient");
  return terms_.front().coef;
}

double HyperReal::coefficient(ExponentQ exp) const {
  for (const Term& t : terms_) {
    if (t.exp == exp) return t.coef;
    if (t.exp > exp) break;
  }
  return 0.0;
}

HyperReal HyperReal::with_policy(const TruncationPolicy& policy) const {
  HyperReal h(policy);
  h.terms_ = terms_;
  h.normalize();
  return h;
}

HyperReal HyperReal::operator-() const {
  HyperReal h = *this;
  for (Term& t : h.terms_) t.coef = -t.coef;
  return h;
}

HyperReal& HyperReal::operator+=(const HyperReal& rhs) {
  policy_ = TruncationPolicy::coarsest(policy_, rhs.policy_);
  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  auto i = terms_.begin();
  auto j = rhs.terms_.begin();
  while (i != terms_.end() || j != rhs.terms_.end()) {
    if (j == rhs.terms_.end() || (i != terms_.end() && i->exp < j->exp)) {
      out.push_back(*i++);
    } else if (i == terms_.end() || j->exp < i->exp) {
      out.push_back(*j++);
    } else {
      out.push_back({i->exp, i->coef + j->coef});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  normalize();
  return *this;
}

HyperReal& HyperReal::operator-=(const HyperReal& rhs) { return *this += -rhs; }

HyperReal& HyperReal::operator*=(const HyperReal& rhs) {
  *this = *this * rhs;
  return *this;
}

HyperReal& HyperReal::operator*=(double scalar) {
  for (Term& t : terms_) t.coef *= scalar;
  normalize();
  return *this;
}

HyperReal operator*(const HyperReal& a, const HyperReal& b) {
  HyperReal h(TruncationPolicy::coarsest(a.policy_, b.policy_));
  h.terms_ = mul_bounded(a.terms_, b.terms_, h.policy_.max_order);
  h.normalize();
  return h;
}

HyperReal recip(const HyperReal& a) {
  if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "reciprocal of zero");
  const TruncationPolicy& policy = a.policy();
  const ExponentQ lead = a.leading_exponent();
  const double c = a.leading_coefficient();
  // a = c eps^lead (1 + u) with u of strictly positive order.
  std::vector<Term> neg_u;
  for (std::size_t k = 1; k < a.terms().size(); ++k) {
    const Term& t = a.terms()[k];
    neg_u.push_back({t.exp - lead, -t.coef / c});
  }
  const ExponentQ bound = policy.max_order + lead;
  HyperReal result(policy);
  if (bound.sign() < 0) return result;

  std::vector<Term> series{{ExponentQ(0), 1.0}};
  std::vector<Term> power{{ExponentQ(0), 1.0}};
  while (true) {
    power = mul_bounded(power, neg_u, bound);
    if (power.empty()) break;
    series.insert(series.end(), power.begin(), power.end());
    series = merge_terms(std::move(series));
  }
  std::vector<Term> shifted;
  shifted.reserve(series.size());
  for (const Term& t : series) shifted.push_back({t.exp - lead, t.coef / c});
  return HyperReal::from_terms(std::move(shifted), policy);
}

HyperReal operator/(const HyperReal& a, const HyperReal& b) { return a * recip(b); }

HyperReal pow(const HyperReal& a, unsigned n) {
  HyperReal result = HyperReal::from_real(1.0, a.policy());
  HyperReal base = a;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

HyperReal abs(const HyperReal& a) {
  if (!a.is_zero() && a.leading_coefficient() < 0) return -a;
  return a;
}

std::strong_ordering compare(const HyperReal& a, const HyperReal& b) {
  // Walk both series to the first exponent where the coefficients differ.
  auto i = a.terms().begin();
  auto j = b.terms().begin();
  while (i != a.terms().end() || j != b.terms().end()) {
    double diff = 0.0;
    if (j == b.terms().end() || (i != a.terms().end() && i->exp < j->exp)) {
      diff = i->coef;
      ++i;
    } else if (i == a.terms().end() || j->exp < i->exp) {
      diff = -j->coef;
      ++j;
    } else {
      // Compare rather than subtract so no rounding can hide a difference.
      if (i->coef != j->coef) diff = i->coef > j->coef ? 1.0 : -1.0;
      ++i;
      ++j;
    }
    if (diff > 0) return std::strong_ordering::greater;
    if (diff < 0) return std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

NumClass classify(const HyperReal& a) {
  const double tol = a.policy().zero_tol;
  for (const Term& t : a.terms()) {
    if (std::abs(t.coef) <= tol) continue;
    if (t.exp.sign() < 0) return NumClass::Infinite;
    if (t.exp.sign() > 0) return NumClass::NonzeroInfinitesimal;
    return NumClass::Appreciable;
  }
  return NumClass::Zero;
}

double standard_part(const HyperReal& a) {
  if (classify(a) == NumClass::Infinite) {
    throw Error(ErrorKind::NotLimited, "standard part of infinite value " + to_string(a));
  }
  return a.coefficient(ExponentQ(0));
}

bool infinitely_close(const HyperReal& a, const HyperReal& b) {
  const NumClass c = classify(a - b);
  return c == NumClass::Zero || c == NumClass::NonzeroInfinitesimal;
}

std::string to_string(const HyperReal& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const Term& t : a.terms()) {
    double c = t.coef;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = std::abs(c);
    }
    first = false;
    if (t.exp.is_zero()) {
      os << c;
      continue;
    }
    if (c == -1.0) {
      os << "-";
    } else if (c != 1.0) {
      os << c << "*";
    }
    os << "eps";
    if (t.exp != ExponentQ(1)) {
      if (t.exp.is_integer() && t.exp.sign() > 0) {
        os << "^" << t.exp.to_string();
      } else {
        os << "^(" << t.exp.to_string() << ")";
      }
    }
  }
  return os.str();
}

}  // namespace hyperdist
