#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace hyperdist {

/// Exact rational exponent p/q of the infinitesimal generator, kept in lowest
/// terms with q >= 1.
class ExponentQ {
 public:
  constexpr ExponentQ() = default;
  ExponentQ(std::int64_t numerator, std::int64_t denominator = 1);

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }
  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Largest integer k with k <= *this.
  std::int64_t floor() const noexcept;

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;
  /// Accepts "p", "-p", "p/q"; throws Error(ParseError) otherwise.
  static ExponentQ parse(const std::string& text);

  friend ExponentQ operator+(ExponentQ a, ExponentQ b);
  friend ExponentQ operator-(ExponentQ a, ExponentQ b);
  friend ExponentQ operator*(ExponentQ a, ExponentQ b);
  friend ExponentQ operator/(ExponentQ a, ExponentQ b);
  ExponentQ operator-() const { return ExponentQ(-num_, den_); }
  ExponentQ abs() const { return ExponentQ(num_ < 0 ? -num_ : num_, den_); }

  friend bool operator==(const ExponentQ&, const ExponentQ&) = default;
  friend std::strong_ordering operator<=>(const ExponentQ& a, const ExponentQ& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hyperdist
