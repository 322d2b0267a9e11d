#include "hyperdist/exponent.hpp"

#include <charconv>
#include <numeric>

#include "hyperdist/error.hpp"

namespace hyperdist {

namespace {

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw Error(ErrorKind::InvalidArgument, "exponent arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

ExponentQ reduced(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return ExponentQ(checked(num), checked(den));
}

}  // namespace

ExponentQ::ExponentQ(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) {
    throw Error(ErrorKind::DivisionByZero, "exponent with zero denominator");
  }
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = g > 1 ? numerator / g : numerator;
  den_ = g > 1 ? denominator / g : denominator;
}

std::int64_t ExponentQ::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::string ExponentQ::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

ExponentQ ExponentQ::parse(const std::string& text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t value = 0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    if (!part.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last) {
      throw Error(ErrorKind::ParseError, "bad exponent '" + text + "'");
    }
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return ExponentQ(parse_int(text));
  const std::int64_t den = parse_int(std::string_view(text).substr(slash + 1));
  if (den <= 0) throw Error(ErrorKind::ParseError, "bad exponent '" + text + "'");
  return ExponentQ(parse_int(std::string_view(text).substr(0, slash)), den);
}

ExponentQ operator+(ExponentQ a, ExponentQ b) {
  return reduced(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                 static_cast<__int128>(a.den_) * b.den_);
}

ExponentQ operator-(ExponentQ a, ExponentQ b) { return a + (-b); }

ExponentQ operator*(ExponentQ a, ExponentQ b) {
  return reduced(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

ExponentQ operator/(ExponentQ a, ExponentQ b) {
  if (b.num_ == 0) throw Error(ErrorKind::DivisionByZero, "exponent division by zero");
  return reduced(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const ExponentQ& a, const ExponentQ& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace hyperdist
