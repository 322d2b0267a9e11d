#include "hyperdist/expr_parse.hpp"

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>

#include "hyperdist/error.hpp"

namespace hyperdist {

namespace {

namespace n = expr_nodes;

const HyperReal* as_const(const InternalExpr& e) {
  const auto* c = std::get_if<n::Const>(&e.node().value);
  return c ? &c->value : nullptr;
}

class Parser {
 public:
  Parser(std::string_view text, const TruncationPolicy& policy) : s_(text), policy_(policy) {}

  InternalExpr parse() {
    InternalExpr e = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, what + " at offset " + std::to_string(pos_) + " in \"" +
                                           std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  InternalExpr constant_of(HyperReal h) { return constant(std::move(h)); }

  InternalExpr plus(InternalExpr a, InternalExpr b) {
    if (const HyperReal* x = as_const(a)) {
      if (const HyperReal* y = as_const(b)) return constant_of(*x + *y);
    }
    return add(std::move(a), std::move(b));
  }

  InternalExpr minus(InternalExpr a, InternalExpr b) {
    if (const HyperReal* x = as_const(a)) {
      if (const HyperReal* y = as_const(b)) return constant_of(*x - *y);
    }
    return sub(std::move(a), std::move(b));
  }

  InternalExpr times(InternalExpr a, InternalExpr b) {
    if (const HyperReal* x = as_const(a)) {
      if (const HyperReal* y = as_const(b)) return constant_of(*x * *y);
    }
    return mul(std::move(a), std::move(b));
  }

  InternalExpr divide(InternalExpr a, InternalExpr b) {
    if (const HyperReal* y = as_const(b)) {
      if (y->is_zero()) fail("division by zero");
      return times(std::move(a), constant_of(recip(*y)));
    }
    return mul(std::move(a), recip(std::move(b)));
  }

  InternalExpr expression() {
    InternalExpr e = term();
    for (;;) {
      if (accept("+")) {
        e = plus(std::move(e), term());
      } else if (accept("-")) {
        e = minus(std::move(e), term());
      } else {
        return e;
      }
    }
  }

  InternalExpr term() {
    InternalExpr e = unary();
    for (;;) {
      if (accept("*")) {
        e = times(std::move(e), unary());
      } else if (accept("/")) {
        e = divide(std::move(e), unary());
      } else {
        return e;
      }
    }
  }

  InternalExpr unary() {
    if (accept("-")) {
      InternalExpr e = unary();
      if (const HyperReal* c = as_const(e)) return constant_of(-*c);
      return neg(std::move(e));
    }
    if (accept("+")) return unary();
    return power();
  }

  double number() {
    skip();
    const char* begin = s_.data() + pos_;
    std::string buf(begin, s_.size() - pos_);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str()) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - buf.c_str());
    return v;
  }

  std::int64_t integer() {
    skip();
    bool negative = accept("-");
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    const std::int64_t v = std::stoll(std::string(s_.substr(start, pos_ - start)));
    return negative ? -v : v;
  }

  /// Exponent after '^': an integer, or a parenthesized ratio p/q.
  ExponentQ exponent() {
    if (accept("(")) {
      const std::int64_t p = integer();
      std::int64_t q = 1;
      if (accept("/")) q = integer();
      expect(")");
      if (q == 0) fail("zero denominator in exponent");
      return ExponentQ(p, q);
    }
    return ExponentQ(integer());
  }

  InternalExpr power() {
    const bool bare_eps = peek_word() == "eps";
    InternalExpr base = primary();
    if (!accept("^")) return base;
    const ExponentQ k = exponent();
    if (const HyperReal* c = as_const(base)) {
      if (bare_eps) return constant_of(HyperReal::monomial(1.0, k, policy_));
      if (!k.is_integer()) fail("fractional powers apply to eps only");
      const std::int64_t p = k.numerator();
      const HyperReal v = pow(*c, static_cast<unsigned>(p < 0 ? -p : p));
      return constant_of(p < 0 ? recip(v) : v);
    }
    if (!k.is_integer()) fail("fractional powers apply to eps only");
    const std::int64_t p = k.numerator();
    InternalExpr e = ipow(std::move(base), static_cast<unsigned>(p < 0 ? -p : p));
    return p < 0 ? recip(std::move(e)) : e;
  }

  std::string_view peek_word() {
    skip();
    std::size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
    return s_.substr(pos_, end - pos_);
  }

  CmpOp comparison() {
    if (accept("<=")) return CmpOp::LessEq;
    if (accept(">=")) return CmpOp::GreaterEq;
    if (accept("<")) return CmpOp::Less;
    if (accept(">")) return CmpOp::Greater;
    fail("expected a comparison operator");
  }

  HyperReal constant_arg() {
    InternalExpr e = expression();
    const HyperReal* c = as_const(e);
    if (!c) fail("expected a constant argument");
    return *c;
  }

  InternalExpr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      return constant(number(), policy_);
    }
    if (accept("(")) {
      InternalExpr e = expression();
      expect(")");
      return e;
    }
    const std::string word(peek_word());
    if (word.empty()) fail("unexpected '" + std::string(1, ch) + "'");
    pos_ += word.size();
    if (word == "x" || word == "n") return var();
    if (word == "eps") return constant_of(HyperReal::epsilon(policy_));
    if (word == "pi") return constant(std::numbers::pi, policy_);
    expect("(");
    InternalExpr out;
    if (word == "sin") {
      out = sin(expression());
    } else if (word == "cos") {
      out = cos(expression());
    } else if (word == "exp") {
      out = exp(expression());
    } else if (word == "bump") {
      out = bump(expression());
    } else if (word == "plateau") {
      const double a = number();
      expect(",");
      out = plateau(a, expression());
    } else if (word == "dirac") {
      out = make_dirac(policy_);
    } else if (word == "mollify") {
      InternalExpr base = expression();
      expect(",");
      HyperReal scale = constant_arg();
      expect(",");
      HyperReal amplitude = constant_arg();
      out = mollify(std::move(base), std::move(scale), std::move(amplitude));
    } else if (word == "if") {
      InternalExpr lhs = expression();
      const CmpOp op = comparison();
      InternalExpr rhs = expression();
      expect(",");
      InternalExpr then_branch = expression();
      expect(",");
      InternalExpr else_branch = expression();
      out = piecewise(std::move(lhs), op, std::move(rhs), std::move(then_branch), std::move(else_branch));
    } else {
      fail("unknown function '" + word + "'");
    }
    expect(")");
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  TruncationPolicy policy_;
};

}  // namespace

InternalExpr parse_infix(std::string_view text, const TruncationPolicy& policy) {
  return Parser(text, policy).parse();
}

}  // namespace hyperdist
