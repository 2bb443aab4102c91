#include "rictk/parse.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numbers>
#include <string>

namespace rictk {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expression parse() {
    Expression e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expression expr() {
    Expression e = term();
    for (;;) {
      if (accept('+')) {
        e = e + term();
      } else if (accept('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expression term() {
    Expression e = unary();
    for (;;) {
      if (accept('*')) {
        e = e * unary();
      } else if (accept('/')) {
        Expression d = unary();
        if (d.is_zero()) fail("division by zero");
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expression unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expression power() {
    Expression base = primary();
    if (!accept('^')) return base;
    Expression ex = unary();
    if (!ex.is_rational() || !ex.rational_value().is_integer()) fail("exponent must be an integer constant");
    return pow(base, static_cast<int>(ex.rational_value().num()));
  }

  Expression number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::size_t dot = std::string_view::npos;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      dot = pos_++;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool scientific = false;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        scientific = true;
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string lit(s_.substr(start, pos_ - start));
    if (lit == ".") fail("malformed number");
    const std::size_t digits = lit.size() - (dot == std::string_view::npos ? 0 : 1);
    if (!scientific && digits <= 18) {
      std::string mantissa = lit;
      std::int64_t den = 1;
      if (dot != std::string_view::npos) {
        const std::size_t frac = pos_ - dot - 1;
        mantissa.erase(dot - start, 1);
        for (std::size_t i = 0; i < frac; ++i) den *= 10;
      }
      std::int64_t num = 0;
      std::from_chars(mantissa.data(), mantissa.data() + mantissa.size(), num);
      return Expression(Rational(num, den));
    }
    return Expression::real(std::strtod(lit.c_str(), nullptr));
  }

  Expression primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      Expression e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      if (accept('(')) {
        Expression a = expr();
        if (!accept(')')) fail("expected ')'");
        if (id == "exp") return exp(a);
        if (id == "log") return log(a);
        if (id == "sinh") return sinh(a);
        if (id == "cosh") return cosh(a);
        if (id == "tanh") return tanh(a);
        if (id == "sin") return sin(a);
        if (id == "cos") return cos(a);
        if (id == "sqrt") fail("sqrt is not supported");
        fail("unknown function '" + id + "'");
      }
      if (id == "pi") return Expression::real(std::numbers::pi);
      return var(id);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace rictk
