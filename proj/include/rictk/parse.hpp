#pragma once

#include <stdexcept>
#include <string_view>

#include "rictk/expression.hpp"

namespace rictk {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses infix text such as "x^2 + 1", "-2/cosh(x)^2" or "exp(-x^2)".
///
/// Grammar: + - * / and ^ (integer exponents only), parentheses, decimal and
/// rational literals, identifiers as variables, `pi`, and the functions exp,
/// log, sinh, cosh, tanh, sin, cos. Decimal literals without an exponent part
/// are read exactly as rationals.
Expression parse_expression(std::string_view text);

}  // namespace rictk
