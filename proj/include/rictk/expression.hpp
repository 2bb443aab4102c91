#pragma once

// Closed-form scalar expressions with exact symbolic differentiation.
//
// An Expression is an immutable DAG of shared nodes. Construction goes through
// factory functions that perform a fixed, limited set of rewrites: constant
// folding (exact for rationals), flattening of sums and products, merging of
// like terms / like bases, and a few function identities (exp(log a) = a,
// (exp a)^n = exp(n a), ...). There is no general canonical form, so two
// mathematically equal expressions may compare unequal; residuals are tested
// numerically.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rictk/rational.hpp"

namespace rictk {

/// Raised on log of a non-positive value, division by zero and similar.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Op : std::uint8_t {
  kRational,
  kReal,
  kVariable,
  kPower,  // integer exponent; negative exponents are reciprocals
  kExp,
  kLog,
  kSinh,
  kCosh,
  kTanh,
  kSin,
  kCos,
  kIntegral,  // quadrature-backed antiderivative from a fixed anchor
  kProduct,
  kSum,
};

struct Node;

class Expression {
 public:
  Expression();  // rational zero
  Expression(int value);                 // NOLINT(google-explicit-constructor)
  Expression(const Rational& value);     // NOLINT(google-explicit-constructor)

  static Expression real(double value);
  static Expression variable(std::string name);

  Op op() const;
  const Rational& rational_value() const;
  double real_value() const;
  const std::string& name() const;  // variable name, or integration variable
  int exponent() const;
  double anchor() const;
  const std::vector<Expression>& args() const;

  bool is_rational() const { return op() == Op::kRational; }
  bool is_numeric() const { return op() == Op::kRational || op() == Op::kReal; }
  bool is_zero() const;
  bool is_one() const;
  /// Value of a numeric leaf as double.
  double numeric_value() const;

  std::size_t hash() const;
  const Node* id() const { return node_.get(); }

  std::string to_string() const;

  friend bool operator==(const Expression& a, const Expression& b);
  friend bool operator!=(const Expression& a, const Expression& b) { return !(a == b); }

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend struct ExprFactory;
};

/// Total order used to sort the operands of sums and products.
int compare(const Expression& a, const Expression& b);

Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);
Expression operator-(const Expression& a);

Expression sum(std::vector<Expression> terms);
Expression product(std::vector<Expression> factors);
Expression pow(const Expression& base, int exponent);
Expression exp(const Expression& a);
Expression log(const Expression& a);
Expression sinh(const Expression& a);
Expression cosh(const Expression& a);
Expression tanh(const Expression& a);
Expression sin(const Expression& a);
Expression cos(const Expression& a);
Expression sqr(const Expression& a);

/// x ↦ ∫_{anchor}^{x} integrand(t) dt, evaluated by adaptive quadrature.
Expression integral(const Expression& integrand, std::string var, double anchor = 0.0);

/// Shorthand for Expression::variable.
Expression var(std::string name);

/// Exact partial derivative of `e` with respect to `var`, `order` times.
Expression diff(const Expression& e, std::string_view var, int order = 1);

bool depends_on(const Expression& e, std::string_view var);
/// True when the expression contains no variables at all.
bool is_constant(const Expression& e);

/// Replaces every occurrence of variable `var` by `replacement`.
Expression substitute(const Expression& e, std::string_view var, const Expression& replacement);

using Bindings = std::map<std::string, double, std::less<>>;

/// IEEE double value of `e`. Throws DomainError for log of a non-positive
/// number or a zero raised to a negative power, and std::invalid_argument when
/// a variable is unbound.
double eval(const Expression& e, const Bindings& bindings);
double eval(const Expression& e, std::string_view var, double value);

/// Exact value for rational-function expressions (sums, products, integer
/// powers of rationals and bound variables). nullopt for anything else.
std::optional<Rational> eval_exact(const Expression& e, const std::map<std::string, Rational, std::less<>>& bindings);

/// Number of distinct nodes in the DAG.
std::size_t node_count(const Expression& e);

}  // namespace rictk

template <>
struct std::hash<rictk::Expression> {
  std::size_t operator()(const rictk::Expression& e) const noexcept { return e.hash(); }
};
