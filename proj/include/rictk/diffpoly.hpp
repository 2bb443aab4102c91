#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rictk/expression.hpp"
#include "rictk/rational.hpp"

namespace rictk {

/// (symbol index i ≥ 1, derivative order d) ↦ multiplicity, denoting
/// ∏ (u_i^{(d)})^multiplicity.
using Monomial = std::map<std::pair<int, int>, int>;

/// Polynomial in formal potentials u_1, u_2, ... and their x-derivatives with
/// exact rational coefficients. Zero coefficients are never stored.
class DiffPolynomial {
 public:
  DiffPolynomial() = default;
  DiffPolynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  DiffPolynomial(int c) : DiffPolynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  /// u_index^{(order)}.
  static DiffPolynomial symbol(int index, int order = 0);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;
  /// Largest total multiplicity of a monomial; 0 for constants and zero.
  int degree() const;
  int max_order() const;
  int max_symbol() const;

  DiffPolynomial operator-() const;
  friend DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b);
  friend DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b);
  friend DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b);
  DiffPolynomial& operator+=(const DiffPolynomial& o) { return *this = *this + o; }
  DiffPolynomial& operator-=(const DiffPolynomial& o) { return *this = *this - o; }
  friend bool operator==(const DiffPolynomial& a, const DiffPolynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const DiffPolynomial& a, const DiffPolynomial& b) { return !(a == b); }

  /// Total x-derivative by the Leibniz rule, u_i^{(d)} ↦ u_i^{(d+1)}.
  DiffPolynomial derivative() const;

  /// Text form such as `1/2*u_2 - 1/4*u_1' - 1/8*u_1^2`. With a single
  /// potential (num_symbols == 1) the symbol prints as `u`.
  std::string to_string(int num_symbols) const;

  /// Substitutes u_i ↦ potentials[i-1], taking derivatives in `var`.
  Expression to_expression(const std::vector<Expression>& potentials, std::string_view var = "x") const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// D_x P.
inline DiffPolynomial total_derivative(const DiffPolynomial& p) { return p.derivative(); }

}  // namespace rictk
