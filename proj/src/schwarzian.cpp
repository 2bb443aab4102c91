#include "rictk/schwarzian.hpp"

#include <cmath>

namespace rictk {

Expression schwarz(const Expression& phi, std::string_view v) {
  const Expression p1 = diff(phi, v);
  if (p1.is_zero()) throw DomainError("Schwarzian of a constant");
  const Expression p2 = diff(p1, v);
  const Expression p3 = diff(p2, v);
  return Rational(3, 4) * sqr(p2 / p1) - Rational(1, 2) * p3 / p1;
}

Expression dmod(const Expression& a, std::string_view v) {
  if (a.is_zero()) throw DomainError("modified Schwarzian of zero");
  const Expression a1 = diff(a, v);
  const Expression a2 = diff(a1, v);
  return Rational(3, 4) * sqr(a1) / sqr(a) - Rational(1, 2) * a2 / a;
}

Expression modschwarz_potential(const Expression& a, double V, std::string_view v) {
  return dmod(a, v) + Expression::real(0.25 * V * V) * sqr(a);
}

Expression third_order_residual(const Expression& phi, const Expression& c, std::string_view v) {
  const Expression p1 = diff(phi, v);
  return diff(p1, v, 2) - Expression(4) * c * p1 - Expression(2) * diff(c, v) * phi;
}

Expression first_integral(const Expression& phi, const Expression& c, std::string_view v) {
  const Expression p1 = diff(phi, v);
  return Expression(4) * c * sqr(phi) + sqr(p1) - Expression(2) * phi * diff(p1, v);
}

Expression wronskian3(const Expression& f, const Expression& g, const Expression& h, std::string_view v) {
  const Expression f1 = diff(f, v), g1 = diff(g, v), h1 = diff(h, v);
  const Expression f2 = diff(f1, v), g2 = diff(g1, v), h2 = diff(h1, v);
  return f * (g1 * h2 - h1 * g2) - g * (f1 * h2 - h1 * f2) + h * (f1 * g2 - g1 * f2);
}

SchwarzTriple schwarz_triple(const Expression& psi1, const Expression& psi2, double x0, std::string_view v) {
  const Expression w = psi1 * diff(psi2, v) - psi2 * diff(psi1, v);
  return {sqr(psi1), sqr(psi2), psi1 * psi2, eval(w, v, x0)};
}

RiccatiPair riccati_pair(const Expression& A, double z, std::string_view v) {
  if (z < 0) throw DomainError("riccati_pair needs z >= 0");
  if (A.is_zero()) throw DomainError("riccati_pair needs A nonzero");
  const Expression a1 = diff(A, v);
  const Expression half_log = Rational(1, 2) * a1 / A;
  const Expression root = Expression::real(std::sqrt(z)) / A;
  const Expression c = (Expression::real(4 * z) - sqr(a1) + Expression(2) * A * diff(a1, v)) / (Expression(4) * sqr(A));
  return {half_log + root, half_log - root, c};
}

}  // namespace rictk
