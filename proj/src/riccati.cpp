#include "rictk/riccati.hpp"

#include <cmath>
#include <stdexcept>

#include "rictk/integrate.hpp"

namespace rictk {
namespace {

Expression dx(const Expression& e) { return diff(e, "x"); }

Expression sum_of_squares(std::initializer_list<Expression> terms) {
  std::vector<Expression> t;
  for (const auto& e : terms) t.push_back(sqr(e));
  return sum(std::move(t));
}

}  // namespace

Expression RiccatiEq::residual(const Expression& phi) const { return dx(phi) - (a * sqr(phi) + b * phi + c); }

Expression RiccatiEq::residual_scale(const Expression& phi) const {
  return sum_of_squares({dx(phi), a * sqr(phi), b * phi, c});
}

double RiccatiEq::max_residual(const Expression& phi, const Sampling& s) const {
  double worst = 0.0;
  const Expression r = residual(phi);
  const Expression sc = residual_scale(phi);
  int used = 0;
  for (double x : sample_points(s)) {
    double rv, sv;
    try {
      rv = eval(r, "x", x);
      sv = eval(sc, "x", x);
    } catch (const DomainError&) {
      continue;
    }
    if (!std::isfinite(rv) || !std::isfinite(sv)) continue;
    ++used;
    worst = std::max(worst, std::abs(rv) / std::max(1.0, std::sqrt(sv)));
  }
  if (used == 0) throw DomainError("no usable sample point");
  return worst;
}

Expression Lode2::residual(const Expression& psi) const {
  const Expression p1 = dx(psi);
  return dx(p1) - b * p1 - c * psi;
}

double Lode2::max_residual(const Expression& psi, const Sampling& s) const {
  const Expression p1 = dx(psi);
  const Expression p2 = dx(p1);
  double worst = 0.0;
  int used = 0;
  for (double x : sample_points(s)) {
    try {
      const double v2 = eval(p2, "x", x);
      const double t1 = eval(b * p1, "x", x);
      const double t0 = eval(c * psi, "x", x);
      const double r = v2 - t1 - t0;
      if (!std::isfinite(r)) continue;
      ++used;
      worst = std::max(worst, std::abs(r) / std::max({1.0, std::abs(v2), std::abs(t1), std::abs(t0)}));
    } catch (const DomainError&) {
    }
  }
  if (used == 0) throw DomainError("no usable sample point");
  return worst;
}

MobiusMap compose(const MobiusMap& m2, const MobiusMap& m1) {
  return {m2.alpha * m1.alpha + m2.beta * m1.gamma, m2.alpha * m1.beta + m2.beta * m1.delta,
          m2.gamma * m1.alpha + m2.delta * m1.gamma, m2.gamma * m1.beta + m2.delta * m1.delta};
}

RiccatiEq invert(const RiccatiEq& eq) { return {-eq.c, -eq.b, -eq.a}; }

RiccatiEq scale(const RiccatiEq& eq, const Expression& alpha) {
  return {eq.a / alpha, eq.b + dx(alpha) / alpha, alpha * eq.c};
}

RiccatiEq shift(const RiccatiEq& eq, const Expression& beta) {
  return {eq.a, eq.b - Expression(2) * eq.a * beta, eq.a * sqr(beta) - eq.b * beta + eq.c + dx(beta)};
}

RiccatiEq mobius_transform(const RiccatiEq& eq, const MobiusMap& m, const Sampling& s) {
  const Expression det = m.determinant();
  if (max_abs(det, s) < 1e-12) throw DomainError("degenerate Möbius map: determinant vanishes");
  if (m.gamma.is_zero()) {
    return shift(scale(eq, m.alpha / m.delta), m.beta / m.delta);
  }
  RiccatiEq r = scale(eq, m.gamma);
  r = shift(r, m.delta);
  r = invert(r);
  r = scale(r, -det / m.gamma);
  return shift(r, m.alpha / m.gamma);
}

SolutionFamily solve_linear(const Expression& b, const Expression& c, double anchor) {
  const Expression z = exp(antiderivative(b, "x", anchor));
  const Expression C = var("C");
  return {z * (antiderivative(c / z, "x", anchor) + C)};
}

SolutionFamily general_from_particular(const RiccatiEq& eq, const Expression& phi1, const Sampling& s, double tol,
                                       double anchor) {
  const double r = eq.max_residual(phi1, s);
  if (r > tol) {
    throw std::invalid_argument("particular solution fails the residual check (relative residual " +
                                std::to_string(r) + ")");
  }
  if (eq.is_linear()) return solve_linear(eq.b, eq.c, anchor);
  const SolutionFamily v = solve_linear(-(eq.b + Expression(2) * eq.a * phi1), -eq.a, anchor);
  return {phi1 + Expression(1) / v.expr};
}

Expression cross_ratio_solution(const Expression& phi1, const Expression& phi2, const Expression& phi3, double A,
                                const Sampling& s) {
  if (A == 0.0) return phi1;
  const Expression R = Expression::real(A) * (phi3 - phi1) / (phi3 - phi2);
  bool degenerate = true;
  for (double x : sample_points(s)) {
    try {
      if (std::abs(1.0 - eval(R, "x", x)) > 1e-12) {
        degenerate = false;
        break;
      }
    } catch (const DomainError&) {
    }
  }
  if (degenerate) throw DomainError("cross-ratio parameter gives R = 1 identically");
  if (A == 1.0) return phi3;
  return (phi1 - R * phi2) / (Expression(1) - R);
}

double cross_ratio(double phi, double phi1, double phi2, double phi3) {
  return (phi - phi1) * (phi3 - phi2) / ((phi - phi2) * (phi3 - phi1));
}

RiccatiEq lode_to_re(const Lode2& l, LogDerivative sign) {
  if (sign == LogDerivative::kPositive) return {-1, l.b, l.c};
  return {1, l.b, -l.c};
}

Lode2 re_to_lode(const RiccatiEq& eq) {
  if (eq.a.is_zero()) throw DomainError("linear Riccati equation (a = 0) has no second-order form");
  return {dx(eq.a) / eq.a + eq.b, -(eq.a * eq.c)};
}

CanonicalForm canonical_form(const Lode2& l, double anchor) {
  const Expression B = -l.b;
  const Expression C = -l.c;
  const Expression c_hat = C - Rational(1, 4) * sqr(B) - Rational(1, 2) * dx(B);
  return {c_hat, exp(Rational(-1, 2) * antiderivative(B, "x", anchor))};
}

Expression wronskian(const Expression& psi1, const Expression& psi2, std::string_view v) {
  return psi1 * diff(psi2, v) - psi2 * diff(psi1, v);
}

Expression second_solution(const Lode2& l, const Expression& psi1, const Sampling& s, double tol) {
  const double r = l.max_residual(psi1, s);
  if (r > tol) throw std::invalid_argument("psi1 does not solve the equation (relative residual " + std::to_string(r) + ")");
  // Dense sign scan: the quadrature would silently cross a zero of ψ1.
  Sampling dense = s;
  dense.points = std::max(s.points, 1000);
  double prev = 0.0;
  for (double x : sample_points(dense)) {
    const double v = eval(psi1, "x", x);
    if (v == 0.0 || !std::isfinite(v) || (prev != 0.0 && (v > 0) != (prev > 0))) {
      throw DomainError("psi1 vanishes near x = " + std::to_string(x) + "; split the interval");
    }
    prev = v;
  }
  const double mid = 0.5 * (s.lo + s.hi);
  return psi1 * antiderivative(pow(psi1, -2), "x", mid);
}

Factorization lode_factor(const Lode2& l, const Expression& psi1, const Sampling& s) {
  Factorization f;
  f.a = dx(psi1) / psi1;
  f.quotient = l.b - f.a;
  f.remainder = dx(f.a) + sqr(f.a) - f.a * l.b - l.c;
  f.remainder_max = max_abs(f.remainder, s);
  return f;
}

}  // namespace rictk
