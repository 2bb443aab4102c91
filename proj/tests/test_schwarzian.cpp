#include <doctest.h>

#include <cmath>

#include "rictk/parse.hpp"
#include "rictk/schwarzian.hpp"

using namespace rictk;

namespace {

Expression p(const char* s) { return parse_expression(s); }

double at(const Expression& e, double x) { return eval(e, "x", x); }

}  // namespace

TEST_CASE("Schwarzian of elementary maps") {
  for (double x : {-0.6, 0.1, 0.9}) {
    CHECK(at(schwarz(p("sin(x)/cos(x)")), x) == doctest::Approx(-1.0));
    CHECK(at(schwarz(p("exp(2*x)")), x) == doctest::Approx(1.0));
    CHECK(std::abs(at(schwarz(p("(2*x+1)/(x+3)")), x)) < 1e-12);
  }
  CHECK_THROWS_AS(schwarz(p("5")), DomainError);
}

TEST_CASE("Schwarzian is Mobius invariant") {
  const Expression phi = p("tanh(x) + x^3");
  const Expression moved = (Expression(2) * phi + Expression(1)) / (phi + Expression(3));
  for (double x : {-0.4, 0.3, 0.8}) CHECK(at(schwarz(moved), x) == doctest::Approx(at(schwarz(phi), x)));
}

TEST_CASE("ratio of solutions recovers the potential") {
  // ψ'' = ψ: ψ1 = e^x, ψ2 = e^{-x}.
  for (double x : {-1.0, 0.5}) CHECK(at(schwarz(p("exp(x)/exp(-x)")), x) == doctest::Approx(1.0));
}

TEST_CASE("modified Schwarzian") {
  const Expression b = p("sin(x)");
  for (double x : {-0.7, 0.2, 1.3}) {
    CHECK(at(dmod(exp(Expression(2) * b)), x) == doctest::Approx(std::cos(x) * std::cos(x) + std::sin(x)));
  }
  // ψ1 = cosh, ψ2 = sinh solve ψ'' = ψ with Wronskian 1; a = 1/(ψ1ψ2).
  const Expression a = Expression(1) / p("cosh(x)*sinh(x)");
  for (double x : {0.4, 1.2}) CHECK(at(modschwarz_potential(a, 1.0), x) == doctest::Approx(1.0));
}

TEST_CASE("products of solutions satisfy the third-order equation") {
  const Expression one = 1;  // ψ'' = ψ
  for (const char* phi : {"exp(2*x)", "exp(-2*x)", "cosh(x)*sinh(x)"}) {
    for (double x : {-0.5, 0.7}) CHECK(std::abs(at(third_order_residual(p(phi), one), x)) < 1e-10);
  }
  CHECK(std::abs(at(third_order_residual(p("x^2"), p("x")), 0.7)) > 0.1);
  // First integral equals V² for the product of a pair with Wronskian V.
  for (double x : {-0.5, 0.7}) {
    CHECK(at(first_integral(p("exp(x)*exp(-x)"), one), x) == doctest::Approx(4.0));
    CHECK(at(first_integral(p("cosh(x)*sinh(x)"), one), x) == doctest::Approx(1.0));
  }
}

TEST_CASE("Wronskian of the squared-solution triple is -2V^3") {
  const SchwarzTriple t = schwarz_triple(p("exp(x)"), p("exp(-x)"));
  CHECK(t.V == doctest::Approx(-2.0));
  for (double x : {-0.3, 0.6}) CHECK(at(wronskian3(t.phi1, t.phi2, t.phi3), x) == doctest::Approx(-2 * std::pow(t.V, 3)));
  const SchwarzTriple u = schwarz_triple(p("cosh(x)"), p("sinh(x)"));
  CHECK(u.V == doctest::Approx(1.0));
  CHECK(at(wronskian3(u.phi1, u.phi2, u.phi3), 0.4) == doctest::Approx(-2.0));
}

TEST_CASE("Riccati pair from a squared-solution combination") {
  const RiccatiPair pair = riccati_pair(p("cosh(x)*sinh(x)"), 0.25);
  for (double x : {0.3, 1.1}) {
    CHECK(at(pair.c, x) == doctest::Approx(1.0));
    for (const Expression& f : {pair.f_plus, pair.f_minus}) {
      CHECK(std::abs(at(diff(f, "x") + f * f - pair.c, x)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(riccati_pair(p("x"), -1.0), DomainError);
}
