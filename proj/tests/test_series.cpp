#include <doctest.h>

#include <cmath>

#include "rictk/diffpoly.hpp"
#include "rictk/parse.hpp"
#include "rictk/series.hpp"

using namespace rictk;

namespace {

bool all_zero(const FormalSeries& s) {
  for (const auto& [d, c] : s.coefficients()) {
    if (!c.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("differential polynomial arithmetic") {
  const DiffPolynomial u = DiffPolynomial::symbol(1);
  CHECK((u * u).derivative() == DiffPolynomial(2) * u * DiffPolynomial::symbol(1, 1));
  CHECK((u * u).degree() == 2);
  CHECK(u.derivative().derivative().max_order() == 2);
  CHECK((u - u).is_zero());
  CHECK((Rational(1, 2) * u).to_string(1) == "1/2*u");
  CHECK((DiffPolynomial::symbol(2) - u * u).to_string(2) == "u_2 - u_1^2");
  CHECK(DiffPolynomial::symbol(1, 2).to_string(1) == "u''");
}

TEST_CASE("differential polynomial evaluation on a concrete potential") {
  const DiffPolynomial p = DiffPolynomial::symbol(1) * DiffPolynomial::symbol(1, 1);
  const Expression e = p.to_expression({parse_expression("sin(x)")});
  CHECK(eval(e, "x", 0.3) == doctest::Approx(std::sin(0.3) * std::cos(0.3)));
}

TEST_CASE("asymptotic Riccati series for the quadratic pencil") {
  const RiccatiSeries s = riccati_series(2, 4);
  CHECK(s.f.coefficient(1) == DiffPolynomial(1));
  CHECK(s.f.coefficient(0).to_string(2) == "1/2*u_1");
  CHECK(s.f.coefficient(-1).to_string(2) == "1/2*u_2 - 1/4*u_1' - 1/8*u_1^2");
  CHECK(s.g.coefficient(1) == DiffPolynomial(-1));
  CHECK(s.g.coefficient(0).to_string(2) == "-1/2*u_1");
  CHECK(all_zero(riccati_residual(s.f, riccati_potential(2))));
  CHECK(all_zero(riccati_residual(s.g, riccati_potential(2))));
}

TEST_CASE("asymptotic Riccati series for the Schrodinger potential") {
  const RiccatiSeries s = riccati_series(1, 6);
  CHECK(s.f.coefficient(0).is_zero());
  CHECK(s.f.coefficient(-1).to_string(1) == "1/2*u");
  CHECK(s.f.coefficient(-2).to_string(1) == "-1/4*u'");
  CHECK(all_zero(riccati_residual(s.f, riccati_potential(1))));
  CHECK(all_zero(riccati_residual(s.g, riccati_potential(1))));
  CHECK_THROWS_AS(riccati_series(3, 2), std::invalid_argument);
}

TEST_CASE("modified Schwarzian series solve their equation") {
  for (int m : {1, 2}) {
    const FormalSeries h = modschwarz_series(m, 5);
    CHECK(h.coefficient(0) == DiffPolynomial(1));
    CHECK(all_zero(modschwarz_residual(h, generalized_potential(m), m)));
  }
}

TEST_CASE("truncation propagates through products") {
  FormalSeries a(-2);
  a.set(0, 1);
  a.set(-1, DiffPolynomial::symbol(1));
  const FormalSeries sq = a * a;
  CHECK(sq.bottom() == -2);
  CHECK_THROWS_AS(sq.coefficient(-3), std::out_of_range);
  CHECK(sq.coefficient(-1) == DiffPolynomial(2) * DiffPolynomial::symbol(1));
}

TEST_CASE("zeta chain for the reflectionless one-soliton potential") {
  const Expression u = parse_expression("-2/cosh(x)^2");
  const std::vector<Expression> z = zeta_chain(u, 3);
  REQUIRE(z.size() == 3);
  for (double x : {-1.5, 0.2, 2.0}) {
    CHECK(eval(z[0], "x", x) == doctest::Approx(-std::tanh(x)).epsilon(1e-10));
    CHECK(eval(diff(z[0], "x"), "x", x) == doctest::Approx(0.5 * eval(u, "x", x)).epsilon(1e-10));
  }
  // Symmetric constants: ζ_j(+far) + ζ_j(−far) = 0.
  for (const Expression& zj : z) CHECK(std::abs(eval(zj, "x", 30.0) + eval(zj, "x", -30.0)) < 1e-8);
}
