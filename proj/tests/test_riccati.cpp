#include <doctest.h>

#include <cmath>

#include "rictk/parse.hpp"
#include "rictk/riccati.hpp"

using namespace rictk;

namespace {

const Sampling kNarrow{-1.2, 1.2, 24};

Expression p(const char* s) { return parse_expression(s); }

double at(const Expression& e, double x) { return eval(e, "x", x); }

}  // namespace

TEST_CASE("Mobius transforms map solutions to solutions") {
  const RiccatiEq eq{1, 0, 1};  // φ_x = φ² + 1
  const Expression phi = p("sin(x)/cos(x)");
  CHECK(eq.max_residual(phi, kNarrow) < 1e-12);
  const MobiusMap maps[] = {{2, 1, 0, 1}, {0, 1, 1, 0}, {1, 2, 3, 1}, {p("x"), 1, 1, 2}};
  for (const MobiusMap& m : maps) {
    const RiccatiEq t = mobius_transform(eq, m, kNarrow);
    CHECK(t.max_residual(m.apply(phi), {-0.4, 0.4, 16}) < 1e-9);
  }
  CHECK_THROWS_AS(mobius_transform(eq, {1, 1, 1, 1}, kNarrow), DomainError);
}

TEST_CASE("composition of Mobius maps") {
  const MobiusMap a{1, 2, 0, 1}, b{0, 1, 1, 0};
  const Expression x = var("x");
  CHECK(at(compose(b, a).apply(x), 0.7) == doctest::Approx(at(b.apply(a.apply(x)), 0.7)));
}

TEST_CASE("general solution from a particular solution") {
  const RiccatiEq eq{1, 0, 1};
  const SolutionFamily fam = general_from_particular(eq, p("sin(x)/cos(x)"), kNarrow);
  for (double c : {-2.0, 0.5, 3.0}) CHECK(eq.max_residual(fam.at(c), {-0.3, 0.3, 12}) < 1e-9);
  CHECK_THROWS_AS(general_from_particular(eq, p("x"), kNarrow), std::invalid_argument);
}

TEST_CASE("linear equations by variation of constants") {
  const SolutionFamily fam = solve_linear(p("2"), p("x"));
  const RiccatiEq eq{0, 2, var("x")};
  CHECK(eq.is_linear());
  CHECK(eq.max_residual(fam.at(1.5)) < 1e-10);
}

TEST_CASE("cross-ratio solution has the prescribed cross ratio") {
  const RiccatiEq eq{1, 0, 1};
  const SolutionFamily fam = general_from_particular(eq, p("sin(x)/cos(x)"), kNarrow);
  const Expression p1 = fam.at(1.0), p2 = fam.at(2.0), p3 = fam.at(4.0);
  const Expression phi = cross_ratio_solution(p1, p2, p3, 3.0, {-0.3, 0.3, 12});
  CHECK(eq.max_residual(phi, {-0.3, 0.3, 12}) < 1e-8);
  for (double x : {-0.2, 0.1, 0.25}) CHECK(cross_ratio(at(phi, x), at(p1, x), at(p2, x), at(p3, x)) == doctest::Approx(3.0));
}

TEST_CASE("cross ratio of four numerical solutions is constant") {
  const RiccatiEq eq{1, var("x"), 1};
  const CrossRatioReport r = cross_ratio_drift(eq, 0.0, {0.0, 0.5, 1.0, -1.0}, 0.4);
  CHECK(r.x_reached == doctest::Approx(0.4));
  CHECK(r.max_drift < 1e-9);
}

TEST_CASE("linear ODE and Riccati conversions") {
  const Lode2 l{0, 1};  // ψ'' = ψ
  const RiccatiEq pos = lode_to_re(l);
  CHECK(pos.max_residual(p("tanh(x)")) < 1e-12);
  const RiccatiEq neg = lode_to_re(l, LogDerivative::kNegative);
  CHECK(neg.max_residual(p("-tanh(x)")) < 1e-12);
  const Lode2 back = re_to_lode(pos);
  CHECK(back.max_residual(p("cosh(x)")) < 1e-12);
  CHECK_THROWS_AS(re_to_lode(RiccatiEq{0, 1, 1}), DomainError);
}

TEST_CASE("canonical form removes the first-derivative term") {
  const Lode2 l = Lode2::from_standard_form(2, 0);  // ψ'' + 2ψ' = 0
  const CanonicalForm cf = canonical_form(l);
  CHECK(at(cf.c_hat, 0.3) == doctest::Approx(-1.0));
  // ψ = 1 is a solution, so ψ̂ = 1/gauge solves ψ̂'' + ĉψ̂ = 0.
  const Expression psi_hat = Expression(1) / cf.gauge;
  const Expression r = diff(psi_hat, "x", 2) + cf.c_hat * psi_hat;
  CHECK(std::abs(at(r, 0.7)) < 1e-12);
}

TEST_CASE("second solution and its Wronskian") {
  const Lode2 l{0, 1};
  const Expression psi2 = second_solution(l, p("cosh(x)"));
  CHECK(l.max_residual(psi2) < 1e-9);
  for (double x : {-2.0, 0.0, 1.5}) CHECK(at(wronskian(p("cosh(x)"), psi2), x) == doctest::Approx(1.0));
  CHECK_THROWS_AS(second_solution(l, p("sinh(x)")), DomainError);
  CHECK_THROWS_AS(second_solution(l, p("cos(x)")), std::invalid_argument);
}

TEST_CASE("factorization by a kernel element") {
  const Lode2 l = Lode2::from_standard_form(-3, 2);  // ψ'' − 3ψ' + 2ψ = 0
  CHECK(lode_factor(l, p("exp(x)")).remainder_max < 1e-12);
  CHECK(lode_factor(l, p("exp(2*x)")).remainder_max < 1e-12);
  CHECK(lode_factor(l, p("exp(3*x)")).remainder_max > 1.0);
}

TEST_CASE("constant-coefficient kernels") {
  struct Case {
    std::vector<double> coeffs;
    std::size_t dim;
  };
  const Case cases[] = {{{-3, 2}, 2}, {{-2, 1}, 2}, {{0, 1}, 2}, {{-3, 3, -1}, 3}, {{0, 0, 0, -1}, 4}};
  for (const Case& c : cases) {
    const KernelBasis k = lodo_const_kernel(c.coeffs);
    REQUIRE(k.functions.size() == c.dim);
    for (const Expression& f : k.functions) {
      Expression op = diff(f, "x", static_cast<int>(c.coeffs.size()));
      for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
        op = op + Expression::real(c.coeffs[i]) * diff(f, "x", static_cast<int>(c.coeffs.size() - 1 - i));
      }
      for (double x : {-0.5, 0.3, 1.1}) CHECK(std::abs(at(op, x)) < 1e-9 * std::max(1.0, std::abs(at(f, x))));
    }
  }
}

TEST_CASE("Hermite polynomials") {
  CHECK(hermite_coefficients(3) == std::vector<Rational>{0, -12, 0, 8});
  CHECK(format_polynomial(hermite_coefficients(2)) == "4x^2-2");
  for (int n = 0; n <= 10; ++n) CHECK(hermite_coefficients(n) == hermite_rodrigues_coefficients(n));
  for (int n = 0; n <= 5; ++n) {
    const Hermite h = hermite_polynomial(n);
    CHECK(h.alpha == -2.0 * n - 1.0);
    CHECK(max_abs(hermite_residual(h.witness, Expression::real(h.alpha)), {-3, 3, 40}) < 1e-8);
  }
}

TEST_CASE("Hermite ladder raises and lowers the parameter") {
  const Expression y = var("x");  // y_x + y² = x² + 1
  const Ladder up = hermite_ladder(y, 1);
  CHECK(up.alpha.rational_value() == Rational(3));
  CHECK(max_abs(hermite_residual(up.y, up.alpha), {0.1, 3, 30}) < 1e-10);
  const Ladder down = hermite_ladder_inverse(up.y, up.alpha);
  CHECK(down.alpha.rational_value() == Rational(1));
  CHECK(max_abs(down.y - y, {0.1, 3, 30}) < 1e-10);
}

TEST_CASE("pole series") {
  const auto exact = pole_series_exact(Rational(1), Rational(1, 2), 6);
  const auto approx = pole_series(1.0, 0.5, 6);
  for (std::size_t i = 0; i < exact.size(); ++i) CHECK(approx[i] == doctest::Approx(exact[i].to_double()));
  CHECK(exact[0] == Rational(0));
  const PoleSeriesCheck c = pole_series_check(1.0, 0.5, 8);
  for (std::size_t i = 1; i < c.error.size(); ++i) CHECK(c.error[i] < c.error[i - 1]);
  CHECK(c.observed_order > 6.0);
}

TEST_CASE("Kovalevskii integrals are conserved and blow-ups reported") {
  const KovalevskiiReport r3 = kovalevskii_check(3, {0.3, 0.2, 0.1}, 0.5);
  CHECK_FALSE(r3.blew_up);
  CHECK(r3.names.size() == 2);
  CHECK(r3.max_drift < 1e-8);
  const KovalevskiiReport r4 = kovalevskii_check(4, {0.4, 0.3, 0.2, 0.1}, 0.5);
  CHECK(r4.max_drift < 1e-8);
  const KovalevskiiReport blow = kovalevskii_check(3, {1.0, 2.0, 3.0}, 10.0);
  CHECK(blow.blew_up);
  CHECK(blow.blow_up_location < 10.0);
}
