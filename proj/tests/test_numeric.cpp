#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rictk/numeric/finite_difference.hpp"
#include "rictk/numeric/ivp.hpp"
#include "rictk/numeric/linalg.hpp"
#include "rictk/numeric/polynomial.hpp"
#include "rictk/numeric/quadrature.hpp"

using namespace rictk::numeric;

TEST_CASE("quadrature of monomials is exact") {
  for (int n = 0; n <= 8; ++n) {
    const double v = quadrature([n](double x) { return std::pow(x, n); }, 0.0, 2.0).value;
    CHECK(v == doctest::Approx(std::pow(2.0, n + 1) / (n + 1)).epsilon(1e-13));
  }
}

TEST_CASE("quadrature over infinite ranges and reversed limits") {
  const double g = quadrature([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY).value;
  CHECK(g == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  const double r = quadrature([](double x) { return std::cos(x); }, 1.0, 0.0).value;
  CHECK(r == doctest::Approx(-std::sin(1.0)).epsilon(1e-13));
}

TEST_CASE("endpoint regularization handles inverse square-root ends") {
  QuadratureOptions opt;
  opt.endpoint_regularization = true;
  // ∫_0^1 dx / √(x(1-x)) = π.
  const double v = quadrature([](double x) { return 1.0 / std::sqrt(x * (1 - x)); }, 0.0, 1.0, opt).value;
  CHECK(v == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("quadrature reports non-convergence") {
  QuadratureOptions opt;
  opt.max_subdivisions = 3;
  CHECK_THROWS_AS(quadrature([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, opt), QuadratureError);
}

TEST_CASE("adaptive IVP reproduces the exponential and conserves oscillator energy") {
  IvpProblem exp_problem{[](double, const State& y, State& d) { d[0] = y[0]; }, 0.0, {1.0}};
  const Trajectory t = integrate_ivp(exp_problem, 1.0, {.rel_tol = 1e-12, .abs_tol = 1e-14});
  CHECK(t.back()[0] == doctest::Approx(std::numbers::e).epsilon(1e-11));
  CHECK(t.at(0.5)[0] == doctest::Approx(std::exp(0.5)).epsilon(1e-8));

  IvpProblem osc{[](double, const State& y, State& d) {
                   d[0] = y[1];
                   d[1] = -y[0];
                 },
                 0.0,
                 {1.0, 0.0}};
  const Trajectory o = integrate_ivp(osc, 20.0, {.rel_tol = 1e-12, .abs_tol = 1e-14});
  double drift = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i) {
    drift = std::max(drift, std::abs(o.y(i)[0] * o.y(i)[0] + o.y(i)[1] * o.y(i)[1] - 1.0));
  }
  CHECK(drift < 1e-9);
  const Trajectory back = integrate_ivp(osc, -3.0);
  CHECK(back.back()[0] == doctest::Approx(std::cos(3.0)).epsilon(1e-8));
}

TEST_CASE("IVP blow-up is reported with its location") {
  // y' = y², y(0) = 1 blows up at x = 1.
  IvpProblem p{[](double, const State& y, State& d) { d[0] = y[0] * y[0]; }, 0.0, {1.0}};
  try {
    integrate_ivp(p, 2.0);
    FAIL("expected blow-up");
  } catch (const IvpError& e) {
    CHECK(e.location() == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("fixed-step RK4 is fourth order and deterministic") {
  IvpProblem p{[](double, const State& y, State& d) { d[0] = -2.0 * y[0]; }, 0.0, {1.0}};
  const double e1 = std::abs(integrate_rk4(p, 1.0, 20).back()[0] - std::exp(-2.0));
  const double e2 = std::abs(integrate_rk4(p, 1.0, 40).back()[0] - std::exp(-2.0));
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
  CHECK(integrate_rk4(p, 1.0, 40).back()[0] == integrate_rk4(p, 1.0, 40).back()[0]);
}

TEST_CASE("LU solves and computes determinants") {
  Matrix m(3, 3);
  const double a[3][3] = {{2, 1, 1}, {4, -6, 0}, {-2, 7, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a[i][j];
  const LuFactorization lu(m);
  CHECK(lu.determinant() == doctest::Approx(-16.0));
  const std::vector<double> x = lu.solve({5, -2, 9});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));
  CHECK(x[2] == doctest::Approx(2.0));
  CHECK(lu.condition_number() >= 1.0);
  CHECK(LuFactorization(Matrix::identity(4)).condition_number() == doctest::Approx(1.0));
}

TEST_CASE("property: random systems satisfy M x = b") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 5;
    Matrix m(n, n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = u(rng);
      for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng) + (i == j ? 2.0 : 0.0);
    }
    const std::vector<double> r = m * linsolve(m, b);
    for (std::size_t i = 0; i < n; ++i) CHECK(r[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("singular matrices are rejected") {
  Matrix m(2, 2, 1.0);
  CHECK_THROWS_AS(LuFactorization{m}, SingularMatrixError);
}

TEST_CASE("polynomial arithmetic and division identity") {
  const DensePoly p = DensePoly::from_roots({1.0, -2.0, 3.0});
  CHECK(p.coefficients() == std::vector<double>{6.0, -5.0, -2.0, 1.0});
  const DensePoly d{1.0, 0.0, 1.0};
  const auto [q, r] = p.divide(d);
  const DensePoly back = q * d + r;
  for (int i = 0; i <= 3; ++i) CHECK(back.coefficient(i) == doctest::Approx(p.coefficient(i)));
  CHECK(r.degree() < d.degree());
  CHECK(p.derivative()(0.0) == doctest::Approx(-5.0));
  CHECK(DensePoly::from_descending({1, 0, -1}).to_string() == "x^2 - 1");
}

TEST_CASE("polyroots recovers simple and multiple roots") {
  const auto simple = polyroots(DensePoly::from_roots({-1.0, 0.5, 2.0}));
  REQUIRE(simple.roots.size() == 3);
  CHECK(simple.roots[0].value.real() == doctest::Approx(-1.0));
  CHECK(simple.backward_error < 1e-12);

  const auto multiple = polyroots(DensePoly::from_roots({2.0, 2.0, 2.0, -1.0}));
  int total = 0;
  for (const auto& c : multiple.roots) {
    total += c.multiplicity;
    if (c.multiplicity == 3) CHECK(c.value.real() == doctest::Approx(2.0).epsilon(1e-5));
  }
  CHECK(total == 4);
  CHECK(multiple.roots.size() == 2);

  const auto complex = polyroots(DensePoly{1.0, 0.0, 1.0});
  REQUIRE(complex.roots.size() == 2);
  CHECK(std::abs(std::abs(complex.roots[0].value.imag()) - 1.0) < 1e-12);
}

TEST_CASE("finite-difference weights and derivatives") {
  const auto w = fd_weights({-1, 0, 1}, 2);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(-2.0));
  CHECK(w[2] == doctest::Approx(1.0));
  const auto w5 = fd_weights({-2, -1, 0, 1, 2}, 1);
  CHECK(w5[0] == doctest::Approx(1.0 / 12));
  CHECK(w5[1] == doctest::Approx(-8.0 / 12));

  std::vector<double> s;
  const double h = 0.01;
  for (int i = 0; i <= 100; ++i) s.push_back(std::sin(i * h));
  const FdResult d = fd_derivative(s, 1, h);
  CHECK(d.one_sided.front());
  CHECK_FALSE(d.one_sided[50]);
  for (int i = 0; i <= 100; ++i) CHECK(std::abs(d.values[i] - std::cos(i * h)) < 1e-4);
  CHECK_THROWS_AS(fd_derivative({1.0, 2.0}, 2, h), std::invalid_argument);
}
