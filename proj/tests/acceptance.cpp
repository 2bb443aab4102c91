// Acceptance suite: one line per criterion, "PASS" or "FAIL".
// Usage: acceptance [criterion-number]; with no argument all criteria run.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "rictk/diffpoly.hpp"
#include "rictk/finitegap.hpp"
#include "rictk/numeric/ivp.hpp"
#include "rictk/numeric/quadrature.hpp"
#include "rictk/riccati.hpp"
#include "rictk/sampling.hpp"
#include "rictk/schwarzian.hpp"
#include "rictk/series.hpp"
#include "rictk/soliton.hpp"

using namespace rictk;

namespace {

struct Part {
  std::string name;
  double value;
  double tol;
  bool pass;
};

struct Outcome {
  std::vector<Part> parts;
  std::vector<std::string> notes;

  void max(const std::string& name, double value, double tol) { parts.push_back({name, value, tol, value <= tol}); }
  void flag(const std::string& name, bool ok) { parts.push_back({name, ok ? 0.0 : 1.0, 0.0, ok}); }
  bool pass() const {
    return std::all_of(parts.begin(), parts.end(), [](const Part& p) { return p.pass; });
  }
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

// Soliton equivalence, N = 1.
Outcome criterion1() {
  Outcome o;
  const SolitonSpec spec{{1.0}, {0.0}};
  const TransparentPotential pot(spec);
  double worst = 0.0;
  for (double x : linspace(-10, 10, 2001)) {
    const double c = std::cosh(x);
    worst = std::max(worst, std::abs(pot.u(x) - (-2.0 / (c * c))));
  }
  o.max("max |u - (-2k^2/cosh^2(kx+b))| on [-10,10]", worst, 1e-10);
  o.max("|u(0) + 2|", std::abs(pot.u(0.0) + 2.0), 1e-12);
  return o;
}

// 2 d²/dx² log G for G = p cosh(s x) + q cosh(d x), with τ1 + τ2 = s x and τ1 − τ2 = d x.
double two_log_second(double p, double q, double s, double d, double x) {
  const double G = p * std::cosh(s * x) + q * std::cosh(d * x);
  const double G1 = p * s * std::sinh(s * x) + q * d * std::sinh(d * x);
  const double G2 = p * s * s * std::cosh(s * x) + q * d * d * std::cosh(d * x);
  return 2.0 * (G2 / G - (G1 / G) * (G1 / G));
}

// N = 2 equivalence against the stated closed form and asymptotics.
Outcome criterion2() {
  Outcome o;
  const double k1 = 2.0, k2 = 1.0;
  const SolitonSpec spec{{k1, k2}, {0.0, 0.0}};
  const TransparentPotential pot(spec);
  double literal = 0.0, corrected = 0.0;
  for (double x : linspace(-10, 10, 2001)) {
    const double u = pot.u(x);
    // As stated: u = 2D² log((k2−k1)cosh(τ1+τ2) + (k2+k1)cosh(τ1−τ2)).
    const double stated = two_log_second(k2 - k1, k2 + k1, k1 + k2, k1 - k2, x);
    literal = std::isfinite(stated) ? std::max(literal, std::abs(u - stated)) : INFINITY;
    corrected = std::max(corrected, std::abs(u + two_log_second(k1 - k2, k1 + k2, k1 + k2, k1 - k2, x)));
  }
  o.max("max |u - stated two-soliton form|", literal, 1e-10);
  const double right = pot.a1(30.0), left = pot.a1(-30.0);
  o.max("|a1(+30) - (+3)|", std::abs(right - 3.0), 1e-8);
  o.max("|a1(-30) - (-3)|", std::abs(left + 3.0), 1e-8);
  char buf[256];
  std::snprintf(buf, sizeof buf, "with G = (k1-k2)cosh(t1+t2)+(k1+k2)cosh(t1-t2), u = -2D^2 log G: max diff %.3g", corrected);
  o.notes.push_back(buf);
  std::snprintf(buf, sizeof buf, "computed a1(+30) = %.12g, a1(-30) = %.12g (limits -(k1+k2), +(k1+k2))", right, left);
  o.notes.push_back(buf);
  o.notes.push_back("the stated G vanishes where 3cosh(x) = cosh(3x), so the stated u has real poles");
  return o;
}

// Transparency: ψ1″ = (k² + u)ψ1.
Outcome criterion3() {
  Outcome o;
  const std::vector<SolitonSpec> specs{{{1.0}, {0.0}}, {{2.0, 1.0}, {0.0, 0.0}}, {{3.0, 2.0, 1.0}, {0.2, -0.1, 0.4}}};
  double worst = 0.0, fd = 0.0;
  for (const auto& spec : specs) {
    for (double k : {0.5, 1.7, 3.0}) {
      for (double x : linspace(-4, 4, 41)) {
        const auto c = solve_coefficients(spec, x, 2);
        const double u = 2.0 * c.derivative(1)[0];
        const WaveValues w = wavefunctions(c, k, x);
        const double rhs = (k * k + u) * w.psi1;
        worst = std::max(worst, std::abs(w.d2psi1 - rhs) / std::max(std::abs(w.d2psi1), std::abs(rhs)));
        // Independent second derivative from ψ1 values alone, relative to the
        // size of the summands of e^{kx}P(k), which bounds the rounding error.
        const double h = 1e-2;
        double stencil[5];
        for (int j = 0; j < 5; ++j) stencil[j] = wavefunctions(spec, k, x + (j - 2) * h).psi1;
        const double fd2 = (-stencil[0] + 16 * stencil[1] - 30 * stencil[2] + 16 * stencil[3] - stencil[4]) / (12 * h * h);
        double summands = std::pow(k, static_cast<double>(spec.size()));
        for (std::size_t i = 0; i < spec.size(); ++i) summands += std::abs(c.a()[i]) * std::pow(k, static_cast<double>(spec.size() - 1 - i));
        fd = std::max(fd, std::abs(fd2 - rhs) / ((k * k + std::abs(u)) * std::exp(k * x) * summands));
      }
    }
  }
  o.max("max relative residual, N=1,2,3, k in {0.5,1.7,3}", worst, 1e-8);
  o.max("psi'' from a 5-point stencil (h=1e-2) vs (k^2+u)psi1, relative to term size", fd, 1e-6);
  return o;
}

// Wronskian of ψ1, ψ2 for N = 2.
Outcome criterion4() {
  Outcome o;
  const SolitonSpec spec{{2.0, 1.0}, {0.3, -0.4}};
  double drift = 0.0, mismatch = 0.0;
  for (double k : {0.3, 0.8, 1.5, 2.5, 3.7}) {
    const double expected = -2.0 * k * (k * k - 4.0) * (k * k - 1.0);
    double first = 0.0;
    const auto xs = linspace(-6, 6, 25);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const WaveValues w = wavefunctions(spec, k, xs[i]);
      const double W = w.psi1 * w.dpsi2 - w.psi2 * w.dpsi1;
      if (i == 0) first = W;
      drift = std::max(drift, std::abs(W - first) / std::abs(expected));
      mismatch = std::max(mismatch, std::abs(W - expected) / std::abs(expected));
    }
  }
  o.max("relative x-drift of <psi1,psi2>", drift, 1e-8);
  o.max("relative |W + 2k(k^2-4)(k^2-1)|", mismatch, 1e-8);
  return o;
}

// Series engine.
Outcome criterion5() {
  Outcome o;
  const RiccatiSeries rs = riccati_series(2, 3);
  o.flag("f_0 == 1/2*u_1 (exact)", rs.f.coefficient(0) == DiffPolynomial(Rational(1, 2)) * DiffPolynomial::symbol(1));
  const FormalSeries h = modschwarz_series(1, 3);
  o.flag("h_1 == 1/2*u (exact)", h.coefficient(-1) == DiffPolynomial(Rational(1, 2)) * DiffPolynomial::symbol(1));
  const double k1 = 1.3, x0 = 0.4;
  const Expression x = var("x");
  const Expression arg = Expression::real(k1) * (x - Expression::real(x0));
  const Expression u = Expression::real(-2.0 * k1 * k1) * pow(cosh(arg), -2);
  const Expression zeta1 = zeta_chain(u, 1).front();
  double shape = 0.0, residual = 0.0;
  for (double xv : linspace(-8, 8, 161)) {
    shape = std::max(shape, std::abs(eval(zeta1, "x", xv) + k1 * std::tanh(k1 * (xv - x0))));
  }
  const Expression r = sqr(zeta1) - diff(zeta1, "x") - Expression::real(k1 * k1);
  for (double xv : linspace(-8, 8, 161)) residual = std::max(residual, std::abs(eval(r, "x", xv)));
  o.max("max |zeta_1 + k1 tanh(k1(x-x0))|", shape, 1e-12);
  o.max("max |zeta_1^2 - zeta_1,x - k1^2|", residual, 1e-12);
  return o;
}

// Schwarzian invariance under constant Möbius maps.
Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  const Expression x = var("x");
  const std::vector<Expression> phis{exp(x), tanh(x) + Expression::real(0.2) * x};
  const Sampling s{-1.0, 1.0, 32};
  const auto pts = sample_points(s);
  double worst = 0.0;
  int maps = 0;
  for (const auto& phi : phis) {
    const Expression S = schwarz(phi);
    for (int i = 0; i < 20;) {
      const double a = d(rng), b = d(rng), c = d(rng), e = d(rng);
      if (std::abs(a * e - b * c) < 0.1) continue;
      // The mapped function must be finite on the samples.
      bool finite = true;
      for (double xv : pts) finite = finite && std::abs(c * eval(phi, "x", xv) + e) > 0.2;
      if (!finite) continue;
      const MobiusMap m{Expression::real(a), Expression::real(b), Expression::real(c), Expression::real(e)};
      const Expression Sm = schwarz(m.apply(phi));
      for (double xv : pts) worst = std::max(worst, std::abs(eval(Sm, "x", xv) - eval(S, "x", xv)));
      ++i;
      ++maps;
    }
  }
  o.max("max |S(m o phi) - S(phi)|, 20 maps x 2 functions x 32 points", worst, 1e-9);
  o.notes.push_back("maps tested: " + std::to_string(maps));
  return o;
}

// Hermite polynomials and the ladder.
Outcome criterion7() {
  Outcome o;
  bool same = true;
  for (int n = 0; n <= 10; ++n) same = same && hermite_coefficients(n) == hermite_rodrigues_coefficients(n);
  o.flag("recurrence == Rodrigues, n <= 10 (exact)", same);
  // Independent values: H_4 = 16x^4 − 48x^2 + 12.
  const std::vector<Rational> h4{12, 0, -48, 0, 16};
  o.flag("H_4 == 16x^4 - 48x^2 + 12", hermite_coefficients(4) == h4);
  double worst = 0.0;
  const auto xs = linspace(-3, 3, 100);
  for (int n = 0; n <= 6; ++n) {
    const Hermite h = hermite_polynomial(n);
    const Expression r = hermite_residual(h.witness, Expression(-2 * n - 1));
    for (double xv : xs) {
      const double v = eval(r, "x", xv);
      if (std::isfinite(v)) worst = std::max(worst, std::abs(v) / std::max(1.0, xv * xv));
    }
  }
  o.max("max |y' + y^2 - x^2 + 2n + 1| / max(1,x^2), n <= 6, 100 points", worst, 1e-10);
  const Expression x = var("x");
  const Ladder l = hermite_ladder(x, Expression(1));
  bool exact = l.alpha == Expression(3);
  for (int i = 1; i <= 9; ++i) {
    const Rational q(i, 3);
    const auto v = eval_exact(l.y, {{"x", q}});
    exact = exact && v && *v == q + Rational(1) / q;
  }
  o.flag("ladder (alpha=1, y=x) -> (alpha=3, y = x + 1/x), exact at rational points", exact);
  return o;
}

// Pole series.
Outcome criterion8() {
  Outcome o;
  const auto a = pole_series_exact(Rational(3), Rational(0), 5);
  const std::vector<Rational> expected{0, 1, 0, 0, 0, 0};
  o.flag("alpha=3, eps=0: a == (0,1,0,0,0,0) exactly", a == expected);
  const int depth = 6;
  const PoleSeriesCheck c = pole_series_check(1.0, 0.2, depth, {0.2, 0.1, 0.05});
  o.max("|observed order - (depth+1)| against the IVP (alpha=1, eps=0.2, depth 6)", std::abs(c.observed_order - (depth + 1)), 0.5);
  const auto tail = pole_series(1.0, 0.2, depth + 1).back();
  double ratio = 0.0;
  for (std::size_t i = 0; i < c.t.size(); ++i) ratio = std::max(ratio, c.error[i] / (std::abs(tail) * std::pow(c.t[i], depth + 1)));
  o.max("max error / |a_{depth+1}| t^{depth+1}", std::abs(ratio - 1.0), 0.5);
  return o;
}

// Finite-gap potential.
Outcome criterion9() {
  Outcome o;
  const GapSpec spec{2.0, 1.0, 0.0, 0.5, 1};
  GammaOptions opt;
  opt.x_end = 20.0;
  opt.step = 0.01;
  const double T = period(spec);
  const double oracle = 2.0 * std::comp_ellint_1(std::sqrt(0.5)) / std::sqrt(2.0);
  const double TT = trajectory_period(spec, opt);
  o.max("|T_quadrature - T_trajectory| / T", std::abs(T - TT) / T, 1e-6);
  o.max("|T_quadrature - 2K(k)/sqrt(l1-l3)| / T", std::abs(T - oracle) / T, 1e-12);
  o.max("max |u(x+T) - u(x)|", periodicity_defect(spec, opt), 1e-6);
  const RootTrajectory traj = integrate_gamma(spec, opt);
  const SpectralReport sp = spectral_check(traj, spec);
  o.max("x-drift of the spectral polynomial coefficients", sp.max_drift, 1e-6);
  double roots = sp.roots.size() == 3 ? 0.0 : 1.0;
  if (sp.roots.size() == 3) roots = std::max({std::abs(sp.roots[0] - 2), std::abs(sp.roots[1] - 1), std::abs(sp.roots[2])});
  o.max("recovered roots vs {2,1,0}", roots, 1e-6);
  double item1 = 0.0;
  for (std::size_t i = 0; i < traj.gamma.size(); ++i) {
    const double g = traj.gamma[i];
    item1 = std::max(item1, std::abs(4 * (g - 2) * (g - 1) * g - traj.dgamma[i] * traj.dgamma[i]));
  }
  o.max("max |C(gamma) - phi_x^2(x,gamma)|", item1, 1e-6);
  return o;
}

// KP two-soliton field and finite-difference convergence.
Outcome criterion10() {
  Outcome o;
  const SolitonSpec spec{{2.0, 1.0}, {0.0, 0.0}};
  const Expression u = kp_expression(spec);
  double consistency = 0.0;
  for (double xv : {-1.0, 0.5}) {
    consistency = std::max(consistency, std::abs(eval(u, {{"x", xv}, {"y", 0.3}, {"t", -0.2}}) - kp_field(spec, xv, 0.3, -0.2)));
  }
  const ResidualReport rep = pde_residual_exact(u, Pde::kKP, 3.0, 7);
  o.max("max |KP residual| (exact partials) over |x|,|y|,|t| <= 3, 7^3 points", rep.max_residual, 1e-8);
  const Field f = [&](double x, double y, double t) { return kp_field(spec, x, y, t); };
  const Bindings at{{"x", 0.3}, {"y", 0.2}, {"t", 0.1}};
  const double exact = eval(pde_residual_expression(u, Pde::kKP), at);
  const double r1 = pde_residual_fd(f, Pde::kKP, 0.3, 0.2, 0.1, 0.04);
  const double r2 = pde_residual_fd(f, Pde::kKP, 0.3, 0.2, 0.1, 0.02);
  const double ratio = std::abs(r1 - exact) / std::abs(r2 - exact);
  o.max("|FD error ratio - 4| (h = 0.04 -> 0.02)", std::abs(ratio - 4.0), 0.5);
  char buf[200];
  std::snprintf(buf, sizeof buf, "pipeline vs closed form %.3g; ratio %.4f; largest residual %.6g at (%g, %g, %g)", consistency,
                ratio, rep.max_residual, rep.at_x, rep.at_y, rep.at_t);
  o.notes.push_back(buf);
  const SolitonSpec one{{1.0}, {0.0}};
  o.notes.push_back("even N=1 with these phases gives KP residual " +
                    std::to_string(pde_residual_exact(kp_expression(one), Pde::kKP, 3.0, 5).max_residual));
  o.notes.push_back("KdV form (phases k x - 4k^3 t, u -> -u) residual " +
                    std::to_string(pde_residual_exact(kdv_expression(spec), Pde::kKdV, 3.0, 7).max_residual));
  return o;
}

// Kovalevskii first integrals.
Outcome criterion11() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.1, 1.0);
  for (int n : {3, 4, 5}) {
    std::vector<double> y0;
    for (int i = 0; i < n; ++i) y0.push_back(d(rng));
    const double span = 0.5;
    numeric::IvpProblem p;
    p.rhs = [](double, const numeric::State& y, numeric::State& dy) {
      const double s = std::accumulate(y.begin(), y.end(), 0.0);
      for (std::size_t j = 0; j < y.size(); ++j) dy[j] = s * y[j] - 2.0 * y[j] * y[j];
    };
    p.y0 = y0;
    numeric::IvpOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-10;
    const numeric::Trajectory t = numeric::integrate_ivp(p, span, opt);
    auto integrals = [n](const numeric::State& y) {
      std::vector<double> f;
      if (n == 3) return std::vector<double>{(y[0] - y[1]) * y[2], (y[1] - y[2]) * y[0]};
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int k = j + 1; k < n; ++k)
            for (int l = k + 1; l < n; ++l) f.push_back((y[l] - y[i]) * (y[k] - y[j]) / ((y[l] - y[j]) * (y[k] - y[i])));
      return f;
    };
    const auto f0 = integrals(y0);
    double drift = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto f = integrals(t.y(i));
      for (std::size_t j = 0; j < f.size(); ++j) drift = std::max(drift, std::abs(f[j] - f0[j]));
    }
    o.max("n=" + std::to_string(n) + ": max drift of the first integrals on [0, 0.5]", drift, 1e-7);
    const KovalevskiiReport rep = kovalevskii_check(n, y0, span);
    o.max("n=" + std::to_string(n) + ": library drift report", rep.max_drift, 1e-7);
  }
  return o;
}

// Cross ratio of four solutions of one Riccati equation.
Outcome criterion12() {
  Outcome o;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const Expression x = var("x");
  const RiccatiEq eq{Expression::real(d(rng)) + Expression::real(d(rng)) * sin(x),
                     Expression::real(d(rng)) + Expression::real(d(rng)) * x,
                     Expression::real(d(rng)) * cos(Expression::real(2.0) * x)};
  std::vector<double> phi0;
  for (int i = 0; i < 4; ++i) phi0.push_back(d(rng));
  const CrossRatioReport r = cross_ratio_drift(eq, 0.0, phi0, 1.0);
  o.max("max |cross ratio - initial| on [0,1]", r.max_drift, 1e-8);
  o.notes.push_back("equation: phi' = (" + eq.a.to_string() + ")phi^2 + (" + eq.b.to_string() + ")phi + " + eq.c.to_string());
  return o;
}

// Conserved density of the traveling KdV soliton.
Outcome criterion13() {
  Outcome o;
  const double k = 1.2;
  const SolitonSpec spec{{k}, {0.3}};
  const FormalSeries h = modschwarz_series(1, 2);
  const Expression u = kdv_expression(spec);
  const Expression h1 = h.coefficient(-1).to_expression({u});
  std::vector<double> dens, half;
  numeric::QuadratureOptions q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-13;
  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    const double c = 4.0 * k * k * t;
    dens.push_back(numeric::quadrature([&](double x) { return eval(h1, {{"x", x}, {"t", t}}); }, c - 40, c + 40, q).value);
    half.push_back(0.5 * numeric::quadrature([&](double x) { return kdv_field(spec, x, t); }, c - 40, c + 40, q).value);
  }
  double spread = 0.0, match = 0.0;
  for (std::size_t i = 0; i < dens.size(); ++i) {
    spread = std::max(spread, std::abs(dens[i] - dens[0]));
    match = std::max(match, std::abs(dens[i] - half[i]));
  }
  o.max("t-variation of integral of h_1", spread, 1e-8);
  o.max("|integral h_1 - 1/2 integral u|", match, 1e-8);
  o.max("|integral h_1 - 2k| (sech^2 integral)", std::abs(dens[0] - 2.0 * k), 1e-8);
  return o;
}

const std::map<int, std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Outcome()>>> c{
      {1, {"one-soliton equivalence", criterion1}},
      {2, {"two-soliton equivalence and asymptotics", criterion2}},
      {3, {"transparency", criterion3}},
      {4, {"Wronskian", criterion4}},
      {5, {"series engine", criterion5}},
      {6, {"Schwarzian invariance", criterion6}},
      {7, {"Hermite", criterion7}},
      {8, {"pole series", criterion8}},
      {9, {"finite gap", criterion9}},
      {10, {"KP", criterion10}},
      {11, {"Kovalevskii integrals", criterion11}},
      {12, {"cross-ratio conservation", criterion12}},
      {13, {"KdV density", criterion13}},
  };
  return c;
}

bool report(int id) {
  const auto& [title, fn] = criteria().at(id);
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    std::printf("FAIL %2d %s: exception: %s\n", id, title.c_str(), e.what());
    return false;
  }
  std::printf("%s %2d %s\n", o.pass() ? "PASS" : "FAIL", id, title.c_str());
  for (const auto& p : o.parts) {
    std::printf("       [%s] %s: %.6g (tol %.3g)\n", p.pass ? "ok" : "x", p.name.c_str(), p.value, p.tol);
  }
  for (const auto& n : o.notes) std::printf("       note: %s\n", n.c_str());
  return o.pass();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  if (argc > 1) {
    const int id = std::atoi(argv[1]);
    if (!criteria().count(id)) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[1]);
      return 2;
    }
    ids.push_back(id);
  } else {
    for (const auto& [id, c] : criteria()) ids.push_back(id);
  }
  int failed = 0;
  for (int id : ids) failed += report(id) ? 0 : 1;
  if (ids.size() > 1) std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failed, ids.size());
  return failed == 0 ? 0 : 1;
}
