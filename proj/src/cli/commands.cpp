#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "cli/emit.hpp"
#include "rictk/finitegap.hpp"
#include "rictk/numeric/quadrature.hpp"
#include "rictk/parse.hpp"
#include "rictk/riccati.hpp"
#include "rictk/sampling.hpp"
#include "rictk/schwarzian.hpp"
#include "rictk/series.hpp"
#include "rictk/soliton.hpp"

namespace rictk::cli {
namespace {

namespace fs = std::filesystem;

struct Output {
  Table table{{}};
  Report report{""};
};

using Command = std::function<Output()>;

Sampling sampling_of(const UniformGrid& g, int points = 32) { return {g.min, g.max, points}; }

// NaN where the expression is undefined.
double value_or_nan(const Expression& e, double x) {
  try {
    return eval(e, "x", x);
  } catch (const DomainError&) {
    return std::nan("");
  }
}

Json equation_json(const RiccatiEq& eq) {
  Json j = Json::object();
  j["a"] = eq.a.to_string();
  j["b"] = eq.b.to_string();
  j["c"] = eq.c.to_string();
  return j;
}

// max over samples of |p − q| / max(1, |p|, |q|), skipping undefined points.
double max_relative_gap(const Expression& p, const Expression& q, const Sampling& s) {
  double worst = 0.0;
  for (double x : sample_points(s)) {
    const double a = value_or_nan(p, x);
    const double b = value_or_nan(q, x);
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    worst = std::max(worst, std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
  }
  return worst;
}

MobiusMap random_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (;;) {
    const double a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (std::abs(a * e - b * c) > 0.1) return {Expression::real(a), Expression::real(b), Expression::real(c), Expression::real(e)};
  }
}

// ----- transform -----

struct TransformArgs {
  std::string a = "0", b = "0", c = "0";
  std::string alpha = "1", beta = "0", gamma = "0", delta = "1";
  std::string phi;
  std::string grid = "-5:5:0.1";
};

Output run_transform(const TransformArgs& args) {
  const RiccatiEq eq{parse_expression(args.a), parse_expression(args.b), parse_expression(args.c)};
  const MobiusMap m{parse_expression(args.alpha), parse_expression(args.beta), parse_expression(args.gamma),
                    parse_expression(args.delta)};
  const UniformGrid grid = UniformGrid::parse(args.grid);
  const Sampling s = sampling_of(grid);
  const RiccatiEq out = mobius_transform(eq, m, s);
  Output o{Table({"x", "a", "b", "c"}), Report("transform")};
  for (double x : grid.points()) o.table.add_row({x, value_or_nan(out.a, x), value_or_nan(out.b, x), value_or_nan(out.c, x)});
  o.report.results()["input"] = equation_json(eq);
  o.report.results()["output"] = equation_json(out);
  const MobiusMap inverse{m.delta, -m.beta, -m.gamma, m.alpha};
  const RiccatiEq back = mobius_transform(out, inverse, s);
  const double roundtrip = std::max({max_relative_gap(back.a, eq.a, s), max_relative_gap(back.b, eq.b, s),
                                     max_relative_gap(back.c, eq.c, s)});
  o.report.check_max("inverse_map_roundtrip", roundtrip, 1e-9);
  if (!args.phi.empty()) {
    const Expression phi = parse_expression(args.phi);
    o.report.check_max("input_solution_residual", eq.max_residual(phi, s), 1e-9);
    o.report.check_max("transformed_solution_residual", out.max_residual(m.apply(phi), s), 1e-9);
  }
  return o;
}

// ----- solve-re -----

struct SolveArgs {
  std::string a = "0", b = "0", c = "0";
  std::string phi1;
  std::vector<double> constants{0.0, 1.0, -1.0};
  std::string grid = "-2:2:0.05";
  double anchor = 0.0;
};

Output run_solve(const SolveArgs& args) {
  const RiccatiEq eq{parse_expression(args.a), parse_expression(args.b), parse_expression(args.c)};
  const UniformGrid grid = UniformGrid::parse(args.grid);
  const Sampling s = sampling_of(grid);
  SolutionFamily family;
  if (eq.is_linear()) {
    family = solve_linear(eq.b, eq.c, args.anchor);
  } else {
    if (args.phi1.empty()) throw std::invalid_argument("a nonlinear equation needs --phi1");
    family = general_from_particular(eq, parse_expression(args.phi1), s, 1e-9, args.anchor);
  }
  std::vector<std::string> header{"x"};
  for (double c : args.constants) header.push_back("phi(C=" + format_number(c) + ")");
  Output o{Table(header), Report("solve-re")};
  std::vector<Expression> members;
  for (double c : args.constants) members.push_back(family.at(c));
  for (double x : grid.points()) {
    std::vector<double> row{x};
    for (const auto& e : members) row.push_back(value_or_nan(e, x));
    o.table.add_row(row);
  }
  o.report.results()["equation"] = equation_json(eq);
  o.report.results()["general_solution"] = family.expr.to_string();
  o.report.results()["constant"] = family.constant;
  double worst = 0.0;
  for (const auto& e : members) worst = std::max(worst, eq.max_residual(e, s));
  o.report.check_max("general_solution_residual", worst, 1e-8);
  return o;
}

// ----- hermite -----

struct HermiteArgs {
  int n = 2;
  std::string grid = "-3:3:0.05";
};

Output run_hermite(const HermiteArgs& args) {
  if (args.n < 0 || args.n > 20) throw std::invalid_argument("--n must be in [0, 20]");
  const Hermite h = hermite_polynomial(args.n);
  const UniformGrid grid = UniformGrid::parse(args.grid);
  Output o{Table({"x", "H", "y"}), Report("hermite")};
  for (double x : grid.points()) o.table.add_row({x, value_or_nan(h.omega, x), value_or_nan(h.witness, x)});
  o.report.results()["n"] = args.n;
  o.report.results()["polynomial"] = format_polynomial(h.coefficients);
  o.report.results()["alpha"] = h.alpha;
  o.report.results()["solution"] = h.witness.to_string();
  const bool same = h.coefficients == hermite_rodrigues_coefficients(args.n);
  o.report.add_check({"recurrence_equals_rodrigues", same ? 0.0 : 1.0, 0.0, same});
  const Expression x = var("x");
  const Expression scale = sqr(h.witness) + sqr(x) + Expression::real(std::abs(h.alpha));
  const double r = max_scaled_residual(hermite_residual(h.witness, Expression::real(h.alpha)), scale, sampling_of(grid, 100));
  o.report.check_max("riccati_residual", r, 1e-10);
  return o;
}

// ----- pole-series -----

struct PoleArgs {
  std::string alpha = "3";
  std::string eps = "0";
  int depth = 5;
};

Output run_pole(const PoleArgs& args) {
  if (args.depth < 0 || args.depth > 40) throw std::invalid_argument("--depth must be in [0, 40]");
  const Expression alpha_e = parse_expression(args.alpha);
  const Expression eps_e = parse_expression(args.eps);
  if (!is_constant(alpha_e) || !is_constant(eps_e)) throw std::invalid_argument("--alpha and --eps must be constants");
  const double alpha = eval(alpha_e, Bindings{});
  const double eps = eval(eps_e, Bindings{});
  const auto a = pole_series(alpha, eps, args.depth);
  Output o{Table({"n", "a"}), Report("pole-series")};
  for (std::size_t i = 0; i < a.size(); ++i) o.table.add_row({static_cast<double>(i), a[i]});
  o.report.results()["coefficients"] = a;
  const auto qa = eval_exact(alpha_e, {});
  const auto qe = eval_exact(eps_e, {});
  if (qa && qe) {
    Json exact = Json::array();
    for (const auto& q : pole_series_exact(*qa, *qe, args.depth)) exact.push_back(q.to_string());
    o.report.results()["exact_coefficients"] = exact;
  }
  const PoleSeriesCheck c = pole_series_check(alpha, eps, args.depth);
  o.report.results()["distances"] = c.t;
  o.report.results()["errors"] = c.error;
  o.report.results()["observed_order"] = c.observed_order;
  // Allowed error: twice the size of the first omitted terms.
  const auto tail = pole_series(alpha, eps, args.depth + 4);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    double bound = 1e-12 * (1.0 / c.t[i] + 1.0);
    for (std::size_t n = a.size(); n < tail.size(); ++n) bound += 2.0 * std::abs(tail[n]) * std::pow(c.t[i], static_cast<double>(n));
    worst = std::max(worst, c.error[i] / bound);
  }
  o.report.check_max("series_vs_ivp_within_truncation", worst, 1.0);
  return o;
}

// ----- schwarz -----

struct SchwarzArgs {
  std::string phi = "tanh(x)";
  std::string grid = "-2:2:0.05";
  int maps = 20;
  unsigned seed = 1;
};

Output run_schwarz(const SchwarzArgs& args) {
  const Expression phi = parse_expression(args.phi);
  const Expression S = schwarz(phi);
  const UniformGrid grid = UniformGrid::parse(args.grid);
  Output o{Table({"x", "S"}), Report("schwarz")};
  for (double x : grid.points()) o.table.add_row({x, value_or_nan(S, x)});
  o.report.results()["phi"] = phi.to_string();
  o.report.results()["schwarzian"] = S.to_string();
  std::mt19937_64 rng(args.seed);
  double worst = 0.0;
  for (int i = 0; i < args.maps; ++i) {
    const Expression mapped = schwarz(random_map(rng).apply(phi));
    worst = std::max(worst, max_relative_gap(mapped, S, sampling_of(grid)));
  }
  o.report.check_max("mobius_invariance", worst, 1e-9);
  return o;
}

// ----- series -----

struct SeriesArgs {
  std::string kind = "f";
  int m = 2;
  int depth = 3;
  std::string u = "-2/cosh(x)^2";
  int count = 2;
};

std::size_t nonzero_known(const FormalSeries& r) {
  std::size_t n = 0;
  for (const auto& [deg, p] : r.coefficients()) {
    if (deg >= r.bottom() && !p.is_zero()) ++n;
  }
  return n;
}

Output run_series(const SeriesArgs& args) {
  Output o{Table({"degree", "coefficient"}), Report("series")};
  o.report.results()["kind"] = args.kind;
  const int symbols = args.m == 1 ? 1 : 2;
  auto emit_series = [&](const FormalSeries& s) {
    Json terms = Json::array();
    const auto& cs = s.coefficients();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
      const std::string text = it->second.to_string(symbols);
      o.table.add_row({std::to_string(it->first), text});
      terms.push_back(Json::array({it->first, text}));
    }
    o.report.results()["terms"] = terms;
    o.report.results()["text"] = s.to_string(symbols);
  };
  if (args.kind == "f" || args.kind == "g") {
    const RiccatiSeries rs = riccati_series(args.m, args.depth);
    const FormalSeries& s = args.kind == "f" ? rs.f : rs.g;
    emit_series(s);
    const auto bad = nonzero_known(riccati_residual(s, riccati_potential(args.m)));
    o.report.check_max("riccati_residual_nonzero_terms", static_cast<double>(bad), 0.0);
  } else if (args.kind == "h") {
    const FormalSeries h = modschwarz_series(args.m, args.depth);
    emit_series(h);
    const auto bad = nonzero_known(modschwarz_residual(h, generalized_potential(args.m), args.m));
    o.report.check_max("modified_schwarzian_residual_nonzero_terms", static_cast<double>(bad), 0.0);
  } else if (args.kind == "zeta") {
    if (args.count < 1) throw std::invalid_argument("--count must be >= 1");
    const Expression u = parse_expression(args.u);
    const auto zeta = zeta_chain(u, args.count);
    Json terms = Json::array();
    for (std::size_t j = 0; j < zeta.size(); ++j) {
      o.table.add_row({std::to_string(j + 1), zeta[j].to_string()});
      terms.push_back(zeta[j].to_string());
    }
    o.report.results()["u"] = u.to_string();
    o.report.results()["zeta"] = terms;
    o.report.check_max("zeta1_derivative_is_half_u", max_abs(diff(zeta[0], "x") - Rational(1, 2) * u), 1e-10);
  } else {
    throw std::invalid_argument("--kind must be f, g, h or zeta");
  }
  return o;
}

// ----- soliton -----

struct SolitonArgs {
  std::vector<double> k{1.0};
  std::vector<double> beta{0.0};
  std::string grid = "-10:10:0.01";
  double far = 30.0;
};

Output run_soliton(const SolitonArgs& args) {
  const SolitonSpec spec{args.k, args.beta};
  spec.validate();
  const UniformGrid grid = UniformGrid::parse(args.grid);
  const TransparentPotential pot(spec);
  const PotentialSamples samples = potential(spec, grid.points());
  Output o{Table::from_columns({"x", "u", "a1"}, {samples.x, samples.u, samples.a1}), Report("soliton")};
  o.report.results()["k"] = spec.k;
  o.report.results()["beta"] = spec.beta;
  o.report.results()["u_at_0"] = pot.u(0.0);
  if (pot.closed_form()) {
    o.report.results()["closed_form"] = pot.closed_form()->to_string();
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.x.size(); ++i) {
      worst = std::max(worst, std::abs(samples.u[i] - eval(*pot.closed_form(), "x", samples.x[i])));
    }
    o.report.check_max("closed_form_agreement", worst, 1e-10);
  }
  const double ksum = std::accumulate(spec.k.begin(), spec.k.end(), 0.0);
  const double right = pot.a1(args.far), left = pot.a1(-args.far);
  o.report.results()["a1_right"] = right;
  o.report.results()["a1_left"] = left;
  o.report.check_max("a1_asymptotics", std::max(std::abs(right + ksum), std::abs(left - ksum)), 1e-8);
  double transparency = 0.0, drift = 0.0, mismatch = 0.0;
  const std::vector<double> probes{-3.0, -1.0, 0.0, 0.5, 2.0};
  for (double k : {0.5, 1.7, 3.0}) {
    const double expected = wronskian_poly(spec)(k);
    double first = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      transparency = std::max(transparency, schrodinger_residual(spec, k, probes[i]));
      const WaveValues w = wavefunctions(spec, k, probes[i]);
      const double W = w.psi1 * w.dpsi2 - w.psi2 * w.dpsi1;
      if (i == 0) first = W;
      const double scale = std::max(1.0, std::abs(expected));
      drift = std::max(drift, std::abs(W - first) / scale);
      mismatch = std::max(mismatch, std::abs(W - expected) / scale);
    }
  }
  o.report.check_max("schrodinger_residual", transparency, 1e-8);
  o.report.check_max("wronskian_drift", drift, 1e-8);
  o.report.check_max("wronskian_polynomial", mismatch, 1e-8);
  return o;
}

// ----- kp -----

struct KpArgs {
  std::vector<double> k{2.0, 1.0};
  std::vector<double> beta{0.0, 0.0};
  std::string equation = "kp";
  std::string grid = "-10:10:0.05";
  double y = 0.0;
  double t = 0.0;
  double box = 3.0;
  int per_axis = 7;
  double h = 0.0;  // 0: 0.04 for KP, 0.01 for KdV
};

Output run_kp(const KpArgs& args) {
  const SolitonSpec spec{args.k, args.beta};
  spec.validate();
  Pde which;
  if (args.equation == "kp") {
    which = Pde::kKP;
  } else if (args.equation == "kdv") {
    which = Pde::kKdV;
  } else {
    throw std::invalid_argument("--equation must be kp or kdv");
  }
  const double h = args.h != 0.0 ? args.h : which == Pde::kKP ? 0.04 : 0.01;
  if (!(h > 0) || args.per_axis < 1 || !(args.box > 0)) throw std::invalid_argument("need --fd-step > 0, --box > 0, --per-axis >= 1");
  const UniformGrid grid = UniformGrid::parse(args.grid);
  const Field field = [&](double x, double y, double t) {
    return which == Pde::kKP ? kp_field(spec, x, y, t) : kdv_field(spec, x, t);
  };
  Output o{Table({"x", "u"}), Report("kp")};
  for (double x : grid.points()) o.table.add_row({x, field(x, args.y, args.t)});
  o.report.results()["equation"] = args.equation;
  o.report.results()["y"] = args.y;
  o.report.results()["t"] = args.t;
  const double px = 0.3, py = 0.2, pt = 0.1;
  const double r1 = pde_residual_fd(field, which, px, py, pt, h);
  const double r2 = pde_residual_fd(field, which, px, py, pt, h / 2);
  double reference = 0.0;
  if (spec.size() <= 2) {
    const Expression u = which == Pde::kKP ? kp_expression(spec) : kdv_expression(spec);
    o.report.results()["field"] = u.to_string();
    const ResidualReport rep = pde_residual_exact(u, which, args.box, args.per_axis);
    o.report.results()["exact_residual_at"] = {rep.at_x, rep.at_y, rep.at_t};
    o.report.check_max("exact_residual", rep.max_residual, 1e-8);
    reference = eval(pde_residual_expression(u, which), Bindings{{"x", px}, {"y", py}, {"t", pt}});
  }
  const double ratio = std::abs(r1 - reference) / std::abs(r2 - reference);
  o.report.results()["fd_steps"] = {h, h / 2};
  o.report.results()["fd_residuals"] = {r1, r2};
  o.report.results()["fd_reference"] = reference;
  o.report.results()["fd_ratio"] = ratio;
  o.report.check_max("fd_second_order_ratio", std::abs(ratio - 4.0), 0.5);
  return o;
}

// ----- finite-gap -----

struct GapArgs {
  std::vector<double> lambdas{2.0, 1.0, 0.0};
  double gamma0 = 0.5;
  int sign = 1;
  std::string grid = "0:20:0.01";
  bool deterministic = false;
};

Output run_gap(const GapArgs& args) {
  if (args.lambdas.size() != 3) throw std::invalid_argument("--lambdas needs three values");
  GapSpec spec{args.lambdas[0], args.lambdas[1], args.lambdas[2], args.gamma0, args.sign};
  spec.validate();
  const UniformGrid grid = UniformGrid::parse(args.grid);
  GammaOptions opt;
  opt.x0 = grid.min;
  opt.x_end = grid.max;
  opt.step = grid.step;
  opt.fixed_step = args.deterministic;
  const RootTrajectory traj = integrate_gamma(spec, opt);
  const auto u = trace_potential(traj, spec);
  Output o{Table::from_columns({"x", "gamma", "u"}, {traj.x, traj.gamma, u}), Report("finite-gap")};
  const double T = period(spec);
  o.report.results()["period"] = T;
  const double TT = trajectory_period(spec, opt);
  o.report.results()["trajectory_period"] = TT;
  o.report.check_max("period_vs_trajectory", std::abs(T - TT) / T, 1e-6);
  o.report.check_max("periodicity", periodicity_defect(spec, opt), 1e-6);
  const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  o.report.results()["u_range"] = {*lo, *hi};
  const double band_lo = 2 * spec.lambda3 - spec.lambda_sum(), band_hi = 2 * spec.lambda2 - spec.lambda_sum();
  o.report.check_max("potential_within_band", std::max({0.0, band_lo - *lo, *hi - band_hi}), 1e-9);
  const SpectralReport sp = spectral_check(traj, spec);
  o.report.results()["spectral_coefficients"] = sp.coefficients;
  o.report.results()["spectral_roots"] = sp.roots;
  o.report.check_max("spectral_coefficient_drift", sp.max_drift, 1e-6);
  double root_err = sp.roots.size() == 3 ? 0.0 : 1.0;
  if (sp.roots.size() == 3) {
    root_err = std::max({std::abs(sp.roots[0] - spec.lambda1), std::abs(sp.roots[1] - spec.lambda2),
                         std::abs(sp.roots[2] - spec.lambda3)});
  }
  o.report.check_max("spectral_roots", root_err, 1e-6);
  const DubrovinReport d = dubrovin_checks(traj, spec);
  o.report.check_max("dubrovin_root_identity", d.item1, 1e-6);
  o.report.check_max("dubrovin_division_remainder", d.remainder, 1e-6);
  o.report.check_max("dubrovin_quotient_is_4(lambda+u)", d.quotient_vs_potential, 1e-6);
  const double trace = floquet_trace(spec, spec.lambda1);
  o.report.results()["floquet_trace_at_lambda1"] = trace;
  o.report.check_max("band_edge_floquet_trace", std::abs(std::abs(trace) - 2.0), 1e-4);
  return o;
}

// ----- verify -----

struct VerifyArgs {
  std::string suite = "all";
  unsigned seed = 7;
};

Output run_verify(const VerifyArgs& args) {
  const std::vector<std::string> suites{"riccati", "schwarz", "hermite", "soliton", "finite-gap", "series", "kovalevskii"};
  if (args.suite != "all" && std::find(suites.begin(), suites.end(), args.suite) == suites.end()) {
    throw std::invalid_argument("unknown suite " + args.suite);
  }
  auto wanted = [&](const std::string& s) { return args.suite == "all" || args.suite == s; };
  Output o{Table({"name", "value", "tol", "pass"}), Report("verify")};
  Report& r = o.report;
  std::mt19937_64 rng(args.seed);
  const Expression x = var("x");
  if (wanted("riccati")) {
    // φ = tanh x solves φ_x = −φ² + 1.
    const RiccatiEq eq{-1, 0, 1};
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const MobiusMap m = random_map(rng);
      worst = std::max(worst, mobius_transform(eq, m).max_residual(m.apply(tanh(x))));
    }
    r.check_max("mobius_maps_solutions", worst, 1e-9);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const RiccatiEq random_eq{Expression::real(d(rng)) + Expression::real(0.3) * sin(x),
                              Expression::real(d(rng)), Expression::real(d(rng)) * cos(x)};
    const CrossRatioReport cr = cross_ratio_drift(random_eq, 0.0, {0.1, 0.4, -0.3, 0.7}, 0.5);
    r.check_max("cross_ratio_drift", cr.max_drift, 1e-8);
  }
  if (wanted("schwarz")) {
    const Expression phi = exp(x) + Expression::real(0.5) * x;
    const Expression S = schwarz(phi);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) worst = std::max(worst, max_relative_gap(schwarz(random_map(rng).apply(phi)), S, {}));
    r.check_max("schwarzian_mobius_invariance", worst, 1e-9);
    const Expression psi1 = cosh(x), psi2 = sinh(x);
    r.check_max("schwarzian_of_ratio_is_potential", max_abs(schwarz(psi1 / psi2) - Expression(1)), 1e-10);
  }
  if (wanted("hermite")) {
    double worst = 0.0;
    bool exact = true;
    for (int n = 0; n <= 6; ++n) {
      const Hermite h = hermite_polynomial(n);
      exact = exact && h.coefficients == hermite_rodrigues_coefficients(n);
      const Expression scale = sqr(h.witness) + sqr(x) + Expression::real(std::abs(h.alpha));
      worst = std::max(worst, max_scaled_residual(hermite_residual(h.witness, Expression::real(h.alpha)), scale));
    }
    r.add_check({"hermite_recurrence_equals_rodrigues", exact ? 0.0 : 1.0, 0.0, exact});
    r.check_max("hermite_riccati_residual", worst, 1e-10);
  }
  if (wanted("soliton")) {
    const SolitonSpec spec{{2.0, 1.0}, {0.3, -0.2}};
    double worst = 0.0;
    for (double k : {0.5, 1.7}) {
      const double expected = wronskian_poly(spec)(k);
      for (double xx : {-2.0, 0.0, 2.0}) {
        const WaveValues w = wavefunctions(spec, k, xx);
        worst = std::max(worst, std::abs(w.psi1 * w.dpsi2 - w.psi2 * w.dpsi1 - expected) / std::max(1.0, std::abs(expected)));
      }
    }
    r.check_max("soliton_wronskian", worst, 1e-8);
    // ∫u dx over the moving KdV 1-soliton.
    const SolitonSpec one{{1.0}, {0.0}};
    std::vector<double> masses;
    for (double t : {0.0, 0.5, 1.0}) {
      const double c = 4.0 * t;
      masses.push_back(numeric::quadrature([&](double xx) { return kdv_field(one, xx, t); }, c - 40.0, c + 40.0).value);
    }
    r.check_max("kdv_mass_conservation", std::max(std::abs(masses[1] - masses[0]), std::abs(masses[2] - masses[0])), 1e-8);
  }
  if (wanted("finite-gap")) {
    const GapSpec spec;
    const double T = period(spec);
    GammaOptions opt;
    opt.x_end = 10.0;
    r.check_max("finite_gap_period", std::abs(trajectory_period(spec, opt) - T) / T, 1e-6);
    const GapSpec scaled{8.0, 4.0, 0.0, 2.0, 1};
    r.check_max("finite_gap_period_scaling", std::abs(period(scaled) - T / 2.0), 1e-10);
  }
  if (wanted("series")) {
    const RiccatiSeries rs = riccati_series(2, 3);
    const auto f0 = rs.f.coefficient(0);
    const bool ok = f0 == DiffPolynomial(Rational(1, 2)) * DiffPolynomial::symbol(1);
    r.add_check({"series_f0_is_half_u1", ok ? 0.0 : 1.0, 0.0, ok});
    const std::size_t bad = nonzero_known(riccati_residual(rs.f, riccati_potential(2)));
    r.check_max("series_riccati_residual_terms", static_cast<double>(bad), 0.0);
  }
  if (wanted("kovalevskii")) {
    std::uniform_real_distribution<double> d(0.1, 1.0);
    double worst = 0.0;
    for (int n : {3, 4, 5}) {
      std::vector<double> y0;
      for (int i = 0; i < n; ++i) y0.push_back(d(rng));
      std::sort(y0.begin(), y0.end());
      worst = std::max(worst, kovalevskii_check(n, y0, 0.5).max_drift);
    }
    r.check_max("kovalevskii_integral_drift", worst, 1e-7);
  }
  for (const Check& c : r.checks()) {
    o.table.add_row({c.name, format_number(c.value), format_number(c.tol), c.pass ? "true" : "false"});
  }
  return o;
}

std::string join_json(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_array() || v[i].is_object()) throw std::invalid_argument("config arrays must be flat");
      if (i > 0) s += ',';
      s += join_json(v[i]);
    }
    return s;
  }
  throw std::invalid_argument("unsupported config value " + v.dump());
}

}  // namespace

std::vector<std::string> config_tokens(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  std::vector<std::string> tokens;
  if (j.contains("command")) tokens.push_back(join_json(j["command"]));
  for (const auto& [key, value] : j.items()) {
    if (key == "command") continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    tokens.push_back("--" + key + "=" + join_json(value));
  }
  return tokens;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riccati toolkit: transformations, soliton and finite-gap potentials", "rictk"};
  app.require_subcommand(1);
  std::string out_dir = "out";
  std::string config;
  Command selected;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    return sub;
  };

  TransformArgs ta;
  auto* transform = add("transform", "Mobius map of Riccati coefficients");
  transform->add_option("--a", ta.a)->capture_default_str();
  transform->add_option("--b", ta.b)->capture_default_str();
  transform->add_option("--c", ta.c)->capture_default_str();
  transform->add_option("--alpha", ta.alpha)->capture_default_str();
  transform->add_option("--beta", ta.beta)->capture_default_str();
  transform->add_option("--gamma", ta.gamma)->capture_default_str();
  transform->add_option("--delta", ta.delta)->capture_default_str();
  transform->add_option("--phi", ta.phi, "optional solution of the input equation");
  transform->add_option("--grid", ta.grid)->capture_default_str();
  transform->callback([&] { selected = [&] { return run_transform(ta); }; });

  SolveArgs sa;
  auto* solve = add("solve-re", "general solution from a particular one");
  solve->add_option("--a", sa.a)->capture_default_str();
  solve->add_option("--b", sa.b)->capture_default_str();
  solve->add_option("--c", sa.c)->capture_default_str();
  solve->add_option("--phi1", sa.phi1);
  solve->add_option("--constants", sa.constants)->delimiter(',')->capture_default_str();
  solve->add_option("--grid", sa.grid)->capture_default_str();
  solve->add_option("--anchor", sa.anchor)->capture_default_str();
  solve->callback([&] { selected = [&] { return run_solve(sa); }; });

  HermiteArgs ha;
  auto* hermite = add("hermite", "Hermite polynomial solutions");
  hermite->add_option("--n", ha.n)->capture_default_str();
  hermite->add_option("--grid", ha.grid)->capture_default_str();
  hermite->callback([&] { selected = [&] { return run_hermite(ha); }; });

  PoleArgs pa;
  auto* pole = add("pole-series", "Laurent series at a pole");
  pole->add_option("--alpha", pa.alpha)->capture_default_str();
  pole->add_option("--eps", pa.eps)->capture_default_str();
  pole->add_option("--depth", pa.depth)->capture_default_str();
  pole->callback([&] { selected = [&] { return run_pole(pa); }; });

  SchwarzArgs sw;
  auto* schw = add("schwarz", "Schwarzian derivative and invariance check");
  schw->add_option("--phi", sw.phi)->capture_default_str();
  schw->add_option("--grid", sw.grid)->capture_default_str();
  schw->add_option("--maps", sw.maps)->capture_default_str();
  schw->add_option("--seed", sw.seed)->capture_default_str();
  schw->callback([&] { selected = [&] { return run_schwarz(sw); }; });

  SeriesArgs se;
  auto* series = add("series", "asymptotic series as differential polynomials");
  series->add_option("--kind", se.kind, "f, g, h or zeta")->capture_default_str();
  series->add_option("--m", se.m)->capture_default_str();
  series->add_option("--depth", se.depth)->capture_default_str();
  series->add_option("--u", se.u, "potential for zeta")->capture_default_str();
  series->add_option("--count", se.count)->capture_default_str();
  series->callback([&] { selected = [&] { return run_series(se); }; });

  SolitonArgs so;
  auto* soliton = add("soliton", "N-soliton transparent potential");
  soliton->add_option("--k", so.k)->delimiter(',')->capture_default_str();
  soliton->add_option("--beta", so.beta)->delimiter(',')->capture_default_str();
  soliton->add_option("--grid", so.grid)->capture_default_str();
  soliton->add_option("--far", so.far)->capture_default_str();
  soliton->callback([&] { selected = [&] { return run_soliton(so); }; });

  KpArgs kp;
  auto* kpc = add("kp", "KP or KdV field from soliton data");
  kpc->add_option("--k", kp.k)->delimiter(',')->capture_default_str();
  kpc->add_option("--beta", kp.beta)->delimiter(',')->capture_default_str();
  kpc->add_option("--equation", kp.equation, "kp or kdv")->capture_default_str();
  kpc->add_option("--grid", kp.grid)->capture_default_str();
  kpc->add_option("--y", kp.y)->capture_default_str();
  kpc->add_option("--t", kp.t)->capture_default_str();
  kpc->add_option("--box", kp.box)->capture_default_str();
  kpc->add_option("--per-axis", kp.per_axis)->capture_default_str();
  kpc->add_option("--fd-step", kp.h)->capture_default_str();
  kpc->callback([&] { selected = [&] { return run_kp(kp); }; });

  GapArgs ga;
  auto* gap = add("finite-gap", "one-phase finite-gap potential");
  gap->add_option("--lambdas", ga.lambdas)->delimiter(',')->capture_default_str();
  gap->add_option("--gamma0", ga.gamma0)->capture_default_str();
  gap->add_option("--sign", ga.sign)->capture_default_str();
  gap->add_option("--grid", ga.grid)->capture_default_str();
  gap->add_flag("--deterministic", ga.deterministic, "fixed-step integration");
  gap->callback([&] { selected = [&] { return run_gap(ga); }; });

  VerifyArgs va;
  auto* verify = add("verify", "run invariant suites");
  verify->add_option("--suite", va.suite)->capture_default_str();
  verify->add_option("--seed", va.seed)->capture_default_str();
  verify->callback([&] { selected = [&] { return run_verify(va); }; });

  std::vector<std::string> args;
  try {
    // --config FILE expands in place; later flags override it.
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
      const std::string& a = raw_args[i];
      if (a == "--config" || a.rfind("--config=", 0) == 0) {
        if (a == "--config" && i + 1 >= raw_args.size()) throw std::invalid_argument("--config needs a file");
        config = a == "--config" ? raw_args[++i] : a.substr(9);
      } else {
        rest.push_back(a);
      }
    }
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw std::invalid_argument("cannot read config " + config);
      std::stringstream buf;
      buf << in.rdbuf();
      auto tokens = config_tokens(buf.str());
      const bool cli_command = !rest.empty() && rest.front().rfind("-", 0) != 0;
      const bool cfg_command = !tokens.empty() && tokens.front().rfind("-", 0) != 0;
      if (cli_command && cfg_command) tokens.erase(tokens.begin());
      auto key_of = [](const std::string& t) { return t.substr(0, t.find('=')); };
      std::erase_if(tokens, [&](const std::string& t) {
        return t.rfind("--", 0) == 0 &&
               std::any_of(rest.begin(), rest.end(), [&](const std::string& r) { return key_of(r) == key_of(t); });
      });
      if (cli_command) {
        args.push_back(rest.front());
        rest.erase(rest.begin());
      }
      args.insert(args.end(), tokens.begin(), tokens.end());
    }
    args.insert(args.end(), rest.begin(), rest.end());
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) throw std::invalid_argument("cannot create output directory " + out_dir);
    Output result = selected();
    const fs::path csv = fs::path(out_dir) / (name + ".csv");
    const fs::path json = fs::path(out_dir) / "report.json";
    write_csv(csv, result.table);
    write_json(json, result.report.to_json());
    for (const Check& c : result.report.checks()) {
      out << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << format_number(c.value)
          << " tol=" << format_number(c.tol) << '\n';
    }
    out << "wrote " << csv.string() << " and " << json.string() << '\n';
    if (!result.report.all_pass()) {
      err << "error: failing check in " << name << '\n';
      return kExitNumeric;
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << name << ": " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace rictk::cli
