#include "rictk/finitegap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rictk/numeric/ivp.hpp"
#include "rictk/numeric/quadrature.hpp"

namespace rictk {

void GapSpec::validate() const {
  if (!(lambda1 > lambda2 && lambda2 > lambda3)) throw std::invalid_argument("branch points must satisfy l1 > l2 > l3");
  if (!(gamma0 > lambda3 && gamma0 < lambda2)) throw std::invalid_argument("gamma0 must lie strictly inside (l3, l2)");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
}

numeric::DensePoly GapSpec::C() const { return 4.0 * numeric::DensePoly::from_roots({lambda1, lambda2, lambda3}); }

namespace {

int sign_of(double v, double scale) {
  if (std::abs(v) <= 1e-12 * scale) return 0;
  return v > 0 ? 1 : -1;
}

numeric::Trajectory gamma_ode(const numeric::DensePoly& C, double x0, double g0, double s0, const GammaOptions& o) {
  const numeric::DensePoly dC = C.derivative();
  numeric::IvpProblem p;
  p.rhs = [dC](double, const numeric::State& y, numeric::State& dy) {
    dy[0] = y[1];
    dy[1] = 0.5 * dC(y[0]);
  };
  p.x0 = x0;
  p.y0 = {g0, s0};
  if (o.fixed_step) {
    const int steps = static_cast<int>(std::ceil((o.x_end - x0) / (o.step / 8.0)));
    return numeric::integrate_rk4(p, o.x_end, steps);
  }
  numeric::IvpOptions opt;
  opt.rel_tol = o.tol;
  opt.abs_tol = o.tol;
  return numeric::integrate_ivp(p, o.x_end, opt);
}

}  // namespace

RootTrajectory integrate_gamma_from(const GapSpec& spec, double gamma0, double slope, const GammaOptions& options) {
  if (!(spec.lambda1 > spec.lambda2 && spec.lambda2 > spec.lambda3)) {
    throw std::invalid_argument("branch points must satisfy l1 > l2 > l3");
  }
  if (gamma0 < spec.lambda3 || gamma0 > spec.lambda2) throw std::invalid_argument("gamma0 must lie in [l3, l2]");
  if (!(options.step > 0) || !(options.x_end > options.x0)) throw std::invalid_argument("need step > 0 and x_end > x0");
  const numeric::DensePoly C = spec.C();
  if ((gamma0 == spec.lambda2 || gamma0 == spec.lambda3) && slope == 0.0) {
    throw FiniteGapError("degenerate seed: gamma0 at a band edge with zero slope");
  }
  const numeric::Trajectory t = gamma_ode(C, options.x0, gamma0, slope, options);
  const double scale = std::max(1.0, std::abs(C(gamma0)));
  const double e0 = slope * slope - C(gamma0);
  RootTrajectory out;
  const auto n = static_cast<std::size_t>(std::floor((options.x_end - options.x0) / options.step + 1e-9)) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::min(options.x0 + static_cast<double>(i) * options.step, options.x_end);
    const numeric::State y = t.at(x);
    const double drift = std::abs(y[1] * y[1] - C(y[0]) - e0);
    if (drift > options.energy_tol * scale) {
      throw FiniteGapError("energy drift " + std::to_string(drift) + " at x = " + std::to_string(x) +
                           " exceeds tolerance; reduce the step");
    }
    out.x.push_back(x);
    out.gamma.push_back(y[0]);
    out.dgamma.push_back(y[1]);
    out.d2gamma.push_back(0.5 * C.derivative()(y[0]));
    out.sign.push_back(sign_of(y[1], scale));
  }
  return out;
}

RootTrajectory integrate_gamma(const GapSpec& spec, const GammaOptions& options) {
  spec.validate();
  const double slope = spec.sign * std::sqrt(spec.C()(spec.gamma0));
  return integrate_gamma_from(spec, spec.gamma0, slope, options);
}

double period(const GapSpec& spec) {
  if (!(spec.lambda1 > spec.lambda2 && spec.lambda2 > spec.lambda3)) {
    throw std::invalid_argument("branch points must satisfy l1 > l2 > l3");
  }
  if (spec.lambda2 - spec.lambda3 < 1e-12) throw FiniteGapError("degenerate gap: period diverges");
  // λ = λ3 + (λ2 − λ3)sin²θ; the Jacobian cancels √((λ−λ3)(λ2−λ)).
  auto f = [&](double theta) { return 2.0 / std::sqrt(spec.lambda1 - spec.lambda3 - (spec.lambda2 - spec.lambda3) * std::sin(theta) * std::sin(theta)); };
  numeric::QuadratureOptions opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-14;
  return numeric::quadrature(f, 0.0, std::numbers::pi / 2.0, opt).value;
}

double trajectory_period(const GapSpec& spec, const GammaOptions& options) {
  spec.validate();
  const numeric::DensePoly C = spec.C();
  const numeric::DensePoly dC = C.derivative();
  const double slope = spec.sign * std::sqrt(C(spec.gamma0));
  const numeric::Trajectory t = gamma_ode(C, options.x0, spec.gamma0, slope, options);
  std::vector<double> maxima;
  const auto& xs = t.xs();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (t.y(i - 1)[1] > 0 && t.y(i)[1] <= 0) {
      double x = xs[i - 1];
      for (int it = 0; it < 50; ++it) {
        const numeric::State y = t.at(x);
        const double dx = y[1] / (0.5 * dC(y[0]));
        x = std::clamp(x - dx, xs[i - 1], xs[i]);
        if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(x))) break;
      }
      maxima.push_back(x);
    }
  }
  if (maxima.size() < 2) throw FiniteGapError("fewer than two maxima in the integration range");
  return (maxima.back() - maxima.front()) / static_cast<double>(maxima.size() - 1);
}

double periodicity_defect(const GapSpec& spec, const GammaOptions& options) {
  spec.validate();
  const double T = period(spec);
  GammaOptions extended = options;
  extended.x_end = options.x_end + T;
  const numeric::DensePoly C = spec.C();
  const numeric::Trajectory t = gamma_ode(C, options.x0, spec.gamma0, spec.sign * std::sqrt(C(spec.gamma0)), extended);
  double defect = 0.0;
  const auto n = static_cast<std::size_t>(std::floor((options.x_end - options.x0) / options.step + 1e-9)) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::min(options.x0 + static_cast<double>(i) * options.step, options.x_end);
    defect = std::max(defect, 2.0 * std::abs(t.at(x + T)[0] - t.at(x)[0]));
  }
  return defect;
}

std::vector<double> trace_potential(const RootTrajectory& traj, const GapSpec& spec) {
  std::vector<double> u;
  u.reserve(traj.gamma.size());
  for (double g : traj.gamma) u.push_back(2.0 * g - spec.lambda_sum());
  return u;
}

double floquet_trace(const GapSpec& spec, double lambda) {
  spec.validate();
  const numeric::DensePoly C = spec.C();
  const numeric::DensePoly dC = C.derivative();
  const double T = period(spec);
  const double sum = spec.lambda_sum();
  // Start at a maximum of γ (γ = λ2, γ_x = 0) so the potential is exactly periodic from x = 0.
  numeric::IvpProblem p;
  p.rhs = [&](double, const numeric::State& y, numeric::State& dy) {
    dy[0] = y[1];
    dy[1] = 0.5 * dC(y[0]);
    const double u = 2.0 * y[0] - sum;
    dy[2] = y[3];
    dy[3] = (lambda + u) * y[2];
    dy[4] = y[5];
    dy[5] = (lambda + u) * y[4];
  };
  p.y0 = {spec.lambda2, 0.0, 1.0, 0.0, 0.0, 1.0};
  numeric::IvpOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-12;
  const numeric::State y = numeric::integrate_ivp(p, T, opt).back();
  return y[2] + y[5];
}

numeric::DensePoly spectral_polynomial(const RootTrajectory& traj, const GapSpec& spec, std::size_t i) {
  const double g = traj.gamma.at(i);
  const double u = 2.0 * g - spec.lambda_sum();
  const numeric::DensePoly phi{-g, 1.0};
  const double phi_x = -traj.dgamma.at(i);
  const double phi_xx = -traj.d2gamma.at(i);
  return 4.0 * (numeric::DensePoly{u, 1.0} * phi * phi) + numeric::DensePoly{phi_x * phi_x} - (2.0 * phi_xx) * phi;
}

SpectralReport spectral_check(const RootTrajectory& traj, const GapSpec& spec) {
  if (traj.gamma.empty()) throw std::invalid_argument("empty trajectory");
  SpectralReport r;
  const numeric::DensePoly first = spectral_polynomial(traj, spec, 0);
  r.coefficients = first.coefficients();
  r.coefficients.resize(4, 0.0);
  for (std::size_t i = 1; i < traj.gamma.size(); ++i) {
    const numeric::DensePoly c = spectral_polynomial(traj, spec, i);
    for (int j = 0; j < 4; ++j) r.max_drift = std::max(r.max_drift, std::abs(c.coefficient(j) - r.coefficients[j]));
  }
  for (const auto& root : numeric::polyroots(numeric::DensePoly(r.coefficients)).roots) {
    for (int m = 0; m < root.multiplicity; ++m) r.roots.push_back(root.value.real());
  }
  std::sort(r.roots.rbegin(), r.roots.rend());
  return r;
}

std::vector<double> dubrovin_rhs(const numeric::DensePoly& C, const std::vector<double>& gamma,
                                 const std::vector<int>& signs, double tol) {
  if (signs.size() != gamma.size()) throw std::invalid_argument("one sign per root variable");
  std::vector<double> out(gamma.size());
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    double denom = 1.0;
    for (std::size_t k = 0; k < gamma.size(); ++k) {
      if (k == j) continue;
      const double d = std::abs(gamma[j] - gamma[k]);
      if (d == 0.0) throw FiniteGapError("root variables collide");
      denom *= d;
    }
    const double c = C(gamma[j]);
    if (c < -tol) throw FiniteGapError("root variable left its band: C(gamma) < 0");
    out[j] = signs[j] * std::sqrt(std::max(c, 0.0)) / denom;
  }
  return out;
}

DubrovinTrajectory integrate_dubrovin(const numeric::DensePoly& C, const std::vector<double>& gamma0,
                                      const std::vector<int>& signs, double x_end, int steps) {
  const std::size_t n = gamma0.size();
  if (n == 0 || C.degree() != static_cast<int>(2 * n + 1)) throw std::invalid_argument("C must have degree 2N+1");
  if (signs.size() != n) throw std::invalid_argument("one sign per root variable");
  if (C.leading() <= 0) throw std::invalid_argument("C must have a positive leading coefficient");
  std::vector<double> mu;
  for (const auto& r : numeric::polyroots(C).roots) {
    if (r.multiplicity != 1 || std::abs(r.value.imag()) > 0) throw std::invalid_argument("C must have simple real roots");
    mu.push_back(r.value.real());
  }
  std::sort(mu.rbegin(), mu.rend());
  DubrovinTrajectory out;
  numeric::State theta0(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = mu[2 * j + 2], b = mu[2 * j + 1];
    out.bands.emplace_back(a, b);
    if (!(gamma0[j] > a && gamma0[j] < b)) throw std::invalid_argument("gamma0 outside its band");
    const double s = std::asin(std::sqrt((gamma0[j] - a) / (b - a)));
    theta0[j] = signs[j] >= 0 ? s : -s;
  }
  const double lead = C.leading();
  auto gamma_of = [&](const numeric::State& th) {
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double s = std::sin(th[j]);
      g[j] = out.bands[j].first + (out.bands[j].second - out.bands[j].first) * s * s;
    }
    return g;
  };
  numeric::IvpProblem p;
  // C = −(γ−a)(b−γ)·lead·∏_{rest}(γ−μ); with γ = a + (b−a)sin²θ, θ_x = √R/(2∏|γ_j−γ_k|).
  p.rhs = [&](double, const numeric::State& th, numeric::State& dth) {
    const auto g = gamma_of(th);
    for (std::size_t j = 0; j < n; ++j) {
      double R = -lead;
      for (std::size_t i = 0; i < mu.size(); ++i) {
        if (i == 2 * j + 1 || i == 2 * j + 2) continue;
        R *= g[j] - mu[i];
      }
      double denom = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) denom *= std::abs(g[j] - g[k]);
      }
      dth[j] = std::sqrt(std::max(R, 0.0)) / (2.0 * denom);
    }
  };
  p.y0 = theta0;
  const numeric::Trajectory t = numeric::integrate_rk4(p, x_end, steps);
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.x.push_back(t.xs()[i]);
    out.gamma.push_back(gamma_of(t.y(i)));
  }
  return out;
}

bool DubrovinReport::pass(double tol) const {
  return item1 <= tol && remainder <= tol && quotient_degree == 1 && std::abs(leading - 4.0) <= tol &&
         quotient_vs_potential <= tol;
}

DubrovinReport dubrovin_checks(const RootTrajectory& traj, const GapSpec& spec) {
  const numeric::DensePoly C = spec.C();
  DubrovinReport r;
  for (std::size_t i = 0; i < traj.gamma.size(); ++i) {
    const double g = traj.gamma[i];
    const double phi_x = -traj.dgamma[i];
    const double phi_xx = -traj.d2gamma[i];
    r.item1 = std::max(r.item1, std::abs(C(g) - phi_x * phi_x));
    const numeric::DensePoly phi{-g, 1.0};
    const numeric::DensePoly num = (2.0 * phi_xx) * phi + C - numeric::DensePoly{phi_x * phi_x};
    const auto div = num.divide(phi * phi);
    for (double c : div.remainder.coefficients()) r.remainder = std::max(r.remainder, std::abs(c));
    r.quotient_degree = div.quotient.degree();
    r.leading = div.quotient.leading();
    const double u = 2.0 * g - spec.lambda_sum();
    const numeric::DensePoly diff = div.quotient - 4.0 * numeric::DensePoly{u, 1.0};
    for (double c : diff.coefficients()) r.quotient_vs_potential = std::max(r.quotient_vs_potential, std::abs(c));
  }
  return r;
}

}  // namespace rictk
