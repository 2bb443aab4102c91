#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rictk/numeric/ivp.hpp"
#include "rictk/riccati.hpp"

namespace rictk {

std::vector<double> kovalevskii_integrals(const std::vector<double>& y, std::vector<std::string>* names) {
  const std::size_t n = y.size();
  std::vector<double> out;
  if (names) names->clear();
  if (n == 3) {
    out = {(y[0] - y[1]) * y[2], (y[1] - y[2]) * y[0]};
    if (names) *names = {"F1", "F2"};
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
          out.push_back((y[l] - y[i]) * (y[k] - y[j]) / ((y[l] - y[j]) * (y[k] - y[i])));
          if (names) {
            names->push_back("R" + std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1) +
                             std::to_string(l + 1));
          }
        }
      }
    }
  }
  return out;
}

KovalevskiiReport kovalevskii_check(int n, const std::vector<double>& y0, double span, double tol) {
  if (n < 3) throw std::invalid_argument("Kovalevskii system needs n >= 3");
  if (static_cast<int>(y0.size()) != n) throw std::invalid_argument("initial state must have n components");
  if (n >= 4) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (y0[static_cast<std::size_t>(i)] == y0[static_cast<std::size_t>(j)]) {
          throw std::invalid_argument("initial components must be pairwise distinct");
        }
      }
    }
  }
  KovalevskiiReport rep;
  rep.n = n;
  rep.initial = kovalevskii_integrals(y0, &rep.names);
  rep.drift.assign(rep.initial.size(), 0.0);
  numeric::IvpProblem p;
  p.x0 = 0.0;
  p.y0 = y0;
  p.rhs = [](double, const numeric::State& y, numeric::State& dy) {
    double s = 0;
    for (double v : y) s += v;
    for (std::size_t j = 0; j < y.size(); ++j) dy[j] = s * y[j] - 2.0 * y[j] * y[j];
  };
  numeric::IvpOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol;
  numeric::Trajectory traj;
  try {
    traj = numeric::integrate_ivp(p, span, opt);
  } catch (const numeric::IvpError& e) {
    rep.blew_up = true;
    rep.blow_up_location = e.location();
    rep.message = e.what();
    // Re-run up to just before the failure to measure the drift there.
    const double stop = 0.99 * e.location();
    if (stop == 0.0) return rep;
    traj = numeric::integrate_ivp(p, stop, opt);
  }
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto f = kovalevskii_integrals(traj.y(i));
    for (std::size_t k = 0; k < f.size(); ++k) {
      rep.drift[k] = std::max(rep.drift[k], std::abs(f[k] - rep.initial[k]));
    }
  }
  rep.x_reached = traj.x_end();
  for (double d : rep.drift) rep.max_drift = std::max(rep.max_drift, d);
  return rep;
}

CrossRatioReport cross_ratio_drift(const RiccatiEq& eq, double x0, const std::vector<double>& phi0, double x_end,
                                   double tol) {
  if (phi0.size() != 4) throw std::invalid_argument("cross ratio needs four initial values");
  numeric::IvpProblem p;
  p.rhs = [&eq](double x, const numeric::State& y, numeric::State& dy) {
    const Bindings b{{"x", x}};
    const double a = eval(eq.a, b), bb = eval(eq.b, b), c = eval(eq.c, b);
    for (std::size_t i = 0; i < y.size(); ++i) dy[i] = a * y[i] * y[i] + bb * y[i] + c;
  };
  p.x0 = x0;
  p.y0 = phi0;
  numeric::IvpOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol;
  CrossRatioReport r;
  r.initial = cross_ratio(phi0[3], phi0[0], phi0[1], phi0[2]);
  numeric::Trajectory t;
  try {
    t = numeric::integrate_ivp(p, x_end, opt);
  } catch (const numeric::IvpError& e) {
    throw std::runtime_error(std::string("cross-ratio integration failed: ") + e.what());
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& y = t.y(i);
    r.max_drift = std::max(r.max_drift, std::abs(cross_ratio(y[3], y[0], y[1], y[2]) - r.initial));
  }
  r.x_reached = t.x_end();
  return r;
}

}  // namespace rictk
