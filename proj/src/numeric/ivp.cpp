#include "rictk/numeric/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rictk::numeric {

void Trajectory::push(double x, State y, State dy) {
  xs_.push_back(x);
  ys_.push_back(std::move(y));
  dys_.push_back(std::move(dy));
}

std::size_t Trajectory::locate(double x) const {
  if (xs_.size() < 2) return 0;
  const bool forward = xs_.back() >= xs_.front();
  const double lo = forward ? xs_.front() : xs_.back();
  const double hi = forward ? xs_.back() : xs_.front();
  const double slack = 1e-12 * std::max(1.0, std::abs(hi - lo));
  if (x < lo - slack || x > hi + slack) throw std::out_of_range("trajectory evaluated outside its range");
  std::size_t i;
  if (forward) {
    i = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  } else {
    i = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x, std::greater<>()) - xs_.begin());
  }
  return std::clamp<std::size_t>(i, 1, xs_.size() - 1) - 1;
}

State Trajectory::at(double x) const {
  if (xs_.size() == 1) return ys_[0];
  const std::size_t i = locate(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  const double h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t);
  const double h11 = t * t * (t - 1);
  State out(ys_[i].size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = h00 * ys_[i][k] + h10 * h * dys_[i][k] + h01 * ys_[i + 1][k] + h11 * h * dys_[i + 1][k];
  }
  return out;
}

State Trajectory::derivative_at(double x) const {
  if (xs_.size() == 1) return dys_[0];
  const std::size_t i = locate(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double d00 = 6 * t * (t - 1) / h;
  const double d10 = (1 - t) * (1 - 3 * t);
  const double d01 = -d00;
  const double d11 = t * (3 * t - 2);
  State out(ys_[i].size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = d00 * ys_[i][k] + d10 * dys_[i][k] + d01 * ys_[i + 1][k] + d11 * dys_[i + 1][k];
  }
  return out;
}

namespace {

// Dormand–Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

bool finite(const State& y, double bound) {
  return std::all_of(y.begin(), y.end(), [&](double v) { return std::isfinite(v) && std::abs(v) < bound; });
}

std::string at_location(const char* what, double x) {
  std::ostringstream os;
  os.precision(10);
  os << what << " at x = " << x;
  return os.str();
}

}  // namespace

Trajectory integrate_ivp(const IvpProblem& p, double x_end, const IvpOptions& opt) {
  const std::size_t n = p.y0.size();
  if (n == 0) throw std::invalid_argument("empty initial state");
  if (!(opt.rel_tol > 0) || !(opt.abs_tol >= 0)) throw std::invalid_argument("tolerances must be positive");
  Trajectory traj;
  double x = p.x0;
  State y = p.y0;
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
  p.rhs(x, y, k1);
  if (!finite(k1, std::numeric_limits<double>::infinity())) throw IvpError(at_location("non-finite derivative", x), x);
  traj.push(x, y, k1);
  if (x_end == x) return traj;
  const double dir = x_end > x ? 1.0 : -1.0;
  const double span = std::abs(x_end - x);
  const double hmax = opt.max_step > 0 ? opt.max_step : span;

  auto scale = [&](double a, double b) { return opt.abs_tol + opt.rel_tol * std::max(std::abs(a), std::abs(b)); };

  double h = opt.initial_step;
  if (h <= 0) {
    double d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = scale(y[i], y[i]);
      d0 = std::max(d0, std::abs(y[i]) / s);
      d1 = std::max(d1, std::abs(k1[i]) / s);
    }
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min({h, hmax, span});
  }
  long steps = 0;
  while (dir * (x_end - x) > 0) {
    if (++steps > opt.max_steps) throw IvpError(at_location("step budget exhausted", x), x);
    bool last = false;
    if (h >= std::abs(x_end - x)) {
      h = std::abs(x_end - x);
      last = true;
    }
    const double min_step = 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
    if (h < min_step) throw IvpError(at_location("step size underflow (possible blow-up)", x), x);
    const double hs = dir * h;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * a21 * k1[i];
    p.rhs(x + c2 * hs, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    p.rhs(x + c3 * hs, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    p.rhs(x + c4 * hs, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    p.rhs(x + c5 * hs, tmp, k5);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    p.rhs(x + hs, tmp, k6);
    for (std::size_t i = 0; i < n; ++i) {
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    const double xnew = last ? x_end : x + hs;
    p.rhs(xnew, ynew, k7);
    double err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      err = std::max(err, std::abs(ei) / scale(y[i], ynew[i]));
    }
    if (!std::isfinite(err) || !finite(ynew, opt.blow_up)) {
      if (!finite(y, opt.blow_up)) throw IvpError(at_location("solution blew up", x), x);
      h *= 0.25;
      continue;
    }
    if (err <= 1.0) {
      x = xnew;
      y = ynew;
      k1 = k7;
      traj.push(x, y, k1);
      const double factor = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * factor, hmax);
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }
  return traj;
}

Trajectory integrate_rk4(const IvpProblem& p, double x_end, int steps) {
  if (steps < 1) throw std::invalid_argument("rk4 needs at least one step");
  const std::size_t n = p.y0.size();
  Trajectory traj;
  State y = p.y0;
  State k1(n), k2(n), k3(n), k4(n), tmp(n);
  const double h = (x_end - p.x0) / steps;
  p.rhs(p.x0, y, k1);
  traj.push(p.x0, y, k1);
  for (int s = 0; s < steps; ++s) {
    const double x = p.x0 + s * h;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    p.rhs(x + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    p.rhs(x + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    p.rhs(x + h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    const double xn = s + 1 == steps ? x_end : p.x0 + (s + 1) * h;
    if (!finite(y, std::numeric_limits<double>::max())) throw IvpError(at_location("solution blew up", xn), xn);
    p.rhs(xn, y, k1);
    traj.push(xn, y, k1);
  }
  return traj;
}

}  // namespace rictk::numeric
