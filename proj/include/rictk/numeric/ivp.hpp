#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace rictk::numeric {

using State = std::vector<double>;
/// dydx = f(x, y); the output vector is pre-sized to the dimension.
using Rhs = std::function<void(double x, const State& y, State& dydx)>;

struct IvpProblem {
  Rhs rhs;
  double x0 = 0.0;
  State y0;
};

/// Step-size underflow or a non-finite state, typically a blow-up.
class IvpError : public std::runtime_error {
 public:
  IvpError(const std::string& what, double location) : std::runtime_error(what), location_(location) {}
  double location() const { return location_; }

 private:
  double location_;
};

struct IvpOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double initial_step = 0.0;  // 0 selects automatically
  double max_step = 0.0;      // 0 means unbounded
  long max_steps = 2'000'000;
  double blow_up = 1e100;
};

/// Accepted steps with derivatives; evaluates in between by cubic Hermite
/// interpolation.
class Trajectory {
 public:
  void push(double x, State y, State dy);

  std::size_t size() const { return xs_.size(); }
  double x_begin() const { return xs_.front(); }
  double x_end() const { return xs_.back(); }
  const std::vector<double>& xs() const { return xs_; }
  const State& y(std::size_t i) const { return ys_[i]; }
  const State& dy(std::size_t i) const { return dys_[i]; }
  const State& back() const { return ys_.back(); }

  /// Interpolated state at x, which must lie within the integrated range.
  State at(double x) const;
  /// Interpolated derivative at x.
  State derivative_at(double x) const;

 private:
  std::size_t locate(double x) const;

  std::vector<double> xs_;
  std::vector<State> ys_;
  std::vector<State> dys_;
};

/// Adaptive Dormand–Prince 5(4) integration from p.x0 to x_end (either
/// direction). Each accepted step has a scaled local error estimate ≤ 1.
Trajectory integrate_ivp(const IvpProblem& p, double x_end, const IvpOptions& options = {});

/// Classical fixed-step RK4 with `steps` equal steps; deterministic output.
Trajectory integrate_rk4(const IvpProblem& p, double x_end, int steps);

}  // namespace rictk::numeric
