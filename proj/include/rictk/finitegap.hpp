#pragma once

// One-phase finite-gap potentials from the root variable γ(x):
// γ_x² = C(γ) = 4(γ − λ1)(γ − λ2)(γ − λ3), u = 2γ − λ1 − λ2 − λ3.

#include <stdexcept>
#include <vector>

#include "rictk/numeric/polynomial.hpp"

namespace rictk {

class FiniteGapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GapSpec {
  double lambda1 = 2.0, lambda2 = 1.0, lambda3 = 0.0;
  double gamma0 = 0.5;
  int sign = 1;  // sign of γ_x at x0

  /// Throws std::invalid_argument unless λ1 > λ2 > λ3, λ3 < γ0 < λ2 and
  /// sign = ±1.
  void validate() const;
  /// 4(λ − λ1)(λ − λ2)(λ − λ3).
  numeric::DensePoly C() const;
  double lambda_sum() const { return lambda1 + lambda2 + lambda3; }
};

struct RootTrajectory {
  std::vector<double> x;
  std::vector<double> gamma, dgamma, d2gamma;
  std::vector<int> sign;  // sign of γ_x, 0 at a turning point
};

struct GammaOptions {
  double x0 = 0.0;
  double x_end = 20.0;
  double step = 0.01;  // output grid spacing
  double tol = 1e-12;
  double energy_tol = 1e-8;  // relative to max(1, |C(γ0)|)
  bool fixed_step = false;   // classical RK4 at step/8 instead of adaptive
};

/// Integrates γ_xx = C′(γ)/2 with γ(x0) = γ0, γ_x(x0) = sign·√C(γ0) and
/// samples on a uniform grid. Throws FiniteGapError when γ_x² − C(γ) drifts
/// beyond the energy tolerance.
RootTrajectory integrate_gamma(const GapSpec& spec, const GammaOptions& options = {});

/// Same, from an arbitrary γ0 in [λ3, λ2]; γ0 at a band edge with zero slope
/// is a degenerate seed and throws FiniteGapError.
RootTrajectory integrate_gamma_from(const GapSpec& spec, double gamma0, double slope, const GammaOptions& options);

/// T = ∫_{λ3}^{λ2} dλ / √((λ−λ1)(λ−λ2)(λ−λ3)). Throws FiniteGapError when
/// λ2 − λ3 < 1e-12.
double period(const GapSpec& spec);

/// Mean spacing of successive maxima of γ, each located by Newton's method on
/// γ_x. Needs at least two maxima in [x0, x_end].
double trajectory_period(const GapSpec& spec, const GammaOptions& options = {});

/// max over the grid of |u(x + T) − u(x)| with T from period(), the
/// trajectory being integrated on [x0, x_end + T].
double periodicity_defect(const GapSpec& spec, const GammaOptions& options = {});

/// u = 2γ − λ1 − λ2 − λ3 on the trajectory grid.
std::vector<double> trace_potential(const RootTrajectory& traj, const GapSpec& spec);

/// Trace of the monodromy matrix of ψ_xx = (λ + u)ψ over one period.
double floquet_trace(const GapSpec& spec, double lambda);

/// c(λ) = 4(λ + u)φ² + φ_x² − 2φφ_xx with φ = λ − γ at trajectory point i.
numeric::DensePoly spectral_polynomial(const RootTrajectory& traj, const GapSpec& spec, std::size_t i);

struct SpectralReport {
  std::vector<double> coefficients;  // ascending, at the first grid point
  double max_drift = 0.0;
  std::vector<double> roots;  // descending
};
SpectralReport spectral_check(const RootTrajectory& traj, const GapSpec& spec);

/// γ_{j,x} = sign_j √C(γ_j) / ∏_{k≠j} |γ_j − γ_k|. Throws FiniteGapError on a
/// collision or when some C(γ_j) < −tol.
std::vector<double> dubrovin_rhs(const numeric::DensePoly& C, const std::vector<double>& gamma,
                                 const std::vector<int>& signs, double tol = 1e-12);

struct DubrovinTrajectory {
  std::vector<double> x;
  std::vector<std::vector<double>> gamma;  // gamma[i][j]
  std::vector<std::pair<double, double>> bands;
};

/// Integrates the Dubrovin system for C of degree 2N+1 with simple real roots
/// μ1 > ... > μ_{2N+1}; γ_j moves in [μ_{2j+1}, μ_{2j}]. Each γ_j is written
/// as a + (b − a)sin²θ_j, which makes the flow smooth through turning points.
DubrovinTrajectory integrate_dubrovin(const numeric::DensePoly& C, const std::vector<double>& gamma0,
                                      const std::vector<int>& signs, double x_end, int steps);

struct DubrovinReport {
  double item1 = 0.0;         // max |C(γ) − φ_x²(x, γ)|
  double remainder = 0.0;     // max |coefficient| of the division remainder
  double leading = 0.0;       // leading coefficient of the quotient (last point)
  int quotient_degree = -1;
  double quotient_vs_potential = 0.0;  // max |quotient − 4(λ + u)|
  bool pass(double tol = 1e-6) const;
};

/// Checks |C(γ) − φ_x²| at λ = γ and that (2φφ_xx + C − φ_x²)/φ² divides
/// exactly with quotient 4(λ + u).
DubrovinReport dubrovin_checks(const RootTrajectory& traj, const GapSpec& spec);

}  // namespace rictk
