#pragma once

// N-soliton transparent potentials of ψ_xx = (k² + u)ψ.
//
// ψ1(x,k) = e^{kx}(k^N + a_1k^{N−1} + ... + a_N), ψ2(x,k) = (−1)^N ψ1(x,−k),
// with a_j(x) fixed by ψ2(x,k_j) = (−1)^{j+1} e^{2β_j} ψ1(x,k_j). The
// potential is u = 2a_1′.

#include <optional>
#include <string>
#include <vector>

#include "rictk/expression.hpp"
#include "rictk/numeric/linalg.hpp"
#include "rictk/numeric/polynomial.hpp"

namespace rictk {

struct SolitonSpec {
  std::vector<double> k;     // k_1 > k_2 > ... > k_N > 0
  std::vector<double> beta;  // phases, B_j = e^{2β_j}

  std::size_t size() const { return k.size(); }
  /// Throws std::invalid_argument unless N ≥ 1, sizes match and the k are
  /// strictly decreasing and positive.
  void validate() const;
  /// Same wavenumbers with β_j replaced by β_j + shift_j.
  SolitonSpec shifted(const std::vector<double>& shift) const;
};

/// a_j and their x-derivatives at one point: derivative(n)[j-1] = a_j^{(n)}.
class SolitonCoefficients {
 public:
  explicit SolitonCoefficients(std::vector<std::vector<double>> d) : d_(std::move(d)) {}
  const std::vector<double>& a() const { return d_[0]; }
  const std::vector<double>& derivative(int n) const { return d_.at(static_cast<std::size_t>(n)); }
  int orders() const { return static_cast<int>(d_.size()) - 1; }

 private:
  std::vector<std::vector<double>> d_;
};

/// Solves the linear system at x and differentiates it `orders` times by
/// implicit differentiation, reusing one factorization:
/// M a^{(n)} = r^{(n)} − Σ_{m≥1} C(n,m) M^{(m)} a^{(n−m)}.
/// Throws numeric::SingularMatrixError if the system is singular.
SolitonCoefficients solve_coefficients(const SolitonSpec& spec, double x, int orders = 1);

/// The system solved with prescribed E_j = tanh(k_jx + β_j) values.
std::vector<double> solve_with_phases(const SolitonSpec& spec, const std::vector<double>& E);

/// The system matrix at x.
numeric::Matrix system_matrix(const SolitonSpec& spec, double x);

struct SystemDiagnostics {
  double determinant = 0.0;
  double condition = 0.0;
};
SystemDiagnostics system_diagnostics(const SolitonSpec& spec, double x);

/// u = 2a_1′ evaluated pointwise, with a closed form for N ≤ 2.
class TransparentPotential {
 public:
  explicit TransparentPotential(SolitonSpec spec);

  const SolitonSpec& spec() const { return spec_; }
  double u(double x) const;
  double a1(double x) const;
  /// −2k²/cosh²(kx+β) for N = 1 and −2(log G)″ with
  /// G = (k1−k2)cosh(τ1+τ2) + (k1+k2)cosh(τ1−τ2) for N = 2.
  const std::optional<Expression>& closed_form() const { return closed_form_; }

 private:
  SolitonSpec spec_;
  std::optional<Expression> closed_form_;
};

struct PotentialSamples {
  std::vector<double> x, u, a1;
};
PotentialSamples potential(const SolitonSpec& spec, const std::vector<double>& grid);

/// Closed form of u for N ≤ 2, with τ_j = k_j·x_expr + β_j. Throws
/// std::invalid_argument for N > 2.
Expression closed_form_potential(const SolitonSpec& spec, const std::vector<Expression>& tau);
std::vector<Expression> static_phases(const SolitonSpec& spec);

/// The two-soliton expression 2(log G̃)″ with
/// G̃ = (k2−k1)cosh(τ1+τ2) + (k2+k1)cosh(τ1−τ2), taken as written.
Expression two_soliton_reference(const SolitonSpec& spec);

struct WaveValues {
  double psi1 = 0, dpsi1 = 0, d2psi1 = 0;
  double psi2 = 0, dpsi2 = 0, d2psi2 = 0;
};

/// ψ1, ψ2 and their first two x-derivatives.
WaveValues wavefunctions(const SolitonSpec& spec, double k, double x);
/// Same, from precomputed coefficients (derivatives through order 2).
WaveValues wavefunctions(const SolitonCoefficients& c, double k, double x);

/// |ψ1″ − (k² + u)ψ1| / max(|ψ1″|, |(k² + u)ψ1|).
double schrodinger_residual(const SolitonSpec& spec, double k, double x);

/// −2k ∏(k² − k_j²).
numeric::DensePoly wronskian_poly(const SolitonSpec& spec);

/// u(x, y, t) with β_j ← β_j + k_j²y + k_j³t.
double kp_field(const SolitonSpec& spec, double x, double y, double t);
/// u(x, t) = −u_static with β_j ← β_j − 4k_j³t: the KdV N-soliton.
double kdv_field(const SolitonSpec& spec, double x, double t);

/// Closed forms in variables x, y, t (N ≤ 2).
Expression kp_expression(const SolitonSpec& spec);
Expression kdv_expression(const SolitonSpec& spec);

enum class Pde { kKP, kKdV };

/// (−4u_t + u_xxx + 6uu_x)_x + 3u_yy, or u_t + 6uu_x + u_xxx.
Expression pde_residual_expression(const Expression& u, Pde which);

struct ResidualReport {
  double max_residual = 0.0;
  double at_x = 0.0, at_y = 0.0, at_t = 0.0;
  std::size_t points = 0;
};

/// Max |residual| of a closed-form field over the box |x|,|y|,|t| ≤ half_width
/// on `per_axis` points per axis (y is ignored for KdV).
ResidualReport pde_residual_exact(const Expression& u, Pde which, double half_width, int per_axis);

using Field = std::function<double(double x, double y, double t)>;
/// Residual with all partial derivatives from second-order central
/// differences of step h, at the given points.
double pde_residual_fd(const Field& u, Pde which, double x, double y, double t, double h);

}  // namespace rictk
