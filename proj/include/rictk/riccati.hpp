#pragma once

// The Riccati equation φ_x = aφ² + bφ + c, its Möbius transformation group,
// and its equivalence with second-order linear ODEs ψ_xx = bψ_x + cψ.

#include <string>
#include <string_view>
#include <vector>

#include "rictk/expression.hpp"
#include "rictk/numeric/polynomial.hpp"
#include "rictk/sampling.hpp"

namespace rictk {

/// φ_x = aφ² + bφ + c with coefficients in x.
struct RiccatiEq {
  Expression a, b, c;

  bool is_linear() const { return a.is_zero(); }
  /// φ_x − (aφ² + bφ + c).
  Expression residual(const Expression& phi) const;
  /// Sum of squares of the terms; its root scales relative residuals.
  Expression residual_scale(const Expression& phi) const;
  /// Relative residual of φ on the sample points.
  double max_residual(const Expression& phi, const Sampling& s = {}) const;
};

/// ψ_xx = bψ_x + cψ.
struct Lode2 {
  Expression b, c;

  /// The equation ψ_xx + Bψ_x + Cψ = 0.
  static Lode2 from_standard_form(const Expression& B, const Expression& C) { return {-B, -C}; }
  Expression residual(const Expression& psi) const;
  double max_residual(const Expression& psi, const Sampling& s = {}) const;
};

/// φ ↦ (αφ + β)/(γφ + δ).
struct MobiusMap {
  Expression alpha, beta, gamma, delta;

  static MobiusMap identity() { return {1, 0, 0, 1}; }
  Expression determinant() const { return alpha * delta - beta * gamma; }
  Expression apply(const Expression& phi) const { return (alpha * phi + beta) / (gamma * phi + delta); }
};

/// The map "first `first`, then `second`".
MobiusMap compose(const MobiusMap& second, const MobiusMap& first);

/// Generator actions on the coefficients.
RiccatiEq invert(const RiccatiEq& eq);                         // φ̂ = 1/φ
RiccatiEq scale(const RiccatiEq& eq, const Expression& alpha);  // φ̂ = αφ
RiccatiEq shift(const RiccatiEq& eq, const Expression& beta);   // φ̂ = φ + β

/// Equation satisfied by φ̂ = (αφ+β)/(γφ+δ). For γ ≢ 0 the map is applied as
/// scale by γ, shift by δ, invert, scale by −det/γ, shift by α/γ. Throws
/// DomainError when the determinant vanishes at every sample point.
RiccatiEq mobius_transform(const RiccatiEq& eq, const MobiusMap& m, const Sampling& s = {});

/// Solutions depending on one free constant, represented by a variable.
struct SolutionFamily {
  Expression expr;
  std::string constant = "C";

  Expression at(double c) const { return substitute(expr, constant, Expression::real(c)); }
  Expression at(const Expression& c) const { return substitute(expr, constant, c); }
};

/// General solution from the particular solution φ1 via φ = φ1 + 1/v, where v
/// solves the linear equation v_x = −(b + 2aφ1)v − a. For a ≡ 0, the linear
/// equation is solved directly by variation of constants. Antiderivatives
/// without a closed form become quadrature-backed nodes anchored at `anchor`.
/// Throws std::invalid_argument when φ1 fails the residual check.
SolutionFamily general_from_particular(const RiccatiEq& eq, const Expression& phi1, const Sampling& s = {},
                                       double tol = 1e-9, double anchor = 0.0);

/// Solution of φ_x = bφ + c: φ = z(∫c/z + C), z = exp(∫b).
SolutionFamily solve_linear(const Expression& b, const Expression& c, double anchor = 0.0);

/// φ = (φ1 − Rφ2)/(1 − R), R = A(φ3 − φ1)/(φ3 − φ2): the solution whose cross
/// ratio with φ1, φ2, φ3 is A. Throws DomainError when R ≡ 1 on the samples.
Expression cross_ratio_solution(const Expression& phi1, const Expression& phi2, const Expression& phi3, double A,
                                const Sampling& s = {});

/// (φ − φ1)(φ3 − φ2)/((φ − φ2)(φ3 − φ1)).
double cross_ratio(double phi, double phi1, double phi2, double phi3);

enum class LogDerivative {
  kPositive,  // φ = ψ_x/ψ: gives (a, b, c) = (−1, b, c)
  kNegative,  // φ = −ψ_x/ψ: gives (1, b, −c)
};

RiccatiEq lode_to_re(const Lode2& l, LogDerivative sign = LogDerivative::kPositive);
/// With φ = −ψ_x/(aψ): ψ_xx = (a_x/a + b)ψ_x − acψ. Throws DomainError for a ≡ 0.
Lode2 re_to_lode(const RiccatiEq& eq);

struct CanonicalForm {
  Expression c_hat;  // ψ̂_xx + ĉψ̂ = 0
  Expression gauge;  // ψ = gauge·ψ̂
};

/// With B = −b, C = −c (so that ψ_xx + Bψ_x + Cψ = 0):
/// ĉ = C − B²/4 − B_x/2 and gauge = exp(−½∫B).
CanonicalForm canonical_form(const Lode2& l, double anchor = 0.0);

/// ψ2 = ψ1 ∫ψ1^{-2}, normalized so that ψ1ψ2′ − ψ2ψ1′ = 1. Throws DomainError
/// if ψ1 changes sign or vanishes on the sampled interval and
/// std::invalid_argument if ψ1 does not solve l.
Expression second_solution(const Lode2& l, const Expression& psi1, const Sampling& s = {}, double tol = 1e-9);

/// ψ1ψ2′ − ψ2ψ1′.
Expression wronskian(const Expression& psi1, const Expression& psi2, std::string_view var = "x");

struct Factorization {
  Expression a;          // ψ1′/ψ1
  Expression quotient;   // p in ∂² − b∂ − c = (∂ − p)(∂ − a) + r
  Expression remainder;  // r = a_x + a² − ab − c
  double remainder_max = 0.0;
};

/// Right division of ∂² − b∂ − c by ∂ − ψ1′/ψ1. The remainder vanishes
/// exactly when ψ1 is in the kernel.
Factorization lode_factor(const Lode2& l, const Expression& psi1, const Sampling& s = {});

struct KernelBasis {
  std::vector<Expression> functions;
  numeric::RootsResult roots;
};

/// Kernel of ∂^n + a_1∂^{n−1} + ... + a_n with constant coefficients:
/// x^s e^{λx} for each characteristic root λ of multiplicity m, s < m;
/// complex pairs p ± iq give x^s e^{px}cos(qx) and x^s e^{px}sin(qx).
/// Throws std::runtime_error when the root backward error exceeds 1e-8.
KernelBasis lodo_const_kernel(const std::vector<double>& coeffs);

// Hermite family: y_x + y² = x² + α.

/// H_n from H_{n+1} = 2xH_n − 2nH_{n−1}, ascending coefficients.
std::vector<Rational> hermite_coefficients(int n);
/// H_n = (−1)^n e^{x²} dⁿ/dxⁿ e^{−x²}, via P_{k+1} = P_k′ − 2xP_k exactly.
std::vector<Rational> hermite_rodrigues_coefficients(int n);
/// Dense text like "4x^2-2".
std::string format_polynomial(const std::vector<Rational>& ascending, std::string_view var = "x");

struct Hermite {
  int n = 0;
  std::vector<Rational> coefficients;
  Expression omega;    // H_n
  Expression witness;  // y = −x + ω_x/ω, solving y_x + y² = x² − 2n − 1
  double alpha = 0.0;  // −2n − 1
};
Hermite hermite_polynomial(int n);

/// y_x + y² − x² − α.
Expression hermite_residual(const Expression& y, const Expression& alpha);

struct Ladder {
  Expression y;
  Expression alpha;
};
/// ŷ = x + (α+1)/(y + x), solving the equation with α + 2.
Ladder hermite_ladder(const Expression& y, const Expression& alpha);
/// y = −x + (α̂−1)/(ŷ − x), solving the equation with α̂ − 2.
Ladder hermite_ladder_inverse(const Expression& y_hat, const Expression& alpha_hat);

/// Coefficients a_0..a_depth of y = 1/(x+ε) + Σ a_n (x+ε)^n for
/// y_x + y² = x² + α.
std::vector<double> pole_series(double alpha, double eps, int depth);
std::vector<Rational> pole_series_exact(const Rational& alpha, const Rational& eps, int depth);
double pole_series_value(const std::vector<double>& a, double eps, double x);

struct PoleSeriesCheck {
  std::vector<double> t;      // distances x + ε from the pole
  std::vector<double> error;  // |series − reference| at each t
  double observed_order = 0.0;  // log2 of successive error ratios, last pair
};
/// Compares the truncated series with w = 1/y integrated from the pole
/// (w_x = 1 − (x² + α)w², w(−ε) = 0) at tolerance 1e-13, at x = −ε + t.
PoleSeriesCheck pole_series_check(double alpha, double eps, int depth,
                                  const std::vector<double>& t = {0.4, 0.2, 0.1});

// Kovalevskii system y_j′ = s y_j − 2y_j², s = Σ y_j.

struct KovalevskiiReport {
  int n = 0;
  std::vector<std::string> names;
  std::vector<double> initial;  // integrals at the start
  std::vector<double> drift;    // max |F(x) − F(x0)| along the solution
  double max_drift = 0.0;
  double x_reached = 0.0;
  bool blew_up = false;
  double blow_up_location = 0.0;
  std::string message;
};

/// Integrates from x = 0 to `span` at tolerance `tol` and records the drift of
/// F1 = (y1−y2)y3, F2 = (y2−y3)y1 (n = 3) or of every cross ratio
/// (y_l−y_i)(y_k−y_j)/((y_l−y_j)(y_k−y_i)), i<j<k<l (n ≥ 4). A blow-up stops
/// the integration and is reported with its location.
KovalevskiiReport kovalevskii_check(int n, const std::vector<double>& y0, double span, double tol = 1e-10);

struct CrossRatioReport {
  double initial = 0.0;
  double max_drift = 0.0;
  double x_reached = 0.0;
};
/// Integrates φ_x = aφ² + bφ + c from x0 for four initial values and tracks
/// the cross ratio of the four solutions.
CrossRatioReport cross_ratio_drift(const RiccatiEq& eq, double x0, const std::vector<double>& phi0, double x_end,
                                   double tol = 1e-12);

/// The first integrals at a state.
std::vector<double> kovalevskii_integrals(const std::vector<double>& y, std::vector<std::string>* names = nullptr);

}  // namespace rictk
