#pragma once

#include <climits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rictk/diffpoly.hpp"
#include "rictk/expression.hpp"

namespace rictk {

/// Σ_d c_d s^d in a spectral variable s, with DiffPolynomial coefficients.
///
/// Coefficients are known exactly for degrees ≥ bottom() (the truncation
/// depth) and are zero above the highest stored degree. Arithmetic propagates
/// the truncation: a product is only kept where every contributing pair of
/// coefficients is known.
class FormalSeries {
 public:
  /// bottom() of a series that is exact in every degree (a polynomial).
  static constexpr int kExact = INT_MIN / 4;

  explicit FormalSeries(int bottom = kExact) : bottom_(bottom) {}

  int bottom() const { return bottom_; }
  /// Highest degree with a nonzero coefficient (the leading exponent); bottom()
  /// for the zero series.
  int top() const;
  const std::map<int, DiffPolynomial>& coefficients() const { return c_; }

  /// Throws std::out_of_range below the truncation depth.
  DiffPolynomial coefficient(int degree) const;
  void set(int degree, const DiffPolynomial& p);

  FormalSeries operator-() const;
  friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
  friend FormalSeries operator-(const FormalSeries& a, const FormalSeries& b);
  friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
  /// Multiplication by s^n.
  FormalSeries shifted(int n) const;
  /// Coefficient-wise total x-derivative.
  FormalSeries derivative() const;

  std::string to_string(int num_symbols, std::string_view spectral = "λ") const;

 private:
  int bottom_;
  std::map<int, DiffPolynomial> c_;
};

/// U = s^m + u_1 s^{m-1} + ... + u_m.
FormalSeries generalized_potential(int m);

struct RiccatiSeries {
  FormalSeries f;  // λ + f_0 + f_1/λ + ...
  FormalSeries g;  // -λ + g_0 + g_1/λ + ...
};

/// The right-hand side of f_x + f² = U used by riccati_series:
/// s² + u_1 s + u_2 (m = 2) or s² + u_1 with s = k (m = 1).
FormalSeries riccati_potential(int m);

/// Asymptotic solutions f, g of f_x + f² = U through order λ^{-depth}.
/// m = 2: U = λ² + u_1 λ + u_2. m = 1: series in k with λ = k² and potential
/// k² + u (symbol u_1 printed as u).
RiccatiSeries riccati_series(int m, int depth);

/// h = 1 + Σ_{k=1..depth} h_k λ^{-k} solving
/// ¾h_x²/h² − ½h_xx/h + λ^m h² = U order by order.
FormalSeries modschwarz_series(int m, int depth);

/// Residual of f_x + f² − U for a Riccati series, or of the cleared modified
/// Schwarzian equation ¾h_x² − ½h h_xx + λ^m h⁴ − U h² for h.
FormalSeries riccati_residual(const FormalSeries& f, const FormalSeries& potential);
FormalSeries modschwarz_residual(const FormalSeries& h, const FormalSeries& potential, int m);

struct ZetaOptions {
  enum class Constants {
    kAuto,       // kSymmetric if u decays at ±far, otherwise kFixed
    kSymmetric,  // ζ_j(+∞) + ζ_j(−∞) = 0
    kFixed,      // the constant below
  };
  Constants constants = Constants::kAuto;
  double constant = 0.0;
  double far = 40.0;
  double decay_tol = 1e-12;
  double anchor = 0.0;  // lower limit for quadrature-backed antiderivatives
};

/// ζ_1..ζ_count from ζ_0 = 1 and ζ_{j+1} = ½∫u ζ_j dx − ½ζ_{j,x} + C_j.
std::vector<Expression> zeta_chain(const Expression& u, int count, const ZetaOptions& options = {},
                                   std::string_view var = "x");

}  // namespace rictk
