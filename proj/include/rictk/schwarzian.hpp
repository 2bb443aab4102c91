#pragma once

// Schwarzian and modified Schwarzian derivatives. Conventions follow
// ψ_xx = cψ: for a fundamental pair, schwarz(ψ1/ψ2) = c.

#include <string_view>

#include "rictk/expression.hpp"

namespace rictk {

/// ¾(φ_xx/φ_x)² − ½φ_xxx/φ_x. Throws DomainError when φ_x ≡ 0.
Expression schwarz(const Expression& phi, std::string_view var = "x");

/// ¾a_x²/a² − ½a_xx/a. Dmod(e^{2b}) = b_x² − b_xx.
Expression dmod(const Expression& a, std::string_view var = "x");

/// c = Dmod(a) + ¼V²a², the potential for which a = 1/φ with φ a product or
/// square of solutions whose Wronskian is V.
Expression modschwarz_potential(const Expression& a, double V, std::string_view var = "x");

/// φ_xxx − 4cφ_x − 2c_xφ.
Expression third_order_residual(const Expression& phi, const Expression& c, std::string_view var = "x");

/// 4cφ² + φ_x² − 2φφ_xx.
Expression first_integral(const Expression& phi, const Expression& c, std::string_view var = "x");

/// Determinant of [f, g, h; f′, g′, h′; f″, g″, h″].
Expression wronskian3(const Expression& f, const Expression& g, const Expression& h, std::string_view var = "x");

/// ψ1², ψ2², ψ1ψ2 of a fundamental pair with Wronskian V = ψ1ψ2′ − ψ2ψ1′.
/// Their Wronskian is −2V³.
struct SchwarzTriple {
  Expression phi1, phi2, phi3;
  double V = 0.0;
};
SchwarzTriple schwarz_triple(const Expression& psi1, const Expression& psi2, double x0 = 0.0,
                             std::string_view var = "x");

struct RiccatiPair {
  Expression f_plus;
  Expression f_minus;
  Expression c;  // f_x + f² = c for both
};

/// f± = ½(log A)′ ± √z/A, which solve f_x + f² = c with
/// c = (4z − A_x² + 2AA_xx)/(4A²). For A solving 4cA² + A_x² − 2AA_xx = V²
/// this is that c when z = V²/4. Throws DomainError for z < 0.
RiccatiPair riccati_pair(const Expression& A, double z, std::string_view var = "x");

}  // namespace rictk
