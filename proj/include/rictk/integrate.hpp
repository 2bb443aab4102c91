#pragma once

#include <optional>
#include <string_view>

#include "rictk/expression.hpp"

namespace rictk {

/// Closed-form antiderivative of `e` in `var`, if one of the supported
/// patterns applies: polynomials and powers of linear arguments, x^n e^{ax+b},
/// exp/sinh/cosh/sin/cos/tanh of linear arguments, sech², sec², tanh^p sech²
/// and tanh·sech^n. Sums are integrated term by term after distributing
/// products over sums. The integration constant is unspecified.
std::optional<Expression> closed_antiderivative(const Expression& e, std::string_view var);

/// Closed form when available, otherwise the quadrature-backed integral node
/// ∫_anchor^var e. Terms of a sum are handled independently.
Expression antiderivative(const Expression& e, std::string_view var, double anchor = 0.0);

}  // namespace rictk
