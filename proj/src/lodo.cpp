#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rictk/riccati.hpp"

namespace rictk {
namespace {

// Roots agreeing with an integer to round-off are printed as that integer.
Expression constant(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-10 * std::max(1.0, std::abs(v)) && std::abs(r) < 1e15) {
    return Expression(Rational(static_cast<std::int64_t>(r)));
  }
  return Expression::real(v);
}

}  // namespace

KernelBasis lodo_const_kernel(const std::vector<double>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("operator order must be >= 1");
  std::vector<double> descending{1.0};
  descending.insert(descending.end(), coeffs.begin(), coeffs.end());
  KernelBasis out;
  out.roots = numeric::polyroots(numeric::DensePoly::from_descending(descending));
  if (out.roots.backward_error > 1e-8) {
    std::ostringstream os;
    os << "characteristic roots unreliable: backward error " << out.roots.backward_error;
    throw std::runtime_error(os.str());
  }
  const Expression x = var("x");
  for (const auto& root : out.roots.roots) {
    const double p = root.value.real();
    const double q = root.value.imag();
    if (q < 0) continue;
    for (int s = 0; s < root.multiplicity; ++s) {
      const Expression poly = pow(x, s);
      const Expression growth = exp(constant(p) * x);
      if (q == 0) {
        out.functions.push_back(poly * growth);
      } else {
        out.functions.push_back(poly * growth * cos(constant(q) * x));
        out.functions.push_back(poly * growth * sin(constant(q) * x));
      }
    }
  }
  return out;
}

}  // namespace rictk
