#pragma once

#include <functional>
#include <stdexcept>

namespace rictk::numeric {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
  // Assume f ~ (x-a)^{-1/2} and/or (b-x)^{-1/2} at the ends and integrate in
  // θ with x = a + (b-a) sin²θ, which makes such integrands smooth.
  bool endpoint_regularization = false;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Globally adaptive Gauss–Kronrod (7/15) quadrature of f over [a, b].
///
/// Either limit may be infinite; an infinite range is mapped through
/// x = tan θ. Throws QuadratureError when the subdivision budget is exhausted
/// before the requested tolerance is met.
QuadratureResult quadrature(const std::function<double(double)>& f, double a, double b,
                            const QuadratureOptions& options = {});

}  // namespace rictk::numeric
