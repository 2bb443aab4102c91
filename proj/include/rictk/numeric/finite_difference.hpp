#pragma once

#include <vector>

namespace rictk::numeric {

struct FdResult {
  std::vector<double> values;
  /// True where a one-sided boundary stencil was used.
  std::vector<bool> one_sided;
};

/// Derivative of the given `order` (1..4) of uniformly spaced samples, with
/// second-order accurate central stencils in the interior and one-sided
/// second-order stencils near the ends. Throws std::invalid_argument when the
/// grid has fewer than order + 2 points.
FdResult fd_derivative(const std::vector<double>& samples, int order, double step);

/// Finite-difference weights for the `order`-th derivative at offset 0 from
/// the given stencil offsets (in units of the step).
std::vector<double> fd_weights(const std::vector<double>& offsets, int order);

}  // namespace rictk::numeric
