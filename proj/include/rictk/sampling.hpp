#pragma once

#include <string_view>
#include <vector>

#include "rictk/expression.hpp"

namespace rictk {

/// Working interval and sample count for pointwise residual checks.
struct Sampling {
  double lo = -5.0;
  double hi = 5.0;
  int points = 32;
};

/// Cell midpoints lo + (i + ½)(hi − lo)/points.
std::vector<double> sample_points(const Sampling& s);

/// max over sample points of |r(x)| / max(1, |scale(x)|). Points where either
/// expression is non-finite or undefined are skipped; throws DomainError when
/// no sample point is usable.
double max_scaled_residual(const Expression& r, const Expression& scale, const Sampling& s = {},
                           std::string_view var = "x");

/// max over sample points of |e(x)|, with the same skipping rule.
double max_abs(const Expression& e, const Sampling& s = {}, std::string_view var = "x");

}  // namespace rictk

namespace rictk {

/// min:max:step grid; the last point is max when step divides the range.
struct UniformGrid {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  /// Parses "min:max:step"; throws std::invalid_argument on bad syntax or
  /// when min >= max or step <= 0.
  static UniformGrid parse(std::string_view text);
  std::size_t size() const;
  std::vector<double> points() const;
};

}  // namespace rictk
