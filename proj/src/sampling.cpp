#include "rictk/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rictk {

std::vector<double> sample_points(const Sampling& s) {
  if (s.points < 1 || !(s.hi > s.lo)) throw std::invalid_argument("sampling needs lo < hi and points >= 1");
  std::vector<double> xs(static_cast<std::size_t>(s.points));
  for (int i = 0; i < s.points; ++i) xs[static_cast<std::size_t>(i)] = s.lo + (i + 0.5) * (s.hi - s.lo) / s.points;
  return xs;
}

double max_scaled_residual(const Expression& r, const Expression& scale, const Sampling& s, std::string_view var) {
  double worst = 0.0;
  int used = 0;
  for (double x : sample_points(s)) {
    double rv, sv;
    try {
      rv = eval(r, var, x);
      sv = eval(scale, var, x);
    } catch (const DomainError&) {
      continue;
    }
    if (!std::isfinite(rv) || !std::isfinite(sv)) continue;
    ++used;
    worst = std::max(worst, std::abs(rv) / std::max(1.0, std::abs(sv)));
  }
  if (used == 0) throw DomainError("no sample point in [" + std::to_string(s.lo) + ", " + std::to_string(s.hi) + "] is usable");
  return worst;
}

double max_abs(const Expression& e, const Sampling& s, std::string_view var) {
  return max_scaled_residual(e, Expression(0), s, var);
}

}  // namespace rictk

namespace rictk {

UniformGrid UniformGrid::parse(std::string_view text) {
  std::vector<double> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = text.find(':', start);
    const std::string piece(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("grid '" + std::string(text) + "' must be min:max:step");
    }
    if (used != piece.size()) throw std::invalid_argument("grid '" + std::string(text) + "' must be min:max:step");
    parts.push_back(v);
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw std::invalid_argument("grid '" + std::string(text) + "' must be min:max:step");
  UniformGrid g{parts[0], parts[1], parts[2]};
  if (!(g.min < g.max)) throw std::invalid_argument("grid needs min < max");
  if (!(g.step > 0)) throw std::invalid_argument("grid needs a positive step");
  return g;
}

std::size_t UniformGrid::size() const {
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

std::vector<double> UniformGrid::points() const {
  std::vector<double> xs(size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = min + static_cast<double>(i) * step;
  return xs;
}

}  // namespace rictk
