#include "rictk/numeric/finite_difference.hpp"

#include <cmath>
#include <stdexcept>

namespace rictk::numeric {

// Fornberg's recursion.
std::vector<double> fd_weights(const std::vector<double>& z, int order) {
  const int n = static_cast<int>(z.size()) - 1;
  const int m = order;
  std::vector<std::vector<double>> c(z.size(), std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1.0;
  double c4 = z[0];
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = z[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = z[i] - z[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) w[i] = c[i][static_cast<std::size_t>(m)];
  return w;
}

FdResult fd_derivative(const std::vector<double>& f, int order, double h) {
  if (order < 1 || order > 4) throw std::invalid_argument("derivative order must be 1..4");
  if (!(h > 0)) throw std::invalid_argument("step must be positive");
  const int n = static_cast<int>(f.size());
  const int width = order + 2;
  if (n < width) throw std::invalid_argument("grid too short for the requested derivative");
  const int r = (order + 1) / 2;
  std::vector<double> central;
  for (int j = -r; j <= r; ++j) central.push_back(j);
  const auto wc = fd_weights(central, order);
  const double scale = std::pow(h, order);
  FdResult out{std::vector<double>(static_cast<std::size_t>(n)), std::vector<bool>(static_cast<std::size_t>(n), false)};
  for (int i = 0; i < n; ++i) {
    double s = 0;
    if (i >= r && i + r < n) {
      for (int j = -r; j <= r; ++j) s += wc[static_cast<std::size_t>(j + r)] * f[static_cast<std::size_t>(i + j)];
    } else {
      const int start = i < r ? 0 : n - width;
      std::vector<double> offsets;
      for (int j = 0; j < width; ++j) offsets.push_back(start + j - i);
      const auto w = fd_weights(offsets, order);
      for (int j = 0; j < width; ++j) s += w[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(start + j)];
      out.one_sided[static_cast<std::size_t>(i)] = true;
    }
    out.values[static_cast<std::size_t>(i)] = s / scale;
  }
  return out;
}

}  // namespace rictk::numeric
