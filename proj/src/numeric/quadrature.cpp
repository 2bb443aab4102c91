#include "rictk/numeric/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace rictk::numeric {
namespace {

// Kronrod 15-point abscissae (positive half, descending) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b, int& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  evals += 15;
  Segment s{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
  if (!std::isfinite(s.value)) s.error = std::numeric_limits<double>::infinity();
  return s;
}

QuadratureResult adaptive(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opt) {
  QuadratureResult out;
  std::priority_queue<Segment> queue;
  queue.push(gauss_kronrod(f, a, b, out.evaluations));
  double total = queue.top().value;
  double error = queue.top().error;
  int subdivisions = 0;
  while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    // Rounding floor: the estimate cannot shrink below a few ulps of the sum.
    if (error < 50.0 * std::numeric_limits<double>::epsilon() * std::abs(total)) break;
    if (++subdivisions > opt.max_subdivisions) {
      throw QuadratureError("quadrature did not converge: error estimate " + std::to_string(error));
    }
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gauss_kronrod(f, worst.a, mid, out.evaluations);
    Segment right = gauss_kronrod(f, mid, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to shed accumulated cancellation from the running updates.
  total = 0.0;
  error = 0.0;
  while (!queue.empty()) {
    total += queue.top().value;
    error += queue.top().error;
    queue.pop();
  }
  out.value = total;
  out.error_estimate = error;
  if (!std::isfinite(total)) throw QuadratureError("quadrature produced a non-finite value");
  return out;
}

}  // namespace

QuadratureResult quadrature(const std::function<double(double)>& f, double a, double b,
                            const QuadratureOptions& options) {
  if (a == b) return {};
  if (b < a) {
    QuadratureResult r = quadrature(f, b, a, options);
    r.value = -r.value;
    return r;
  }
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  if (std::isinf(a) || std::isinf(b)) {
    const double lo = std::isinf(a) ? -kHalfPi : std::atan(a);
    const double hi = std::isinf(b) ? kHalfPi : std::atan(b);
    auto mapped = [&](double theta) {
      const double c = std::cos(theta);
      if (c == 0.0) return 0.0;
      return f(std::tan(theta)) / (c * c);
    };
    return adaptive(mapped, lo, hi, options);
  }
  if (options.endpoint_regularization) {
    const double width = b - a;
    auto mapped = [&](double theta) {
      const double s = std::sin(theta);
      const double c = std::cos(theta);
      return f(a + width * s * s) * 2.0 * width * s * c;
    };
    return adaptive(mapped, 0.0, kHalfPi, options);
  }
  return adaptive(f, a, b, options);
}

}  // namespace rictk::numeric
