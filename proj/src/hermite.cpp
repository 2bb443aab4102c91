#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rictk/numeric/ivp.hpp"
#include "rictk/riccati.hpp"

namespace rictk {
namespace {

using Poly = std::vector<Rational>;

Poly trim(Poly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

Expression to_expression(const Poly& p) {
  const Expression x = var("x");
  std::vector<Expression> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].is_zero()) terms.push_back(Expression(p[i]) * pow(x, static_cast<int>(i)));
  }
  return sum(std::move(terms));
}

}  // namespace

std::vector<Rational> hermite_coefficients(int n) {
  if (n < 0) throw std::invalid_argument("Hermite index must be >= 0");
  Poly prev{1};
  if (n == 0) return prev;
  Poly cur{0, 2};
  for (int k = 1; k < n; ++k) {
    Poly next(cur.size() + 1, Rational(0));
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += Rational(2) * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= Rational(2 * k) * prev[i];
    prev = std::move(cur);
    cur = trim(std::move(next));
  }
  return cur;
}

std::vector<Rational> hermite_rodrigues_coefficients(int n) {
  if (n < 0) throw std::invalid_argument("Hermite index must be >= 0");
  // dᵏ/dxᵏ e^{−x²} = P_k e^{−x²}.
  Poly p{1};
  for (int k = 0; k < n; ++k) {
    Poly next(p.size() + 1, Rational(0));
    for (std::size_t i = 1; i < p.size(); ++i) next[i - 1] += Rational(static_cast<std::int64_t>(i)) * p[i];
    for (std::size_t i = 0; i < p.size(); ++i) next[i + 1] -= Rational(2) * p[i];
    p = trim(std::move(next));
  }
  if (n % 2 == 1) {
    for (auto& c : p) c = -c;
  }
  return p;
}

std::string format_polynomial(const std::vector<Rational>& p, std::string_view v) {
  std::string s;
  for (std::size_t k = p.size(); k-- > 0;) {
    Rational c = p[k];
    if (c.is_zero()) continue;
    if (c.sign() < 0) {
      s += "-";
      c = -c;
    } else if (!s.empty()) {
      s += "+";
    }
    if (!c.is_one() || k == 0) s += c.to_string();
    if (k >= 1) s += std::string(v);
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

Hermite hermite_polynomial(int n) {
  Hermite h;
  h.n = n;
  h.coefficients = hermite_coefficients(n);
  h.omega = to_expression(h.coefficients);
  const Expression x = var("x");
  h.witness = -x + diff(h.omega, "x") / h.omega;
  h.alpha = -2.0 * n - 1.0;
  return h;
}

Expression hermite_residual(const Expression& y, const Expression& alpha) {
  const Expression x = var("x");
  return diff(y, "x") + sqr(y) - sqr(x) - alpha;
}

Ladder hermite_ladder(const Expression& y, const Expression& alpha) {
  const Expression x = var("x");
  if ((y + x).is_zero()) throw DomainError("ladder undefined for y = -x");
  return {x + (alpha + Expression(1)) / (y + x), alpha + Expression(2)};
}

Ladder hermite_ladder_inverse(const Expression& y_hat, const Expression& alpha_hat) {
  const Expression x = var("x");
  if ((y_hat - x).is_zero()) throw DomainError("inverse ladder undefined for y = x");
  return {-x + (alpha_hat - Expression(1)) / (y_hat - x), alpha_hat - Expression(2)};
}

namespace {

// (n+2) a_n = rhs_{n−1} − Σ_{i+j=n−1} a_i a_j, with rhs the coefficients of
// x² + α in powers of z = x + ε.
template <typename T>
std::vector<T> pole_recurrence(const T& alpha, const T& eps, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  const auto rhs = [&](int k) -> T {
    if (k == 0) return alpha + eps * eps;
    if (k == 1) return T(-2) * eps;
    if (k == 2) return T(1);
    return T(0);
  };
  std::vector<T> a;
  for (int n = 0; n <= depth; ++n) {
    T v = n >= 1 ? rhs(n - 1) : T(0);
    for (int i = 0; i <= n - 1; ++i) v = v - a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(n - 1 - i)];
    a.push_back(v / T(n + 2));
  }
  return a;
}

}  // namespace

std::vector<double> pole_series(double alpha, double eps, int depth) { return pole_recurrence<double>(alpha, eps, depth); }

std::vector<Rational> pole_series_exact(const Rational& alpha, const Rational& eps, int depth) {
  return pole_recurrence<Rational>(alpha, eps, depth);
}

double pole_series_value(const std::vector<double>& a, double eps, double x) {
  const double z = x + eps;
  double s = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) s = s * z + a[i];
  return 1.0 / z + s;
}

PoleSeriesCheck pole_series_check(double alpha, double eps, int depth, const std::vector<double>& t) {
  if (t.empty()) throw std::invalid_argument("need at least one distance");
  const auto a = pole_series(alpha, eps, depth);
  numeric::IvpProblem p;
  p.rhs = [alpha](double x, const numeric::State& w, numeric::State& dw) { dw[0] = 1.0 - (x * x + alpha) * w[0] * w[0]; };
  p.x0 = -eps;
  p.y0 = {0.0};
  numeric::IvpOptions opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-15;
  PoleSeriesCheck out;
  out.t = t;
  for (double ti : t) {
    if (!(ti > 0)) throw std::invalid_argument("distances must be positive");
    const double x = -eps + ti;
    const double w = numeric::integrate_ivp(p, x, opt).back()[0];
    out.error.push_back(std::abs(pole_series_value(a, eps, x) - 1.0 / w));
  }
  if (t.size() >= 2) {
    const std::size_t n = t.size();
    out.observed_order = std::log(out.error[n - 2] / out.error[n - 1]) / std::log(t[n - 2] / t[n - 1]);
  }
  return out;
}

}  // namespace rictk
