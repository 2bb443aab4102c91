#include "rictk/soliton.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "rictk/numeric/finite_difference.hpp"

namespace rictk {

void SolitonSpec::validate() const {
  if (k.empty()) throw std::invalid_argument("soliton spec needs at least one wavenumber");
  if (beta.size() != k.size()) throw std::invalid_argument("soliton spec needs one phase per wavenumber");
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (!(k[j] > 0) || !std::isfinite(k[j])) throw std::invalid_argument("wavenumbers must be positive");
    if (j > 0 && !(k[j] < k[j - 1])) throw std::invalid_argument("wavenumbers must be strictly decreasing");
    if (!std::isfinite(beta[j])) throw std::invalid_argument("phases must be finite");
  }
}

SolitonSpec SolitonSpec::shifted(const std::vector<double>& shift) const {
  SolitonSpec s = *this;
  for (std::size_t j = 0; j < s.beta.size(); ++j) s.beta[j] += shift.at(j);
  return s;
}

namespace {

// Whether the coefficient of k^p in row j carries E_j: the row reads
// P_odd + E P_even = 0 when (−1)^{N+j+1} = +1, else P_even + E P_odd = 0.
bool carries_phase(std::size_t n, std::size_t row, std::size_t power) {
  const bool plus = (n + row + 2) % 2 == 0;  // row is 0-based, j = row + 1
  const bool odd = power % 2 == 1;
  return plus ? !odd : odd;
}

struct System {
  std::vector<numeric::Matrix> M;
  std::vector<std::vector<double>> rhs;
};

// dE[m][j] = d^m/dx^m E_j.
System build_system(const SolitonSpec& spec, const std::vector<std::vector<double>>& dE) {
  const std::size_t n = spec.size();
  System s;
  for (std::size_t m = 0; m < dE.size(); ++m) {
    numeric::Matrix M(n, n);
    std::vector<double> r(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double plain = m == 0 ? 1.0 : 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t power = n - i;
        const double factor = carries_phase(n, j, power) ? dE[m][j] : plain;
        const double entry = factor * std::pow(spec.k[j], static_cast<double>(power));
        if (i == 0) {
          r[j] = -entry;
        } else {
          M(j, i - 1) = entry;
        }
      }
    }
    s.M.push_back(std::move(M));
    s.rhs.push_back(std::move(r));
  }
  return s;
}

// E^{(n)} = k^n T_n(E), T_0 = E, T_{n+1} = T_n′(E)(1 − E²).
std::vector<std::vector<double>> phase_derivatives(const SolitonSpec& spec, double x, int orders) {
  std::vector<numeric::DensePoly> T{numeric::DensePoly{0.0, 1.0}};
  const numeric::DensePoly sech2{1.0, 0.0, -1.0};
  for (int m = 1; m <= orders; ++m) T.push_back(T.back().derivative() * sech2);
  std::vector<std::vector<double>> dE(static_cast<std::size_t>(orders + 1), std::vector<double>(spec.size()));
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double E = std::tanh(spec.k[j] * x + spec.beta[j]);
    for (int m = 0; m <= orders; ++m) dE[static_cast<std::size_t>(m)][j] = std::pow(spec.k[j], m) * T[static_cast<std::size_t>(m)](E);
  }
  return dE;
}

double binomial(int n, int m) {
  double c = 1;
  for (int i = 1; i <= m; ++i) c = c * (n - m + i) / i;
  return c;
}

Expression number(double v) {
  if (v == std::round(v) && std::abs(v) < 1e15) return Expression(Rational(static_cast<std::int64_t>(v)));
  return Expression::real(v);
}

}  // namespace

SolitonCoefficients solve_coefficients(const SolitonSpec& spec, double x, int orders) {
  spec.validate();
  if (orders < 0) throw std::invalid_argument("derivative order must be >= 0");
  const auto dE = phase_derivatives(spec, x, orders);
  const System sys = build_system(spec, dE);
  const numeric::LuFactorization lu(sys.M[0]);
  std::vector<std::vector<double>> d;
  d.push_back(lu.solve(sys.rhs[0]));
  for (int n = 1; n <= orders; ++n) {
    std::vector<double> v = sys.rhs[static_cast<std::size_t>(n)];
    for (int m = 1; m <= n; ++m) {
      const auto prod = sys.M[static_cast<std::size_t>(m)] * d[static_cast<std::size_t>(n - m)];
      const double c = binomial(n, m);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * prod[i];
    }
    d.push_back(lu.solve(v));
  }
  return SolitonCoefficients(std::move(d));
}

std::vector<double> solve_with_phases(const SolitonSpec& spec, const std::vector<double>& E) {
  spec.validate();
  if (E.size() != spec.size()) throw std::invalid_argument("one phase value per wavenumber");
  const System sys = build_system(spec, {E});
  return numeric::linsolve(sys.M[0], sys.rhs[0]);
}

numeric::Matrix system_matrix(const SolitonSpec& spec, double x) {
  spec.validate();
  return build_system(spec, phase_derivatives(spec, x, 0)).M[0];
}

SystemDiagnostics system_diagnostics(const SolitonSpec& spec, double x) {
  const numeric::LuFactorization lu(system_matrix(spec, x));
  return {lu.determinant(), lu.condition_number()};
}

std::vector<Expression> static_phases(const SolitonSpec& spec) {
  const Expression x = var("x");
  std::vector<Expression> tau;
  for (std::size_t j = 0; j < spec.size(); ++j) tau.push_back(number(spec.k[j]) * x + number(spec.beta[j]));
  return tau;
}

Expression closed_form_potential(const SolitonSpec& spec, const std::vector<Expression>& tau) {
  spec.validate();
  if (spec.size() == 1) {
    const Expression k = number(spec.k[0]);
    return Expression(-2) * sqr(k) * pow(cosh(tau[0]), -2);
  }
  if (spec.size() == 2) {
    const Expression k1 = number(spec.k[0]);
    const Expression k2 = number(spec.k[1]);
    const Expression G = (k1 - k2) * cosh(tau[0] + tau[1]) + (k1 + k2) * cosh(tau[0] - tau[1]);
    return Expression(-2) * diff(log(G), "x", 2);
  }
  throw std::invalid_argument("closed form available for N <= 2 only");
}

Expression two_soliton_reference(const SolitonSpec& spec) {
  spec.validate();
  if (spec.size() != 2) throw std::invalid_argument("two-soliton reference needs N = 2");
  const auto tau = static_phases(spec);
  const Expression k1 = number(spec.k[0]);
  const Expression k2 = number(spec.k[1]);
  const Expression G = (k2 - k1) * cosh(tau[0] + tau[1]) + (k2 + k1) * cosh(tau[0] - tau[1]);
  return Expression(2) * diff(log(G), "x", 2);
}

TransparentPotential::TransparentPotential(SolitonSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.size() <= 2) closed_form_ = closed_form_potential(spec_, static_phases(spec_));
}

double TransparentPotential::u(double x) const { return 2.0 * solve_coefficients(spec_, x, 1).derivative(1)[0]; }

double TransparentPotential::a1(double x) const { return solve_coefficients(spec_, x, 0).a()[0]; }

PotentialSamples potential(const SolitonSpec& spec, const std::vector<double>& grid) {
  spec.validate();
  PotentialSamples out;
  for (double x : grid) {
    const auto c = solve_coefficients(spec, x, 1);
    out.x.push_back(x);
    out.a1.push_back(c.a()[0]);
    out.u.push_back(2.0 * c.derivative(1)[0]);
  }
  return out;
}

WaveValues wavefunctions(const SolitonCoefficients& c, double k, double x) {
  if (c.orders() < 2) throw std::invalid_argument("wavefunctions need coefficient derivatives through order 2");
  const std::size_t n = c.a().size();
  // P(κ) and its x-derivatives at κ = k and κ = −k.
  auto P = [&](double kappa, int order) {
    double s = order == 0 ? std::pow(kappa, static_cast<double>(n)) : 0.0;
    const auto& a = c.derivative(order);
    for (std::size_t i = 1; i <= n; ++i) s += a[i - 1] * std::pow(kappa, static_cast<double>(n - i));
    return s;
  };
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  WaveValues w;
  const double ep = std::exp(k * x);
  const double em = std::exp(-k * x);
  const double p0 = P(k, 0), p1 = P(k, 1), p2 = P(k, 2);
  w.psi1 = ep * p0;
  w.dpsi1 = ep * (k * p0 + p1);
  w.d2psi1 = ep * (k * k * p0 + 2 * k * p1 + p2);
  const double q0 = P(-k, 0), q1 = P(-k, 1), q2 = P(-k, 2);
  w.psi2 = sign * em * q0;
  w.dpsi2 = sign * em * (-k * q0 + q1);
  w.d2psi2 = sign * em * (k * k * q0 - 2 * k * q1 + q2);
  return w;
}

WaveValues wavefunctions(const SolitonSpec& spec, double k, double x) {
  return wavefunctions(solve_coefficients(spec, x, 2), k, x);
}

double schrodinger_residual(const SolitonSpec& spec, double k, double x) {
  const auto c = solve_coefficients(spec, x, 2);
  const double u = 2.0 * c.derivative(1)[0];
  const WaveValues w = wavefunctions(c, k, x);
  const double rhs = (k * k + u) * w.psi1;
  const double scale = std::max(std::abs(w.d2psi1), std::abs(rhs));
  if (scale == 0.0) return 0.0;
  return std::abs(w.d2psi1 - rhs) / scale;
}

numeric::DensePoly wronskian_poly(const SolitonSpec& spec) {
  spec.validate();
  numeric::DensePoly w{0.0, -2.0};
  for (double kj : spec.k) w = w * numeric::DensePoly{-kj * kj, 0.0, 1.0};
  return w;
}

double kp_field(const SolitonSpec& spec, double x, double y, double t) {
  std::vector<double> shift;
  for (double k : spec.k) shift.push_back(k * k * y + k * k * k * t);
  return TransparentPotential(spec.shifted(shift)).u(x);
}

double kdv_field(const SolitonSpec& spec, double x, double t) {
  std::vector<double> shift;
  for (double k : spec.k) shift.push_back(-4.0 * k * k * k * t);
  return -TransparentPotential(spec.shifted(shift)).u(x);
}

Expression kp_expression(const SolitonSpec& spec) {
  const Expression x = var("x"), y = var("y"), t = var("t");
  std::vector<Expression> tau;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double k = spec.k[j];
    tau.push_back(number(k) * x + number(k * k) * y + number(k * k * k) * t + number(spec.beta[j]));
  }
  return closed_form_potential(spec, tau);
}

Expression kdv_expression(const SolitonSpec& spec) {
  const Expression x = var("x"), t = var("t");
  std::vector<Expression> tau;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double k = spec.k[j];
    tau.push_back(number(k) * x - number(4 * k * k * k) * t + number(spec.beta[j]));
  }
  return -closed_form_potential(spec, tau);
}

Expression pde_residual_expression(const Expression& u, Pde which) {
  const Expression ux = diff(u, "x");
  const Expression uxxx = diff(ux, "x", 2);
  if (which == Pde::kKdV) return diff(u, "t") + Expression(6) * u * ux + uxxx;
  const Expression inner = Expression(-4) * diff(u, "t") + uxxx + Expression(6) * u * ux;
  return diff(inner, "x") + Expression(3) * diff(u, "y", 2);
}

ResidualReport pde_residual_exact(const Expression& u, Pde which, double half_width, int per_axis) {
  if (per_axis < 1) throw std::invalid_argument("per_axis must be >= 1");
  const Expression r = pde_residual_expression(u, which);
  ResidualReport rep;
  auto coord = [&](int i) { return per_axis == 1 ? 0.0 : -half_width + 2.0 * half_width * i / (per_axis - 1); };
  const int ny = which == Pde::kKP ? per_axis : 1;
  Bindings b{{"x", 0.0}, {"y", 0.0}, {"t", 0.0}};
  for (int i = 0; i < per_axis; ++i) {
    for (int j = 0; j < ny; ++j) {
      for (int l = 0; l < per_axis; ++l) {
        b["x"] = coord(i);
        b["y"] = which == Pde::kKP ? coord(j) : 0.0;
        b["t"] = coord(l);
        const double v = std::abs(eval(r, b));
        ++rep.points;
        if (!(v <= rep.max_residual)) {
          rep.max_residual = v;
          rep.at_x = b["x"];
          rep.at_y = b["y"];
          rep.at_t = b["t"];
        }
      }
    }
  }
  return rep;
}

double pde_residual_fd(const Field& u, Pde which, double x, double y, double t, double h) {
  const std::vector<double> three{-1, 0, 1};
  const std::vector<double> five{-2, -1, 0, 1, 2};
  const auto w1 = numeric::fd_weights(three, 1);
  const auto w2 = numeric::fd_weights(three, 2);
  const auto w3 = numeric::fd_weights(five, 3);
  const auto w4 = numeric::fd_weights(five, 4);
  auto along_x = [&](const std::vector<double>& offs, const std::vector<double>& w, int order, double yy, double tt) {
    double s = 0;
    for (std::size_t i = 0; i < offs.size(); ++i) s += w[i] * u(x + offs[i] * h, yy, tt);
    return s / std::pow(h, order);
  };
  const double u0 = u(x, y, t);
  const double ux = along_x(three, w1, 1, y, t);
  const double uxx = along_x(three, w2, 2, y, t);
  const double uxxx = along_x(five, w3, 3, y, t);
  if (which == Pde::kKdV) {
    const double ut = (u(x, y, t + h) - u(x, y, t - h)) / (2 * h);
    return ut + 6 * u0 * ux + uxxx;
  }
  const double uxxxx = along_x(five, w4, 4, y, t);
  const double uxt = (u(x + h, y, t + h) - u(x + h, y, t - h) - u(x - h, y, t + h) + u(x - h, y, t - h)) / (4 * h * h);
  const double uyy = (u(x, y + h, t) - 2 * u0 + u(x, y - h, t)) / (h * h);
  return -4 * uxt + uxxxx + 6 * (ux * ux + u0 * uxx) + 3 * uyy;
}

}  // namespace rictk
