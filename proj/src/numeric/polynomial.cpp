#include "rictk/numeric/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace rictk::numeric {

DensePoly::DensePoly(std::vector<double> ascending) : c_(std::move(ascending)) { trim(); }

DensePoly DensePoly::from_descending(std::vector<double> descending) {
  std::reverse(descending.begin(), descending.end());
  return DensePoly(std::move(descending));
}

DensePoly DensePoly::from_roots(const std::vector<double>& roots) {
  DensePoly p{1.0};
  for (double r : roots) p = p * DensePoly{-r, 1.0};
  return p;
}

void DensePoly::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double DensePoly::operator()(double x) const {
  double s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
  return s;
}

std::complex<double> DensePoly::operator()(std::complex<double> x) const {
  std::complex<double> s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
  return s;
}

DensePoly DensePoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return DensePoly(std::move(d));
}

DensePoly operator+(const DensePoly& a, const DensePoly& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return DensePoly(std::move(c));
}

DensePoly operator-(const DensePoly& a, const DensePoly& b) { return a + (-1.0) * b; }

DensePoly operator*(const DensePoly& a, const DensePoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return DensePoly(std::move(c));
}

DensePoly operator*(double s, const DensePoly& a) {
  std::vector<double> c = a.c_;
  for (double& v : c) v *= s;
  return DensePoly(std::move(c));
}

DensePoly::Division DensePoly::divide(const DensePoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<double> r = c_;
  const int dd = divisor.degree();
  if (degree() < dd) return {DensePoly{}, *this};
  std::vector<double> q(static_cast<std::size_t>(degree() - dd + 1), 0.0);
  for (int i = degree(); i >= dd; --i) {
    const double f = r[i] / divisor.leading();
    q[i - dd] = f;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] -= f * divisor.c_[j];
    r[i] = 0.0;
  }
  r.resize(static_cast<std::size_t>(dd));
  return {DensePoly(std::move(q)), DensePoly(std::move(r))};
}

std::string DensePoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const double v = c_[i];
    if (v == 0) continue;
    char buf[40];
    const double a = std::abs(v);
    if (!s.empty()) {
      s += v < 0 ? " - " : " + ";
    } else if (v < 0) {
      s += "-";
    }
    if (a != 1 || i == 0) {
      std::snprintf(buf, sizeof buf, "%.17g", a);
      s += buf;
      if (i > 0) s += "*";
    }
    if (i >= 1) s += var;
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

RootsResult polyroots(const DensePoly& p, double cluster_tol) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("polyroots needs degree >= 1");
  if (n > 16) throw std::invalid_argument("polyroots is limited to degree 16");
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coefficient(i) / p.leading();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigenvalue iteration failed");
  const auto ev = solver.eigenvalues();

  struct Cluster {
    std::complex<double> sum;
    int count;
    std::complex<double> centre() const { return sum / static_cast<double>(count); }
  };
  std::vector<Cluster> clusters;
  for (int i = 0; i < n; ++i) clusters.push_back({ev(i), 1});
  const double eps = std::numeric_limits<double>::epsilon();
  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const auto ci = clusters[i].centre();
        const auto cj = clusters[j].centre();
        const int m = clusters[i].count + clusters[j].count;
        const double radius =
            std::max(cluster_tol, 8.0 * std::pow(eps, 1.0 / m)) * std::max({1.0, std::abs(ci), std::abs(cj)});
        const double d = std::abs(ci - cj) / radius;
        if (d <= 1.0 && d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (!std::isfinite(best)) break;
    clusters[bi].sum += clusters[bj].sum;
    clusters[bi].count += clusters[bj].count;
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }

  RootsResult out;
  for (const auto& c : clusters) {
    std::complex<double> r = c.centre();
    if (std::abs(r.imag()) <= 1e-10 * std::max(1.0, std::abs(r.real()))) r = {r.real(), 0.0};
    double denom = 0;
    for (int i = 0; i <= n; ++i) denom += std::abs(p.coefficient(i)) * std::pow(std::abs(r), i);
    out.backward_error = std::max(out.backward_error, std::abs(p(r)) / denom);
    out.roots.push_back({r, c.count});
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace rictk::numeric
