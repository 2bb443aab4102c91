#include "rictk/numeric/linalg.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace rictk::numeric {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::operator*(const std::vector<double>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

LuFactorization::LuFactorization(const Matrix& m) : n_(m.rows()), lu_(m), perm_(m.rows()), row_scale_(m.rows()) {
  if (m.rows() != m.cols() || n_ == 0) throw std::invalid_argument("LU needs a non-empty square matrix");
  for (std::size_t j = 0; j < n_; ++j) {
    double col = 0;
    for (std::size_t i = 0; i < n_; ++i) col += std::abs(m(i, j));
    norm1_ = std::max(norm1_, col);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < n_; ++j) s = std::max(s, std::abs(lu_(i, j)));
    if (s == 0) throw SingularMatrixError("singular matrix: zero row " + std::to_string(i));
    row_scale_[i] = 1.0 / s;
    for (std::size_t j = 0; j < n_; ++j) lu_(i, j) *= row_scale_[i];
  }
  std::iota(perm_.begin(), perm_.end(), 0);
  // Rows are equilibrated to unit max-norm, so the scale is 1.
  constexpr double kPivotFloor = 1e-14;
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n_; ++i) {
      if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
    }
    if (std::abs(lu_(p, k)) < kPivotFloor) {
      throw SingularMatrixError("singular matrix: pivot " + std::to_string(std::abs(lu_(p, k))) + " in column " +
                                std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(p, j), lu_(k, j));
      std::swap(perm_[p], perm_[k]);
      parity_ = -parity_;
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double f = lu_(i, k) / lu_(k, k);
      lu_(i, k) = f;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

std::vector<double> LuFactorization::solve(const std::vector<double>& b) const {
  if (b.size() != n_) throw std::invalid_argument("right-hand side size mismatch");
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = b[perm_[i]] * row_scale_[perm_[i]];
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  }
  for (std::size_t i = n_; i-- > 0;) {
    for (std::size_t j = i + 1; j < n_; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

double LuFactorization::determinant() const {
  double d = parity_;
  for (std::size_t i = 0; i < n_; ++i) d *= lu_(i, i) / row_scale_[i];
  return d;
}

double LuFactorization::condition_number() const {
  double inv_norm = 0;
  std::vector<double> e(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    e.assign(n_, 0.0);
    e[j] = 1.0;
    const auto col = solve(e);
    double s = 0;
    for (double v : col) s += std::abs(v);
    inv_norm = std::max(inv_norm, s);
  }
  return norm1_ * inv_norm;
}

std::vector<double> linsolve(const Matrix& m, const std::vector<double>& b) { return LuFactorization(m).solve(b); }

}  // namespace rictk::numeric
