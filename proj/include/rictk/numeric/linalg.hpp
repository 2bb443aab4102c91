#pragma once

#include <stdexcept>
#include <vector>

namespace rictk::numeric {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> operator*(const std::vector<double>& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// LU factorization with partial pivoting of a row-equilibrated copy of M.
/// Immutable once built; solve() may be called for any number of right-hand
/// sides.
class LuFactorization {
 public:
  /// Throws SingularMatrixError when a pivot falls below 1e-14 of the scale.
  explicit LuFactorization(const Matrix& m);

  std::size_t size() const { return n_; }
  std::vector<double> solve(const std::vector<double>& b) const;
  double determinant() const;
  /// 1-norm condition number, from the explicit inverse (n is small).
  double condition_number() const;

 private:
  std::size_t n_ = 0;
  Matrix lu_;
  std::vector<std::size_t> perm_;
  std::vector<double> row_scale_;
  int parity_ = 1;
  double norm1_ = 0.0;
};

/// Solves M x = b.
std::vector<double> linsolve(const Matrix& m, const std::vector<double>& b);

}  // namespace rictk::numeric
