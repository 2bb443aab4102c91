#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

namespace rictk::numeric {

/// Real polynomial c[0] + c[1] x + ... + c[n] x^n, trimmed so that the
/// leading coefficient is nonzero (the zero polynomial has no coefficients).
class DensePoly {
 public:
  DensePoly() = default;
  /// Ascending coefficients.
  explicit DensePoly(std::vector<double> ascending);
  DensePoly(std::initializer_list<double> ascending) : DensePoly(std::vector<double>(ascending)) {}
  static DensePoly from_descending(std::vector<double> descending);
  /// ∏ (x - r_i).
  static DensePoly from_roots(const std::vector<double>& roots);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<double>& coefficients() const { return c_; }
  double coefficient(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0.0; }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> x) const;
  DensePoly derivative() const;

  friend DensePoly operator+(const DensePoly& a, const DensePoly& b);
  friend DensePoly operator-(const DensePoly& a, const DensePoly& b);
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b);
  friend DensePoly operator*(double s, const DensePoly& a);

  struct Division;
  /// Long division by a nonzero divisor.
  Division divide(const DensePoly& divisor) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<double> c_;
};

struct DensePoly::Division {
  DensePoly quotient;
  DensePoly remainder;
};

struct RootCluster {
  std::complex<double> value;
  int multiplicity = 1;
};

struct RootsResult {
  std::vector<RootCluster> roots;
  /// max over clusters of |p(r)| / Σ|c_i||r|^i.
  double backward_error = 0.0;
};

/// Roots from the eigenvalues of the companion matrix. Computed roots closer
/// than `cluster_tol` (relative to max(1,|r|)) are merged into one cluster;
/// for candidate multiplicity m the merge radius widens to the ε^{1/m}
/// splitting expected of a multiple root. Roots with negligible imaginary part
/// are returned as real. Degree is limited to 16.
RootsResult polyroots(const DensePoly& p, double cluster_tol = 1e-7);

}  // namespace rictk::numeric
