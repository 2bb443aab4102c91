#include "rictk/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "rictk/integrate.hpp"

namespace rictk {

int FormalSeries::top() const { return c_.empty() ? bottom_ : c_.rbegin()->first; }

DiffPolynomial FormalSeries::coefficient(int degree) const {
  if (degree < bottom_) throw std::out_of_range("coefficient below the truncation depth");
  auto it = c_.find(degree);
  return it == c_.end() ? DiffPolynomial() : it->second;
}

void FormalSeries::set(int degree, const DiffPolynomial& p) {
  if (degree < bottom_) throw std::out_of_range("coefficient below the truncation depth");
  if (p.is_zero()) {
    c_.erase(degree);
  } else {
    c_[degree] = p;
  }
}

FormalSeries FormalSeries::operator-() const {
  FormalSeries out(bottom_);
  for (const auto& [d, p] : c_) out.c_[d] = -p;
  return out;
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
  FormalSeries out(std::max(a.bottom_, b.bottom_));
  for (const auto* s : {&a, &b}) {
    for (const auto& [d, p] : s->c_) {
      if (d >= out.bottom_) out.set(d, out.coefficient(d) + p);
    }
  }
  return out;
}

FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) { return a + (-b); }

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
  auto limit = [](const FormalSeries& x, const FormalSeries& y) {
    return x.bottom_ == FormalSeries::kExact ? FormalSeries::kExact : x.bottom_ + y.top();
  };
  FormalSeries out(std::max(limit(a, b), limit(b, a)));
  for (const auto& [da, pa] : a.c_) {
    for (const auto& [db, pb] : b.c_) {
      const int d = da + db;
      if (d >= out.bottom_) out.set(d, out.coefficient(d) + pa * pb);
    }
  }
  return out;
}

FormalSeries FormalSeries::shifted(int n) const {
  FormalSeries out(bottom_ == kExact ? kExact : bottom_ + n);
  for (const auto& [d, p] : c_) out.c_[d + n] = p;
  return out;
}

FormalSeries FormalSeries::derivative() const {
  FormalSeries out(bottom_);
  for (const auto& [d, p] : c_) out.set(d, p.derivative());
  return out;
}

std::string FormalSeries::to_string(int num_symbols, std::string_view spectral) const {
  std::string s;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += "(" + it->second.to_string(num_symbols) + ")";
    if (it->first != 0) s += "*" + std::string(spectral) + "^" + std::to_string(it->first);
  }
  if (s.empty()) s = "0";
  if (bottom_ != kExact) s += " + O(" + std::string(spectral) + "^" + std::to_string(bottom_ - 1) + ")";
  return s;
}

FormalSeries generalized_potential(int m) {
  if (m < 1) throw std::invalid_argument("potential degree must be >= 1");
  FormalSeries u;
  u.set(m, DiffPolynomial(1));
  for (int i = 1; i <= m; ++i) u.set(m - i, DiffPolynomial::symbol(i));
  return u;
}

FormalSeries riccati_residual(const FormalSeries& f, const FormalSeries& potential) {
  return f.derivative() + f * f - potential;
}

FormalSeries modschwarz_residual(const FormalSeries& h, const FormalSeries& potential, int m) {
  const FormalSeries hx = h.derivative();
  const FormalSeries hxx = hx.derivative();
  const FormalSeries h2 = h * h;
  FormalSeries three_quarters;
  three_quarters.set(0, DiffPolynomial(Rational(3, 4)));
  FormalSeries half;
  half.set(0, DiffPolynomial(Rational(1, 2)));
  return three_quarters * hx * hx - half * h * hxx + (h2 * h2).shifted(m) - potential * h2;
}

namespace {

// Determines the unknown coefficients at degrees first, first-1, ...,
// first-depth one at a time. With the unknown set to zero, the residual at
// `degree + offset` equals −linear·(unknown).
FormalSeries solve_by_order(FormalSeries known, int first, int depth, int offset, const Rational& linear,
                            const std::function<FormalSeries(const FormalSeries&)>& residual) {
  for (int j = 0; j <= depth; ++j) {
    const int d = first - j;
    FormalSeries trial(d);
    for (const auto& [deg, p] : known.coefficients()) trial.set(deg, p);
    const DiffPolynomial r = residual(trial).coefficient(d + offset);
    const DiffPolynomial unknown = r * DiffPolynomial(-Rational(1) / linear);
    trial.set(d, unknown);
    known = trial;
  }
  return known;
}

}  // namespace

FormalSeries riccati_potential(int m) {
  if (m != 1 && m != 2) throw std::invalid_argument("riccati_series supports m = 1 or m = 2");
  FormalSeries potential;
  potential.set(2, DiffPolynomial(1));
  if (m == 2) {
    potential.set(1, DiffPolynomial::symbol(1));
    potential.set(0, DiffPolynomial::symbol(2));
  } else {
    potential.set(0, DiffPolynomial::symbol(1));
  }
  return potential;
}

RiccatiSeries riccati_series(int m, int depth) {
  const FormalSeries potential = riccati_potential(m);
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  auto residual = [&](const FormalSeries& s) { return riccati_residual(s, potential); };
  FormalSeries f;
  f.set(1, DiffPolynomial(1));
  FormalSeries g;
  g.set(1, DiffPolynomial(-1));
  return {solve_by_order(f, 0, depth, 1, Rational(2), residual),
          solve_by_order(g, 0, depth, 1, Rational(-2), residual)};
}

FormalSeries modschwarz_series(int m, int depth) {
  if (m < 1) throw std::invalid_argument("modschwarz_series needs m >= 1");
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  const FormalSeries potential = generalized_potential(m);
  FormalSeries h;
  h.set(0, DiffPolynomial(1));
  if (depth == 0) {
    FormalSeries out(0);
    out.set(0, DiffPolynomial(1));
    return out;
  }
  auto residual = [&](const FormalSeries& s) { return modschwarz_residual(s, potential, m); };
  return solve_by_order(h, -1, depth - 1, m, Rational(2), residual);
}

std::vector<Expression> zeta_chain(const Expression& u, int count, const ZetaOptions& options, std::string_view var) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  bool symmetric = options.constants == ZetaOptions::Constants::kSymmetric;
  if (options.constants == ZetaOptions::Constants::kAuto) {
    symmetric = std::abs(eval(u, var, options.far)) <= options.decay_tol &&
                std::abs(eval(u, var, -options.far)) <= options.decay_tol;
  }
  std::vector<Expression> zeta;
  Expression prev(1);
  for (int j = 0; j < count; ++j) {
    Expression next = Rational(1, 2) * antiderivative(u * prev, var, options.anchor) - Rational(1, 2) * diff(prev, var);
    if (symmetric) {
      const double limits = eval(next, var, options.far) + eval(next, var, -options.far);
      if (std::abs(limits) > 1e-14) next = next - Expression::real(0.5 * limits);
    } else if (options.constant != 0.0) {
      next = next + Expression::real(options.constant);
    }
    zeta.push_back(next);
    prev = next;
  }
  return zeta;
}

}  // namespace rictk
