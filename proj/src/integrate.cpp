#include "rictk/integrate.hpp"

#include <string>
#include <vector>

namespace rictk {
namespace {

constexpr std::size_t kMaxExpandedTerms = 256;

// Slope of an argument that is linear in v, or nullopt.
std::optional<Expression> slope(const Expression& arg, std::string_view v) {
  Expression a = diff(arg, v);
  if (a.is_zero() || depends_on(a, v)) return std::nullopt;
  return a;
}

// Distributes products over sums, giving a flat list of terms.
std::optional<std::vector<Expression>> expand_terms(const Expression& e) {
  if (e.op() == Op::kSum) {
    std::vector<Expression> out;
    for (const auto& t : e.args()) {
      auto sub = expand_terms(t);
      if (!sub) return std::nullopt;
      out.insert(out.end(), sub->begin(), sub->end());
    }
    return out;
  }
  if (e.op() == Op::kPower && e.exponent() > 1 && e.exponent() <= 8 && e.args()[0].op() == Op::kSum) {
    std::vector<Expression> f(static_cast<std::size_t>(e.exponent()), e.args()[0]);
    return expand_terms(product(f));
  }
  if (e.op() != Op::kProduct) return std::vector<Expression>{e};
  std::vector<Expression> acc{Expression(1)};
  for (const auto& f : e.args()) {
    auto parts = expand_terms(f);
    if (!parts) return std::nullopt;
    if (acc.size() * parts->size() > kMaxExpandedTerms) return std::nullopt;
    std::vector<Expression> next;
    next.reserve(acc.size() * parts->size());
    for (const auto& a : acc) {
      for (const auto& p : *parts) next.push_back(a * p);
    }
    acc = std::move(next);
  }
  return acc;
}

std::optional<Expression> single_factor(const Expression& f, std::string_view v) {
  const auto& a = f.args();
  switch (f.op()) {
    case Op::kVariable:
      return Rational(1, 2) * sqr(f);
    case Op::kPower: {
      const Expression& base = a[0];
      const int n = f.exponent();
      if (base.op() == Op::kCosh && n == -2) {
        if (auto s = slope(base.args()[0], v)) return tanh(base.args()[0]) / *s;
      }
      if (base.op() == Op::kCos && n == -2) {
        if (auto s = slope(base.args()[0], v)) return sin(base.args()[0]) / (cos(base.args()[0]) * *s);
      }
      if (base.op() == Op::kTanh && n >= 2) {
        // tanh^n = tanh^{n-2} - tanh^{n-2} sech^2
        auto s = slope(base.args()[0], v);
        if (!s) return std::nullopt;
        auto lower = n == 2 ? std::optional<Expression>(var(std::string(v))) : single_factor(pow(base, n - 2), v);
        if (!lower) return std::nullopt;
        return *lower - pow(base, n - 1) / (Expression(n - 1) * *s);
      }
      auto s = slope(base, v);
      if (!s) return std::nullopt;
      if (n == -1) return log(base) / *s;
      return pow(base, n + 1) / (Expression(n + 1) * *s);
    }
    case Op::kExp:
      if (auto s = slope(a[0], v)) return f / *s;
      return std::nullopt;
    case Op::kSinh:
      if (auto s = slope(a[0], v)) return cosh(a[0]) / *s;
      return std::nullopt;
    case Op::kCosh:
      if (auto s = slope(a[0], v)) return sinh(a[0]) / *s;
      return std::nullopt;
    case Op::kSin:
      if (auto s = slope(a[0], v)) return -cos(a[0]) / *s;
      return std::nullopt;
    case Op::kCos:
      if (auto s = slope(a[0], v)) return sin(a[0]) / *s;
      return std::nullopt;
    case Op::kTanh:
      if (auto s = slope(a[0], v)) return log(cosh(a[0])) / *s;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

// ∫ x^n e^L by repeated integration by parts.
Expression poly_exp(const Expression& x, int n, const Expression& e, const Expression& s) {
  Expression out = e / s;
  if (n == 0) return out;
  return pow(x, n) * e / s - Expression(n) / s * poly_exp(x, n - 1, e, s);
}

std::optional<Expression> two_factors(const Expression& p, const Expression& q, std::string_view v) {
  // x^n e^{ax+b}
  auto power_of_var = [&](const Expression& f) -> int {
    if (f.op() == Op::kVariable && f.name() == v) return 1;
    if (f.op() == Op::kPower && f.exponent() > 0 && f.args()[0].op() == Op::kVariable && f.args()[0].name() == v) {
      return f.exponent();
    }
    return 0;
  };
  if (int n = power_of_var(p); n > 0 && q.op() == Op::kExp) {
    if (auto s = slope(q.args()[0], v)) return poly_exp(var(std::string(v)), n, q, *s);
  }
  // Patterns around cosh^{-n}(L).
  if (q.op() == Op::kPower && q.exponent() < 0 && q.args()[0].op() == Op::kCosh) {
    const Expression& arg = q.args()[0].args()[0];
    const int n = -q.exponent();
    auto s = slope(arg, v);
    if (!s) return std::nullopt;
    if (n == 2 && p.op() == Op::kTanh && p.args()[0] == arg) return sqr(p) / (Expression(2) * *s);
    if (n == 2 && p.op() == Op::kPower && p.exponent() > 0 && p.args()[0].op() == Op::kTanh && p.args()[0].args()[0] == arg) {
      const int k = p.exponent();
      return pow(p.args()[0], k + 1) / (Expression(k + 1) * *s);
    }
    if (p.op() == Op::kTanh && p.args()[0] == arg) return -q / (Expression(n) * *s);
    if (p.op() == Op::kSinh && p.args()[0] == arg) {
      if (n == 1) return log(q.args()[0]) / *s;
      return -pow(q.args()[0], 1 - n) / (Expression(n - 1) * *s);
    }
  }
  return std::nullopt;
}

std::optional<Expression> monomial(const Expression& term, std::string_view v) {
  if (!depends_on(term, v)) return term * var(std::string(v));
  Expression constant(1);
  std::vector<Expression> dependent;
  if (term.op() == Op::kProduct) {
    std::vector<Expression> c;
    for (const auto& f : term.args()) {
      if (depends_on(f, v)) {
        dependent.push_back(f);
      } else {
        c.push_back(f);
      }
    }
    constant = product(std::move(c));
  } else {
    dependent.push_back(term);
  }
  std::optional<Expression> r;
  if (dependent.size() == 1) {
    r = single_factor(dependent[0], v);
  } else if (dependent.size() == 2) {
    r = two_factors(dependent[0], dependent[1], v);
    if (!r) r = two_factors(dependent[1], dependent[0], v);
  }
  if (!r) return std::nullopt;
  return constant * *r;
}

}  // namespace

std::optional<Expression> closed_antiderivative(const Expression& e, std::string_view v) {
  if (auto direct = monomial(e, v)) return direct;
  auto terms = expand_terms(e);
  if (!terms) return std::nullopt;
  if (terms->size() == 1 && (*terms)[0] == e) return std::nullopt;
  std::vector<Expression> out;
  out.reserve(terms->size());
  for (const auto& t : *terms) {
    auto r = monomial(t, v);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return sum(std::move(out));
}

Expression antiderivative(const Expression& e, std::string_view v, double anchor) {
  if (auto r = closed_antiderivative(e, v)) return *r;
  auto terms = expand_terms(e);
  if (!terms || terms->size() == 1) return integral(e, std::string(v), anchor);
  std::vector<Expression> closed;
  std::vector<Expression> rest;
  for (const auto& t : *terms) {
    if (auto r = monomial(t, v)) {
      closed.push_back(*r);
    } else {
      rest.push_back(t);
    }
  }
  closed.push_back(integral(sum(std::move(rest)), std::string(v), anchor));
  return sum(std::move(closed));
}

}  // namespace rictk
