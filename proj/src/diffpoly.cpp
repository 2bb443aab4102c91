#include "rictk/diffpoly.hpp"

#include <algorithm>
#include <tuple>

namespace rictk {

DiffPolynomial::DiffPolynomial(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

DiffPolynomial DiffPolynomial::symbol(int index, int order) {
  if (index < 1 || order < 0) throw std::invalid_argument("symbol index must be >= 1 and order >= 0");
  DiffPolynomial p;
  p.terms_.emplace(Monomial{{{index, order}, 1}}, Rational(1));
  return p;
}

void DiffPolynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Rational DiffPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

namespace {

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [sym, k] : m) d += k;
  return d;
}

int monomial_order(const Monomial& m) {
  int d = 0;
  for (const auto& [sym, k] : m) d = std::max(d, sym.second);
  return d;
}

int monomial_symbol(const Monomial& m) {
  int s = 0;
  for (const auto& [sym, k] : m) s = std::max(s, sym.first);
  return s;
}

}  // namespace

int DiffPolynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

int DiffPolynomial::max_order() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_order(m));
  return d;
}

int DiffPolynomial::max_symbol() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_symbol(m));
  return d;
}

DiffPolynomial DiffPolynomial::operator-() const {
  DiffPolynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b) {
  DiffPolynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b) { return a + (-b); }

DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b) {
  DiffPolynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (const auto& [sym, k] : mb) m[sym] += k;
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

DiffPolynomial DiffPolynomial::derivative() const {
  DiffPolynomial out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [sym, k] : m) {
      Monomial d = m;
      if (--d[sym] == 0) d.erase(sym);
      d[{sym.first, sym.second + 1}] += 1;
      out.add_term(d, c * Rational(k));
    }
  }
  return out;
}

std::string DiffPolynomial::to_string(int num_symbols) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    const auto ka = std::make_tuple(monomial_degree(a.first), monomial_order(a.first), -monomial_symbol(a.first));
    const auto kb = std::make_tuple(monomial_degree(b.first), monomial_order(b.first), -monomial_symbol(b.first));
    return ka < kb;
  });
  std::string s;
  for (const auto& [m, c] : sorted) {
    Rational a = c;
    if (s.empty()) {
      if (a.sign() < 0) s += "-";
    } else {
      s += a.sign() < 0 ? " - " : " + ";
    }
    if (a.sign() < 0) a = -a;
    std::string body;
    for (const auto& [sym, k] : m) {
      if (!body.empty()) body += "*";
      body += num_symbols == 1 ? "u" : "u_" + std::to_string(sym.first);
      body += std::string(static_cast<std::size_t>(sym.second), '\'');
      if (k > 1) body += "^" + std::to_string(k);
    }
    if (body.empty()) {
      s += a.to_string();
    } else if (a.is_one()) {
      s += body;
    } else {
      s += a.to_string() + "*" + body;
    }
  }
  return s;
}

Expression DiffPolynomial::to_expression(const std::vector<Expression>& potentials, std::string_view var) const {
  std::map<std::pair<int, int>, Expression> cache;
  auto symbol_expr = [&](int i, int d) -> Expression {
    if (i < 1 || i > static_cast<int>(potentials.size())) throw std::out_of_range("missing potential u_" + std::to_string(i));
    auto key = std::make_pair(i, d);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    Expression e = potentials[static_cast<std::size_t>(i - 1)];
    for (int k = 0; k < d; ++k) {
      auto prev = cache.find({i, k + 1});
      e = prev != cache.end() ? prev->second : diff(e, var);
      cache.emplace(std::make_pair(i, k + 1), e);
    }
    cache.emplace(key, e);
    return e;
  };
  std::vector<Expression> terms;
  for (const auto& [m, c] : terms_) {
    std::vector<Expression> f{Expression(c)};
    for (const auto& [sym, k] : m) f.push_back(pow(symbol_expr(sym.first, sym.second), k));
    terms.push_back(product(std::move(f)));
  }
  return sum(std::move(terms));
}

}  // namespace rictk
