#include "rictk/expression.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "rictk/numeric/quadrature.hpp"

namespace rictk {

struct Node {
  Op op = Op::kRational;
  Rational q;
  double real = 0.0;
  std::string name;
  int exponent = 0;
  std::vector<Expression> args;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t compute_hash(const Node& n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.op));
  switch (n.op) {
    case Op::kRational:
      h = mix(h, std::hash<std::int64_t>{}(n.q.num()));
      h = mix(h, std::hash<std::int64_t>{}(n.q.den()));
      break;
    case Op::kReal:
      h = mix(h, std::hash<double>{}(n.real));
      break;
    case Op::kVariable:
      h = mix(h, std::hash<std::string>{}(n.name));
      break;
    case Op::kIntegral:
      h = mix(h, std::hash<std::string>{}(n.name));
      h = mix(h, std::hash<double>{}(n.real));
      break;
    default:
      break;
  }
  h = mix(h, std::hash<int>{}(n.exponent));
  for (const auto& a : n.args) h = mix(h, a.hash());
  return h;
}

}  // namespace

struct ExprFactory {
  static Expression make(Node n) {
    n.hash = compute_hash(n);
    return Expression(std::make_shared<const Node>(std::move(n)));
  }
  static Expression rational(const Rational& q) {
    Node n;
    n.op = Op::kRational;
    n.q = q;
    return make(std::move(n));
  }
  static Expression real(double v) {
    Node n;
    n.op = Op::kReal;
    n.real = v;
    return make(std::move(n));
  }
  static Expression variable(std::string name) {
    Node n;
    n.op = Op::kVariable;
    n.name = std::move(name);
    return make(std::move(n));
  }
  static Expression compound(Op op, std::vector<Expression> args, int exponent = 0) {
    Node n;
    n.op = op;
    n.args = std::move(args);
    n.exponent = exponent;
    return make(std::move(n));
  }
  static Expression integral(const Expression& f, std::string var, double anchor) {
    Node n;
    n.op = Op::kIntegral;
    n.name = std::move(var);
    n.real = anchor;
    n.args = {f};
    return make(std::move(n));
  }
};

// ---------------------------------------------------------------------------
// Accessors

Expression::Expression() : Expression(Rational(0)) {}
Expression::Expression(int value) : Expression(Rational(value)) {}
Expression::Expression(const Rational& value) : node_(ExprFactory::rational(value).node_) {}

Expression Expression::real(double value) { return ExprFactory::real(value); }
Expression Expression::variable(std::string name) { return ExprFactory::variable(std::move(name)); }

Op Expression::op() const { return node_->op; }
const Rational& Expression::rational_value() const { return node_->q; }
double Expression::real_value() const { return node_->real; }
const std::string& Expression::name() const { return node_->name; }
int Expression::exponent() const { return node_->exponent; }
double Expression::anchor() const { return node_->real; }
const std::vector<Expression>& Expression::args() const { return node_->args; }
std::size_t Expression::hash() const { return node_->hash; }

bool Expression::is_zero() const {
  return (op() == Op::kRational && node_->q.is_zero()) || (op() == Op::kReal && node_->real == 0.0);
}
bool Expression::is_one() const {
  return (op() == Op::kRational && node_->q.is_one()) || (op() == Op::kReal && node_->real == 1.0);
}
double Expression::numeric_value() const { return op() == Op::kRational ? node_->q.to_double() : node_->real; }

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

int compare(const Expression& a, const Expression& b) {
  if (a.id() == b.id()) return 0;
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  switch (a.op()) {
    case Op::kRational:
      if (a.rational_value() == b.rational_value()) return 0;
      return a.rational_value() < b.rational_value() ? -1 : 1;
    case Op::kReal:
      if (a.real_value() == b.real_value()) return 0;
      return a.real_value() < b.real_value() ? -1 : 1;
    case Op::kVariable:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Op::kIntegral:
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      if (a.anchor() != b.anchor()) return a.anchor() < b.anchor() ? -1 : 1;
      break;
    case Op::kPower:
      if (int c = compare(a.args()[0], b.args()[0]); c != 0) return c;
      if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
      return 0;
    default:
      break;
  }
  const auto& x = a.args();
  const auto& y = b.args();
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (int c = compare(x[i], y[i]); c != 0) return c;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Simplifying constructors

namespace {

// Numeric accumulator that stays exact until a real constant enters.
struct Numeric {
  Rational q{0};
  double r = 0.0;
  bool is_real = false;

  static Numeric of(const Expression& e) {
    Numeric n;
    if (e.op() == Op::kRational) {
      n.q = e.rational_value();
    } else {
      n.is_real = true;
      n.r = e.real_value();
    }
    return n;
  }
  static Numeric one() {
    Numeric n;
    n.q = 1;
    return n;
  }
  double value() const { return is_real ? r : q.to_double(); }
  void add(const Numeric& o) {
    if (!is_real && !o.is_real) {
      q += o.q;
      return;
    }
    r = value() + o.value();
    is_real = true;
  }
  void mul(const Numeric& o) {
    if (!is_real && !o.is_real) {
      q *= o.q;
      return;
    }
    r = value() * o.value();
    is_real = true;
  }
  bool is_zero() const { return is_real ? r == 0.0 : q.is_zero(); }
  bool is_one() const { return is_real ? r == 1.0 : q.is_one(); }
  Expression expr() const { return is_real ? ExprFactory::real(r) : ExprFactory::rational(q); }
};

struct ExprHash {
  std::size_t operator()(const Expression& e) const { return e.hash(); }
};

// Splits c*rest into its numeric coefficient and the remaining factors.
std::pair<Numeric, Expression> split_coefficient(const Expression& term) {
  if (term.op() == Op::kProduct && term.args().front().is_numeric()) {
    const auto& f = term.args();
    std::vector<Expression> rest(f.begin() + 1, f.end());
    Expression r = rest.size() == 1 ? rest.front() : ExprFactory::compound(Op::kProduct, std::move(rest));
    return {Numeric::of(f.front()), r};
  }
  return {Numeric::one(), term};
}

std::pair<Expression, int> split_power(const Expression& f) {
  if (f.op() == Op::kPower) return {f.args()[0], f.exponent()};
  return {f, 1};
}

void sort_operands(std::vector<Expression>& v) {
  std::sort(v.begin(), v.end(), [](const Expression& a, const Expression& b) { return compare(a, b) < 0; });
}

}  // namespace

Expression sum(std::vector<Expression> terms) {
  std::vector<Expression> flat;
  flat.reserve(terms.size());
  for (auto& t : terms) {
    if (t.op() == Op::kSum) {
      flat.insert(flat.end(), t.args().begin(), t.args().end());
    } else {
      flat.push_back(std::move(t));
    }
  }
  Numeric constant;
  std::vector<Expression> order;
  std::unordered_map<Expression, Numeric, ExprHash> coefficients;
  for (const auto& t : flat) {
    if (t.is_numeric()) {
      constant.add(Numeric::of(t));
      continue;
    }
    auto [c, rest] = split_coefficient(t);
    auto it = coefficients.find(rest);
    if (it == coefficients.end()) {
      coefficients.emplace(rest, c);
      order.push_back(rest);
    } else {
      it->second.add(c);
    }
  }
  std::vector<Expression> out;
  for (const auto& rest : order) {
    const Numeric& c = coefficients.at(rest);
    if (c.is_zero()) continue;
    out.push_back(c.is_one() ? rest : product({c.expr(), rest}));
  }
  sort_operands(out);
  if (!constant.is_zero()) out.push_back(constant.expr());
  if (out.empty()) return constant.expr();
  if (out.size() == 1) return out.front();
  return ExprFactory::compound(Op::kSum, std::move(out));
}

Expression product(std::vector<Expression> factors) {
  std::vector<Expression> flat;
  flat.reserve(factors.size());
  for (auto& f : factors) {
    if (f.op() == Op::kProduct) {
      flat.insert(flat.end(), f.args().begin(), f.args().end());
    } else {
      flat.push_back(std::move(f));
    }
  }
  Numeric coefficient = Numeric::one();
  std::vector<Expression> order;
  std::unordered_map<Expression, int, ExprHash> exponents;
  std::vector<Expression> exp_args;
  for (const auto& f : flat) {
    if (f.is_numeric()) {
      coefficient.mul(Numeric::of(f));
      continue;
    }
    if (f.op() == Op::kExp) {
      exp_args.push_back(f.args()[0]);
      continue;
    }
    auto [base, n] = split_power(f);
    auto it = exponents.find(base);
    if (it == exponents.end()) {
      exponents.emplace(base, n);
      order.push_back(base);
    } else {
      it->second += n;
    }
  }
  if (coefficient.is_zero()) return ExprFactory::rational(0);
  std::vector<Expression> out;
  Numeric folded = coefficient;
  auto absorb = [&](const Expression& f) {
    if (f.is_numeric()) {
      folded.mul(Numeric::of(f));
    } else if (f.op() == Op::kProduct) {
      for (const auto& g : f.args()) {
        if (g.is_numeric()) {
          folded.mul(Numeric::of(g));
        } else {
          out.push_back(g);
        }
      }
    } else {
      out.push_back(f);
    }
  };
  for (const auto& base : order) {
    int n = exponents.at(base);
    if (n == 0) continue;
    absorb(pow(base, n));
  }
  if (!exp_args.empty()) absorb(exp(sum(exp_args)));
  if (folded.is_zero()) return ExprFactory::rational(0);
  sort_operands(out);
  if (out.empty()) return folded.expr();
  if (folded.is_one() && out.size() == 1) return out.front();
  if (!folded.is_one()) out.insert(out.begin(), folded.expr());
  return ExprFactory::compound(Op::kProduct, std::move(out));
}

Expression pow(const Expression& base, int exponent) {
  if (exponent == 0) return ExprFactory::rational(1);
  if (exponent == 1) return base;
  if (base.op() == Op::kRational) {
    if (base.rational_value().is_zero() && exponent < 0) throw DomainError("division by zero");
    return ExprFactory::rational(base.rational_value().pow(exponent));
  }
  if (base.op() == Op::kReal) return ExprFactory::real(std::pow(base.real_value(), exponent));
  if (base.op() == Op::kPower) return pow(base.args()[0], base.exponent() * exponent);
  if (base.op() == Op::kProduct) {
    std::vector<Expression> f;
    f.reserve(base.args().size());
    for (const auto& a : base.args()) f.push_back(pow(a, exponent));
    return product(std::move(f));
  }
  if (base.op() == Op::kExp) return exp(product({Expression(exponent), base.args()[0]}));
  return ExprFactory::compound(Op::kPower, {base}, exponent);
}

namespace {

Expression function(Op op, const Expression& a) {
  if (a.op() == Op::kReal) {
    const double v = a.real_value();
    switch (op) {
      case Op::kExp: return ExprFactory::real(std::exp(v));
      case Op::kLog:
        if (v <= 0.0) throw DomainError("log of non-positive constant");
        return ExprFactory::real(std::log(v));
      case Op::kSinh: return ExprFactory::real(std::sinh(v));
      case Op::kCosh: return ExprFactory::real(std::cosh(v));
      case Op::kTanh: return ExprFactory::real(std::tanh(v));
      case Op::kSin: return ExprFactory::real(std::sin(v));
      case Op::kCos: return ExprFactory::real(std::cos(v));
      default: break;
    }
  }
  if (a.op() == Op::kRational) {
    const Rational& q = a.rational_value();
    if (op == Op::kLog && q.sign() <= 0) throw DomainError("log of non-positive constant");
    if (op == Op::kLog && q.is_one()) return ExprFactory::rational(0);
    if (q.is_zero()) {
      switch (op) {
        case Op::kExp:
        case Op::kCosh:
        case Op::kCos:
          return ExprFactory::rational(1);
        default:
          return ExprFactory::rational(0);
      }
    }
  }
  if (op == Op::kExp && a.op() == Op::kLog) return a.args()[0];
  if (op == Op::kLog && a.op() == Op::kExp) return a.args()[0];
  return ExprFactory::compound(op, {a});
}

}  // namespace

Expression exp(const Expression& a) { return function(Op::kExp, a); }
Expression log(const Expression& a) { return function(Op::kLog, a); }
Expression sinh(const Expression& a) { return function(Op::kSinh, a); }
Expression cosh(const Expression& a) { return function(Op::kCosh, a); }
Expression tanh(const Expression& a) { return function(Op::kTanh, a); }
Expression sin(const Expression& a) { return function(Op::kSin, a); }
Expression cos(const Expression& a) { return function(Op::kCos, a); }
Expression sqr(const Expression& a) { return pow(a, 2); }

Expression integral(const Expression& integrand, std::string var, double anchor) {
  return ExprFactory::integral(integrand, std::move(var), anchor);
}

Expression var(std::string name) { return Expression::variable(std::move(name)); }

Expression operator+(const Expression& a, const Expression& b) { return sum({a, b}); }
Expression operator-(const Expression& a, const Expression& b) { return sum({a, -b}); }
Expression operator*(const Expression& a, const Expression& b) { return product({a, b}); }
Expression operator/(const Expression& a, const Expression& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return product({a, pow(b, -1)});
}
Expression operator-(const Expression& a) { return product({Expression(-1), a}); }

// ---------------------------------------------------------------------------
// Structural queries

namespace {

bool depends_impl(const Expression& e, std::string_view v, std::unordered_map<const Node*, bool>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  bool out = false;
  switch (e.op()) {
    case Op::kRational:
    case Op::kReal:
      break;
    case Op::kVariable:
      out = e.name() == v;
      break;
    case Op::kIntegral:
      // The integral's upper limit is its own variable.
      out = e.name() == v || depends_impl(e.args()[0], v, memo);
      break;
    default:
      for (const auto& a : e.args()) {
        if (depends_impl(a, v, memo)) {
          out = true;
          break;
        }
      }
  }
  memo.emplace(e.id(), out);
  return out;
}

bool has_variables(const Expression& e, std::unordered_map<const Node*, bool>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  bool out = false;
  if (e.op() == Op::kVariable || e.op() == Op::kIntegral) {
    out = true;
  } else {
    for (const auto& a : e.args()) {
      if (has_variables(a, memo)) {
        out = true;
        break;
      }
    }
  }
  memo.emplace(e.id(), out);
  return out;
}

}  // namespace

bool depends_on(const Expression& e, std::string_view v) {
  std::unordered_map<const Node*, bool> memo;
  return depends_impl(e, v, memo);
}

bool is_constant(const Expression& e) {
  std::unordered_map<const Node*, bool> memo;
  return !has_variables(e, memo);
}

std::size_t node_count(const Expression& e) {
  std::unordered_set<const Node*> seen;
  std::vector<Expression> stack{e};
  while (!stack.empty()) {
    Expression cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur.id()).second) continue;
    for (const auto& a : cur.args()) stack.push_back(a);
  }
  return seen.size();
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

class Differentiator {
 public:
  explicit Differentiator(std::string_view v) : var_(v) {}

  Expression operator()(const Expression& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expression d = compute(e);
    memo_.emplace(e.id(), d);
    keep_.push_back(e);
    return d;
  }

 private:
  Expression compute(const Expression& e) {
    if (!depends_impl(e, var_, depends_)) return Expression(0);
    const auto& a = e.args();
    switch (e.op()) {
      case Op::kRational:
      case Op::kReal:
        return Expression(0);
      case Op::kVariable:
        return Expression(e.name() == var_ ? 1 : 0);
      case Op::kSum: {
        std::vector<Expression> terms;
        terms.reserve(a.size());
        for (const auto& t : a) terms.push_back((*this)(t));
        return sum(std::move(terms));
      }
      case Op::kProduct: {
        std::vector<Expression> terms;
        for (std::size_t i = 0; i < a.size(); ++i) {
          Expression di = (*this)(a[i]);
          if (di.is_zero()) continue;
          std::vector<Expression> f;
          f.reserve(a.size());
          for (std::size_t j = 0; j < a.size(); ++j) f.push_back(j == i ? di : a[j]);
          terms.push_back(product(std::move(f)));
        }
        return sum(std::move(terms));
      }
      case Op::kPower: {
        const int n = e.exponent();
        return product({Expression(n), pow(a[0], n - 1), (*this)(a[0])});
      }
      case Op::kExp:
        return e * (*this)(a[0]);
      case Op::kLog:
        return (*this)(a[0]) / a[0];
      case Op::kSinh:
        return cosh(a[0]) * (*this)(a[0]);
      case Op::kCosh:
        return sinh(a[0]) * (*this)(a[0]);
      case Op::kTanh:
        return (Expression(1) - sqr(e)) * (*this)(a[0]);
      case Op::kSin:
        return cos(a[0]) * (*this)(a[0]);
      case Op::kCos:
        return -(sin(a[0]) * (*this)(a[0]));
      case Op::kIntegral:
        if (e.name() == var_) return a[0];
        return integral((*this)(a[0]), e.name(), e.anchor());
    }
    return Expression(0);
  }

  std::string_view var_;
  std::unordered_map<const Node*, Expression> memo_;
  std::unordered_map<const Node*, bool> depends_;
  std::vector<Expression> keep_;  // pins memo keys alive
};

}  // namespace

Expression diff(const Expression& e, std::string_view v, int order) {
  Expression out = e;
  for (int i = 0; i < order; ++i) {
    Differentiator d(v);
    out = d(out);
  }
  return out;
}

Expression substitute(const Expression& e, std::string_view v, const Expression& replacement) {
  std::unordered_map<const Node*, Expression> memo;
  std::unordered_map<const Node*, bool> dep;
  std::function<Expression(const Expression&)> go = [&](const Expression& x) -> Expression {
    if (!depends_impl(x, v, dep)) return x;
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    Expression out;
    const auto& a = x.args();
    switch (x.op()) {
      case Op::kVariable:
        out = replacement;
        break;
      case Op::kSum: {
        std::vector<Expression> t;
        for (const auto& c : a) t.push_back(go(c));
        out = sum(std::move(t));
        break;
      }
      case Op::kProduct: {
        std::vector<Expression> t;
        for (const auto& c : a) t.push_back(go(c));
        out = product(std::move(t));
        break;
      }
      case Op::kPower: out = pow(go(a[0]), x.exponent()); break;
      case Op::kExp: out = exp(go(a[0])); break;
      case Op::kLog: out = log(go(a[0])); break;
      case Op::kSinh: out = sinh(go(a[0])); break;
      case Op::kCosh: out = cosh(go(a[0])); break;
      case Op::kTanh: out = tanh(go(a[0])); break;
      case Op::kSin: out = sin(go(a[0])); break;
      case Op::kCos: out = cos(go(a[0])); break;
      case Op::kIntegral:
        if (x.name() == v) throw std::invalid_argument("cannot substitute the variable of an integral node");
        out = integral(go(a[0]), x.name(), x.anchor());
        break;
      default:
        out = x;
    }
    memo.emplace(x.id(), out);
    return out;
  };
  return go(e);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Bindings& b) : bindings_(b) {}

  double operator()(const Expression& e) {
    if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second;
    double v = compute(e);
    cache_.emplace(e.id(), v);
    return v;
  }

 private:
  double compute(const Expression& e) {
    const auto& a = e.args();
    switch (e.op()) {
      case Op::kRational:
        return e.rational_value().to_double();
      case Op::kReal:
        return e.real_value();
      case Op::kVariable: {
        auto it = bindings_.find(e.name());
        if (it == bindings_.end()) throw std::invalid_argument("unbound variable '" + e.name() + "'");
        return it->second;
      }
      case Op::kSum: {
        double s = 0.0;
        for (const auto& t : a) s += (*this)(t);
        return s;
      }
      case Op::kProduct: {
        double p = 1.0;
        for (const auto& t : a) p *= (*this)(t);
        return p;
      }
      case Op::kPower: {
        const double b = (*this)(a[0]);
        if (b == 0.0 && e.exponent() < 0) throw DomainError("division by zero in " + e.to_string());
        return std::pow(b, e.exponent());
      }
      case Op::kExp:
        return std::exp((*this)(a[0]));
      case Op::kLog: {
        const double v = (*this)(a[0]);
        if (!(v > 0.0)) throw DomainError("log of non-positive value in " + e.to_string());
        return std::log(v);
      }
      case Op::kSinh:
        return std::sinh((*this)(a[0]));
      case Op::kCosh:
        return std::cosh((*this)(a[0]));
      case Op::kTanh:
        return std::tanh((*this)(a[0]));
      case Op::kSin:
        return std::sin((*this)(a[0]));
      case Op::kCos:
        return std::cos((*this)(a[0]));
      case Op::kIntegral: {
        auto it = bindings_.find(e.name());
        if (it == bindings_.end()) throw std::invalid_argument("unbound variable '" + e.name() + "'");
        Bindings inner = bindings_;
        auto& slot = inner[e.name()];
        auto f = [&](double t) {
          slot = t;
          Evaluator sub(inner);
          return sub(a[0]);
        };
        return numeric::quadrature(f, e.anchor(), it->second, {.abs_tol = 1e-13, .rel_tol = 1e-13}).value;
      }
    }
    return 0.0;
  }

  const Bindings& bindings_;
  std::unordered_map<const Node*, double> cache_;
};

}  // namespace

double eval(const Expression& e, const Bindings& bindings) {
  Evaluator ev(bindings);
  return ev(e);
}

double eval(const Expression& e, std::string_view v, double value) {
  Bindings b;
  b.emplace(std::string(v), value);
  return eval(e, b);
}

std::optional<Rational> eval_exact(const Expression& e, const std::map<std::string, Rational, std::less<>>& bindings) {
  switch (e.op()) {
    case Op::kRational:
      return e.rational_value();
    case Op::kVariable: {
      auto it = bindings.find(e.name());
      if (it == bindings.end()) return std::nullopt;
      return it->second;
    }
    case Op::kSum: {
      Rational s(0);
      for (const auto& t : e.args()) {
        auto v = eval_exact(t, bindings);
        if (!v) return std::nullopt;
        s += *v;
      }
      return s;
    }
    case Op::kProduct: {
      Rational p(1);
      for (const auto& t : e.args()) {
        auto v = eval_exact(t, bindings);
        if (!v) return std::nullopt;
        p *= *v;
      }
      return p;
    }
    case Op::kPower: {
      auto v = eval_exact(e.args()[0], bindings);
      if (!v) return std::nullopt;
      if (v->is_zero() && e.exponent() < 0) throw DomainError("division by zero");
      return v->pow(e.exponent());
    }
    default:
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

const char* function_name(Op op) {
  switch (op) {
    case Op::kExp: return "exp";
    case Op::kLog: return "log";
    case Op::kSinh: return "sinh";
    case Op::kCosh: return "cosh";
    case Op::kTanh: return "tanh";
    case Op::kSin: return "sin";
    case Op::kCos: return "cos";
    default: return "?";
  }
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Precedence levels: 0 sum, 1 product, 2 power/unary, 3 atom.
std::string print(const Expression& e, int context);

std::string print_product(const Expression& e, int context) {
  const auto& f = e.args();
  std::string sign;
  std::vector<std::string> num, den;
  std::size_t start = 0;
  if (f.front().is_numeric()) {
    start = 1;
    if (f.front().op() == Op::kRational) {
      Rational q = f.front().rational_value();
      if (q.sign() < 0) {
        sign = "-";
        q = -q;
      }
      if (q.num() != 1) num.push_back(std::to_string(q.num()));
      if (q.den() != 1) den.push_back(std::to_string(q.den()));
    } else {
      double v = f.front().real_value();
      if (v < 0) {
        sign = "-";
        v = -v;
      }
      num.push_back(format_real(v));
    }
  }
  for (std::size_t i = start; i < f.size(); ++i) {
    if (f[i].op() == Op::kPower && f[i].exponent() < 0) {
      den.push_back(print(pow(f[i].args()[0], -f[i].exponent()), 2));
    } else {
      num.push_back(print(f[i], 2));
    }
  }
  std::string s = sign;
  if (num.empty()) num.push_back("1");
  for (std::size_t i = 0; i < num.size(); ++i) s += (i ? "*" : "") + num[i];
  if (!den.empty()) {
    std::string d;
    for (std::size_t i = 0; i < den.size(); ++i) d += (i ? "*" : "") + den[i];
    s += "/" + (den.size() > 1 ? "(" + d + ")" : d);
  }
  return context > 1 ? "(" + s + ")" : s;
}

std::string print(const Expression& e, int context) {
  switch (e.op()) {
    case Op::kRational: {
      const Rational& q = e.rational_value();
      std::string s = q.to_string();
      return (q.sign() < 0 || !q.is_integer()) && context > 0 ? "(" + s + ")" : s;
    }
    case Op::kReal: {
      std::string s = format_real(e.real_value());
      return e.real_value() < 0 && context > 0 ? "(" + s + ")" : s;
    }
    case Op::kVariable:
      return e.name();
    case Op::kSum: {
      std::string s;
      bool first = true;
      for (const auto& t : e.args()) {
        std::string p = print(t, t.is_numeric() ? 0 : 1);
        if (first) {
          s = p;
        } else if (!p.empty() && p[0] == '-') {
          s += " - " + p.substr(1);
        } else {
          s += " + " + p;
        }
        first = false;
      }
      return context > 0 ? "(" + s + ")" : s;
    }
    case Op::kProduct:
      return print_product(e, context);
    case Op::kPower: {
      if (e.exponent() < 0) return print_product(product({Expression(1), e}), context);
      std::string s = print(e.args()[0], 3) + "^" + std::to_string(e.exponent());
      return context > 2 ? "(" + s + ")" : s;
    }
    case Op::kIntegral:
      return "int(" + print(e.args()[0], 0) + ", " + e.name() + ", " + format_real(e.anchor()) + ")";
    default:
      return std::string(function_name(e.op())) + "(" + print(e.args()[0], 0) + ")";
  }
}

}  // namespace

std::string Expression::to_string() const { return print(*this, 0); }

}  // namespace rictk
