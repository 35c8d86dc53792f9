#include "lla/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace lla {

struct Expr::Node {
  Kind kind = Kind::Zero;
  double coeff = 0.0;
  std::string name;
  std::vector<Expr> children;
};

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto first = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(first) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u < 128 && (std::isalnum(u) || c == '_');
  });
}

}  // namespace

bool is_core(Kind k) {
  switch (k) {
    case Kind::Zero:
    case Kind::Var:
    case Kind::Scale:
    case Kind::Add:
    case Kind::Join:
    case Kind::Mul:
      return true;
    default:
      return false;
  }
}

Expr::Expr() : Expr(zero()) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::zero() {
  static const auto kZero = std::make_shared<const Node>();
  return Expr(kZero);
}

Expr Expr::var(std::string name) {
  if (!is_identifier(name)) throw Error("invalid variable name '" + name + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::scale(double coeff, Expr child) {
  if (!std::isfinite(coeff)) throw Error("scaling coefficient must be finite");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scale;
  n->coeff = coeff;
  n->children = {std::move(child)};
  return Expr(std::move(n));
}

#define LLA_BINARY(fn, K)                                  \
  Expr Expr::fn(Expr lhs, Expr rhs) {                      \
    auto n = std::make_shared<Node>();                     \
    n->kind = Kind::K;                                     \
    n->children = {std::move(lhs), std::move(rhs)};        \
    return Expr(std::move(n));                             \
  }
#define LLA_UNARY(fn, K)                                   \
  Expr Expr::fn(Expr child) {                              \
    auto n = std::make_shared<Node>();                     \
    n->kind = Kind::K;                                     \
    n->children = {std::move(child)};                      \
    return Expr(std::move(n));                             \
  }

LLA_BINARY(add, Add)
LLA_BINARY(join, Join)
LLA_BINARY(mul, Mul)
LLA_BINARY(meet, Meet)
LLA_UNARY(pos, Pos)
LLA_UNARY(neg_part, NegPart)
LLA_UNARY(abs, Abs)
LLA_UNARY(neg, Neg)

#undef LLA_BINARY
#undef LLA_UNARY

Kind Expr::kind() const { return node_->kind; }
double Expr::coeff() const { return node_->coeff; }
const std::string& Expr::name() const { return node_->name; }
std::size_t Expr::arity() const { return node_->children.size(); }

const Expr& Expr::lhs() const {
  if (node_->children.empty()) throw Error("leaf expression has no operand");
  return node_->children[0];
}

const Expr& Expr::rhs() const {
  if (node_->children.size() < 2) throw Error("expression has no second operand");
  return node_->children[1];
}

bool Expr::is_product_free() const {
  if (kind() == Kind::Mul) return false;
  return std::all_of(node_->children.begin(), node_->children.end(),
                     [](const Expr& c) { return c.is_product_free(); });
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Zero:
      return true;
    case Kind::Var:
      return a.name() == b.name();
    case Kind::Scale:
      if (a.coeff() != b.coeff()) return false;
      break;
    default:
      break;
  }
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::add(a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::add(a, Expr::scale(-1.0, b)); }
Expr operator-(const Expr& a) { return Expr::scale(-1.0, a); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::mul(a, b); }
Expr operator*(double c, const Expr& a) { return Expr::scale(c, a); }
Expr operator|(const Expr& a, const Expr& b) { return Expr::join(a, b); }
Expr operator&(const Expr& a, const Expr& b) { return Expr::meet(a, b); }

Expr desugar(const Expr& e) {
  struct Ops {
    Expr zero() { return Expr::zero(); }
    Expr var(const std::string& n) { return Expr::var(n); }
    Expr scale(double c, const Expr& a) { return Expr::scale(c, a); }
    Expr add(const Expr& a, const Expr& b) { return Expr::add(a, b); }
    Expr join(const Expr& a, const Expr& b) { return Expr::join(a, b); }
    Expr mul(const Expr& a, const Expr& b) { return Expr::mul(a, b); }
  } ops;
  return evaluate(e, ops);
}

int complexity(const Expr& e) {
  struct Ops {
    int zero() { return 1; }
    int var(const std::string&) { return 1; }
    int scale(double, int a) { return 1 + a; }
    int add(int a, int b) { return 1 + std::max(a, b); }
    int join(int a, int b) { return 1 + std::max(a, b); }
    int mul(int a, int b) { return 1 + std::max(a, b); }
  } ops;
  return evaluate(e, ops);
}

namespace {

void collect_variables(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == Kind::Var) {
    out.insert(e.name());
    return;
  }
  for (std::size_t i = 0; i < e.arity(); ++i) collect_variables(i == 0 ? e.lhs() : e.rhs(), out);
}

}  // namespace

std::vector<std::string> variables(const Expr& e) {
  std::set<std::string> names;
  collect_variables(e, names);
  return {names.begin(), names.end()};
}

double eval_real(const Expr& e, const Assignment& a) {
  struct Ops {
    const Assignment& values;
    double zero() { return 0.0; }
    double var(const std::string& n) {
      auto it = values.find(n);
      if (it == values.end()) throw MissingVariable(n);
      return it->second;
    }
    double scale(double c, double x) { return c * x; }
    double add(double x, double y) { return x + y; }
    double join(double x, double y) { return std::max(x, y); }
    double mul(double x, double y) { return x * y; }
  } ops{a};
  return evaluate(e, ops);
}

Expr substitute(const Expr& e, const std::string& name, const Expr& replacement) {
  switch (e.kind()) {
    case Kind::Zero:
      return e;
    case Kind::Var:
      return e.name() == name ? replacement : e;
    case Kind::Scale:
      return Expr::scale(e.coeff(), substitute(e.child(), name, replacement));
    case Kind::Add:
      return Expr::add(substitute(e.lhs(), name, replacement), substitute(e.rhs(), name, replacement));
    case Kind::Join:
      return Expr::join(substitute(e.lhs(), name, replacement), substitute(e.rhs(), name, replacement));
    case Kind::Mul:
      return Expr::mul(substitute(e.lhs(), name, replacement), substitute(e.rhs(), name, replacement));
    case Kind::Meet:
      return Expr::meet(substitute(e.lhs(), name, replacement), substitute(e.rhs(), name, replacement));
    case Kind::Pos:
      return Expr::pos(substitute(e.child(), name, replacement));
    case Kind::NegPart:
      return Expr::neg_part(substitute(e.child(), name, replacement));
    case Kind::Abs:
      return Expr::abs(substitute(e.child(), name, replacement));
    case Kind::Neg:
      return Expr::neg(substitute(e.child(), name, replacement));
  }
  throw Error("unreachable expression kind");
}

}  // namespace lla
