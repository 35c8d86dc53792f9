#pragma once

// Lattice-linear-algebraic (LLA) expressions: terms built from variables,
// zero, real scaling, addition, join and product.

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lla {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class MissingVariable : public Error {
 public:
  explicit MissingVariable(const std::string& name)
      : Error("no value assigned to variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// The first six kinds are the core signature. The remaining ones are sugar
// and disappear under desugar().
enum class Kind { Zero, Var, Scale, Add, Join, Mul, Meet, Pos, NegPart, Abs, Neg };

bool is_core(Kind k);

class Expr {
 public:
  // A default-constructed Expr is Zero.
  Expr();

  static Expr zero();
  static Expr var(std::string name);
  static Expr scale(double coeff, Expr child);
  static Expr add(Expr lhs, Expr rhs);
  static Expr join(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  static Expr meet(Expr lhs, Expr rhs);
  static Expr pos(Expr child);
  static Expr neg_part(Expr child);
  static Expr abs(Expr child);
  static Expr neg(Expr child);

  Kind kind() const;
  double coeff() const;
  const std::string& name() const;
  // Unary kinds keep their operand in lhs().
  const Expr& lhs() const;
  const Expr& rhs() const;
  const Expr& child() const { return lhs(); }
  std::size_t arity() const;

  bool is_product_free() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator*(double c, const Expr& a);
Expr operator|(const Expr& a, const Expr& b);  // join
Expr operator&(const Expr& a, const Expr& b);  // meet

using Assignment = std::map<std::string, double>;

Expr desugar(const Expr& e);

// 1 for Zero and Var, 1 + max over children otherwise. Sugar nodes are
// measured after desugaring.
int complexity(const Expr& e);

// Free variables in lexicographic order.
std::vector<std::string> variables(const Expr& e);

double eval_real(const Expr& e, const Assignment& a);

// Replaces every occurrence of variable `name` by `replacement`.
Expr substitute(const Expr& e, const std::string& name, const Expr& replacement);

Expr parse(const std::string& text);
std::string print(const Expr& e);

// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

// Generic evaluation over any structure exposing the LLA operations.
// Sugar nodes are expanded with the same identities desugar() uses, so the
// result is bit-identical to evaluating desugar(e).
//
//   struct Ops { T zero(); T var(const std::string&); T scale(double, const T&);
//                T add(const T&, const T&); T join(const T&, const T&);
//                T mul(const T&, const T&); };
template <class Ops>
auto evaluate(const Expr& e, Ops& ops) -> decltype(ops.zero()) {
  using T = decltype(ops.zero());
  switch (e.kind()) {
    case Kind::Zero:
      return ops.zero();
    case Kind::Var:
      return ops.var(e.name());
    case Kind::Scale:
      return ops.scale(e.coeff(), evaluate(e.child(), ops));
    case Kind::Add:
      return ops.add(evaluate(e.lhs(), ops), evaluate(e.rhs(), ops));
    case Kind::Join:
      return ops.join(evaluate(e.lhs(), ops), evaluate(e.rhs(), ops));
    case Kind::Mul:
      return ops.mul(evaluate(e.lhs(), ops), evaluate(e.rhs(), ops));
    case Kind::Meet: {
      T a = evaluate(e.lhs(), ops);
      T b = evaluate(e.rhs(), ops);
      return ops.scale(-1.0, ops.join(ops.scale(-1.0, a), ops.scale(-1.0, b)));
    }
    case Kind::Pos:
      return ops.join(evaluate(e.child(), ops), ops.zero());
    case Kind::NegPart:
      return ops.join(ops.scale(-1.0, evaluate(e.child(), ops)), ops.zero());
    case Kind::Abs: {
      T a = evaluate(e.child(), ops);
      return ops.join(a, ops.scale(-1.0, a));
    }
    case Kind::Neg:
      return ops.scale(-1.0, evaluate(e.child(), ops));
  }
  throw Error("unreachable expression kind");
}

}  // namespace lla
