#include <cctype>
#include <charconv>
#include <cmath>

#include "lla/expr.hpp"

namespace lla {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, LParen, RParen, JoinOp, MeetOp, End };

struct Token {
  Tok type;
  std::size_t pos;
  std::string text;
  double value = 0.0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          i = j;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        } else {
          throw ParseError("malformed exponent", i);
        }
      }
      Token t{Tok::Number, start, s.substr(start, i - start)};
      auto [ptr, ec] = std::from_chars(s.data() + start, s.data() + i, t.value);
      if (ec != std::errc() || ptr != s.data() + i || !std::isfinite(t.value)) {
        throw ParseError("number out of range '" + t.text + "'", start);
      }
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, start, s.substr(start, i - start)});
      continue;
    }
    switch (c) {
      case '+': out.push_back({Tok::Plus, start, "+"}); ++i; continue;
      case '-': out.push_back({Tok::Minus, start, "-"}); ++i; continue;
      case '*': out.push_back({Tok::Star, start, "*"}); ++i; continue;
      case '(': out.push_back({Tok::LParen, start, "("}); ++i; continue;
      case ')': out.push_back({Tok::RParen, start, ")"}); ++i; continue;
      case '\\':
        if (i + 1 < s.size() && s[i + 1] == '/') {
          out.push_back({Tok::JoinOp, start, "\\/"});
          i += 2;
          continue;
        }
        break;
      case '/':
        if (i + 1 < s.size() && s[i + 1] == '\\') {
          out.push_back({Tok::MeetOp, start, "/\\"});
          i += 2;
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError(std::string("unknown token '") + c + "'", start);
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Expr parse_all() {
    Expr e = lattice();
    if (peek().type != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_++]; }
  bool accept(Tok t) {
    if (peek().type != t) return false;
    ++at_;
    return true;
  }
  void expect(Tok t, const char* what) {
    if (!accept(t)) {
      throw ParseError(std::string("expected ") + what + (peek().type == Tok::End ? " before end of input" : " but found '" + peek().text + "'"),
                       peek().pos);
    }
  }

  Expr lattice() {
    Expr e = additive();
    for (;;) {
      if (accept(Tok::JoinOp)) {
        e = Expr::join(e, additive());
      } else if (accept(Tok::MeetOp)) {
        e = desugar(Expr::meet(e, additive()));
      } else {
        return e;
      }
    }
  }

  Expr additive() {
    Expr e = multiplicative();
    for (;;) {
      if (accept(Tok::Plus)) {
        e = Expr::add(e, multiplicative());
      } else if (accept(Tok::Minus)) {
        e = Expr::add(e, Expr::scale(-1.0, multiplicative()));
      } else {
        return e;
      }
    }
  }

  Expr multiplicative() {
    Expr e = unary();
    while (accept(Tok::Star)) e = Expr::mul(e, unary());
    return e;
  }

  Expr unary() {
    if (peek().type == Tok::Minus) {
      ++at_;
      // "-<number>" is a signed literal, so "-2*x" reads as Scale(-2, x).
      if (peek().type == Tok::Number) return numeric(-next().value, toks_[at_ - 1].pos);
      return Expr::scale(-1.0, unary());
    }
    return atom();
  }

  Expr numeric(double value, std::size_t pos) {
    if (accept(Tok::Star)) return Expr::scale(value, unary());
    if (value == 0.0) return Expr::zero();
    throw ParseError("constant terms are not expressions; a nonzero number must multiply a factor", pos);
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Number:
        ++at_;
        return numeric(t.value, t.pos);
      case Tok::Ident: {
        ++at_;
        if (peek().type == Tok::LParen && (t.text == "pos" || t.text == "neg" || t.text == "abs")) {
          ++at_;
          Expr inner = lattice();
          expect(Tok::RParen, "')'");
          if (t.text == "pos") return desugar(Expr::pos(inner));
          if (t.text == "neg") return desugar(Expr::neg_part(inner));
          return desugar(Expr::abs(inner));
        }
        return Expr::var(t.text);
      }
      case Tok::LParen: {
        ++at_;
        Expr inner = lattice();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

// Binding strength of the printed form; higher binds tighter.
enum Level { kLattice = 0, kAdditive = 1, kMultiplicative = 2, kUnary = 3, kAtom = 4 };

int level_of(const Expr& e) {
  switch (e.kind()) {
    case Kind::Join:
    case Kind::Meet:
      return kLattice;
    case Kind::Add:
      return kAdditive;
    case Kind::Mul:
      return kMultiplicative;
    case Kind::Scale:
    case Kind::Neg:
      return kUnary;
    default:
      return kAtom;
  }
}

void print_to(const Expr& e, int min_level, std::string& out);

void print_at(const Expr& e, int min_level, std::string& out) {
  // A bare 0 followed by '*' would read back as a scale factor.
  if (e.kind() == Kind::Zero && min_level >= kMultiplicative) {
    out += "(0)";
  } else if (level_of(e) < min_level) {
    out += '(';
    print_to(e, kLattice, out);
    out += ')';
  } else {
    print_to(e, min_level, out);
  }
}

void print_to(const Expr& e, int, std::string& out) {
  switch (e.kind()) {
    case Kind::Zero:
      out += '0';
      return;
    case Kind::Var:
      out += e.name();
      return;
    case Kind::Scale:
      out += format_number(e.coeff());
      out += '*';
      print_at(e.child(), kUnary, out);
      return;
    case Kind::Neg:
      out += "-1*";
      print_at(e.child(), kUnary, out);
      return;
    case Kind::Add:
      print_at(e.lhs(), kAdditive, out);
      if (e.rhs().kind() == Kind::Scale && e.rhs().coeff() == -1.0) {
        out += " - ";
        print_at(e.rhs().child(), kMultiplicative, out);
      } else {
        out += " + ";
        print_at(e.rhs(), kMultiplicative, out);
      }
      return;
    case Kind::Join:
    case Kind::Meet:
      print_at(e.lhs(), kLattice, out);
      out += e.kind() == Kind::Join ? " \\/ " : " /\\ ";
      print_at(e.rhs(), kAdditive, out);
      return;
    case Kind::Mul:
      print_at(e.lhs(), kMultiplicative, out);
      out += '*';
      print_at(e.rhs(), kUnary, out);
      return;
    case Kind::Pos:
    case Kind::NegPart:
    case Kind::Abs:
      out += e.kind() == Kind::Pos ? "pos(" : e.kind() == Kind::NegPart ? "neg(" : "abs(";
      print_to(e.child(), kLattice, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

Expr parse(const std::string& text) { return Parser(tokenize(text)).parse_all(); }

std::string print(const Expr& e) {
  std::string out;
  print_to(e, kLattice, out);
  return out;
}

}  // namespace lla
