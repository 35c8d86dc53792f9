#include "lla/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lla {

Expr product_kill(const Expr& e) {
  struct Ops {
    Expr zero() { return Expr::zero(); }
    Expr var(const std::string& n) { return Expr::var(n); }
    Expr scale(double c, const Expr& a) { return Expr::scale(c, a); }
    Expr add(const Expr& a, const Expr& b) { return Expr::add(a, b); }
    Expr join(const Expr& a, const Expr& b) { return Expr::join(a, b); }
    Expr mul(const Expr&, const Expr&) { return Expr::zero(); }
  } ops;
  return evaluate(e, ops);
}

Expr simplify_zero(const Expr& e) {
  struct Ops {
    static bool is_zero(const Expr& x) { return x.kind() == Kind::Zero; }
    Expr zero() { return Expr::zero(); }
    Expr var(const std::string& n) { return Expr::var(n); }
    Expr scale(double c, const Expr& a) {
      if (is_zero(a) || c == 0.0) return Expr::zero();
      if (c == 1.0) return a;
      return Expr::scale(c, a);
    }
    Expr add(const Expr& a, const Expr& b) {
      if (is_zero(a)) return b;
      if (is_zero(b)) return a;
      return Expr::add(a, b);
    }
    Expr join(const Expr& a, const Expr& b) {
      if (is_zero(a) && is_zero(b)) return Expr::zero();
      return Expr::join(a, b);
    }
    Expr mul(const Expr& a, const Expr& b) {
      if (is_zero(a) || is_zero(b)) return Expr::zero();
      return Expr::mul(a, b);
    }
  } ops;
  return evaluate(e, ops);
}

std::string pos_symbol(const std::string& v) { return v + "+"; }
std::string neg_symbol(const std::string& v) { return v + "-"; }

std::size_t NormalForm::term_count() const {
  std::size_t n = 0;
  for (const auto& p : pos) n += p.size();
  for (const auto& p : neg) n += p.size();
  return n;
}

namespace {

using JoinList = std::vector<Polynomial>;

// Order-preserving removal of repeated entries (a \/ a = a).
JoinList dedupe(JoinList list) {
  JoinList out;
  out.reserve(list.size());
  std::set<std::map<Monomial, double>> seen;
  for (auto& p : list) {
    if (seen.insert(p.terms()).second) out.push_back(std::move(p));
  }
  return out;
}

class Builder {
 public:
  explicit Builder(std::size_t budget) : budget_(budget) {}

  NormalForm build(const Expr& e) {
    switch (e.kind()) {
      case Kind::Zero:
        return {{Polynomial{}}, {Polynomial{}}};
      case Kind::Var:
        return {{Polynomial::symbol(pos_symbol(e.name()))}, {Polynomial::symbol(neg_symbol(e.name()))}};
      case Kind::Scale:
        return scale(e.coeff(), build(e.child()));
      case Kind::Add:
        return add(build(e.lhs()), build(e.rhs()));
      case Kind::Join:
        return join(build(e.lhs()), build(e.rhs()));
      case Kind::Mul:
        return mul(build(e.lhs()), build(e.rhs()));
      default:
        return build(desugar(e));
    }
  }

 private:
  NormalForm checked(NormalForm nf) {
    nf.pos = dedupe(std::move(nf.pos));
    nf.neg = dedupe(std::move(nf.neg));
    if (nf.term_count() > budget_) {
      throw BudgetExceeded("normal form exceeds the budget of " + std::to_string(budget_) + " polynomial terms");
    }
    return nf;
  }

  void guard_pairs(std::size_t a, std::size_t b) {
    if (a != 0 && b > budget_ / a) {
      throw BudgetExceeded("normal form exceeds the budget of " + std::to_string(budget_) + " polynomial terms");
    }
  }

  // {a_i + b_j} in lexicographic index order.
  JoinList pairwise_sum(const JoinList& a, const JoinList& b) {
    guard_pairs(a.size(), b.size());
    guard_pairs(a.size(), terms_of(b));
    guard_pairs(b.size(), terms_of(a));
    JoinList out;
    out.reserve(a.size() * b.size());
    for (const auto& p : a)
      for (const auto& q : b) out.push_back(p + q);
    return out;
  }

  static std::size_t terms_of(const JoinList& l) {
    std::size_t n = 0;
    for (const auto& p : l) n += p.terms().size();
    return n;
  }

  static JoinList times(const Polynomial& p, const JoinList& list) {
    JoinList out;
    out.reserve(list.size());
    for (const auto& q : list) out.push_back(p * q);
    return out;
  }

  static NormalForm lattice_only(JoinList list) { return {std::move(list), {Polynomial{}}}; }

  NormalForm scale(double c, NormalForm nf) {
    auto mul_all = [c](JoinList& l) {
      for (auto& p : l) p = p.scaled(std::abs(c));
    };
    mul_all(nf.pos);
    mul_all(nf.neg);
    if (c < 0) std::swap(nf.pos, nf.neg);
    return checked(std::move(nf));
  }

  NormalForm negate(NormalForm nf) {
    std::swap(nf.pos, nf.neg);
    return nf;
  }

  NormalForm add(const NormalForm& x, const NormalForm& y) {
    return checked({pairwise_sum(x.pos, y.pos), pairwise_sum(x.neg, y.neg)});
  }

  NormalForm sub(const NormalForm& x, NormalForm y) { return add(x, negate(std::move(y))); }

  // (A - B) \/ (C - D) = ((A + D) \/ (C + B)) - (B + D).
  NormalForm join(const NormalForm& x, const NormalForm& y) {
    JoinList pos = pairwise_sum(x.pos, y.neg);
    JoinList right = pairwise_sum(y.pos, x.neg);
    pos.insert(pos.end(), std::make_move_iterator(right.begin()), std::make_move_iterator(right.end()));
    return checked({std::move(pos), pairwise_sum(x.neg, y.neg)});
  }

  // p y with p split by coefficient sign, p = pp - pn:
  //   p (\/U - \/V) = \/(pp U) - \/(pn U) - \/(pp V) + \/(pn V).
  NormalForm mul_polynomial(const Polynomial& p, const NormalForm& y) {
    Polynomial pp = p.positive_part();
    Polynomial pn = p.negative_part();
    NormalForm result = sub(lattice_only(times(pp, y.pos)), lattice_only(times(pp, y.neg)));
    if (!pn.is_zero()) {
      result = sub(result, lattice_only(times(pn, y.pos)));
      result = add(result, lattice_only(times(pn, y.neg)));
    }
    return result;
  }

  // (\/_k w_k) y. With w_1 = w1p - w1n,
  //   \/_k w_k = w - w1n,  w = w1p \/ \/_{k>=2} (w_k + w1n) >= 0,
  // so (\/_k w_k) y = \/_i (w u_i) - \/_j (w v_j) - w1n y.
  NormalForm mul_join(const JoinList& ws, const NormalForm& y) {
    const Polynomial& w1 = ws.front();
    Polynomial w1p = w1.positive_part();
    Polynomial w1n = w1.negative_part();
    JoinList wlist{w1p};
    for (std::size_t k = 1; k < ws.size(); ++k) wlist.push_back(ws[k] + w1n);
    NormalForm w = lattice_only(std::move(wlist));

    auto join_of_products = [&](const JoinList& factors) {
      NormalForm acc = mul_polynomial(factors.front(), w);
      for (std::size_t i = 1; i < factors.size(); ++i) acc = join(acc, mul_polynomial(factors[i], w));
      return acc;
    };
    NormalForm result = sub(join_of_products(y.pos), join_of_products(y.neg));
    if (!w1n.is_zero()) result = sub(result, mul_polynomial(w1n, y));
    return result;
  }

  NormalForm mul(const NormalForm& x, const NormalForm& y) {
    return sub(mul_join(x.pos, y), mul_join(x.neg, y));
  }

  std::size_t budget_;
};

double max_of(const std::vector<Polynomial>& list, const std::map<std::string, double>& values) {
  double best = -INFINITY;
  for (const auto& p : list) best = std::max(best, p.evaluate(values));
  return best;
}

}  // namespace

NormalForm normal_form(const Expr& e, std::size_t term_budget) { return Builder(term_budget).build(e); }

double eval_split(const NormalForm& nf, const std::map<std::string, double>& split_values) {
  if (nf.pos.empty() || nf.neg.empty()) throw Error("normal form with an empty join list");
  return max_of(nf.pos, split_values) - max_of(nf.neg, split_values);
}

double eval_real(const NormalForm& nf, const Assignment& a) {
  std::map<std::string, double> split;
  for (const auto& [v, x] : a) {
    split[pos_symbol(v)] = std::max(x, 0.0);
    split[neg_symbol(v)] = std::max(-x, 0.0);
  }
  return eval_split(nf, split);
}

namespace {

Expr split_factor(const std::string& symbol) {
  std::string v = symbol.substr(0, symbol.size() - 1);
  Expr x = Expr::var(v);
  if (symbol.back() == '+') return Expr::join(x, Expr::zero());
  return Expr::join(Expr::scale(-1.0, x), Expr::zero());
}

Expr monomial_to_expr(const Monomial& m) {
  Expr out;
  bool first = true;
  for (const auto& [s, k] : m) {
    Expr f = split_factor(s);
    for (unsigned i = 0; i < k; ++i) {
      out = first ? f : Expr::mul(out, f);
      first = false;
    }
  }
  return out;
}

Expr join_list_to_expr(const std::vector<Polynomial>& list) {
  Expr out = polynomial_to_expr(list.front());
  for (std::size_t i = 1; i < list.size(); ++i) out = Expr::join(out, polynomial_to_expr(list[i]));
  return out;
}

}  // namespace

Expr polynomial_to_expr(const Polynomial& p) {
  if (p.is_zero()) return Expr::zero();
  Expr out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Expr term = monomial_to_expr(m);
    if (c != 1.0) term = Expr::scale(c, term);
    out = first ? term : Expr::add(out, term);
    first = false;
  }
  return out;
}

Expr normal_form_to_expr(const NormalForm& nf) {
  if (nf.pos.empty() || nf.neg.empty()) throw Error("normal form with an empty join list");
  return Expr::add(join_list_to_expr(nf.pos), Expr::scale(-1.0, join_list_to_expr(nf.neg)));
}

Polynomial polynomial_majorant(const Expr& e) {
  struct Ops {
    Polynomial zero() { return {}; }
    Polynomial var(const std::string& n) { return Polynomial::symbol(n); }
    Polynomial scale(double c, const Polynomial& p) { return p.scaled(std::abs(c)); }
    Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
    Polynomial join(const Polynomial& p, const Polynomial& q) { return p + q; }
    Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }
  } ops;
  return evaluate(e, ops);
}

double eval_majorant(const Polynomial& p, const Assignment& a) {
  return p.evaluate([&](const std::string& s) {
    auto it = a.find(s);
    if (it == a.end()) throw MissingVariable(s);
    return std::abs(it->second);
  });
}

namespace {

nlohmann::json polynomial_json(const Polynomial& p) {
  auto terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    auto symbols = nlohmann::json::array();
    for (const auto& [s, k] : m)
      for (unsigned i = 0; i < k; ++i) symbols.push_back(s);
    terms.push_back({{"monomial", symbols}, {"coeff", c}});
  }
  return terms;
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  Polynomial p;
  for (const auto& term : j) {
    Monomial m;
    for (const auto& s : term.at("monomial")) m = monomial_product(m, Monomial{{s.get<std::string>(), 1u}});
    p.add_term(m, term.at("coeff").get<double>());
  }
  return p;
}

}  // namespace

nlohmann::json to_json(const NormalForm& nf) {
  nlohmann::json j;
  j["pos"] = nlohmann::json::array();
  j["neg"] = nlohmann::json::array();
  for (const auto& p : nf.pos) j["pos"].push_back(polynomial_json(p));
  for (const auto& p : nf.neg) j["neg"].push_back(polynomial_json(p));
  return j;
}

NormalForm normal_form_from_json(const nlohmann::json& j) {
  NormalForm nf;
  for (const auto& p : j.at("pos")) nf.pos.push_back(polynomial_from_json(p));
  for (const auto& p : j.at("neg")) nf.neg.push_back(polynomial_from_json(p));
  if (nf.pos.empty() || nf.neg.empty()) throw Error("normal form with an empty join list");
  return nf;
}

}  // namespace lla
