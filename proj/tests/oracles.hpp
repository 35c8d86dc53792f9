#pragma once

// Reference implementations used as test oracles. They walk the tree
// directly instead of going through lla::evaluate, so a bug there does not
// cancel out.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "lla/expr.hpp"

namespace oracle {

using Vec = std::vector<double>;

// Evaluates a core or sugar expression pointwise with product
// (x y)(t) = w(t) x(t) y(t). An empty w means the real line (w = 1).
inline Vec eval(const lla::Expr& e, const std::map<std::string, Vec>& a, const Vec& w, std::size_t n) {
  using lla::Kind;
  auto un = [&](auto f) {
    Vec x = eval(e.lhs(), a, w, n);
    for (auto& v : x) v = f(v);
    return x;
  };
  auto bin = [&](auto f) {
    Vec x = eval(e.lhs(), a, w, n);
    Vec y = eval(e.rhs(), a, w, n);
    for (std::size_t t = 0; t < n; ++t) x[t] = f(x[t], y[t], t);
    return x;
  };
  switch (e.kind()) {
    case Kind::Zero: return Vec(n, 0.0);
    case Kind::Var: return a.at(e.name());
    case Kind::Scale: return un([c = e.coeff()](double v) { return c * v; });
    case Kind::Add: return bin([](double x, double y, std::size_t) { return x + y; });
    case Kind::Join: return bin([](double x, double y, std::size_t) { return std::max(x, y); });
    case Kind::Meet: return bin([](double x, double y, std::size_t) { return std::min(x, y); });
    case Kind::Mul:
      return bin([&](double x, double y, std::size_t t) { return (w.empty() ? 1.0 : w[t]) * x * y; });
    case Kind::Pos: return un([](double v) { return std::max(v, 0.0); });
    case Kind::NegPart: return un([](double v) { return std::max(-v, 0.0); });
    case Kind::Abs: return un([](double v) { return std::abs(v); });
    case Kind::Neg: return un([](double v) { return -v; });
  }
  return {};
}

inline double eval_real(const lla::Expr& e, const std::map<std::string, double>& a) {
  std::map<std::string, Vec> va;
  for (const auto& [k, v] : a) va[k] = {v};
  return eval(e, va, {}, 1)[0];
}

}  // namespace oracle
