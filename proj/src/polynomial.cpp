#include "lla/polynomial.hpp"

#include <cmath>

namespace lla {

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      out.push_back(*i++);
    } else if (j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

unsigned degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [s, k] : m) d += k;
  return d;
}

Polynomial Polynomial::symbol(const std::string& name) {
  Polynomial p;
  p.terms_[Monomial{{name, 1u}}] = 1.0;
  return p;
}

void Polynomial::add_term(const Monomial& m, double coeff) {
  if (m.empty()) throw Error("polynomials in this calculus have no constant term");
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial Polynomial::scaled(double c) const {
  Polynomial out;
  if (c == 0.0) return out;
  for (const auto& [m, a] : terms_) out.terms_.emplace(m, a * c);
  return out;
}

Polynomial Polynomial::positive_part() const {
  Polynomial out;
  for (const auto& [m, a] : terms_)
    if (a > 0.0) out.terms_.emplace(m, a);
  return out;
}

Polynomial Polynomial::negative_part() const {
  Polynomial out;
  for (const auto& [m, a] : terms_)
    if (a < 0.0) out.terms_.emplace(m, -a);
  return out;
}

double Polynomial::evaluate(const std::function<double(const std::string&)>& value_of) const {
  double sum = 0.0;
  for (const auto& [m, a] : terms_) {
    double term = a;
    for (const auto& [s, k] : m) {
      double v = value_of(s);
      for (unsigned i = 0; i < k; ++i) term *= v;
    }
    sum += term;
  }
  return sum;
}

double Polynomial::evaluate(const std::map<std::string, double>& values) const {
  return evaluate([&](const std::string& s) {
    auto it = values.find(s);
    if (it == values.end()) throw MissingVariable(s);
    return it->second;
  });
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    first = false;
    double mag = std::abs(c);
    if (mag != 1.0) out += format_number(mag) + "*";
    bool first_factor = true;
    for (const auto& [s, k] : m) {
      if (!first_factor) out += "*";
      first_factor = false;
      out += s;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace lla
