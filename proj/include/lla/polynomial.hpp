#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lla/expr.hpp"

namespace lla {

// Multiset of symbols stored as (symbol, exponent) pairs sorted by symbol,
// every exponent positive. The empty monomial (a constant) is never stored.
using Monomial = std::vector<std::pair<std::string, unsigned>>;

Monomial monomial_product(const Monomial& a, const Monomial& b);
unsigned degree(const Monomial& m);

// Sparse real polynomial with no constant term and no stored zero
// coefficients. The empty polynomial is the zero polynomial.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial symbol(const std::string& name);

  // Accumulates coeff * m; a resulting zero coefficient is erased.
  void add_term(const Monomial& m, double coeff);

  const std::map<Monomial, double>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Polynomial scaled(double c) const;
  // x = positive_part() - negative_part(), both with nonnegative coefficients.
  Polynomial positive_part() const;
  Polynomial negative_part() const;

  double evaluate(const std::function<double(const std::string&)>& value_of) const;
  double evaluate(const std::map<std::string, double>& values) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Monomial, double> terms_;
};

std::string to_string(const Polynomial& p);

}  // namespace lla
