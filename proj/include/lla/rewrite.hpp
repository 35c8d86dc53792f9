#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "lla/expr.hpp"
#include "lla/polynomial.hpp"

namespace lla {

// Replaces every product node by Zero, leaving the rest of the tree intact.
// The result is product-free. Sugar nodes are desugared first.
Expr product_kill(const Expr& e);

// Structural neutral-element cleanup: 0+e -> e, e+0 -> e, c*0 -> 0, 1*e -> e,
// 0 \/ 0 -> 0, 0*e -> 0. No lattice identities are used.
Expr simplify_zero(const Expr& e);

// Split-variable names: the positive and negative parts of variable v are the
// polynomial symbols "v+" and "v-".
std::string pos_symbol(const std::string& v);
std::string neg_symbol(const std::string& v);

// (\/ pos) - (\/ neg) with every polynomial over split variables and free of
// constant terms. Both lists are nonempty; the zero polynomial is a valid
// entry.
struct NormalForm {
  std::vector<Polynomial> pos;
  std::vector<Polynomial> neg;

  std::size_t term_count() const;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultTermBudget = 1'000'000;

// Builds the normal form by structural recursion. Products follow the
// constructive closure argument for lattices of polynomials in d-algebras:
// polynomial times lattice element first, then a single join, then a
// difference of joins. Throws BudgetExceeded once any intermediate form holds
// more than `term_budget` polynomial terms.
NormalForm normal_form(const Expr& e, std::size_t term_budget = kDefaultTermBudget);

// Evaluates with v+ = max(a(v), 0) and v- = max(-a(v), 0).
double eval_real(const NormalForm& nf, const Assignment& a);

// Same as above, but the split values are supplied directly.
double eval_split(const NormalForm& nf, const std::map<std::string, double>& split_values);

Expr polynomial_to_expr(const Polynomial& p);
Expr normal_form_to_expr(const NormalForm& nf);

// Positive-coefficient, constant-free polynomial p over symbols named after
// the variables, with |e(a)| <= p(|a|) in every f-algebra whose norm is
// submultiplicative. Var -> t, Scale(c) -> |c| p, Add/Join -> p + q,
// Mul -> p q.
Polynomial polynomial_majorant(const Expr& e);

// p(|a(v1)|, ..., |a(vn)|).
double eval_majorant(const Polynomial& p, const Assignment& a);

nlohmann::json to_json(const NormalForm& nf);
NormalForm normal_form_from_json(const nlohmann::json& j);

}  // namespace lla
