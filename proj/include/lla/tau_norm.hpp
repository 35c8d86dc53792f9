#pragma once

// Two-sided estimates of the free norm on FBFA(l1^n). Lower bounds come from
// contractive operators T: l1^n -> A into diagonal algebras (sup norm,
// weights <= 1), evaluated as ||e(T x_v)||; upper bounds from the polynomial
// majorant at the generator norms.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "lla/expr.hpp"
#include "lla/free_objects.hpp"
#include "lla/models.hpp"
#include "lla/polynomial.hpp"

namespace lla {

struct OperatorIntoAlgebra {
  std::shared_ptr<const DiagonalAlgebra> target;
  // columns[i] = T e_i, one coordinate per atom.
  std::vector<std::vector<double>> columns;

  // For an l1^n domain the operator norm is max_i ||T e_i||_inf.
  double contraction() const;
  std::vector<double> image(const std::vector<double>& x) const;
  // The same operator on l1^m, m >= n, with zero columns appended.
  OperatorIntoAlgebra embedded(std::size_t m) const;
  nlohmann::json to_json() const;
};

// ||e(T gens)||_inf in the target algebra.
double evaluate_witness(const Expr& e, const GeneratorMap& gens, const OperatorIntoAlgebra& op);

struct TauConfig {
  int search_iters = 1000;
  std::vector<double> deltas{1.0 / 32};
  std::uint64_t seed = 1;
  std::size_t max_atoms = 8;
  int r_levels = 33;
  int per_face = 8;
  // Evaluated before the search; lets a witness from a smaller problem be
  // replayed.
  std::vector<OperatorIntoAlgebra> warm_starts;
};

struct TauResult {
  double value = 0.0;
  OperatorIntoAlgebra witness;
  std::string source;  // "warm", "discretizer", "search"
  int candidates = 0;
};

// Best value over warm starts, sign-pattern single-atom operators, the
// discretized cylinder operators (f_i = eta_{e_i} / (1 + delta), w = r) for
// each delta, and a seeded random search with coordinate resampling.
TauResult tau_lower(const Expr& e, const GeneratorMap& gens, const TauConfig& cfg = {});

// ||x||_1 per generator.
std::map<std::string, double> l1_norms(const GeneratorMap& gens);

// Majorant polynomial evaluated at the generator norms.
double rho_upper(const Expr& e, const std::map<std::string, double>& gen_norms);

// Triangle-inequality bound for product-free expressions (the majorant is then
// linear). Throws for expressions with products.
double lattice_norm_upper(const Expr& e, const std::map<std::string, double>& gen_norms);

struct NormSandwich {
  double lower = 0.0;
  double upper = 0.0;
  TauResult witness;
  Polynomial majorant;
  int iters = 0;

  nlohmann::json to_json() const;
};

NormSandwich norm_sandwich(const Expr& e, const GeneratorMap& gens, const TauConfig& cfg = {});

struct FblConfig {
  int tuple_size = 0;  // 0: the dimension n
  int iters = 1000;
  std::uint64_t seed = 1;
};

struct FblResult {
  double value = 0.0;
  std::vector<std::vector<double>> tuple;  // functionals x*_i in R^n
};

// sum_i |e(x*_i)| over tuples with max_j sum_i |x*_i[j]| <= 1, starting from
// the coordinate functionals.
FblResult fbl_norm_lower(const Expr& e, const GeneratorMap& gens, const FblConfig& cfg = {});

}  // namespace lla
