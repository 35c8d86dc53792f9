#pragma once

// Level-set discretization of sampled functions into a finite semiprime
// diagonal f-algebra.
//
// Given generators f_s with |f_s| <= 1 and a weight w in [0,1] sampled on a
// finite set K (so that the product on C(K) is w f g), every split function
// (f_s)_+, (f_s)_- and w is cut into the left-closed cells
// [c_i, c_{i+1}) of a partition of [0, 1 + delta]. Points sharing all cells
// form an atom; each function is replaced by the lower cell endpoint on every
// atom, and the weight by the lower endpoint floored at c_1. The atoms then
// span a diagonal algebra with a_j a_j = c_t(j) a_j, which satisfies
// |x o y| <= |x * y| + delta on the unit ball.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lla/expr.hpp"
#include "lla/models.hpp"

namespace lla {

struct Partition {
  std::vector<double> cuts;  // 0 = c_0 < ... < c_{N+1} = 1 + delta
  double delta = 0.0;

  // Index i with c_i <= v < c_{i+1}; throws for v outside [0, 1 + delta).
  int cell_of(double v) const;
  double lower(int cell) const { return cuts[static_cast<std::size_t>(cell)]; }
  int cell_count() const { return static_cast<int>(cuts.size()) - 1; }
};

// Uniform cuts of [0, 1 + delta] with ceil((1 + delta) / delta) cells, so the
// mesh never exceeds delta. Requires 0 < delta < 1.
Partition build_partition(double delta);

struct AtomDecomposition {
  std::vector<std::size_t> atom_of_point;
  // Cell indices per atom: one per split function, the weight's cell last.
  std::vector<std::vector<int>> fingerprints;

  std::size_t atom_count() const { return fingerprints.size(); }
};

// Atoms are numbered in increasing fingerprint order.
AtomDecomposition atomize(const std::vector<std::vector<double>>& split_fns, std::span<const double> weight,
                          const Partition& p);

// Lower cell endpoint per atom. Throws if the function is not cell-constant
// on some atom.
std::vector<double> discretize_function(std::span<const double> values, const AtomDecomposition& atoms,
                                        const Partition& p);

// Lower cell endpoint per atom, floored at c_1 so that every weight is
// strictly positive.
std::vector<double> discrete_weight(std::span<const double> weight, const AtomDecomposition& atoms,
                                    const Partition& p);

std::shared_ptr<const DiagonalAlgebra> build_diagonal_algebra(const std::vector<double>& weights);

// Atom coefficients spread back onto the sample points.
std::vector<double> lift(std::span<const double> coeffs, const AtomDecomposition& atoms);

struct DiscretizationInput {
  // Named generators sampled on K, each with sup norm <= 1.
  std::vector<std::pair<std::string, std::vector<double>>> generators;
  // Product weight on K, values in [0,1].
  std::vector<double> weight;
};

struct Discretization {
  Partition partition;
  AtomDecomposition atoms;
  // Per generator: discrete positive and negative parts over the atoms.
  std::vector<std::pair<std::vector<double>, std::vector<double>>> split_coeffs;
  std::vector<double> weight_coeffs;
  std::shared_ptr<const DiagonalAlgebra> algebra;

  // f_d = (f_+)_d - (f_-)_d as an element of the algebra.
  ModelElement generator(std::size_t s) const;
  ModelAssignment assignment(const DiscretizationInput& in) const;
};

Discretization discretize(const DiscretizationInput& in, double delta);

// Sup-norm budget for |e(f) - e(f_d)| given |f - f_d| < delta, |f_d| <= |f| <= 1,
// |w - c| <= delta and weights <= 1; built by structural recursion on value
// and error bounds.
double composite_error_budget(const Expr& e, double delta);

struct CompositeCheck {
  std::string expr;
  double sup_error = 0.0;
  double budget = 0.0;
  bool within_budget = true;
};

struct BoundsReport {
  std::size_t atoms = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  // Over all split functions: max of f - f_d, and whether 0 <= f_d <= f held.
  double split_sup_error = 0.0;
  bool split_order_ok = true;
  bool split_error_below_delta = true;
  std::vector<double> split_errors;  // per split function, (f_1)_+, (f_1)_-, ...
  double weight_sup_error = 0.0;     // max |w - c_t|
  int product_pairs = 0;
  int product_bound_violations = 0;
  double product_bound_max_excess = 0.0;  // max of |x o y| - |x * y| (should stay <= delta)
  std::vector<CompositeCheck> composites;

  bool passed() const;
  nlohmann::json to_json() const;
};

// Checks (a) 0 <= f_d <= f and sup (f - f_d) < delta per split function;
// (b) |x o y| <= |x * y| + delta pointwise for atom indicator pairs and
// `pair_trials` random pairs of sup norm <= 1 in the atom span; (c) each
// composite expression against composite_error_budget.
BoundsReport verify_bounds(const DiscretizationInput& in, const Discretization& d,
                           const std::vector<Expr>& composites, int pair_trials, std::uint64_t seed);

// Sup over K of |m(f) - m(f_d)| where m is the monomial prod_s (f_s)_{sigma_s}^{k_s}
// computed with the weighted product on K and in the diagonal algebra.
// Factors are (split index, exponent); split index 2s is (f_s)_+, 2s+1 is (f_s)_-.
double monomial_sup_error(const DiscretizationInput& in, const Discretization& d,
                          const std::vector<std::pair<std::size_t, unsigned>>& factors);

}  // namespace lla
