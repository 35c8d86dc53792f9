#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lla/expr.hpp"

namespace lla {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; derives independent per-trial seeds from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);

// Node-kind distribution for random_expr. Weights are relative; a node whose
// remaining complexity budget is 1 is always a leaf (Var with probability
// var_leaf, else Zero). Interior nodes pick among
//   leaf, Scale, Add, Join, Mul, and (when allow_sugar) Meet/Pos/NegPart/Abs/Neg
// with the weights below. Sugar nodes are charged for the depth they gain
// under desugar(), so complexity(desugar(e)) <= max_complexity always holds.
struct ExprDistribution {
  double leaf = 0.15;
  double scale = 0.15;
  double add = 0.2;
  double join = 0.2;
  double mul = 0.15;
  double sugar = 0.15;
  double var_leaf = 0.9;
  bool allow_sugar = false;
  // Coefficients are uniform in [-coeff_range, coeff_range]; with dyadic set
  // they are rounded to multiples of 1/4.
  double coeff_range = 2.0;
  bool dyadic = false;
};

Expr random_expr(Rng& rng, const std::vector<std::string>& vars, int max_complexity,
                 const ExprDistribution& dist = {});

}  // namespace lla
