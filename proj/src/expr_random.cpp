#include <array>
#include <cmath>

#include "lla/random.hpp"

namespace lla {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

namespace {

double coefficient(Rng& rng, const ExprDistribution& d) {
  double c = uniform(rng, -d.coeff_range, d.coeff_range);
  if (d.dyadic) c = std::round(c * 4.0) / 4.0;
  return c;
}

Expr leaf(Rng& rng, const std::vector<std::string>& vars, const ExprDistribution& d) {
  if (vars.empty() || uniform(rng, 0.0, 1.0) >= d.var_leaf) return Expr::zero();
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  return Expr::var(vars[pick(rng)]);
}

Expr grow(Rng& rng, const std::vector<std::string>& vars, int budget, const ExprDistribution& d) {
  if (budget <= 1) return leaf(rng, vars, d);
  std::array<double, 6> w{d.leaf, d.scale, d.add, d.join, d.mul, d.allow_sugar ? d.sugar : 0.0};
  std::discrete_distribution<int> kind(w.begin(), w.end());
  switch (kind(rng)) {
    case 0:
      return leaf(rng, vars, d);
    case 1:
      return Expr::scale(coefficient(rng, d), grow(rng, vars, budget - 1, d));
    case 2:
      return Expr::add(grow(rng, vars, budget - 1, d), grow(rng, vars, budget - 1, d));
    case 3:
      return Expr::join(grow(rng, vars, budget - 1, d), grow(rng, vars, budget - 1, d));
    case 4:
      return Expr::mul(grow(rng, vars, budget - 1, d), grow(rng, vars, budget - 1, d));
    default:
      break;
  }
  // Depth added by desugaring: Pos +1, Neg +1, NegPart +2, Abs +2, Meet +3.
  std::uniform_int_distribution<int> sugar(0, 4);
  switch (sugar(rng)) {
    case 0:
      return Expr::pos(grow(rng, vars, budget - 1, d));
    case 1:
      return Expr::neg(grow(rng, vars, budget - 1, d));
    case 2:
      if (budget > 2) return Expr::neg_part(grow(rng, vars, budget - 2, d));
      break;
    case 3:
      if (budget > 2) return Expr::abs(grow(rng, vars, budget - 2, d));
      break;
    default:
      if (budget > 3) return Expr::meet(grow(rng, vars, budget - 3, d), grow(rng, vars, budget - 3, d));
      break;
  }
  return Expr::pos(grow(rng, vars, budget - 1, d));
}

}  // namespace

Expr random_expr(Rng& rng, const std::vector<std::string>& vars, int max_complexity,
                 const ExprDistribution& dist) {
  return grow(rng, vars, max_complexity, dist);
}

}  // namespace lla
