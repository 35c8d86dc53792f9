#pragma once

// Concrete view of the free Archimedean f-algebra over l1^n: elements are
// evaluated as functions on the dual ball [-1,1]^n.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lla/expr.hpp"

namespace lla {

// Variable -> coordinate vector in R^n (an element of l1^n).
using GeneratorMap = std::map<std::string, std::vector<double>>;

// Uniform product grid on [-1,1]^n with m points per axis, m odd and >= 3 so
// that 0 and +-1 are grid points.
class BallGrid {
 public:
  BallGrid(int dim, int points_per_axis);

  int dim() const { return dim_; }
  int points_per_axis() const { return m_; }
  std::size_t size() const { return size_; }
  std::vector<double> point(std::size_t index) const;

 private:
  int dim_;
  int m_;
  std::size_t size_;
};

struct GridFunction {
  BallGrid grid;
  std::vector<double> values;
};

// (x*) -> e evaluated at v -> <x*, gens[v]>.
GridFunction iota_eval(const Expr& e, const GeneratorMap& gens, const BallGrid& grid);

struct VanishingReport {
  bool vanishes = true;
  double max_residual = 0.0;    // max |value|
  std::vector<double> witness;  // point of largest normalized residual
  std::size_t points = 0;
};

// Grid surrogate for membership in the kernel of the restriction map: true
// iff |f(x*)| <= tol (1 + p(|x*(x_v)|)) at every grid point, p the
// polynomial majorant.
VanishingReport vanishes_on_ball(const Expr& e, const GeneratorMap& gens, const BallGrid& grid, double tol = 1e-9);

struct RealSampling {
  double radius = 3.0;
  // 0 picks a per-dimension default (10001, 1001, 201, 41, then 11).
  int points_per_axis = 0;
  int random_samples = 10000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

// Dense axis grid on [-R,R]^n plus random samples, with the same normalized
// tolerance as vanishes_on_ball. Variables are taken in lexicographic order.
VanishingReport vanishes_on_reals(const Expr& e, const RealSampling& s = {});

// Pf(x) = lim_{t -> 0+} f(t x) / t, computed symbolically as the
// product-killed expression followed by neutral-element cleanup.
Expr lattice_projection(const Expr& e);

// (eps, |e(eps lambda) / eps - e0(lambda)|) for each eps.
std::vector<std::pair<double, double>> numeric_limit_profile(const Expr& e, const Assignment& lambda,
                                                             const std::vector<double>& eps_list);

// t (sum_{j<=k} t^{2j}/(2j)!)^2 - t (sum_{j<=k} t^{2j+1}/(2j+1)!)^2, the
// truncated x cosh^2 x - x sinh^2 x sequence. The constant 1 of the cosh
// series is carried by the variable `unit`; assigning unit = 1 in R gives
// the real function, while every summand stays a product.
Expr cosh_sinh_sequence(int k, const std::string& t = "x", const std::string& unit = "one");

void write_csv(std::ostream& out, const GridFunction& f);

}  // namespace lla
