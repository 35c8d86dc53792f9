#pragma once

// The cylinder model of the free Banach f-algebra over l1^n: continuous
// functions on [0,1] x S, S the unit sphere of l_inf^n, with the pointwise
// lattice and the weighted product (f * g)(r,u) = r f(r,u) g(r,u).

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lla/expr.hpp"
#include "lla/free_objects.hpp"

namespace lla {

// Points of the boundary of [-1,1]^n: on each of the 2n faces a uniform
// lattice with `per_axis` points along every free coordinate. A point lying
// on several faces is kept only on the first face in the order
// (axis 0, -1), (axis 0, +1), (axis 1, -1), ...
std::vector<std::vector<double>> cube_sphere_points(int dim, int per_axis);

class CylinderGrid {
 public:
  // r_levels must lie in [0,1], be strictly increasing and contain 0 and 1.
  CylinderGrid(int dim, std::vector<double> r_levels, std::vector<std::vector<double>> sphere_points);

  // `r_count` uniform levels on [0,1] times cube_sphere_points(dim, per_axis).
  static std::shared_ptr<const CylinderGrid> uniform(int dim, int r_count = 33, int per_axis = 8);

  int dim() const { return dim_; }
  const std::vector<double>& r_levels() const { return r_levels_; }
  const std::vector<std::vector<double>>& sphere_points() const { return sphere_; }
  std::size_t size() const { return r_levels_.size() * sphere_.size(); }

  // Point index = r_index * sphere_size + sphere_index.
  double r(std::size_t index) const { return r_levels_[index / sphere_.size()]; }
  const std::vector<double>& u(std::size_t index) const { return sphere_[index % sphere_.size()]; }

 private:
  int dim_;
  std::vector<double> r_levels_;
  std::vector<std::vector<double>> sphere_;
};

using GridPtr = std::shared_ptr<const CylinderGrid>;

struct StarFunction {
  GridPtr grid;
  std::vector<double> values;

  static StarFunction constant(GridPtr grid, double c);
  static StarFunction from(GridPtr grid, const std::function<double(double r, const std::vector<double>& u)>& f);

  double sup_norm() const;
};

StarFunction operator+(const StarFunction& f, const StarFunction& g);
StarFunction operator*(double c, const StarFunction& f);
StarFunction join(const StarFunction& f, const StarFunction& g);
StarFunction meet(const StarFunction& f, const StarFunction& g);
StarFunction abs(const StarFunction& f);

// (f * g)(r,u) = r f(r,u) g(r,u).
StarFunction star_product(const StarFunction& f, const StarFunction& g);

// eta_x(r,u) = <u, x>, independent of r.
StarFunction eta(const std::vector<double>& x, const GridPtr& grid);

// Extension of v -> eta_{gens[v]} to the expression e. For r > 0 the value is
// e(v -> r <u, x_v>) / r; the r = 0 row is the product-killed expression at
// v -> <u, x_v>, the limit of the former as r -> 0+.
StarFunction hatT_eval(const Expr& e, const GeneratorMap& gens, const GridPtr& grid);

// Same extension evaluated with the star product pointwise, i.e. e evaluated
// in the algebra (C(grid), *) at the generators eta_{gens[v]}.
StarFunction eval_star(const Expr& e, const GeneratorMap& gens, const GridPtr& grid);

struct StrongUnitCandidate {
  StarFunction unit;
  double grid_min = 0.0;
  // The sandwich e/2 <= e' <= e with e the constant one requires grid_min >= 1/2.
  bool accepted = false;
};

// e' = sup_{x in F} |eta_x| for unit vectors x of l1^n.
StrongUnitCandidate strong_unit_candidate(const std::vector<std::vector<double>>& family, const GridPtr& grid);

// max |f| / unit over the grid.
double unit_norm(const StarFunction& f, const StarFunction& unit);

// Multiplication on the grid, for testing alternative products against the
// axioms.
using GridProduct =
    std::function<std::vector<double>(const CylinderGrid&, std::span<const double>, std::span<const double>)>;

GridProduct weighted_star_product();

struct StarAxiomReport {
  int trials = 0;
  int associativity_violations = 0;
  int commutativity_violations = 0;
  int f_algebra_violations = 0;
  int semiprime_violations = 0;
  // Largest |(1*1)(r,u) - r|; zero for the genuine product.
  double unit_square_defect = 0.0;

  int violations() const {
    return associativity_violations + commutativity_violations + f_algebra_violations + semiprime_violations;
  }
};

// Associativity (tolerance 1e-12), commutativity, the f-algebra condition on
// support-disjoint pairs, and semiprimeness at r > 0: if f*f vanishes at a
// point with r > 0 then so does f.
StarAxiomReport check_star_axioms(const GridPtr& grid, int trials, std::uint64_t seed,
                                  const GridProduct& product = weighted_star_product());

// Radial transport of a sampled dual unit sphere onto the l_inf sphere,
// u -> u / ||u||_inf, with r unchanged.
class SphereTransport {
 public:
  explicit SphereTransport(std::vector<std::vector<double>> dual_sphere_points);

  const std::vector<std::vector<double>>& source() const { return source_; }
  const std::vector<std::vector<double>>& target() const { return target_; }

  // Grid on [0,1] x (transported points), index-aligned with the source.
  GridPtr cube_grid(const std::vector<double>& r_levels) const;

  // Composition with the transport: (f o phi)(r,u) = f(r, u/||u||_inf).
  StarFunction pull_back(const std::function<double(double r, const std::vector<double>& u)>& f_on_cube,
                         const GridPtr& source_grid) const;

 private:
  std::vector<std::vector<double>> source_;
  std::vector<std::vector<double>> target_;
};

// CSV with header r,u1,...,un,value.
void write_csv(std::ostream& out, const StarFunction& f);

}  // namespace lla
