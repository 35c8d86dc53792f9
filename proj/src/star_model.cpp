#include "lla/star_model.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "lla/compiled.hpp"
#include "lla/random.hpp"
#include "lla/rewrite.hpp"

namespace lla {

std::vector<std::vector<double>> cube_sphere_points(int dim, int per_axis) {
  if (dim < 1) throw Error("sphere dimension must be at least 1");
  if (dim > 1 && per_axis < 2) throw Error("per-face grids need at least 2 points per axis");
  const auto n = static_cast<std::size_t>(dim);
  const std::size_t free_axes = n - 1;
  std::size_t face_points = 1;
  for (std::size_t i = 0; i < free_axes; ++i) face_points *= static_cast<std::size_t>(per_axis);

  auto coord = [per_axis](std::size_t k) {
    return per_axis == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(k) / (per_axis - 1);
  };

  std::vector<std::vector<double>> out;
  for (std::size_t axis = 0; axis < n; ++axis) {
    for (double sign : {-1.0, 1.0}) {
      for (std::size_t idx = 0; idx < face_points; ++idx) {
        std::vector<double> u(n);
        u[axis] = sign;
        std::size_t rem = idx;
        bool earlier_face = false;
        for (std::size_t j = n; j-- > 0;) {
          if (j == axis) continue;
          u[j] = coord(rem % static_cast<std::size_t>(per_axis));
          rem /= static_cast<std::size_t>(per_axis);
          if (j < axis && std::abs(u[j]) == 1.0) earlier_face = true;
        }
        if (!earlier_face) out.push_back(std::move(u));
      }
    }
  }
  return out;
}

CylinderGrid::CylinderGrid(int dim, std::vector<double> r_levels, std::vector<std::vector<double>> sphere_points)
    : dim_(dim), r_levels_(std::move(r_levels)), sphere_(std::move(sphere_points)) {
  if (r_levels_.empty() || r_levels_.front() != 0.0 || r_levels_.back() != 1.0) {
    throw Error("r levels must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < r_levels_.size(); ++i) {
    if (!(r_levels_[i] > r_levels_[i - 1])) throw Error("r levels must be strictly increasing");
  }
  if (sphere_.empty()) throw Error("cylinder grid without sphere points");
  for (const auto& u : sphere_) {
    if (static_cast<int>(u.size()) != dim_) throw Error("sphere point of the wrong dimension");
  }
}

GridPtr CylinderGrid::uniform(int dim, int r_count, int per_axis) {
  if (r_count < 2) throw Error("need at least the levels r = 0 and r = 1");
  std::vector<double> r(static_cast<std::size_t>(r_count));
  for (int i = 0; i < r_count; ++i) r[static_cast<std::size_t>(i)] = static_cast<double>(i) / (r_count - 1);
  auto sphere = cube_sphere_points(dim, per_axis);
  for (const auto& u : sphere) {
    double m = 0.0;
    for (double c : u) m = std::max(m, std::abs(c));
    if (m != 1.0) throw Error("sphere point off the l_inf unit sphere");
  }
  return std::make_shared<const CylinderGrid>(dim, std::move(r), std::move(sphere));
}

StarFunction StarFunction::constant(GridPtr grid, double c) {
  std::size_t n = grid->size();
  return {std::move(grid), std::vector<double>(n, c)};
}

StarFunction StarFunction::from(GridPtr grid, const std::function<double(double, const std::vector<double>&)>& f) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->r(i), grid->u(i));
  return {std::move(grid), std::move(v)};
}

double StarFunction::sup_norm() const {
  double m = 0.0;
  for (double x : values) m = std::max(m, std::abs(x));
  return m;
}

namespace {

void same_grid(const StarFunction& f, const StarFunction& g) {
  if (f.grid != g.grid) throw Error("star functions live on different grids");
  if (f.values.size() != f.grid->size() || g.values.size() != g.grid->size()) {
    throw Error("star function value count does not match its grid");
  }
}

template <class F>
StarFunction zip(const StarFunction& f, const StarFunction& g, F op) {
  same_grid(f, g);
  std::vector<double> out(f.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f.values[i], g.values[i]);
  return {f.grid, std::move(out)};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

StarFunction operator+(const StarFunction& f, const StarFunction& g) {
  return zip(f, g, [](double a, double b) { return a + b; });
}

StarFunction operator*(double c, const StarFunction& f) {
  StarFunction out = f;
  for (auto& v : out.values) v *= c;
  return out;
}

StarFunction join(const StarFunction& f, const StarFunction& g) {
  return zip(f, g, [](double a, double b) { return std::max(a, b); });
}

StarFunction meet(const StarFunction& f, const StarFunction& g) {
  return zip(f, g, [](double a, double b) { return std::min(a, b); });
}

StarFunction abs(const StarFunction& f) {
  StarFunction out = f;
  for (auto& v : out.values) v = std::abs(v);
  return out;
}

StarFunction star_product(const StarFunction& f, const StarFunction& g) {
  same_grid(f, g);
  std::vector<double> out(f.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.grid->r(i) * (f.values[i] * g.values[i]);
  return {f.grid, std::move(out)};
}

StarFunction eta(const std::vector<double>& x, const GridPtr& grid) {
  if (static_cast<int>(x.size()) != grid->dim()) throw Error("eta: vector dimension does not match the grid");
  return StarFunction::from(grid, [&](double, const std::vector<double>& u) { return dot(u, x); });
}

namespace {

void check_generators(const Expr& e, const GeneratorMap& gens, int dim) {
  for (const auto& v : variables(e)) {
    auto it = gens.find(v);
    if (it == gens.end()) throw MissingVariable(v);
    if (static_cast<int>(it->second.size()) != dim) throw Error("generator '" + v + "' has the wrong dimension");
  }
}

}  // namespace

StarFunction hatT_eval(const Expr& e, const GeneratorMap& gens, const GridPtr& grid) {
  check_generators(e, gens, grid->dim());
  const auto vars = variables(e);
  CompiledExpr f(e, vars);
  CompiledExpr f0(product_kill(e), vars);
  std::vector<double> args(vars.size());
  return StarFunction::from(grid, [&](double r, const std::vector<double>& u) {
    for (std::size_t k = 0; k < vars.size(); ++k) args[k] = dot(u, gens.at(vars[k]));
    if (r == 0.0) return f0(args);
    for (auto& a : args) a *= r;
    return f(args) / r;
  });
}

StarFunction eval_star(const Expr& e, const GeneratorMap& gens, const GridPtr& grid) {
  check_generators(e, gens, grid->dim());
  struct Ops {
    const GeneratorMap& gens;
    const GridPtr& grid;
    StarFunction zero() { return StarFunction::constant(grid, 0.0); }
    StarFunction var(const std::string& v) { return eta(gens.at(v), grid); }
    StarFunction scale(double c, const StarFunction& f) { return c * f; }
    StarFunction add(const StarFunction& f, const StarFunction& g) { return f + g; }
    StarFunction join(const StarFunction& f, const StarFunction& g) { return lla::join(f, g); }
    StarFunction mul(const StarFunction& f, const StarFunction& g) { return star_product(f, g); }
  } ops{gens, grid};
  return evaluate(e, ops);
}

StrongUnitCandidate strong_unit_candidate(const std::vector<std::vector<double>>& family, const GridPtr& grid) {
  if (family.empty()) throw Error("strong unit candidate from an empty family");
  for (const auto& x : family) {
    double norm1 = 0.0;
    for (double c : x) norm1 += std::abs(c);
    if (std::abs(norm1 - 1.0) > 1e-12) throw Error("strong unit family must consist of unit vectors of l1^n");
  }
  StarFunction unit = abs(eta(family.front(), grid));
  for (std::size_t i = 1; i < family.size(); ++i) unit = join(unit, abs(eta(family[i], grid)));
  double lo = *std::min_element(unit.values.begin(), unit.values.end());
  return {unit, lo, lo >= 0.5};
}

double unit_norm(const StarFunction& f, const StarFunction& unit) {
  same_grid(f, unit);
  double m = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!(unit.values[i] > 0.0)) throw Error("unit must be strictly positive on the grid");
    m = std::max(m, std::abs(f.values[i]) / unit.values[i]);
  }
  return m;
}

GridProduct weighted_star_product() {
  return [](const CylinderGrid& g, std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.r(i) * (a[i] * b[i]);
    return out;
  };
}

StarAxiomReport check_star_axioms(const GridPtr& grid, int trials, std::uint64_t seed, const GridProduct& product) {
  StarAxiomReport rep;
  const std::size_t n = grid->size();
  auto mul = [&](const std::vector<double>& a, const std::vector<double>& b) { return product(*grid, a, b); };

  std::vector<double> one(n, 1.0);
  auto sq = mul(one, one);
  for (std::size_t i = 0; i < n; ++i) rep.unit_square_defect = std::max(rep.unit_square_defect, std::abs(sq[i] - grid->r(i)));

  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    ++rep.trials;
    std::vector<double> f(n), g(n), h(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = uniform(rng, -1.0, 1.0);
      g[i] = uniform(rng, -1.0, 1.0);
      h[i] = uniform(rng, -1.0, 1.0);
    }
    auto lhs = mul(mul(f, g), h);
    auto rhs = mul(f, mul(g, h));
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(lhs[i] - rhs[i]) > 1e-12) {
        ++rep.associativity_violations;
        break;
      }
    }
    if (mul(f, g) != mul(g, f)) ++rep.commutativity_violations;

    // z >= 0 and x, y >= 0 with disjoint supports.
    std::vector<double> z(n), x(n, 0.0), y(n, 0.0);
    std::uniform_int_distribution<int> side(0, 2);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = uniform(rng, 0.0, 1.0);
      int s = side(rng);
      if (s == 0) x[i] = uniform(rng, 0.0, 1.0);
      if (s == 1) y[i] = uniform(rng, 0.0, 1.0);
    }
    auto zx = mul(z, x);
    auto xz = mul(x, z);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::min(std::abs(zx[i]), y[i]) != 0.0 || std::min(std::abs(xz[i]), y[i]) != 0.0) {
        ++rep.f_algebra_violations;
        break;
      }
    }

    // Random zero pattern; wherever f*f vanishes at r > 0, f must vanish.
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = uniform(rng, 0.0, 1.0) < 0.3 ? 0.0 : uniform(rng, -1.0, 1.0);
    auto pp = mul(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (grid->r(i) > 0.0 && pp[i] == 0.0 && p[i] != 0.0) {
        ++rep.semiprime_violations;
        break;
      }
    }
  }
  return rep;
}

SphereTransport::SphereTransport(std::vector<std::vector<double>> dual_sphere_points)
    : source_(std::move(dual_sphere_points)) {
  target_.reserve(source_.size());
  for (const auto& u : source_) {
    double m = 0.0;
    for (double c : u) m = std::max(m, std::abs(c));
    if (m == 0.0) throw Error("cannot transport the zero vector");
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] / m;
    target_.push_back(std::move(v));
  }
}

GridPtr SphereTransport::cube_grid(const std::vector<double>& r_levels) const {
  return std::make_shared<const CylinderGrid>(static_cast<int>(target_.front().size()), r_levels, target_);
}

StarFunction SphereTransport::pull_back(const std::function<double(double, const std::vector<double>&)>& f_on_cube,
                                        const GridPtr& source_grid) const {
  if (source_grid->sphere_points().size() != source_.size()) throw Error("grid does not match the transport");
  const std::size_t s = source_.size();
  std::vector<double> v(source_grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f_on_cube(source_grid->r(i), target_[i % s]);
  return {source_grid, std::move(v)};
}

void write_csv(std::ostream& out, const StarFunction& f) {
  out << "r";
  for (int i = 0; i < f.grid->dim(); ++i) out << ",u" << (i + 1);
  out << ",value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    out << f.grid->r(i);
    for (double c : f.grid->u(i)) out << ',' << c;
    out << ',' << f.values[i] << '\n';
  }
}

}  // namespace lla
