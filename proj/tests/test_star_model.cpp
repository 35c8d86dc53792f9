#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "lla/random.hpp"
#include "lla/rewrite.hpp"
#include "lla/star_model.hpp"

using namespace lla;

namespace {

GridPtr grid2() { return CylinderGrid::uniform(2, 33, 8); }

double max_diff(const StarFunction& a, const StarFunction& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace

TEST(Sphere, CubeBoundaryPoints) {
  auto pts = cube_sphere_points(2, 3);
  // 4 faces x 3 points, minus the 4 corners counted twice
  EXPECT_EQ(pts.size(), 8u);
  std::set<std::vector<double>> unique(pts.begin(), pts.end());
  EXPECT_EQ(unique.size(), pts.size());
  for (const auto& u : pts) EXPECT_EQ(std::max(std::abs(u[0]), std::abs(u[1])), 1.0);
  EXPECT_EQ(cube_sphere_points(1, 8).size(), 2u);
  // n = 3, m = 4: 4^3 - 2^3 boundary points of the 4x4x4 lattice
  EXPECT_EQ(cube_sphere_points(3, 4).size(), 56u);
}

TEST(CylinderGrid, Validation) {
  EXPECT_THROW(CylinderGrid(1, {0.0, 0.5}, {{1.0}}), Error);
  EXPECT_THROW(CylinderGrid(1, {0.0, 0.5, 0.5, 1.0}, {{1.0}}), Error);
  EXPECT_THROW(CylinderGrid(2, {0.0, 1.0}, {{1.0}}), Error);
  auto g = grid2();
  EXPECT_EQ(g->size(), 33u * 28u);
  EXPECT_EQ(g->r(0), 0.0);
  EXPECT_EQ(g->r(g->size() - 1), 1.0);
}

TEST(StarProduct, Examples) {
  auto g = grid2();
  auto one = StarFunction::constant(g, 1.0);
  auto oo = star_product(one, one);
  auto e1 = eta({1, 0}, g);
  auto e2 = eta({0, 1}, g);
  auto p = star_product(e1, e2);
  for (std::size_t i = 0; i < g->size(); ++i) {
    EXPECT_EQ(oo.values[i], g->r(i));
    EXPECT_EQ(p.values[i], g->r(i) * g->u(i)[0] * g->u(i)[1]);
    EXPECT_EQ(star_product(oo, one).values[i], g->r(i) * g->r(i));
    if (g->r(i) == 0.0) {
      EXPECT_EQ(p.values[i], 0.0);
    }
  }
  auto other = CylinderGrid::uniform(2, 5, 3);
  EXPECT_THROW(star_product(one, StarFunction::constant(other, 1.0)), Error);
}

TEST(Eta, Examples) {
  auto g = grid2();
  auto e1 = eta({1, 0}, g);
  auto z = eta({0, 0}, g);
  auto s = eta({1, 1}, g);
  for (std::size_t i = 0; i < g->size(); ++i) {
    EXPECT_EQ(e1.values[i], g->u(i)[0]);
    EXPECT_EQ(z.values[i], 0.0);
    if (g->u(i) == std::vector<double>{1, -1}) {
      EXPECT_EQ(s.values[i], 0.0);
    }
  }
  EXPECT_THROW(eta({1}, g), Error);
}

TEST(HatT, Generators) {
  auto g = CylinderGrid::uniform(1, 33, 2);
  auto h = hatT_eval(Expr::var("v"), {{"v", {1.0}}}, g);
  EXPECT_EQ(max_diff(h, eta({1.0}, g)), 0.0);
  auto sq = hatT_eval(parse("v*v"), {{"v", {1.0}}}, g);
  for (std::size_t i = 0; i < g->size(); ++i) {
    double u = g->u(i)[0];
    EXPECT_NEAR(sq.values[i], g->r(i) * u * u, 1e-15);
  }
}

TEST(HatT, MultiplicativeAndLatticeHomomorphism) {
  auto g = grid2();
  GeneratorMap gens{{"v", {1, 0}}, {"w", {0, 1}}};
  for (int i = 0; i < 20; ++i) {
    Rng rng(derive_seed(5, static_cast<std::uint64_t>(i)));
    Expr f = random_expr(rng, {"v", "w"}, 6);
    Expr h = random_expr(rng, {"v", "w"}, 6);
    auto hf = hatT_eval(f, gens, g);
    auto hh = hatT_eval(h, gens, g);
    EXPECT_LE(max_diff(hatT_eval(Expr::mul(f, h), gens, g), star_product(hf, hh)), 1e-9);
    EXPECT_EQ(max_diff(hatT_eval(Expr::join(f, h), gens, g), join(hf, hh)), 0.0);
    // evaluating in (C(grid), *) gives the same function
    EXPECT_LE(max_diff(eval_star(f, gens, g), hf), 1e-9 * (1 + hf.sup_norm()));
  }
}

TEST(HatT, ZeroRowMatchesNumericLimit) {
  auto g = grid2();
  GeneratorMap gens{{"v", {1, 0}}, {"w", {0.5, -0.5}}};
  const double r = std::ldexp(1.0, -20);
  for (int i = 0; i < 30; ++i) {
    Rng rng(derive_seed(7, static_cast<std::uint64_t>(i)));
    Expr f = random_expr(rng, {"v", "w"}, 8);
    auto h = hatT_eval(f, gens, g);
    for (std::size_t s = 0; s < g->sphere_points().size(); ++s) {
      const auto& u = g->sphere_points()[s];
      Assignment a{{"v", r * u[0]}, {"w", r * (0.5 * u[0] - 0.5 * u[1])}};
      double numeric = eval_real(f, a) / r;
      EXPECT_LE(std::abs(h.values[s] - numeric), 1e-4 * (1 + std::abs(h.values[s])));
    }
  }
}

TEST(HatT, DominatedByMajorant) {
  auto g = grid2();
  GeneratorMap gens{{"v", {1, 0}}, {"w", {0.5, 0.5}}};
  for (int i = 0; i < 30; ++i) {
    Rng rng(derive_seed(9, static_cast<std::uint64_t>(i)));
    Expr f = random_expr(rng, {"v", "w"}, 8);
    double bound = eval_majorant(polynomial_majorant(f), {{"v", 1.0}, {"w", 1.0}});
    EXPECT_LE(hatT_eval(f, gens, g).sup_norm(), bound * (1 + 1e-12));
  }
}

TEST(StrongUnit, Examples) {
  for (int n = 1; n <= 3; ++n) {
    auto g = CylinderGrid::uniform(n, 9, 5);
    std::vector<std::vector<double>> basis;
    for (int i = 0; i < n; ++i) {
      std::vector<double> e(static_cast<std::size_t>(n), 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      basis.push_back(e);
    }
    auto c = strong_unit_candidate(basis, g);
    EXPECT_TRUE(c.accepted);
    for (double v : c.unit.values) EXPECT_EQ(v, 1.0);
  }
  auto g = CylinderGrid::uniform(2, 9, 5);
  auto rej = strong_unit_candidate({{1, 0}}, g);
  EXPECT_FALSE(rej.accepted);
  EXPECT_EQ(rej.grid_min, 0.0);
  // adding the midpoint to the basis keeps the unit at 1
  auto mid = strong_unit_candidate({{1, 0}, {0, 1}, {0.5, 0.5}}, g);
  EXPECT_EQ(mid.grid_min, 1.0);
  auto half = strong_unit_candidate({{0.5, 0.5}, {0.5, -0.5}}, g);
  EXPECT_EQ(half.grid_min, 0.5);
  EXPECT_TRUE(half.accepted);
  EXPECT_THROW(strong_unit_candidate({}, g), Error);
  EXPECT_THROW(strong_unit_candidate({{1, 1}}, g), Error);
}

TEST(UnitNorm, Examples) {
  auto g = grid2();
  auto unit = strong_unit_candidate({{1, 0}, {0, 1}}, g).unit;
  EXPECT_EQ(unit_norm(unit, unit), 1.0);
  EXPECT_EQ(unit_norm(StarFunction::constant(g, 0.0), unit), 0.0);
  auto e1 = eta({1, 0}, g);
  EXPECT_EQ(unit_norm(star_product(e1, e1), unit), 1.0);
  EXPECT_THROW(unit_norm(e1, eta({1, 0}, g)), Error);
}

TEST(StarAxioms, GenuineProductPasses) {
  auto rep = check_star_axioms(grid2(), 100, 3);
  EXPECT_EQ(rep.trials, 100);
  EXPECT_EQ(rep.violations(), 0) << rep.associativity_violations << ' ' << rep.commutativity_violations << ' '
                                 << rep.f_algebra_violations << ' ' << rep.semiprime_violations;
  EXPECT_EQ(rep.unit_square_defect, 0.0);
}

TEST(StarAxioms, BrokenProductsFail) {
  // Shifts mass along the grid, so supports are not preserved.
  GridProduct shifted = [](const CylinderGrid& g, std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[(i + 1) % a.size()] = g.r(i) * a[i] * b[i];
    return out;
  };
  auto rep = check_star_axioms(grid2(), 20, 3, shifted);
  EXPECT_GT(rep.f_algebra_violations, 0);
  // Drops the weight on half the sphere: not semiprime at r > 0.
  GridProduct lossy = [](const CylinderGrid& g, std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = g.u(i)[0] < 0 ? 0.0 : g.r(i) * a[i] * b[i];
    return out;
  };
  auto rep2 = check_star_axioms(grid2(), 20, 3, lossy);
  EXPECT_GT(rep2.semiprime_violations, 0);
  EXPECT_GT(rep2.unit_square_defect, 0.0);
}

TEST(Transport, Examples) {
  SphereTransport id(cube_sphere_points(2, 5));
  EXPECT_EQ(id.source(), id.target());
  SphereTransport l2({{std::sqrt(0.5), std::sqrt(0.5)}, {1, 0}, {0.6, -0.8}});
  EXPECT_EQ(l2.target()[0], (std::vector<double>{1, 1}));
  EXPECT_EQ(l2.target()[2][1], -1.0);
  EXPECT_THROW(SphereTransport({{0, 0}}), Error);
}

TEST(Transport, StarHomomorphism) {
  std::vector<std::vector<double>> circle;
  for (int k = 0; k < 24; ++k) circle.push_back({std::cos(k * M_PI / 12), std::sin(k * M_PI / 12)});
  SphereTransport t(circle);
  std::vector<double> r{0, 0.25, 0.5, 0.75, 1};
  auto source = std::make_shared<const CylinderGrid>(2, r, circle);
  auto cube = t.cube_grid(r);
  for (int i = 0; i < 20; ++i) {
    Rng rng(derive_seed(13, static_cast<std::uint64_t>(i)));
    double a = uniform(rng, -1, 1), b = uniform(rng, -1, 1);
    auto f = [a](double rr, const std::vector<double>& u) { return a * u[0] + rr * u[1]; };
    auto g = [b](double rr, const std::vector<double>& u) { return b * u[1] - rr * u[0] * u[0]; };
    auto F = StarFunction::from(cube, f);
    auto G = StarFunction::from(cube, g);
    auto fg = star_product(F, G);
    auto jn = join(F, G);
    auto pf = t.pull_back(f, source);
    auto pg = t.pull_back(g, source);
    EXPECT_EQ(max_diff(star_product(pf, pg), StarFunction{source, fg.values}), 0.0);
    EXPECT_EQ(max_diff(join(pf, pg), StarFunction{source, jn.values}), 0.0);
  }
}

TEST(Csv, Panels) {
  auto g = CylinderGrid::uniform(2, 3, 2);
  std::ostringstream os;
  auto one = StarFunction::constant(g, 1.0);
  write_csv(os, star_product(one, one));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "r,u1,u2,value");
  int rows = 0;
  while (std::getline(is, line)) {
    double r = std::stod(line.substr(0, line.find(',')));
    double v = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_EQ(r, v);
    ++rows;
  }
  EXPECT_EQ(rows, static_cast<int>(g->size()));
}
