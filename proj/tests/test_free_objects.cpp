#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lla/free_objects.hpp"
#include "lla/random.hpp"
#include "lla/rewrite.hpp"

using namespace lla;

namespace {

const Expr kWitness = parse("pos(pos(v)*pos(v) - pos(v))");

}  // namespace

TEST(BallGrid, Points) {
  BallGrid g(2, 3);
  EXPECT_EQ(g.size(), 9u);
  EXPECT_EQ(g.point(0), (std::vector<double>{-1, -1}));
  EXPECT_EQ(g.point(4), (std::vector<double>{0, 0}));
  EXPECT_EQ(g.point(5), (std::vector<double>{0, 1}));
  EXPECT_THROW(BallGrid(1, 4), Error);
  EXPECT_THROW(BallGrid(1, 1), Error);
}

TEST(Iota, Generator) {
  BallGrid g(1, 11);
  auto f = iota_eval(Expr::var("v"), {{"v", {1.0}}}, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(f.values[i], g.point(i)[0]);
}

TEST(Iota, KernelWitnessIsZeroOnBall) {
  BallGrid g(1, 10001);
  auto f = iota_eval(kWitness, {{"v", {1.0}}}, g);
  for (double v : f.values) ASSERT_EQ(v, 0.0);
}

TEST(Iota, ProductOfGenerators) {
  BallGrid g(2, 5);
  auto f = iota_eval(parse("v*w"), {{"v", {1, 0}}, {"w", {0, 1}}}, g);
  // x* = (0.5, -1) is index 3*5 + 0
  EXPECT_EQ(g.point(15), (std::vector<double>{0.5, -1}));
  EXPECT_EQ(f.values[15], -0.5);
  EXPECT_THROW(iota_eval(parse("v*w"), {{"v", {1, 0}}}, g), MissingVariable);
  EXPECT_THROW(iota_eval(parse("v"), {{"v", {1, 0, 0}}}, g), Error);
}

TEST(VanishesOnBall, Examples) {
  BallGrid g(1, 2001);
  GeneratorMap gens{{"v", {1.0}}};
  auto w = vanishes_on_ball(kWitness, gens, g);
  EXPECT_TRUE(w.vanishes);
  EXPECT_EQ(w.max_residual, 0.0);

  auto v = vanishes_on_ball(Expr::var("v"), gens, g);
  EXPECT_FALSE(v.vanishes);
  EXPECT_EQ(v.max_residual, 1.0);
  EXPECT_EQ(std::abs(v.witness[0]), 1.0);

  auto q = vanishes_on_ball(parse("v*v - v"), gens, g);
  EXPECT_FALSE(q.vanishes);
  EXPECT_EQ(q.max_residual, 2.0);
  EXPECT_EQ(q.witness[0], -1.0);
}

TEST(VanishesOnReals, Examples) {
  EXPECT_TRUE(vanishes_on_reals(parse("pos(x)*neg(x)")).vanishes);
  EXPECT_FALSE(vanishes_on_reals(parse("x \\/ 0")).vanishes);
  EXPECT_TRUE(vanishes_on_reals(parse("(x \\/ y) + (x /\\ y) - x - y")).vanishes);
  EXPECT_FALSE(vanishes_on_reals(kWitness).vanishes);
}

TEST(LatticeProjection, Examples) {
  EXPECT_EQ(lattice_projection(parse("x*y + (x \\/ y)")), parse("x \\/ y"));
  Expr pf = parse("(x \\/ y) - 2*x");
  EXPECT_EQ(lattice_projection(pf), pf);
  EXPECT_EQ(lattice_projection(cosh_sinh_sequence(4)), Expr::zero());
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(3, static_cast<std::uint64_t>(i)));
    Expr p = lattice_projection(random_expr(rng, {"x", "y"}, 8));
    EXPECT_TRUE(p.is_product_free());
    EXPECT_EQ(lattice_projection(p), p);
  }
}

TEST(LimitProfile, ClosedForms) {
  auto a = numeric_limit_profile(parse("x*y + (x \\/ y)"), {{"x", 1}, {"y", 1}}, {std::ldexp(1.0, -10)});
  EXPECT_DOUBLE_EQ(a[0].second, std::ldexp(1.0, -10));
  auto b = numeric_limit_profile(parse("(x \\/ y) - 3*y"), {{"x", 0.3}, {"y", -0.7}}, {0.5, 0.125, 1e-3});
  for (const auto& [eps, r] : b) EXPECT_LE(r, 1e-15);
  for (int k : {3, 6, 9}) {
    double eps = std::ldexp(1.0, -k);
    auto c = numeric_limit_profile(parse("x*x*x"), {{"x", 1}}, {eps});
    EXPECT_DOUBLE_EQ(c[0].second, std::ldexp(1.0, -2 * k));
  }
}

TEST(LimitLaw, RandomExpressionsDecayLinearly) {
  std::vector<double> eps;
  for (int k = 5; k <= 20; ++k) eps.push_back(std::ldexp(1.0, -k));
  for (int i = 0; i < 20; ++i) {
    Rng rng(derive_seed(101, static_cast<std::uint64_t>(i)));
    Expr e = random_expr(rng, {"x", "y", "z"}, 10);
    for (int p = 0; p < 5; ++p) {
      Assignment lam{{"x", uniform(rng, -1, 1)}, {"y", uniform(rng, -1, 1)}, {"z", uniform(rng, -1, 1)}};
      auto prof = numeric_limit_profile(e, lam, eps);
      double limit = std::abs(eval_real(product_kill(e), lam));
      double floor = 1e-9 * (1 + limit);
      for (std::size_t k = 1; k < prof.size(); ++k) {
        double prev = prof[k - 1].second;
        double r = prof[k].second;
        // O(eps): halving eps halves the residual once the linear term dominates
        if (k + 4 >= prof.size() && prev > 1e3 * floor) EXPECT_LE(r, 0.6 * prev) << print(e);
      }
      EXPECT_LE(prof.back().second, 1e-4 * (1 + limit));
    }
  }
}

TEST(CoshSinh, ConvergesToX) {
  Expr phi = cosh_sinh_sequence(10);
  for (int i = 0; i <= 200; ++i) {
    double t = -1 + i / 100.0;
    EXPECT_NEAR(eval_real(phi, {{"x", t}, {"one", 1.0}}), t, 1e-6);
  }
  EXPECT_THROW(cosh_sinh_sequence(-1), Error);
}

TEST(WeakUnit, GeneratorMeetsNonzeroElements) {
  for (const char* s : {"x*x", "pos(x)", "neg(x) - x*x*x", "abs(x) /\\ (x*x)", "x*x*x*x - x*x"}) {
    Expr f = parse(s);
    double m = 0;
    for (int i = 0; i <= 600; ++i) {
      double t = -3 + i / 100.0;
      m = std::max(m, std::min(std::abs(eval_real(f, {{"x", t}})), std::abs(t)));
    }
    EXPECT_GT(m, 0.0) << s;
  }
}

TEST(Semiprime, ProductWithGeneratorNonzero) {
  BallGrid g(2, 21);
  GeneratorMap gens{{"v", {1, 0}}, {"w", {0, 1}}};
  for (const char* s : {"v", "v \\/ w", "pos(v)*w", "abs(v) - abs(w)"}) {
    Expr f = parse(s);
    ASSERT_FALSE(vanishes_on_ball(f, gens, g).vanishes);
    bool nonzero = false;
    for (const char* gen : {"v", "w"}) {
      auto h = iota_eval(Expr::mul(f, Expr::var(gen)), gens, g);
      for (double x : h.values) nonzero = nonzero || x != 0.0;
    }
    EXPECT_TRUE(nonzero) << s;
  }
}

TEST(Csv, Header) {
  BallGrid g(2, 3);
  std::ostringstream os;
  write_csv(os, iota_eval(parse("v"), {{"v", {1, 0}}}, g));
  std::string line;
  std::istringstream is(os.str());
  std::getline(is, line);
  EXPECT_EQ(line, "x1,x2,value");
  std::getline(is, line);
  EXPECT_EQ(line, "-1,-1,-1");
}
