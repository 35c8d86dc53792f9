#include <gtest/gtest.h>

#include <cmath>

#include "lla/free_objects.hpp"
#include "lla/models.hpp"
#include "lla/random.hpp"
#include "lla/rewrite.hpp"
#include "oracles.hpp"

using namespace lla;

namespace {

const Expr x = Expr::var("x");
const Expr y = Expr::var("y");

// Normal-form evaluation done by hand from the two polynomial lists.
double nf_oracle(const NormalForm& nf, const Assignment& a) {
  auto split = [&](const std::string& s) {
    std::string v = s.substr(0, s.size() - 1);
    double t = a.at(v);
    return s.back() == '+' ? std::max(t, 0.0) : std::max(-t, 0.0);
  };
  auto join = [&](const std::vector<Polynomial>& ps) {
    double m = -INFINITY;
    for (const auto& p : ps) m = std::max(m, p.evaluate(split));
    return m;
  };
  return join(nf.pos) - join(nf.neg);
}

Assignment random_point(Rng& rng, const std::vector<std::string>& vars, double r) {
  Assignment a;
  for (const auto& v : vars) a[v] = uniform(rng, -r, r);
  return a;
}

}  // namespace

TEST(ProductKill, Examples) {
  EXPECT_EQ(product_kill(Expr::mul(x, y)), Expr::zero());
  EXPECT_EQ(product_kill(Expr::add(Expr::mul(x, y), Expr::join(x, y))), Expr::add(Expr::zero(), Expr::join(x, y)));
  Expr phi = product_kill(cosh_sinh_sequence(3));
  EXPECT_TRUE(phi.is_product_free());
  EXPECT_EQ(phi, Expr::add(Expr::zero(), Expr::scale(-1, Expr::zero())));
  EXPECT_EQ(eval_real(phi, {}), 0.0);
}

TEST(ProductKill, PositivelyHomogeneous) {
  for (int i = 0; i < 200; ++i) {
    Rng rng(derive_seed(21, static_cast<std::uint64_t>(i)));
    Expr k = product_kill(random_expr(rng, {"x", "y"}, 9));
    Assignment a = random_point(rng, {"x", "y"}, 2);
    double t = uniform(rng, 0, 4);
    Assignment ta = a;
    for (auto& [v, c] : ta) c *= t;
    double base = eval_real(k, a);
    EXPECT_NEAR(eval_real(k, ta), t * base, 1e-12 * (1 + std::abs(t * base)) * 64);
  }
}

TEST(SimplifyZero, NeutralElementsOnly) {
  EXPECT_EQ(simplify_zero(parse("x*y + (x \\/ y)")), parse("x*y + (x \\/ y)"));
  EXPECT_EQ(simplify_zero(product_kill(parse("x*y + (x \\/ y)"))), parse("x \\/ y"));
  EXPECT_EQ(simplify_zero(Expr::scale(1, x)), x);
  EXPECT_EQ(simplify_zero(Expr::join(Expr::zero(), Expr::zero())), Expr::zero());
  // 0 \/ x is not neutral-element cleanup
  EXPECT_EQ(simplify_zero(Expr::join(Expr::zero(), x)), Expr::join(Expr::zero(), x));
}

TEST(NormalForm, Var) {
  auto nf = normal_form(x);
  ASSERT_EQ(nf.pos.size(), 1u);
  ASSERT_EQ(nf.neg.size(), 1u);
  EXPECT_EQ(nf.pos[0], Polynomial::symbol("x+"));
  EXPECT_EQ(nf.neg[0], Polynomial::symbol("x-"));
}

TEST(NormalForm, ProductAndJoinAgreeWithOracle) {
  Rng rng(99);
  for (const Expr& e : {Expr::mul(x, y), Expr::join(x, Expr::zero()), parse("abs(x*y) - abs(x)*abs(y)")}) {
    auto nf = normal_form(e);
    EXPECT_FALSE(nf.pos.empty());
    EXPECT_FALSE(nf.neg.empty());
    for (int i = 0; i < 100; ++i) {
      Assignment a = random_point(rng, {"x", "y"}, 3);
      double v = oracle::eval_real(e, a);
      EXPECT_NEAR(nf_oracle(nf, a), v, 1e-9 * (1 + std::abs(v)));
    }
  }
}

TEST(NormalForm, NoConstantTerms) {
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(31, static_cast<std::uint64_t>(i)));
    NormalForm nf;
    try {
      nf = normal_form(random_expr(rng, {"x", "y"}, 7), 20000);
    } catch (const BudgetExceeded&) {
      continue;
    }
    for (const auto* list : {&nf.pos, &nf.neg}) {
      for (const auto& p : *list) {
        for (const auto& [m, c] : p.terms()) {
          EXPECT_FALSE(m.empty());
          EXPECT_NE(c, 0.0);
          for (const auto& [s, k] : m) EXPECT_TRUE(s.back() == '+' || s.back() == '-');
        }
      }
    }
  }
}

TEST(NormalForm, SoundOnRandomExpressions) {
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    Rng rng(derive_seed(41, static_cast<std::uint64_t>(i)));
    Expr e = random_expr(rng, {"x", "y", "z"}, 7);
    NormalForm nf;
    try {
      nf = normal_form(e, 200000);
    } catch (const BudgetExceeded&) {
      continue;
    }
    ++checked;
    for (int k = 0; k < 100; ++k) {
      Assignment a = random_point(rng, {"x", "y", "z"}, 2);
      double v = oracle::eval_real(e, a);
      double scale = 1 + eval_majorant(polynomial_majorant(e), a);
      ASSERT_NEAR(eval_real(nf, a), v, 1e-6 * scale) << print(e);
      ASSERT_NEAR(nf_oracle(nf, a), v, 1e-6 * scale) << print(e);
    }
  }
  EXPECT_GE(checked, 50);
}

TEST(NormalForm, BudgetAborts) {
  Expr e = x;
  for (int i = 0; i < 6; ++i) e = Expr::mul(Expr::join(e, Expr::scale(-1, y)), Expr::join(e, y));
  EXPECT_THROW(normal_form(e, 1000), BudgetExceeded);
}

TEST(NormalForm, SplitDecompositionOneVariable) {
  for (int i = 0; i < 20; ++i) {
    Rng rng(derive_seed(51, static_cast<std::uint64_t>(i)));
    Expr f = random_expr(rng, {"x"}, 7);
    auto nf = normal_form(f);
    for (double lam : {0.3, 1.7, -0.4, -2.2}) {
      std::map<std::string, double> split;
      if (lam > 0) split = {{"x+", lam}, {"x-", 0.0}};
      else split = {{"x+", 0.0}, {"x-", -lam}};
      double v = eval_real(f, {{"x", lam}});
      EXPECT_NEAR(eval_split(nf, split), v, 1e-9 * (1 + std::abs(v)));
    }
  }
}

TEST(NormalForm, ToExprExamples) {
  NormalForm nf{{Polynomial::symbol("x+")}, {Polynomial::symbol("x-")}};
  Expr px = Expr::join(x, Expr::zero());
  Expr nx = Expr::join(Expr::scale(-1, x), Expr::zero());
  EXPECT_EQ(normal_form_to_expr(nf), Expr::add(px, Expr::scale(-1, nx)));

  Polynomial p;
  p.add_term({{"x+", 1}, {"y-", 1}}, 2.0);
  EXPECT_EQ(polynomial_to_expr(p),
            Expr::scale(2, Expr::mul(px, Expr::join(Expr::scale(-1, Expr::var("y")), Expr::zero()))));
}

TEST(NormalForm, RoundTripThroughExpr) {
  Rng rng(61);
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    Rng er(derive_seed(61, static_cast<std::uint64_t>(i)));
    NormalForm nf, nf2;
    try {
      nf = normal_form(random_expr(er, {"x", "y"}, 5), 20000);
      nf2 = normal_form(normal_form_to_expr(nf), 200000);
    } catch (const BudgetExceeded&) {
      continue;
    }
    ++checked;
    for (int k = 0; k < 20; ++k) {
      Assignment a = random_point(rng, {"x", "y"}, 2);
      double v = eval_real(nf, a);
      EXPECT_NEAR(eval_real(nf2, a), v, 1e-9 * (1 + std::abs(v)));
    }
  }
  EXPECT_GE(checked, 10);
}

TEST(NormalForm, JsonRoundTrip) {
  auto nf = normal_form(parse("2*x*y \\/ neg(y)"));
  auto j = to_json(nf);
  EXPECT_TRUE(j.contains("pos"));
  EXPECT_TRUE(j["pos"][0].contains("monomial") || j["pos"][0].is_array());
  auto back = normal_form_from_json(j);
  ASSERT_EQ(back.pos.size(), nf.pos.size());
  for (std::size_t i = 0; i < nf.pos.size(); ++i) EXPECT_EQ(back.pos[i], nf.pos[i]);
  for (std::size_t i = 0; i < nf.neg.size(); ++i) EXPECT_EQ(back.neg[i], nf.neg[i]);
}

TEST(NormalForm, AgreesInsideModels) {
  auto models = registered_models(5, 5);
  for (int i = 0; i < 10; ++i) {
    Rng rng(derive_seed(71, static_cast<std::uint64_t>(i)));
    Expr e = random_expr(rng, {"x", "y"}, 6);
    Expr back = normal_form_to_expr(normal_form(e));
    for (const auto& m : models) {
      ModelAssignment a{{"x", ModelElement::random(m, rng)}, {"y", ModelElement::random(m, rng)}};
      auto u = eval_in_model(e, m, a);
      auto v = eval_in_model(back, m, a);
      auto bound = majorant_bound(e, a);
      for (std::size_t t = 0; t < u.size(); ++t) EXPECT_NEAR(u[t], v[t], 1e-9 * (1 + bound[t])) << print(e);
    }
  }
}

TEST(Majorant, Examples) {
  EXPECT_EQ(polynomial_majorant(x), Polynomial::symbol("x"));
  EXPECT_EQ(polynomial_majorant(Expr::mul(x, x)), Polynomial::symbol("x") * Polynomial::symbol("x"));
  auto p = polynomial_majorant(parse("x*y + (x \\/ y)"));
  EXPECT_EQ(p, Polynomial::symbol("x") * Polynomial::symbol("y") + Polynomial::symbol("x") + Polynomial::symbol("y"));
  EXPECT_TRUE(polynomial_majorant(Expr::zero()).is_zero());
  EXPECT_EQ(polynomial_majorant(Expr::scale(-3, x)), Polynomial::symbol("x").scaled(3));
}

TEST(Majorant, Dominates) {
  Expr e = parse("x*y + (x \\/ y)");
  auto p = polynomial_majorant(e);
  Rng rng(81);
  for (int i = 0; i < 10000; ++i) {
    Assignment a = random_point(rng, {"x", "y"}, 3);
    double v = std::abs(eval_real(e, a));
    EXPECT_LE(v, eval_majorant(p, a) * (1 + 1e-15));
  }
  for (int i = 0; i < 200; ++i) {
    Rng er(derive_seed(82, static_cast<std::uint64_t>(i)));
    Expr f = random_expr(er, {"x", "y"}, 8);
    auto q = polynomial_majorant(f);
    for (const auto& [m, c] : q.terms()) EXPECT_GT(c, 0.0);
    for (int k = 0; k < 50; ++k) {
      Assignment a = random_point(rng, {"x", "y"}, 3);
      EXPECT_LE(std::abs(eval_real(f, a)), eval_majorant(q, a) * (1 + 1e-12));
    }
  }
}
