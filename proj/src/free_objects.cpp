#include "lla/free_objects.hpp"

#include <cmath>
#include <iomanip>

#include "lla/compiled.hpp"
#include "lla/random.hpp"
#include "lla/rewrite.hpp"

namespace lla {

BallGrid::BallGrid(int dim, int points_per_axis) : dim_(dim), m_(points_per_axis) {
  if (dim < 1) throw Error("ball grid dimension must be at least 1");
  if (points_per_axis < 3 || points_per_axis % 2 == 0) {
    throw Error("ball grid needs an odd number (>= 3) of points per axis");
  }
  size_ = 1;
  for (int i = 0; i < dim; ++i) size_ *= static_cast<std::size_t>(m_);
}

std::vector<double> BallGrid::point(std::size_t index) const {
  std::vector<double> x(static_cast<std::size_t>(dim_));
  const double half = (m_ - 1) / 2.0;
  for (int i = dim_ - 1; i >= 0; --i) {
    auto k = static_cast<double>(index % static_cast<std::size_t>(m_));
    index /= static_cast<std::size_t>(m_);
    x[static_cast<std::size_t>(i)] = (k - half) / half;
  }
  return x;
}

namespace {

// The majorant polynomial as an expression over the variables themselves, to
// be compiled and evaluated at |a|.
Expr majorant_expr(const Polynomial& p) {
  Expr out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Expr term;
    bool first_factor = true;
    for (const auto& [s, k] : m) {
      for (unsigned i = 0; i < k; ++i) {
        term = first_factor ? Expr::var(s) : Expr::mul(term, Expr::var(s));
        first_factor = false;
      }
    }
    term = Expr::scale(c, term);
    out = first ? term : Expr::add(out, term);
    first = false;
  }
  return out;
}

void check_generators(const Expr& e, const GeneratorMap& gens, int dim) {
  for (const auto& v : variables(e)) {
    auto it = gens.find(v);
    if (it == gens.end()) throw MissingVariable(v);
    if (static_cast<int>(it->second.size()) != dim) {
      throw Error("generator '" + v + "' has dimension " + std::to_string(it->second.size()) + ", expected " +
                  std::to_string(dim));
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class NormalizedResidual {
 public:
  explicit NormalizedResidual(const Expr& e)
      : vars_(variables(e)), f_(e, vars_), p_(majorant_expr(polynomial_majorant(e)), vars_), abs_(vars_.size()) {}

  const std::vector<std::string>& vars() const { return vars_; }

  // Records the point and returns its normalized residual |f| / (1 + p(|a|)).
  double visit(std::span<const double> args, double tol, VanishingReport& r) {
    double v = f_(args);
    for (std::size_t i = 0; i < args.size(); ++i) abs_[i] = std::abs(args[i]);
    double bound = 1.0 + p_(abs_);
    double a = std::abs(v);
    ++r.points;
    r.max_residual = std::max(r.max_residual, a);
    if (a > tol * bound) r.vanishes = false;
    return a / bound;
  }

 private:
  std::vector<std::string> vars_;
  CompiledExpr f_;
  CompiledExpr p_;
  std::vector<double> abs_;
};

}  // namespace

GridFunction iota_eval(const Expr& e, const GeneratorMap& gens, const BallGrid& grid) {
  check_generators(e, gens, grid.dim());
  CompiledExpr f(e);
  GridFunction out{grid, std::vector<double>(grid.size())};
  std::vector<double> args(f.vars().size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto x = grid.point(i);
    for (std::size_t k = 0; k < args.size(); ++k) args[k] = dot(x, gens.at(f.vars()[k]));
    out.values[i] = f(args);
  }
  return out;
}

VanishingReport vanishes_on_ball(const Expr& e, const GeneratorMap& gens, const BallGrid& grid, double tol) {
  check_generators(e, gens, grid.dim());
  NormalizedResidual res(e);
  VanishingReport r;
  std::vector<double> args(res.vars().size());
  double best = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto x = grid.point(i);
    for (std::size_t k = 0; k < args.size(); ++k) args[k] = dot(x, gens.at(res.vars()[k]));
    double q = res.visit(args, tol, r);
    if (q > best) {
      best = q;
      r.witness = std::move(x);
    }
  }
  return r;
}

VanishingReport vanishes_on_reals(const Expr& e, const RealSampling& s) {
  NormalizedResidual res(e);
  const std::size_t n = res.vars().size();
  VanishingReport r;
  std::vector<double> args(n);
  double best = -1.0;
  auto visit = [&] {
    double q = res.visit(args, s.tol, r);
    if (q > best) {
      best = q;
      r.witness = args;
    }
  };
  if (n == 0) {
    visit();
    return r;
  }
  int m = s.points_per_axis;
  if (m <= 0) {
    static constexpr int kDefaults[] = {10001, 1001, 201, 41};
    m = n <= 4 ? kDefaults[n - 1] : 11;
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(m);
  const double step = m > 1 ? 2.0 * s.radius / (m - 1) : 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t k = n; k-- > 0;) {
      auto j = static_cast<double>(rem % static_cast<std::size_t>(m));
      rem /= static_cast<std::size_t>(m);
      args[k] = m > 1 ? -s.radius + j * step : 0.0;
    }
    visit();
  }
  Rng rng(s.seed);
  for (int t = 0; t < s.random_samples; ++t) {
    for (auto& a : args) a = uniform(rng, -s.radius, s.radius);
    visit();
  }
  return r;
}

Expr lattice_projection(const Expr& e) { return simplify_zero(product_kill(e)); }

std::vector<std::pair<double, double>> numeric_limit_profile(const Expr& e, const Assignment& lambda,
                                                             const std::vector<double>& eps_list) {
  const double limit = eval_real(product_kill(e), lambda);
  std::vector<std::pair<double, double>> out;
  out.reserve(eps_list.size());
  for (double eps : eps_list) {
    Assignment scaled = lambda;
    for (auto& [v, x] : scaled) x *= eps;
    out.emplace_back(eps, std::abs(eval_real(e, scaled) / eps - limit));
  }
  return out;
}

Expr cosh_sinh_sequence(int k, const std::string& t, const std::string& unit) {
  if (k < 0) throw Error("series order must be nonnegative");
  const Expr x = Expr::var(t);
  auto power = [&](int d) {
    Expr p = x;
    for (int i = 1; i < d; ++i) p = Expr::mul(p, x);
    return p;
  };
  double factorial = 1.0;  // (2j)! then (2j+1)!
  Expr cosh_part = Expr::var(unit);
  Expr sinh_part = x;
  for (int j = 1; j <= k; ++j) {
    factorial *= 2.0 * j;
    cosh_part = Expr::add(cosh_part, Expr::scale(1.0 / factorial, power(2 * j)));
    factorial *= 2.0 * j + 1.0;
    sinh_part = Expr::add(sinh_part, Expr::scale(1.0 / factorial, power(2 * j + 1)));
  }
  return Expr::add(Expr::mul(x, Expr::mul(cosh_part, cosh_part)),
                   Expr::scale(-1.0, Expr::mul(x, Expr::mul(sinh_part, sinh_part))));
}

void write_csv(std::ostream& out, const GridFunction& f) {
  for (int i = 0; i < f.grid.dim(); ++i) out << "x" << (i + 1) << ',';
  out << "value\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    for (double c : f.grid.point(i)) out << c << ',';
    out << f.values[i] << '\n';
  }
}

}  // namespace lla
