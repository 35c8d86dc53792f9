#include "lla/tau_norm.hpp"

#include <algorithm>
#include <cmath>

#include "lla/compiled.hpp"
#include "lla/discretizer.hpp"
#include "lla/random.hpp"
#include "lla/rewrite.hpp"
#include "lla/star_model.hpp"

namespace lla {

double OperatorIntoAlgebra::contraction() const {
  double m = 0.0;
  for (const auto& c : columns) {
    for (double v : c) m = std::max(m, std::abs(v));
  }
  return m;
}

std::vector<double> OperatorIntoAlgebra::image(const std::vector<double>& x) const {
  if (x.size() != columns.size()) throw Error("operator applied to a vector of the wrong dimension");
  std::vector<double> out(target->atom_count(), 0.0);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += x[i] * columns[i][j];
  }
  return out;
}

OperatorIntoAlgebra OperatorIntoAlgebra::embedded(std::size_t m) const {
  if (m < columns.size()) throw Error("cannot embed into a smaller space");
  OperatorIntoAlgebra out = *this;
  out.columns.resize(m, std::vector<double>(target->atom_count(), 0.0));
  return out;
}

nlohmann::json OperatorIntoAlgebra::to_json() const {
  return {{"atoms", target->atom_count()}, {"weights", target->weights()}, {"columns", columns}};
}

namespace {

std::size_t dimension_of(const GeneratorMap& gens) {
  std::size_t n = 0;
  for (const auto& [v, x] : gens) {
    if (n != 0 && x.size() != n) throw Error("generators have different dimensions");
    n = x.size();
  }
  return n == 0 ? 1 : n;
}

// Per atom j the map a -> c_j a carries (R, c_j a b) onto (R, a b), so
// e(a) = e_real(c_j a) / c_j on that atom.
class WitnessEvaluator {
 public:
  WitnessEvaluator(const Expr& e, const GeneratorMap& gens) : f_(e), gens_(f_.vars().size()) {
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      auto it = gens.find(f_.vars()[k]);
      if (it == gens.end()) throw MissingVariable(f_.vars()[k]);
      gens_[k] = it->second;
    }
  }

  double operator()(const OperatorIntoAlgebra& op) const {
    if (!(op.contraction() <= 1.0 + 1e-12)) throw Error("candidate operator is not contractive");
    std::vector<std::vector<double>> images;
    images.reserve(gens_.size());
    for (const auto& x : gens_) images.push_back(op.image(x));
    const auto& c = op.target->weights();
    std::vector<double> args(gens_.size());
    double best = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      for (std::size_t k = 0; k < args.size(); ++k) args[k] = c[j] * images[k][j];
      best = std::max(best, std::abs(f_(args) / c[j]));
    }
    return best;
  }

 private:
  CompiledExpr f_;
  std::vector<std::vector<double>> gens_;
};

OperatorIntoAlgebra make_operator(std::vector<double> weights, std::vector<std::vector<double>> columns) {
  return {DiagonalAlgebra::create(std::move(weights)), std::move(columns)};
}

OperatorIntoAlgebra fresh_candidate(Rng& rng, std::size_t n, std::size_t max_atoms) {
  auto l = 1 + static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(max_atoms)));
  l = std::min(l, max_atoms);
  std::vector<double> w(l);
  for (auto& c : w) c = 1.0 - uniform(rng, 0.0, 1.0);
  std::vector<std::vector<double>> cols(n, std::vector<double>(l));
  for (auto& col : cols) {
    for (auto& v : col) v = uniform(rng, -1.0, 1.0);
  }
  return make_operator(std::move(w), std::move(cols));
}

// Resamples one weight or one column entry; a quarter of the time the new
// value is an endpoint.
OperatorIntoAlgebra mutate(const OperatorIntoAlgebra& op, Rng& rng) {
  auto w = op.target->weights();
  auto cols = op.columns;
  const std::size_t l = w.size();
  const std::size_t slots = l * (1 + cols.size());
  auto k = std::min(slots - 1, static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(slots))));
  const bool endpoint = uniform(rng, 0.0, 1.0) < 0.25;
  if (k < l) {
    w[k] = endpoint ? 1.0 : 1.0 - uniform(rng, 0.0, 1.0);
  } else {
    k -= l;
    double v = uniform(rng, -1.0, 1.0);
    if (endpoint) v = v < -1.0 / 3 ? -1.0 : (v > 1.0 / 3 ? 1.0 : 0.0);
    cols[k / l][k % l] = v;
  }
  return make_operator(std::move(w), std::move(cols));
}

OperatorIntoAlgebra discretizer_operator(std::size_t n, double delta, const TauConfig& cfg) {
  auto grid = CylinderGrid::uniform(static_cast<int>(n), cfg.r_levels, cfg.per_face);
  DiscretizationInput in;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> f(grid->size());
    for (std::size_t t = 0; t < f.size(); ++t) f[t] = grid->u(t)[i] / (1.0 + delta);
    in.generators.emplace_back("e" + std::to_string(i + 1), std::move(f));
  }
  in.weight.resize(grid->size());
  for (std::size_t t = 0; t < in.weight.size(); ++t) in.weight[t] = grid->r(t);
  auto d = discretize(in, delta);
  std::vector<std::vector<double>> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(d.generator(i).coords());
  return {d.algebra, std::move(cols)};
}

}  // namespace

double evaluate_witness(const Expr& e, const GeneratorMap& gens, const OperatorIntoAlgebra& op) {
  return WitnessEvaluator(e, gens)(op);
}

TauResult tau_lower(const Expr& e, const GeneratorMap& gens, const TauConfig& cfg) {
  const std::size_t n = dimension_of(gens);
  WitnessEvaluator eval(e, gens);
  TauResult best;
  best.witness = make_operator({1.0}, std::vector<std::vector<double>>(n, std::vector<double>{0.0}));
  best.source = "warm";
  bool have = false;
  auto consider = [&](const OperatorIntoAlgebra& op, const char* source) {
    double v = eval(op);
    ++best.candidates;
    if (!have || v > best.value) {
      best.value = v;
      best.witness = op;
      best.source = source;
      have = true;
    }
    return v;
  };

  for (const auto& op : cfg.warm_starts) {
    if (op.columns.size() != n) throw Error("warm start has the wrong domain dimension");
    consider(op, "warm");
  }
  if (n <= 4) {
    std::size_t patterns = 1;
    for (std::size_t i = 0; i < n; ++i) patterns *= 3;
    for (std::size_t p = 0; p < patterns; ++p) {
      std::vector<std::vector<double>> cols(n);
      std::size_t rem = p;
      for (std::size_t i = 0; i < n; ++i, rem /= 3) cols[i] = {static_cast<double>(rem % 3) - 1.0};
      consider(make_operator({1.0}, std::move(cols)), "warm");
    }
  }
  for (double delta : cfg.deltas) consider(discretizer_operator(n, delta, cfg), "discretizer");

  OperatorIntoAlgebra search_best;
  double search_value = -1.0;
  for (int k = 0; k < cfg.search_iters; ++k) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    bool fresh = search_value < 0.0 || k % 4 == 0;
    auto op = fresh ? fresh_candidate(rng, n, cfg.max_atoms) : mutate(search_best, rng);
    double v = consider(op, "search");
    if (v > search_value) {
      search_value = v;
      search_best = std::move(op);
    }
  }
  return best;
}

std::map<std::string, double> l1_norms(const GeneratorMap& gens) {
  std::map<std::string, double> out;
  for (const auto& [v, x] : gens) {
    double s = 0.0;
    for (double c : x) s += std::abs(c);
    out.emplace(v, s);
  }
  return out;
}

double rho_upper(const Expr& e, const std::map<std::string, double>& gen_norms) {
  return eval_majorant(polynomial_majorant(e), gen_norms);
}

namespace {

bool is_negation_of(const Expr& b, const Expr& a) {
  return b.kind() == Kind::Scale && b.coeff() == -1.0 && b.child() == a;
}

// |a|, a+ and a- never exceed the norm of a; other joins take the sum.
double lattice_bound(const Expr& e, const std::map<std::string, double>& gen_norms) {
  switch (e.kind()) {
    case Kind::Zero:
      return 0.0;
    case Kind::Var: {
      auto it = gen_norms.find(e.name());
      if (it == gen_norms.end()) throw MissingVariable(e.name());
      return it->second;
    }
    case Kind::Scale:
      return std::abs(e.coeff()) * lattice_bound(e.child(), gen_norms);
    case Kind::Join:
      if (is_negation_of(e.rhs(), e.lhs())) return lattice_bound(e.lhs(), gen_norms);
      if (is_negation_of(e.lhs(), e.rhs())) return lattice_bound(e.rhs(), gen_norms);
      [[fallthrough]];
    default:
      return lattice_bound(e.lhs(), gen_norms) + lattice_bound(e.rhs(), gen_norms);
  }
}

}  // namespace

double lattice_norm_upper(const Expr& e, const std::map<std::string, double>& gen_norms) {
  if (!e.is_product_free()) throw Error("lattice norm bound needs a product-free expression");
  return lattice_bound(desugar(e), gen_norms);
}

nlohmann::json NormSandwich::to_json() const {
  auto w = witness.witness.to_json();
  w["source"] = witness.source;
  w["value"] = witness.value;
  return {{"lower", lower},
          {"upper", upper},
          {"majorant", to_string(majorant)},
          {"witness", w},
          {"candidates", witness.candidates},
          {"iters", iters}};
}

NormSandwich norm_sandwich(const Expr& e, const GeneratorMap& gens, const TauConfig& cfg) {
  NormSandwich s;
  s.witness = tau_lower(e, gens, cfg);
  s.majorant = polynomial_majorant(e);
  s.lower = s.witness.value;
  s.upper = eval_majorant(s.majorant, l1_norms(gens));
  s.iters = cfg.search_iters;
  if (s.lower > s.upper + 1e-12) {
    throw Error("norm sandwich inverted: lower " + format_number(s.lower) + " > upper " + format_number(s.upper));
  }
  return s;
}

namespace {

// Scales the tuple so that max_j sum_i |x*_i[j]| = 1 (or leaves zero alone).
void project(std::vector<std::vector<double>>& tuple, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (const auto& x : tuple) s += std::abs(x[j]);
    m = std::max(m, s);
  }
  if (m == 0.0) return;
  for (auto& x : tuple) {
    for (auto& v : x) v /= m;
  }
}

}  // namespace

FblResult fbl_norm_lower(const Expr& e, const GeneratorMap& gens, const FblConfig& cfg) {
  if (!e.is_product_free()) throw Error("free Banach lattice norm needs a product-free expression");
  const std::size_t n = dimension_of(gens);
  const std::size_t m = cfg.tuple_size > 0 ? static_cast<std::size_t>(cfg.tuple_size) : n;
  CompiledExpr f(e);
  std::vector<std::vector<double>> g(f.vars().size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    auto it = gens.find(f.vars()[k]);
    if (it == gens.end()) throw MissingVariable(f.vars()[k]);
    g[k] = it->second;
  }
  std::vector<double> args(g.size());
  auto value = [&](const std::vector<std::vector<double>>& tuple) {
    double s = 0.0;
    for (const auto& x : tuple) {
      for (std::size_t k = 0; k < g.size(); ++k) {
        double d = 0.0;
        for (std::size_t j = 0; j < n; ++j) d += x[j] * g[k][j];
        args[k] = d;
      }
      s += std::abs(f(args));
    }
    return s;
  };

  FblResult best;
  best.tuple.assign(m, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < std::min(m, n); ++i) best.tuple[i][i] = 1.0;
  best.value = value(best.tuple);

  for (int k = 0; k < cfg.iters; ++k) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    auto t = best.tuple;
    if (k % 4 == 0) {
      for (auto& x : t) {
        for (auto& v : x) v = uniform(rng, -1.0, 1.0);
      }
    } else {
      auto slot = std::min(m * n - 1, static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(m * n))));
      t[slot / n][slot % n] = uniform(rng, -1.0, 1.0);
    }
    project(t, n);
    double v = value(t);
    if (v > best.value) {
      best.value = v;
      best.tuple = std::move(t);
    }
  }
  return best;
}

}  // namespace lla
