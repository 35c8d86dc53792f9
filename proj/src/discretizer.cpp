#include "lla/discretizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lla {

int Partition::cell_of(double v) const {
  if (!(v >= 0.0) || !(v < cuts.back())) {
    throw Error("value " + format_number(v) + " outside [0, " + format_number(cuts.back()) + ")");
  }
  auto it = std::upper_bound(cuts.begin(), cuts.end(), v);
  return static_cast<int>(it - cuts.begin()) - 1;
}

Partition build_partition(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error("partition mesh must lie in (0, 1)");
  const double top = 1.0 + delta;
  auto cells = static_cast<std::size_t>(std::ceil(top / delta - 1e-9));
  while (top / static_cast<double>(cells) > delta) ++cells;
  const double h = top / static_cast<double>(cells);
  Partition p;
  p.delta = delta;
  p.cuts.resize(cells + 1);
  for (std::size_t i = 0; i < cells; ++i) p.cuts[i] = static_cast<double>(i) * h;
  p.cuts[cells] = top;
  return p;
}

AtomDecomposition atomize(const std::vector<std::vector<double>>& split_fns, std::span<const double> weight,
                          const Partition& p) {
  const std::size_t n = weight.size();
  for (const auto& f : split_fns) {
    if (f.size() != n) throw Error("split function sampled on a different point set");
  }
  std::vector<std::vector<int>> fp(n, std::vector<int>(split_fns.size() + 1));
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s < split_fns.size(); ++s) fp[t][s] = p.cell_of(split_fns[s][t]);
    fp[t].back() = p.cell_of(weight[t]);
  }
  std::map<std::vector<int>, std::size_t> ids;
  for (const auto& f : fp) ids.emplace(f, 0);
  AtomDecomposition out;
  out.fingerprints.reserve(ids.size());
  for (auto& [f, id] : ids) {
    id = out.fingerprints.size();
    out.fingerprints.push_back(f);
  }
  out.atom_of_point.resize(n);
  for (std::size_t t = 0; t < n; ++t) out.atom_of_point[t] = ids.at(fp[t]);
  return out;
}

namespace {

// Cell of `values` on each atom, checked to be constant across the atom.
std::vector<int> atom_cells(std::span<const double> values, const AtomDecomposition& atoms, const Partition& p) {
  if (values.size() != atoms.atom_of_point.size()) throw Error("function does not match the atom decomposition");
  std::vector<int> cell(atoms.atom_count(), -1);
  for (std::size_t t = 0; t < values.size(); ++t) {
    int c = p.cell_of(values[t]);
    int& slot = cell[atoms.atom_of_point[t]];
    if (slot == -1) slot = c;
    else if (slot != c) throw Error("function is not cell-constant on an atom");
  }
  return cell;
}

}  // namespace

std::vector<double> discretize_function(std::span<const double> values, const AtomDecomposition& atoms,
                                        const Partition& p) {
  auto cells = atom_cells(values, atoms, p);
  std::vector<double> out(cells.size());
  for (std::size_t j = 0; j < cells.size(); ++j) out[j] = p.lower(cells[j]);
  return out;
}

std::vector<double> discrete_weight(std::span<const double> weight, const AtomDecomposition& atoms,
                                    const Partition& p) {
  auto cells = atom_cells(weight, atoms, p);
  std::vector<double> out(cells.size());
  for (std::size_t j = 0; j < cells.size(); ++j) out[j] = cells[j] == 0 ? p.cuts[1] : p.lower(cells[j]);
  return out;
}

std::shared_ptr<const DiagonalAlgebra> build_diagonal_algebra(const std::vector<double>& weights) {
  for (double c : weights) {
    if (!(c > 0.0)) throw Error("diagonal algebra weights must be strictly positive");
  }
  return DiagonalAlgebra::create(weights);
}

std::vector<double> lift(std::span<const double> coeffs, const AtomDecomposition& atoms) {
  std::vector<double> out(atoms.atom_of_point.size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = coeffs[atoms.atom_of_point[t]];
  return out;
}

ModelElement Discretization::generator(std::size_t s) const {
  const auto& [pos, neg] = split_coeffs.at(s);
  std::vector<double> c(pos.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = pos[j] - neg[j];
  return ModelElement(algebra, std::move(c));
}

ModelAssignment Discretization::assignment(const DiscretizationInput& in) const {
  ModelAssignment a;
  for (std::size_t s = 0; s < in.generators.size(); ++s) a.emplace(in.generators[s].first, generator(s));
  return a;
}

namespace {

std::vector<std::vector<double>> split_functions(const DiscretizationInput& in) {
  std::vector<std::vector<double>> out;
  for (const auto& [name, f] : in.generators) {
    if (f.size() != in.weight.size()) throw Error("generator '" + name + "' sampled on a different point set");
    std::vector<double> pos(f.size()), neg(f.size());
    for (std::size_t t = 0; t < f.size(); ++t) {
      if (!(std::abs(f[t]) <= 1.0)) throw Error("generator '" + name + "' must be pre-scaled into [-1, 1]");
      pos[t] = std::max(f[t], 0.0);
      neg[t] = std::max(-f[t], 0.0);
    }
    out.push_back(std::move(pos));
    out.push_back(std::move(neg));
  }
  return out;
}

}  // namespace

Discretization discretize(const DiscretizationInput& in, double delta) {
  for (double w : in.weight) {
    if (!(w >= 0.0 && w <= 1.0)) throw Error("product weight must lie in [0, 1]");
  }
  Discretization d;
  d.partition = build_partition(delta);
  auto splits = split_functions(in);
  d.atoms = atomize(splits, in.weight, d.partition);
  for (std::size_t s = 0; s < splits.size(); s += 2) {
    d.split_coeffs.emplace_back(discretize_function(splits[s], d.atoms, d.partition),
                                discretize_function(splits[s + 1], d.atoms, d.partition));
  }
  d.weight_coeffs = discrete_weight(in.weight, d.atoms, d.partition);
  d.algebra = build_diagonal_algebra(d.weight_coeffs);
  return d;
}

double composite_error_budget(const Expr& e, double delta) {
  struct Bound {
    double value;
    double error;
  };
  struct Ops {
    double delta;
    Bound zero() { return {0.0, 0.0}; }
    Bound var(const std::string&) { return {1.0, delta}; }
    Bound scale(double c, const Bound& a) { return {std::abs(c) * a.value, std::abs(c) * a.error}; }
    Bound add(const Bound& a, const Bound& b) { return {a.value + b.value, a.error + b.error}; }
    Bound join(const Bound& a, const Bound& b) { return {std::max(a.value, b.value), std::max(a.error, b.error)}; }
    // |w a b - c a' b'| <= |w - c| |a b| + c (|a - a'| |b| + |a'| |b - b'|), c <= 1.
    Bound mul(const Bound& a, const Bound& b) {
      return {a.value * b.value, delta * a.value * b.value + a.error * b.value + a.value * b.error};
    }
  } ops{delta};
  return evaluate(e, ops).error;
}

bool BoundsReport::passed() const {
  if (!split_order_ok || !split_error_below_delta || product_bound_violations != 0) return false;
  return std::all_of(composites.begin(), composites.end(), [](const CompositeCheck& c) { return c.within_budget; });
}

nlohmann::json BoundsReport::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : composites) {
    comps.push_back({{"expr", c.expr}, {"supError", c.sup_error}, {"budget", c.budget}, {"withinBudget", c.within_budget}});
  }
  return {{"atoms", atoms},
          {"delta", delta},
          {"seed", seed},
          {"supError", split_sup_error},
          {"splitErrors", split_errors},
          {"splitOrderOk", split_order_ok},
          {"splitErrorBelowDelta", split_error_below_delta},
          {"weightSupError", weight_sup_error},
          {"productPairs", product_pairs},
          {"productBoundViolations", product_bound_violations},
          {"productBoundMaxExcess", product_bound_max_excess},
          {"composites", comps},
          {"passed", passed()}};
}

BoundsReport verify_bounds(const DiscretizationInput& in, const Discretization& d, const std::vector<Expr>& composites,
                           int pair_trials, std::uint64_t seed) {
  BoundsReport rep;
  rep.atoms = d.atoms.atom_count();
  rep.delta = d.partition.delta;
  rep.seed = seed;
  const double delta = d.partition.delta;

  auto splits = split_functions(in);
  for (std::size_t s = 0; s < splits.size(); ++s) {
    const auto& coeffs = s % 2 == 0 ? d.split_coeffs[s / 2].first : d.split_coeffs[s / 2].second;
    auto fd = lift(coeffs, d.atoms);
    double err = 0.0;
    for (std::size_t t = 0; t < fd.size(); ++t) {
      if (!(fd[t] >= 0.0 && fd[t] <= splits[s][t])) rep.split_order_ok = false;
      err = std::max(err, splits[s][t] - fd[t]);
    }
    rep.split_errors.push_back(err);
    rep.split_sup_error = std::max(rep.split_sup_error, err);
    if (!(err < delta)) rep.split_error_below_delta = false;
  }

  auto wd = lift(d.weight_coeffs, d.atoms);
  for (std::size_t t = 0; t < wd.size(); ++t) rep.weight_sup_error = std::max(rep.weight_sup_error, std::abs(in.weight[t] - wd[t]));

  // |x o y| vs |x * y| + delta, pointwise, for x = sum lambda_j a_j, y = sum mu_j a_j.
  const std::size_t l = d.atoms.atom_count();
  auto check_pair = [&](const std::vector<double>& lambda, const std::vector<double>& mu) {
    ++rep.product_pairs;
    bool violated = false;
    for (std::size_t t = 0; t < in.weight.size(); ++t) {
      std::size_t j = d.atoms.atom_of_point[t];
      double discrete = std::abs(d.weight_coeffs[j] * lambda[j] * mu[j]);
      double original = std::abs(in.weight[t] * lambda[j] * mu[j]);
      rep.product_bound_max_excess = std::max(rep.product_bound_max_excess, discrete - original);
      if (discrete > original + delta) violated = true;
    }
    if (violated) ++rep.product_bound_violations;
  };
  for (std::size_t j = 0; j < l; ++j) {
    std::vector<double> ind(l, 0.0);
    ind[j] = 1.0;
    check_pair(ind, ind);
  }
  for (int k = 0; k < pair_trials; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    std::vector<double> lambda(l), mu(l);
    for (std::size_t j = 0; j < l; ++j) {
      lambda[j] = uniform(rng, -1.0, 1.0);
      mu[j] = uniform(rng, -1.0, 1.0);
    }
    check_pair(lambda, mu);
  }

  if (!composites.empty()) {
    auto grid_model = WeightedGridModel::create(in.weight);
    ModelAssignment original;
    for (const auto& [name, f] : in.generators) original.emplace(name, ModelElement(grid_model, f));
    ModelAssignment discrete = d.assignment(in);
    for (const auto& e : composites) {
      auto exact = eval_in_model(e, grid_model, original);
      auto approx = lift(eval_in_model(e, d.algebra, discrete).coords(), d.atoms);
      CompositeCheck c;
      c.expr = print(e);
      for (std::size_t t = 0; t < approx.size(); ++t) c.sup_error = std::max(c.sup_error, std::abs(exact[t] - approx[t]));
      c.budget = composite_error_budget(e, delta);
      c.within_budget = c.sup_error <= c.budget * (1.0 + 1e-12) + 1e-15;
      rep.composites.push_back(c);
    }
  }
  return rep;
}

double monomial_sup_error(const DiscretizationInput& in, const Discretization& d,
                          const std::vector<std::pair<std::size_t, unsigned>>& factors) {
  auto splits = split_functions(in);
  unsigned k = 0;
  for (const auto& [s, e] : factors) k += e;
  if (k == 0) throw Error("monomial of degree zero");
  double err = 0.0;
  for (std::size_t t = 0; t < in.weight.size(); ++t) {
    std::size_t j = d.atoms.atom_of_point[t];
    double exact = std::pow(in.weight[t], k - 1);
    double approx = std::pow(d.weight_coeffs[j], k - 1);
    for (const auto& [s, e] : factors) {
      const auto& coeffs = s % 2 == 0 ? d.split_coeffs.at(s / 2).first : d.split_coeffs.at(s / 2).second;
      exact *= std::pow(splits.at(s)[t], e);
      approx *= std::pow(coeffs[j], e);
    }
    err = std::max(err, std::abs(exact - approx));
  }
  return err;
}

}  // namespace lla
