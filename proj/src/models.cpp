#include "lla/models.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <tuple>

#include "lla/rewrite.hpp"

namespace lla {

namespace {

std::atomic<std::uint64_t> next_model_id{1};

void check_weights(const std::vector<double>& w, bool strictly_positive, const char* what) {
  for (double c : w) {
    bool ok = std::isfinite(c) && c <= 1.0 && (strictly_positive ? c > 0.0 : c >= 0.0);
    if (!ok) {
      throw Error(std::string(what) + " weight " + format_number(c) + " outside " +
                  (strictly_positive ? "(0, 1]" : "[0, 1]"));
    }
  }
}

}  // namespace

Model::Model(std::size_t points) : points_(points), id_(next_model_id++) {}

WeightedProductModel::WeightedProductModel(std::vector<double> weights)
    : Model(weights.size()), weights_(std::move(weights)) {}

std::vector<double> WeightedProductModel::multiply(std::span<const double> a, std::span<const double> b) const {
  std::vector<double> out(size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = weights_[t] * a[t] * b[t];
  return out;
}

std::shared_ptr<const WeightedGridModel> WeightedGridModel::create(std::vector<double> weights) {
  check_weights(weights, false, "weighted grid");
  return std::shared_ptr<const WeightedGridModel>(new WeightedGridModel(std::move(weights)));
}

nlohmann::json WeightedGridModel::to_json() const { return {{"kind", kind()}, {"weights", weights()}}; }

std::shared_ptr<const DiagonalAlgebra> DiagonalAlgebra::create(std::vector<double> weights) {
  check_weights(weights, true, "diagonal algebra");
  return std::shared_ptr<const DiagonalAlgebra>(new DiagonalAlgebra(std::move(weights)));
}

nlohmann::json DiagonalAlgebra::to_json() const { return {{"kind", kind()}, {"weights", weights()}}; }

std::shared_ptr<const ZeroProductModel> ZeroProductModel::create(std::size_t points) {
  return std::shared_ptr<const ZeroProductModel>(new ZeroProductModel(points));
}

std::vector<double> ZeroProductModel::multiply(std::span<const double>, std::span<const double>) const {
  return std::vector<double>(size(), 0.0);
}

nlohmann::json ZeroProductModel::to_json() const { return {{"kind", kind()}, {"points", size()}}; }

ModelPtr model_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "diagonal") return DiagonalAlgebra::create(j.at("weights").get<std::vector<double>>());
  if (kind == "weighted_grid") return WeightedGridModel::create(j.at("weights").get<std::vector<double>>());
  if (kind == "zero_product") return ZeroProductModel::create(j.at("points").get<std::size_t>());
  throw Error("unknown model kind '" + kind + "'");
}

ModelElement::ModelElement(ModelPtr model, std::vector<double> coords)
    : model_(std::move(model)), coords_(std::move(coords)) {
  if (!model_) throw Error("model element without a model");
  if (coords_.size() != model_->size()) {
    throw ModelMismatch("element has " + std::to_string(coords_.size()) + " coordinates, model has " +
                        std::to_string(model_->size()) + " points");
  }
}

ModelElement ModelElement::zero(ModelPtr model) {
  std::size_t n = model->size();
  return ModelElement(std::move(model), std::vector<double>(n, 0.0));
}

ModelElement ModelElement::random(ModelPtr model, Rng& rng) {
  std::vector<double> c(model->size());
  for (auto& x : c) x = uniform(rng, -1.0, 1.0);
  return ModelElement(std::move(model), std::move(c));
}

double ModelElement::sup_norm() const {
  double m = 0.0;
  for (double x : coords_) m = std::max(m, std::abs(x));
  return m;
}

bool ModelElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double x) { return x == 0.0; });
}

namespace {

void same_model(const ModelElement& a, const ModelElement& b) {
  if (a.model()->id() != b.model()->id()) throw ModelMismatch("elements belong to different models");
}

template <class F>
ModelElement zip(const ModelElement& a, const ModelElement& b, F f) {
  same_model(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(a[i], b[i]);
  return ModelElement(a.model(), std::move(out));
}

}  // namespace

ModelElement operator+(const ModelElement& a, const ModelElement& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}

ModelElement operator*(double c, const ModelElement& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * a[i];
  return ModelElement(a.model(), std::move(out));
}

ModelElement operator*(const ModelElement& a, const ModelElement& b) {
  same_model(a, b);
  return ModelElement(a.model(), a.model()->multiply(a.coords(), b.coords()));
}

ModelElement join(const ModelElement& a, const ModelElement& b) {
  return zip(a, b, [](double x, double y) { return std::max(x, y); });
}

ModelElement meet(const ModelElement& a, const ModelElement& b) {
  return zip(a, b, [](double x, double y) { return std::min(x, y); });
}

ModelElement abs(const ModelElement& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(a[i]);
  return ModelElement(a.model(), std::move(out));
}

ModelElement eval_in_model(const Expr& e, const ModelPtr& m, const ModelAssignment& a) {
  struct Ops {
    const ModelPtr& model;
    const ModelAssignment& values;
    ModelElement zero() { return ModelElement::zero(model); }
    ModelElement var(const std::string& n) {
      auto it = values.find(n);
      if (it == values.end()) throw MissingVariable(n);
      if (it->second.model()->id() != model->id()) {
        throw ModelMismatch("variable '" + n + "' is assigned an element of another model");
      }
      return it->second;
    }
    ModelElement scale(double c, const ModelElement& x) { return c * x; }
    ModelElement add(const ModelElement& x, const ModelElement& y) { return x + y; }
    ModelElement join(const ModelElement& x, const ModelElement& y) { return lla::join(x, y); }
    ModelElement mul(const ModelElement& x, const ModelElement& y) { return x * y; }
  } ops{m, a};
  return evaluate(e, ops);
}

std::vector<double> majorant_bound(const Expr& e, const ModelAssignment& a) {
  Polynomial p = polynomial_majorant(e);
  std::size_t n = a.empty() ? 0 : a.begin()->second.size();
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    out[t] = p.evaluate([&](const std::string& s) {
      auto it = a.find(s);
      if (it == a.end()) throw MissingVariable(s);
      return std::abs(it->second[t]);
    });
  }
  return out;
}

namespace {

std::vector<double> basis(std::size_t n, std::size_t j) {
  std::vector<double> e(n, 0.0);
  e[j] = 1.0;
  return e;
}

bool all_zero(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

bool disjoint(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::min(std::abs(a[i]), std::abs(b[i])) != 0.0) return false;
  return true;
}

double sup(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Random support partition: each point goes to x, to y, or to neither.
std::pair<std::vector<double>, std::vector<double>> disjoint_pair(Rng& rng, std::size_t n) {
  std::vector<double> x(n, 0.0), y(n, 0.0);
  std::uniform_int_distribution<int> side(0, 2);
  for (std::size_t i = 0; i < n; ++i) {
    switch (side(rng)) {
      case 0: x[i] = uniform(rng, 0.0, 1.0); break;
      case 1: y[i] = uniform(rng, 0.0, 1.0); break;
      default: break;
    }
  }
  return {x, y};
}

}  // namespace

FAlgebraReport check_f_algebra_condition(const ModelPtr& m, int trials, std::uint64_t seed) {
  FAlgebraReport report;
  const std::size_t n = m->size();
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<double> z(n);
    for (auto& c : z) c = uniform(rng, 0.0, 1.0);
    auto [x, y] = disjoint_pair(rng, n);
    ++report.trials;
    bool bad = !disjoint(m->multiply(z, x), y) || !disjoint(m->multiply(x, z), y);
    if (bad) {
      if (!report.witness) report.witness = std::array<std::vector<double>, 3>{z, x, y};
      ++report.violations;
    }
  }
  return report;
}

SemiprimeReport check_semiprime(const ModelPtr& m, int trials, std::uint64_t seed) {
  const std::size_t n = m->size();
  for (std::size_t j = 0; j < n; ++j) {
    auto e = basis(n, j);
    if (all_zero(m->multiply(e, e))) return {false, e};
  }
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<double> x(n);
    for (auto& c : x) c = uniform(rng, -1.0, 1.0);
    if (!all_zero(x) && all_zero(m->multiply(x, x))) return {false, x};
  }
  return {};
}

FStarReport check_fstar(const ModelPtr& m, int trials, std::uint64_t seed) {
  const std::size_t n = m->size();
  auto consistent = [&](const std::vector<double>& a, const std::vector<double>& b) {
    return all_zero(m->multiply(a, b)) == disjoint(a, b);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto a = basis(n, i);
      auto b = basis(n, j);
      if (!consistent(a, b)) return {false, std::make_pair(a, b)};
    }
  }
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<double> a, b;
    if (t % 2 == 0) {
      std::tie(a, b) = disjoint_pair(rng, n);
    } else {
      a.resize(n);
      b.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = uniform(rng, -1.0, 1.0);
        b[i] = uniform(rng, -1.0, 1.0);
      }
    }
    if (!consistent(a, b)) return {false, std::make_pair(a, b)};
  }
  return {};
}

SubmultiplicativeReport check_submultiplicative(const ModelPtr& m, int trials, std::uint64_t seed) {
  const std::size_t n = m->size();
  constexpr double kSlack = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
  auto ok = [&](const std::vector<double>& a, const std::vector<double>& b) {
    return sup(m->multiply(a, b)) <= sup(a) * sup(b) * kSlack;
  };
  for (std::size_t j = 0; j < n; ++j) {
    auto e = basis(n, j);
    if (!ok(e, e)) return {false, std::make_pair(e, e)};
  }
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = uniform(rng, -1.0, 1.0);
      b[i] = uniform(rng, -1.0, 1.0);
    }
    if (!ok(a, b)) return {false, std::make_pair(a, b)};
  }
  return {};
}

std::shared_ptr<const WeightedGridModel> random_weighted_grid(Rng& rng, std::size_t points) {
  std::vector<double> w(points);
  for (auto& c : w) c = uniform(rng, 0.0, 1.0) < 0.2 ? 0.0 : uniform(rng, 0.0, 1.0);
  return WeightedGridModel::create(std::move(w));
}

std::shared_ptr<const DiagonalAlgebra> random_diagonal(Rng& rng, std::size_t atoms) {
  std::vector<double> c(atoms);
  // uniform on (0, 1]
  for (auto& x : c) x = 1.0 - uniform(rng, 0.0, 1.0);
  return DiagonalAlgebra::create(std::move(c));
}

std::vector<ModelPtr> registered_models(std::uint64_t seed, int count) {
  std::vector<ModelPtr> out;
  std::uniform_int_distribution<std::size_t> size(1, 8);
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    out.push_back(random_weighted_grid(rng, size(rng)));
  }
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed ^ 0xD1A6ULL, static_cast<std::uint64_t>(i)));
    out.push_back(random_diagonal(rng, size(rng)));
  }
  out.push_back(ZeroProductModel::create(8));
  return out;
}

}  // namespace lla
