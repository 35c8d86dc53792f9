#pragma once

// Finite Archimedean f-algebra models: real vectors over a finite point set
// with the coordinatewise lattice, the sup norm, and a model-specific product.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lla/expr.hpp"
#include "lla/random.hpp"

namespace lla {

class ModelMismatch : public Error {
 public:
  using Error::Error;
};

class Model {
 public:
  virtual ~Model() = default;
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  std::size_t size() const { return points_; }
  std::uint64_t id() const { return id_; }

  virtual std::string kind() const = 0;
  virtual std::vector<double> multiply(std::span<const double> a, std::span<const double> b) const = 0;
  virtual nlohmann::json to_json() const = 0;

 protected:
  explicit Model(std::size_t points);

 private:
  std::size_t points_;
  std::uint64_t id_;
};

using ModelPtr = std::shared_ptr<const Model>;

// Pointwise product scaled by a weight: (x y)(t) = w(t) x(t) y(t).
class WeightedProductModel : public Model {
 public:
  const std::vector<double>& weights() const { return weights_; }
  std::vector<double> multiply(std::span<const double> a, std::span<const double> b) const override;

 protected:
  explicit WeightedProductModel(std::vector<double> weights);

 private:
  std::vector<double> weights_;
};

// C(K) on a finite K with weight 0 <= w <= 1. Zero weights are allowed, so
// the model need not be semiprime.
class WeightedGridModel final : public WeightedProductModel {
 public:
  static std::shared_ptr<const WeightedGridModel> create(std::vector<double> weights);
  std::string kind() const override { return "weighted_grid"; }
  nlohmann::json to_json() const override;

 private:
  using WeightedProductModel::WeightedProductModel;
};

// R^l with atoms a_j, a_i a_j = 0 for i != j and a_j a_j = c_j a_j,
// 0 < c_j <= 1. Always semiprime.
class DiagonalAlgebra final : public WeightedProductModel {
 public:
  static std::shared_ptr<const DiagonalAlgebra> create(std::vector<double> weights);
  std::size_t atom_count() const { return size(); }
  std::string kind() const override { return "diagonal"; }
  nlohmann::json to_json() const override;

 private:
  using WeightedProductModel::WeightedProductModel;
};

// A vector lattice with the identically zero product.
class ZeroProductModel final : public Model {
 public:
  static std::shared_ptr<const ZeroProductModel> create(std::size_t points);
  std::string kind() const override { return "zero_product"; }
  std::vector<double> multiply(std::span<const double> a, std::span<const double> b) const override;
  nlohmann::json to_json() const override;

 private:
  using Model::Model;
};

ModelPtr model_from_json(const nlohmann::json& j);

class ModelElement {
 public:
  ModelElement(ModelPtr model, std::vector<double> coords);

  static ModelElement zero(ModelPtr model);
  static ModelElement random(ModelPtr model, Rng& rng);

  const ModelPtr& model() const { return model_; }
  const std::vector<double>& coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const { return coords_.size(); }

  double sup_norm() const;
  bool is_zero() const;

  friend ModelElement operator+(const ModelElement& a, const ModelElement& b);
  friend ModelElement operator*(double c, const ModelElement& a);
  friend ModelElement operator*(const ModelElement& a, const ModelElement& b);
  friend ModelElement join(const ModelElement& a, const ModelElement& b);
  friend ModelElement meet(const ModelElement& a, const ModelElement& b);
  friend ModelElement abs(const ModelElement& a);

 private:
  ModelPtr model_;
  std::vector<double> coords_;
};

using ModelAssignment = std::map<std::string, ModelElement>;

ModelElement eval_in_model(const Expr& e, const ModelPtr& m, const ModelAssignment& a);

// Coordinatewise majorant bound p(|a_1(t)|, ..., |a_n(t)|) for each point t.
std::vector<double> majorant_bound(const Expr& e, const ModelAssignment& a);

struct FAlgebraReport {
  int trials = 0;
  int violations = 0;
  // First violating triple: z >= 0 and disjoint x, y >= 0.
  std::optional<std::array<std::vector<double>, 3>> witness;
};

// For random z >= 0 and support-disjoint x, y >= 0 checks
// |z x| /\ y = 0 and |x z| /\ y = 0.
FAlgebraReport check_f_algebra_condition(const ModelPtr& m, int trials, std::uint64_t seed);

struct SemiprimeReport {
  bool semiprime = true;
  std::optional<std::vector<double>> witness;  // x != 0 with x x = 0
};

// Basis vectors first (decisive for support-preserving products), then random
// elements.
SemiprimeReport check_semiprime(const ModelPtr& m, int trials, std::uint64_t seed);

struct FStarReport {
  bool fstar = true;
  std::optional<std::pair<std::vector<double>, std::vector<double>>> witness;
};

// ab = 0 iff |a| /\ |b| = 0, tested on basis pairs and random pairs with
// either disjoint or overlapping supports.
FStarReport check_fstar(const ModelPtr& m, int trials, std::uint64_t seed);

struct SubmultiplicativeReport {
  bool submultiplicative = true;
  std::optional<std::pair<std::vector<double>, std::vector<double>>> witness;
};

SubmultiplicativeReport check_submultiplicative(const ModelPtr& m, int trials, std::uint64_t seed);

std::shared_ptr<const WeightedGridModel> random_weighted_grid(Rng& rng, std::size_t points);
std::shared_ptr<const DiagonalAlgebra> random_diagonal(Rng& rng, std::size_t atoms);

// The transport suite: `count` random weighted grids, `count` random diagonal
// algebras (sizes 1..8), and one zero-product model.
std::vector<ModelPtr> registered_models(std::uint64_t seed, int count = 20);

}  // namespace lla
