#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lla/free_objects.hpp"

namespace lla::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string command;
  std::vector<std::string> exprs;
  std::string gens;  // "v=e1;w=e2" or "v=[1,-0.5]"
  int n = 0;         // 0: inferred
  int grid_r = 33;
  int grid_sphere = 8;
  int ball_points = 0;  // 0: per-dimension default
  std::vector<double> deltas;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int iters = 1000;
  int pair_trials = 200;
  std::string out;
};

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsage = 2;

// Builds the generator map for `vars`. Unlisted variables get e_1, e_2, ...
// in lexicographic order after the listed ones' indices.
GeneratorMap parse_generators(const std::string& text, const std::vector<std::string>& vars, int n);

int cmd_check_identity(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_surface(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_norm(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_discretize(const RunConfig& cfg, std::ostream& out, std::ostream& log);

// Dispatches on cfg.command, mapping library errors to kUsage.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace lla::cli
