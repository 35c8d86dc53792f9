#include "cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lla/discretizer.hpp"
#include "lla/models.hpp"
#include "lla/random.hpp"
#include "lla/rewrite.hpp"
#include "lla/star_model.hpp"
#include "lla/tau_norm.hpp"

namespace lla::cli {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error("not a number: '" + s + "'");
  }
  if (used != s.size()) throw Error("not a number: '" + s + "'");
  return v;
}

// Either e<k> (1-based) or a bracketed coordinate list.
struct GenSpec {
  int basis = 0;
  std::vector<double> coords;
};

GenSpec parse_gen_value(const std::string& v) {
  GenSpec g;
  if (v.size() >= 2 && v.front() == 'e') {
    int k = 0;
    try {
      k = std::stoi(v.substr(1));
    } catch (const std::exception&) {
      throw Error("bad generator '" + v + "'");
    }
    if (k < 1 || std::to_string(k) != v.substr(1)) throw Error("bad generator '" + v + "'");
    g.basis = k;
    return g;
  }
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']') {
    for (const auto& c : split(v.substr(1, v.size() - 2), ',')) g.coords.push_back(parse_double(c));
    if (g.coords.empty()) throw Error("empty generator vector");
    return g;
  }
  throw Error("bad generator '" + v + "' (expected e<k> or [a,b,...])");
}

std::vector<std::string> all_variables(const RunConfig& cfg, std::vector<Expr>& exprs) {
  std::set<std::string> vars;
  for (const auto& text : cfg.exprs) {
    exprs.push_back(desugar(parse(text)));
    for (const auto& v : variables(exprs.back())) vars.insert(v);
  }
  return {vars.begin(), vars.end()};
}

json params(const RunConfig& cfg, const GeneratorMap& gens) {
  json g = json::object();
  for (const auto& [v, x] : gens) g[v] = x;
  return {{"exprs", cfg.exprs},   {"generators", g},   {"n", cfg.n},         {"gridR", cfg.grid_r},
          {"gridSphere", cfg.grid_sphere}, {"ballPoints", cfg.ball_points}, {"deltas", cfg.deltas},
          {"tol", cfg.tol},       {"iters", cfg.iters}, {"pairTrials", cfg.pair_trials}};
}

json header(const RunConfig& cfg, const GeneratorMap& gens) {
  return {{"command", cfg.command}, {"version", kVersion}, {"seed", cfg.seed}, {"params", params(cfg, gens)}};
}

void emit(const RunConfig& cfg, const json& report, std::ostream& out) {
  std::string text = report.dump(2) + "\n";
  if (!cfg.out.empty() && cfg.command != "surface") {
    std::ofstream f(cfg.out);
    if (!f) throw Error("cannot write " + cfg.out);
    f << text;
  }
  out << text;
}

int dimension(const GeneratorMap& gens) {
  return gens.empty() ? 1 : static_cast<int>(gens.begin()->second.size());
}

const Expr& single_expr(const std::vector<Expr>& exprs) {
  if (exprs.size() != 1) throw Error("exactly one --expr is required");
  return exprs.front();
}

}  // namespace

GeneratorMap parse_generators(const std::string& text, const std::vector<std::string>& vars, int n) {
  std::map<std::string, GenSpec> specs;
  for (const auto& item : split(text, ';')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("bad generator assignment '" + item + "'");
    specs[trim(item.substr(0, eq))] = parse_gen_value(trim(item.substr(eq + 1)));
  }
  std::set<int> used;
  int dim = n;
  for (const auto& [v, g] : specs) {
    if (g.basis > 0) {
      used.insert(g.basis);
      dim = std::max(dim, n > 0 ? n : g.basis);
    } else {
      dim = std::max(dim, static_cast<int>(g.coords.size()));
    }
  }
  int next = 1;
  for (const auto& v : vars) {
    if (specs.count(v)) continue;
    while (used.count(next)) ++next;
    specs[v].basis = next;
    used.insert(next);
    if (n <= 0) dim = std::max(dim, next);
  }
  if (dim <= 0) dim = 1;
  GeneratorMap out;
  for (const auto& [v, g] : specs) {
    if (g.basis > 0) {
      if (g.basis > dim) throw Error("generator e" + std::to_string(g.basis) + " exceeds dimension n=" + std::to_string(dim));
      std::vector<double> x(static_cast<std::size_t>(dim), 0.0);
      x[static_cast<std::size_t>(g.basis - 1)] = 1.0;
      out[v] = x;
    } else {
      if (static_cast<int>(g.coords.size()) != dim) throw Error("generator '" + v + "' has the wrong dimension");
      out[v] = g.coords;
    }
  }
  return out;
}

int cmd_check_identity(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  std::vector<Expr> exprs;
  all_variables(cfg, exprs);
  const Expr& e = single_expr(exprs);
  RealSampling s;
  s.tol = cfg.tol;
  s.seed = cfg.seed;
  auto real = vanishes_on_reals(e, s);

  auto vars = variables(e);
  int checked = 0;
  int nonzero = 0;
  json failures = json::array();
  for (const auto& m : registered_models(cfg.seed)) {
    for (int trial = 0; trial < 5; ++trial) {
      Rng rng(derive_seed(cfg.seed ^ m->size(), static_cast<std::uint64_t>(checked)));
      ModelAssignment a;
      for (const auto& v : vars) a.emplace(v, ModelElement::random(m, rng));
      auto value = eval_in_model(e, m, a);
      auto bound = majorant_bound(e, a);
      ++checked;
      bool zero = true;
      for (std::size_t t = 0; t < value.size(); ++t) {
        if (std::abs(value[t]) > cfg.tol * (1.0 + bound[t])) zero = false;
      }
      if (!zero) {
        ++nonzero;
        if (real.vanishes && failures.size() < 5) failures.push_back({{"model", m->to_json()}, {"value", value.coords()}});
      }
    }
  }

  json r = header(cfg, {});
  r["expr"] = print(e);
  r["vanishesOnReals"] = real.vanishes;
  r["realMaxResidual"] = real.max_residual;
  r["realPoints"] = real.points;
  r["modelsChecked"] = checked;
  r["modelNonzero"] = nonzero;
  int code = kOk;
  if (real.vanishes) {
    r["classification"] = nonzero == 0 ? "identity" : "inconsistent";
    r["failures"] = failures;
    if (nonzero != 0) code = kViolation;
  } else {
    r["classification"] = "non-identity";
    json w = json::object();
    for (std::size_t k = 0; k < vars.size(); ++k) w[vars[k]] = real.witness[k];
    r["realWitness"] = w;
  }
  r["consistent"] = code == kOk;
  emit(cfg, r, out);
  log << "check-identity: " << r["classification"].get<std::string>() << " (" << checked << " model evaluations, "
      << nonzero << " nonzero)\n";
  return code;
}

int cmd_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  std::vector<Expr> exprs;
  auto vars = all_variables(cfg, exprs);
  const Expr& e = single_expr(exprs);
  auto gens = parse_generators(cfg.gens, vars, cfg.n);
  const int n = dimension(gens);
  int m = cfg.ball_points;
  if (m <= 0) {
    static constexpr int kDefaults[] = {10001, 201, 41};
    m = n <= 3 ? kDefaults[n - 1] : 11;
  }
  auto ball = vanishes_on_ball(e, gens, BallGrid(n, m), cfg.tol);
  RealSampling s;
  s.tol = cfg.tol;
  s.seed = cfg.seed;
  auto real = vanishes_on_reals(e, s);

  std::string cls = !ball.vanishes ? "nonzero on ball" : (real.vanishes ? "identity" : "ball-kernel witness");
  RunConfig echo = cfg;
  echo.ball_points = m;
  json r = header(echo, gens);
  r["expr"] = print(e);
  r["classification"] = cls;
  r["ball"] = {{"vanishes", ball.vanishes}, {"maxResidual", ball.max_residual}, {"points", ball.points}, {"witness", ball.witness}};
  json w = json::object();
  for (std::size_t k = 0; k < real.witness.size(); ++k) w[variables(e)[k]] = real.witness[k];
  r["reals"] = {{"vanishes", real.vanishes}, {"maxResidual", real.max_residual}, {"points", real.points}, {"witness", w}};
  emit(cfg, r, out);
  log << "kernel: " << cls << '\n';
  return kOk;
}

int cmd_surface(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.n != 0 && cfg.n != 2) throw Error("surface needs n = 2");
  std::vector<Expr> exprs;
  auto vars = all_variables(cfg, exprs);
  auto gens = parse_generators(cfg.gens, vars, 2);
  if (!gens.empty() && dimension(gens) != 2) throw Error("surface needs n = 2");
  auto grid = CylinderGrid::uniform(2, cfg.grid_r, cfg.grid_sphere);
  const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
  std::filesystem::create_directories(dir);

  auto one = StarFunction::constant(grid, 1.0);
  std::vector<std::pair<std::string, StarFunction>> panels{
      {"eta_e1.csv", eta({1.0, 0.0}, grid)},
      {"eta_e2.csv", eta({0.0, 1.0}, grid)},
      {"one_star_one.csv", star_product(one, one)},
  };
  for (std::size_t k = 0; k < exprs.size(); ++k) {
    panels.emplace_back("expr" + std::to_string(k + 1) + ".csv", hatT_eval(exprs[k], gens, grid));
  }
  json files = json::array();
  for (const auto& [name, f] : panels) {
    auto path = dir / name;
    std::ofstream fs(path);
    if (!fs) throw Error("cannot write " + path.string());
    write_csv(fs, f);
    files.push_back(path.string());
  }
  double unit_defect = 0.0;
  double eta_defect = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    unit_defect = std::max(unit_defect, std::abs(panels[2].second.values[i] - grid->r(i)));
    eta_defect = std::max(eta_defect, std::abs(panels[0].second.values[i] - grid->u(i)[0]));
  }
  json r = header(cfg, gens);
  r["files"] = files;
  r["gridPoints"] = grid->size();
  r["oneStarOneMinusR"] = unit_defect;
  r["etaE1MinusU1"] = eta_defect;
  emit(cfg, r, out);
  log << "surface: wrote " << files.size() << " files to " << dir.string() << '\n';
  return kOk;
}

int cmd_norm(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  std::vector<Expr> exprs;
  auto vars = all_variables(cfg, exprs);
  const Expr& e = single_expr(exprs);
  auto gens = parse_generators(cfg.gens, vars, cfg.n);
  TauConfig tc;
  tc.search_iters = cfg.iters;
  if (!cfg.deltas.empty()) tc.deltas = cfg.deltas;
  tc.seed = cfg.seed;
  tc.r_levels = cfg.grid_r;
  tc.per_face = cfg.grid_sphere;
  auto s = norm_sandwich(e, gens, tc);
  RunConfig echo = cfg;
  echo.deltas = tc.deltas;
  json r = header(echo, gens);
  r["expr"] = print(e);
  r.update(s.to_json());
  emit(cfg, r, out);
  log << "norm: " << format_number(s.lower) << " <= ||" << print(e) << "|| <= " << format_number(s.upper) << '\n';
  return kOk;
}

int cmd_discretize(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  std::vector<Expr> exprs;
  auto vars = all_variables(cfg, exprs);
  auto gens = parse_generators(cfg.gens, vars, cfg.n > 0 ? cfg.n : 2);
  if (gens.empty()) {
    for (int i = 1; i <= (cfg.n > 0 ? cfg.n : 2); ++i) vars.push_back("x" + std::to_string(i));
    gens = parse_generators(cfg.gens, vars, cfg.n > 0 ? cfg.n : 2);
  }
  const int n = dimension(gens);
  auto deltas = cfg.deltas.empty() ? std::vector<double>{1.0 / 32, 1.0 / 64, 1.0 / 128} : cfg.deltas;
  for (double d : deltas) {
    if (!(d > 0.0 && d < 1.0)) throw Error("delta must lie in (0, 1)");
  }
  auto grid = CylinderGrid::uniform(n, cfg.grid_r, cfg.grid_sphere);

  // Generators eta_x, rescaled into the unit ball when ||x||_1 > 1; weight r.
  DiscretizationInput in;
  json scales = json::object();
  for (const auto& [v, x] : gens) {
    double norm = l1_norms({{v, x}}).at(v);
    double scale = norm > 1.0 ? 1.0 / norm : 1.0;
    scales[v] = scale;
    auto f = eta(x, grid).values;
    for (auto& c : f) c = std::clamp(c * scale, -1.0, 1.0);
    in.generators.emplace_back(v, std::move(f));
  }
  in.weight.resize(grid->size());
  for (std::size_t t = 0; t < grid->size(); ++t) in.weight[t] = grid->r(t);

  RunConfig echo = cfg;
  echo.deltas = deltas;
  json r = header(echo, gens);
  r["gridPoints"] = grid->size();
  r["generatorScale"] = scales;
  r["reports"] = json::array();
  bool ok = true;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    auto d = discretize(in, deltas[k]);
    auto rep = verify_bounds(in, d, exprs, cfg.pair_trials, derive_seed(cfg.seed, k));
    ok = ok && rep.passed();
    r["reports"].push_back(rep.to_json());
    log << "discretize: delta=" << format_number(deltas[k]) << " atoms=" << rep.atoms
        << " supError=" << format_number(rep.split_sup_error) << (rep.passed() ? " ok" : " FAILED") << '\n';
  }
  r["passed"] = ok;
  emit(cfg, r, out);
  return ok ? kOk : kViolation;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  try {
    if (cfg.command == "check-identity") return cmd_check_identity(cfg, out, log);
    if (cfg.command == "kernel") return cmd_kernel(cfg, out, log);
    if (cfg.command == "surface") return cmd_surface(cfg, out, log);
    if (cfg.command == "norm") return cmd_norm(cfg, out, log);
    if (cfg.command == "discretize") return cmd_discretize(cfg, out, log);
    log << "unknown command '" << cfg.command << "'\n";
  } catch (const ParseError& e) {
    log << "parse error: " << e.what() << '\n';
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace lla::cli
