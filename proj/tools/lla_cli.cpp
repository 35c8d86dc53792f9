#include <iostream>

#include <CLI11.hpp>

#include "cli_commands.hpp"

int main(int argc, char** argv) {
  using lla::cli::RunConfig;
  CLI::App app{"Lattice-algebra expression toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--expr", cfg.exprs, "Expression (repeatable)");
    sub->add_option("--gens", cfg.gens, "Generators, e.g. \"v=e1;w=[0.5,0.5]\"");
    sub->add_option("--n", cfg.n, "Dimension of l1^n")->check(CLI::NonNegativeNumber);
    sub->add_option("--grid-r", cfg.grid_r, "Radial levels of the cylinder grid")->check(CLI::Range(2, 100000));
    sub->add_option("--grid-sphere", cfg.grid_sphere, "Points per face axis of the sphere grid")
        ->check(CLI::Range(2, 100000));
    sub->add_option("--ball-points", cfg.ball_points, "Points per axis of the dual-ball grid (odd)");
    sub->add_option("--delta", cfg.deltas, "Partition mesh (repeatable)");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--tol", cfg.tol, "Vanishing tolerance");
    sub->add_option("--iters", cfg.iters, "Search iterations")->check(CLI::NonNegativeNumber);
    sub->add_option("--pairs", cfg.pair_trials, "Random pairs for the product bound")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", cfg.out, "Output file (surface: directory)");
  };
  for (auto [name, help] : {std::pair{"check-identity", "Test an identity on R and in the registered models"},
                            std::pair{"kernel", "Classify an expression against the dual-ball restriction"},
                            std::pair{"surface", "Write the n=2 cylinder surfaces as CSV"},
                            std::pair{"norm", "Lower and upper bounds for the free norm on FBFA(l1^n)"},
                            std::pair{"discretize", "Discretize generators into a diagonal algebra"}}) {
    common(app.add_subcommand(name, help));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lla::cli::kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return lla::cli::run(cfg, std::cout, std::cerr);
}
