// flmm: command-line driver for the fractional multistep solvers.
//
//   flmm weights   --method nflmm2 --beta 0.5 --n 64 --out w.csv
//   flmm solve     --config run.cfg
//   flmm converge  --method nflmm2 --beta 0.4,0.6,0.8,1.0 --problem paper-nonlinear --mlist 8..4096 --out table1.csv
//   flmm stability boundary|grid|compare --method nflmm2 --beta 0.5 --samples 2048 --out b.csv
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure, 1 I/O error.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "flmm/harness.hpp"
#include "flmm/results_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// Flag values are collected as raw strings and overlaid on the config file,
// so both sources go through the same parser.
struct FlagSet {
  std::string config;
  std::map<std::string, std::string> values;
  bool oracle = false;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, help);
  }
};

void add_common(CLI::App* app, FlagSet& f) {
  app->add_option("--config", f.config, "key = value configuration file; flags override its entries");
  f.add(app, "--method", "method", "comma-separated methods: nflmm2, gl1, fbdf2, fam1, ft2");
  f.add(app, "--beta", "beta", "comma-separated fractional orders in (0, 1]");
  f.add(app, "--out", "out", "output path (default: stdout)");
  f.add(app, "--format", "format", "csv or json");
}

void add_problem(CLI::App* app, FlagSet& f) {
  f.add(app, "--problem", "problem", "paper-nonlinear, poly2-linear, constant or test-lambda");
  f.add(app, "--y0", "y0", "initial value (constant, test-lambda)");
  f.add(app, "--lambda", "lambda", "test-lambda coefficient");
  f.add(app, "--newton-tol", "newton_tol", "Newton step tolerance");
  f.add(app, "--newton-max-iters", "newton_max_iters", "Newton iteration cap");
}

int run(flmm::ExperimentKind kind, const FlagSet& f) {
  flmm::ExperimentConfig cfg;
  cfg.kind = kind;
  if (!f.config.empty()) {
    flmm::apply_key_values(cfg, flmm::read_config_file(f.config));
    if (cfg.kind != kind) {
      throw std::invalid_argument("config kind '" + std::string(flmm::kind_name(cfg.kind)) +
                                  "' does not match subcommand '" + std::string(flmm::kind_name(kind)) + "'");
    }
  }
  flmm::apply_key_values(cfg, f.values);
  if (f.oracle) cfg.with_oracle = true;

  const flmm::ExperimentOutcome outcome = flmm::run_experiment(cfg);
  for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << '\n';
  if (cfg.out.empty()) {
    std::cout << outcome.payload;
  } else {
    flmm::write_text_file(cfg.out, outcome.payload);
  }
  for (const auto& e : outcome.failures) std::cerr << "error: " << e << '\n';
  return outcome.failures.empty() ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional linear multistep solvers, convergence studies and stability regions"};
  app.require_subcommand(1);

  std::optional<flmm::ExperimentKind> kind;
  FlagSet flags;

  auto* weights = app.add_subcommand("weights", "emit method weight sequences A and Q");
  add_common(weights, flags);
  flags.add(weights, "--n", "n", "highest weight index");
  weights->callback([&] { kind = flmm::ExperimentKind::Weights; });

  auto* solve = app.add_subcommand("solve", "solve a registry problem on [t0, T]");
  add_common(solve, flags);
  add_problem(solve, flags);
  flags.add(solve, "--t0", "t0", "start time");
  flags.add(solve, "--T", "T", "end time");
  flags.add(solve, "--N", "N", "number of steps");
  solve->callback([&] { kind = flmm::ExperimentKind::Solve; });

  auto* converge = app.add_subcommand("converge", "max-error / EOC table on [0, 1]");
  add_common(converge, flags);
  add_problem(converge, flags);
  flags.add(converge, "--mlist", "mlist", "M values: 8..4096 or 8,16,32");
  converge->callback([&] { kind = flmm::ExperimentKind::Convergence; });

  auto* stability = app.add_subcommand("stability", "stability-region data");
  stability->require_subcommand(1);
  auto* boundary = stability->add_subcommand("boundary", "boundary locus delta(e^{i theta})");
  add_common(boundary, flags);
  flags.add(boundary, "--samples", "samples", "number of theta samples");
  boundary->callback([&] { kind = flmm::ExperimentKind::StabilityBoundary; });

  auto* grid = stability->add_subcommand("grid", "unstable-region membership on a zeta lattice");
  add_common(grid, flags);
  flags.add(grid, "--samples", "samples", "boundary samples for the winding number");
  flags.add(grid, "--re", "re", "real range lo,hi");
  flags.add(grid, "--im", "im", "imaginary range lo,hi");
  flags.add(grid, "--cells", "cells", "lattice points per axis");
  grid->add_flag("--oracle", flags.oracle, "also run the dynamic decay/growth oracle per cell");
  grid->callback([&] { kind = flmm::ExperimentKind::StabilityGrid; });

  auto* compare = stability->add_subcommand("compare", "delta(-1) for FBDF2, NFLMM2, FAM1, FT2");
  add_common(compare, flags);
  compare->callback([&] { kind = flmm::ExperimentKind::StabilityCompare; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    return run(*kind, flags);
  } catch (const flmm::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const flmm::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::logic_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  }
}
