#include <algorithm>
#include <sstream>
#include <tuple>

#include "flmm/results_io.hpp"

namespace flmm {

namespace {

struct Cell {
  Method method;
  double beta;
};

std::vector<Cell> sorted_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  for (Method m : cfg.methods) {
    for (double b : cfg.betas) cells.push_back({m, b});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return std::tuple(static_cast<int>(a.method), a.beta) < std::tuple(static_cast<int>(b.method), b.beta);
  });
  cells.erase(std::unique(cells.begin(), cells.end(),
                          [](const Cell& a, const Cell& b) { return a.method == b.method && a.beta == b.beta; }),
              cells.end());
  return cells;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentOutcome out;
  const auto cells = sorted_cells(cfg);

  switch (cfg.kind) {
    case ExperimentKind::Weights: {
      std::vector<WeightsResult> res;
      for (const auto& c : cells) {
        res.push_back({c.method, c.beta, method_weights(MethodDescriptor{c.method}, FractionalOrder(c.beta), cfg.n_weights)});
      }
      out.payload = render(res, cfg.format);
      break;
    }
    case ExperimentKind::Solve: {
      std::vector<SolutionTrace<double>> res;
      const Grid g = Grid::over(cfg.t0, cfg.t_end, cfg.steps);
      for (const auto& c : cells) {
        const auto bp = builtin_problem(cfg.problem, FractionalOrder(c.beta), cfg.params);
        res.push_back(solve(bp.problem, MethodDescriptor{c.method}, g, cfg.newton));
      }
      out.payload = render(res, cfg.format);
      break;
    }
    case ExperimentKind::Convergence: {
      for (auto m : cfg.m_list) {
        if (m > kLargestRecommendedM) {
          out.warnings.push_back("M=" + std::to_string(m) + " exceeds " + std::to_string(kLargestRecommendedM) +
                                 "; cost grows as M^2");
        }
      }
      std::vector<ConvergenceTable> res;
      for (const auto& c : cells) {
        ConvergenceSpec spec{c.method, c.beta, cfg.problem, cfg.params, cfg.m_list, cfg.newton};
        res.push_back(run_convergence(spec));
        if (res.back().failure) {
          std::ostringstream os;
          os << method_name(c.method) << " beta=" << c.beta << ": " << *res.back().failure;
          out.failures.push_back(os.str());
        }
      }
      out.payload = render(res, cfg.format);
      break;
    }
    case ExperimentKind::StabilityBoundary: {
      std::vector<BoundaryCurve> res;
      for (const auto& c : cells) res.push_back(boundary_curve(MethodDescriptor{c.method}, FractionalOrder(c.beta), cfg.samples));
      out.payload = render(res, cfg.format);
      break;
    }
    case ExperimentKind::StabilityGrid: {
      std::vector<GridResult> res;
      for (const auto& c : cells) {
        const MethodDescriptor m{c.method};
        const FractionalOrder beta(c.beta);
        GridResult g{c.method, c.beta,
                     membership_grid(m, beta, cfg.re_lo, cfg.re_hi, cfg.im_lo, cfg.im_hi, cfg.cells, cfg.samples), {}};
        if (cfg.with_oracle) {
          for (const auto& cell : g.cells) g.oracle.push_back(dynamic_oracle(m, beta, cell.zeta));
        }
        res.push_back(std::move(g));
      }
      out.payload = render(res, cfg.format);
      break;
    }
    case ExperimentKind::StabilityCompare: {
      std::vector<MinusOneComparison> res;
      for (double b : sorted_unique(cfg.betas)) res.push_back(compare_at_minus_one(FractionalOrder(b)));
      out.payload = render(res, cfg.format);
      break;
    }
  }
  return out;
}

}  // namespace flmm
