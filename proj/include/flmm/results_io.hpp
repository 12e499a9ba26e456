#pragma once

// CSV and JSON renderings of experiment results. CSV reals carry 17
// significant digits; JSON documents carry the schema tag "flmm-kit/1".

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flmm/harness.hpp"
#include "flmm/methods.hpp"
#include "flmm/solver.hpp"
#include "flmm/stability.hpp"

namespace flmm {

inline constexpr const char* kSchemaVersion = "flmm-kit/1";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g, with "inf", "-inf" and "nan" spelled out.
[[nodiscard]] std::string format_real(double v);

struct WeightsResult {
  Method method;
  double beta;
  MethodWeights weights;
};

struct GridResult {
  Method method;
  double beta;
  std::vector<GridCell> cells;
  /// Parallel to `cells` when the dynamic oracle was run.
  std::vector<DynamicVerdict> oracle;
};

// Single-item CSV renderings use the bare headers
//   M,h,max_error,order | theta,re,im | re_zeta,im_zeta,member | k,A,Q
// and sweeps over several (method, beta) pairs prefix `method,beta`.

[[nodiscard]] std::string render_csv(const std::vector<ConvergenceTable>& tables);
[[nodiscard]] std::string render_csv(const std::vector<BoundaryCurve>& curves);
[[nodiscard]] std::string render_csv(const std::vector<GridResult>& grids);
[[nodiscard]] std::string render_csv(const std::vector<MinusOneComparison>& rows);
[[nodiscard]] std::string render_csv(const std::vector<WeightsResult>& weights);
[[nodiscard]] std::string render_csv(const std::vector<SolutionTrace<double>>& traces);

[[nodiscard]] nlohmann::json to_json(const std::vector<ConvergenceTable>& tables);
[[nodiscard]] nlohmann::json to_json(const std::vector<BoundaryCurve>& curves);
[[nodiscard]] nlohmann::json to_json(const std::vector<GridResult>& grids);
[[nodiscard]] nlohmann::json to_json(const std::vector<MinusOneComparison>& rows);
[[nodiscard]] nlohmann::json to_json(const std::vector<WeightsResult>& weights);
[[nodiscard]] nlohmann::json to_json(const std::vector<SolutionTrace<double>>& traces);

/// {schema, meta: {method, beta, t0, h, N}, t: [...], y: [...], newton_iters: [...]}.
[[nodiscard]] nlohmann::json trace_to_json(const SolutionTrace<double>& trace);
[[nodiscard]] SolutionTrace<double> trace_from_json(const nlohmann::json& j);
[[nodiscard]] SolutionTrace<double> load_trace_json(const std::filesystem::path& path);

template <typename Data>
[[nodiscard]] std::string render(const Data& data, OutputFormat format) {
  if (format == OutputFormat::Json) return to_json(data).dump(2) + "\n";
  return render_csv(data);
}

/// Writes `payload` to `path`. The parent directory must exist.
void write_text_file(const std::filesystem::path& path, const std::string& payload);

template <typename Data>
void emit_results(const Data& data, OutputFormat format, const std::filesystem::path& path) {
  write_text_file(path, render(data, format));
}

struct ExperimentOutcome {
  std::string payload;
  /// Diagnostics for cells that hit a numerical failure; the payload still
  /// contains every cell that completed.
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

/// Runs every (method, beta) cell of `cfg`, sorted by (method, beta), and
/// renders the result in `cfg.format`. Validation problems throw
/// std::invalid_argument; a failing solve in `solve` kind throws NumericalFailure.
[[nodiscard]] ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace flmm
