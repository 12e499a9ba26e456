#pragma once

// Experiment driver: named test problems, convergence (EOC) studies and the
// flat key-value configuration used by the `flmm` tool.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flmm/methods.hpp"
#include "flmm/solver.hpp"

namespace flmm {

inline constexpr std::string_view kProblemNames[] = {"paper-nonlinear", "poly2-linear", "constant", "test-lambda"};

/// Free parameters of the registry problems; unused ones are ignored.
struct ProblemParams {
  double y0 = 1.0;       // constant, test-lambda
  double lambda = -1.0;  // test-lambda
};

struct BuiltinProblem {
  std::string name;
  ProblemDef problem;
  /// Exact solution, when known in closed form.
  std::function<double(double)> exact;
};

/// - paper-nonlinear: f = G(2b+5)/G(b+5) t^{b+4} - 240/G(6-b) t^{5-b} + (t^{2b+4} - 2t^5)^2 - y^2,
///   y(0) = 0, exact y = t^{2b+4} - 2t^5.
/// - poly2-linear: lambda = 0, s = G(3)/G(3-b) t^{2-b}, y(0) = 0, exact y = t^2.
/// - constant: lambda = 0, s = 0, exact y = y0.
/// - test-lambda: D^b y = lambda y, y(0) = y0; no closed form is provided.
[[nodiscard]] BuiltinProblem builtin_problem(std::string_view name, FractionalOrder beta,
                                             const ProblemParams& params = {});

/// One row of a convergence table. `order` is empty on the first row and
/// when either error is at rounding level.
struct EocRow {
  std::size_t M = 0;
  double h = 0.0;
  double max_error = 0.0;
  std::optional<double> order;
};

inline constexpr double kEocErrorFloor = 1e-13;

/// log(E_next/E_prev) / log(h_next/h_prev), or empty below the error floor.
[[nodiscard]] std::optional<double> eoc(const EocRow& prev, const EocRow& next);

struct ConvergenceTable {
  Method method = Method::NFLMM2;
  double beta = 1.0;
  std::string problem;
  std::vector<EocRow> rows;
  /// Set when a solve failed; rows hold every M completed before it.
  std::optional<std::string> failure;
};

struct ConvergenceSpec {
  Method method = Method::NFLMM2;
  double beta = 1.0;
  std::string problem = "paper-nonlinear";
  ProblemParams params;
  std::vector<std::size_t> m_list;
  NewtonConfig newton;
};

/// Solves on [0, 1] with h = 1/M for each M and records max_n |y_n - exact(t_n)|.
[[nodiscard]] ConvergenceTable run_convergence(const ConvergenceSpec& spec);

/// 8, 16, ..., 4096.
[[nodiscard]] std::vector<std::size_t> default_m_list();

inline constexpr std::size_t kLargestRecommendedM = 4096;

enum class ExperimentKind { Solve, Convergence, StabilityBoundary, StabilityGrid, StabilityCompare, Weights };
enum class OutputFormat { Csv, Json };

[[nodiscard]] std::string_view kind_name(ExperimentKind k) noexcept;
[[nodiscard]] ExperimentKind parse_kind(std::string_view s);
[[nodiscard]] OutputFormat parse_format(std::string_view s);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Solve;
  std::vector<Method> methods{Method::NFLMM2};
  std::vector<double> betas{0.5};
  double t0 = 0.0;
  double t_end = 1.0;
  std::size_t steps = 64;
  std::vector<std::size_t> m_list = default_m_list();
  std::string problem = "paper-nonlinear";
  ProblemParams params;
  NewtonConfig newton;
  std::size_t n_weights = 64;
  std::size_t samples = 2048;
  double re_lo = -4.0, re_hi = 4.0, im_lo = -4.0, im_hi = 4.0;
  std::size_t cells = 21;
  bool with_oracle = false;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::Csv;

  /// Checks cross-field invariants; throws std::invalid_argument.
  void validate() const;
};

/// Raw `key = value` pairs; '#' starts a comment.
using KeyValues = std::map<std::string, std::string>;

[[nodiscard]] KeyValues parse_key_values(std::string_view text);
[[nodiscard]] KeyValues read_config_file(const std::string& path);

/// Overlays `kv` onto `cfg`. Unknown keys are rejected.
void apply_key_values(ExperimentConfig& cfg, const KeyValues& kv);

[[nodiscard]] std::vector<double> parse_real_list(std::string_view s);
[[nodiscard]] std::vector<Method> parse_method_list(std::string_view s);
/// "8..4096" (powers of two between the bounds) or "8,16,32".
[[nodiscard]] std::vector<std::size_t> parse_m_list(std::string_view s);

}  // namespace flmm
