#include "flmm/harness.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flmm {

namespace {

std::string registry_listing() {
  std::string s;
  for (auto n : kProblemNames) {
    if (!s.empty()) s += ", ";
    s += n;
  }
  return s;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

double parse_real(std::string_view s) {
  const std::string str(trim(s));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size() || errno == ERANGE || !std::isfinite(v)) {
    throw std::invalid_argument("not a finite real number: '" + str + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view s) {
  const auto t = trim(s);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(t) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  const auto t = trim(s);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw std::invalid_argument("not a boolean: '" + std::string(t) + "'");
}

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

}  // namespace

BuiltinProblem builtin_problem(std::string_view name, FractionalOrder beta, const ProblemParams& params) {
  const double b = beta.value();
  if (name == "paper-nonlinear") {
    const double c1 = std::tgamma(2.0 * b + 5.0) / std::tgamma(b + 5.0);
    const double c2 = 240.0 / std::tgamma(6.0 - b);
    auto exact = [b](double t) { return std::pow(t, 2.0 * b + 4.0) - 2.0 * std::pow(t, 5.0); };
    NonlinearProblem p{beta, 0.0, {}, {}};
    p.f = [=](double t, double y) {
      const double e = exact(t);
      return c1 * std::pow(t, b + 4.0) - c2 * std::pow(t, 5.0 - b) + e * e - y * y;
    };
    p.f_y = [](double, double y) { return -2.0 * y; };
    return {std::string(name), p, exact};
  }
  if (name == "poly2-linear") {
    const double c = std::tgamma(3.0) / std::tgamma(3.0 - b);
    LinearProblem<double> p{beta, 0.0, 0.0, [=](double t) { return c * std::pow(t, 2.0 - b); }};
    return {std::string(name), p, [](double t) { return t * t; }};
  }
  if (name == "constant") {
    const double y0 = params.y0;
    LinearProblem<double> p{beta, y0, 0.0, [](double) { return 0.0; }};
    return {std::string(name), p, [y0](double) { return y0; }};
  }
  if (name == "test-lambda") {
    LinearProblem<double> p{beta, params.y0, params.lambda, [](double) { return 0.0; }};
    return {std::string(name), p, {}};
  }
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'; registry: " + registry_listing());
}

std::optional<double> eoc(const EocRow& prev, const EocRow& next) {
  if (!(prev.max_error > kEocErrorFloor) || !(next.max_error > kEocErrorFloor)) return std::nullopt;
  return std::log(next.max_error / prev.max_error) / std::log(next.h / prev.h);
}

std::vector<std::size_t> default_m_list() {
  std::vector<std::size_t> ms;
  for (std::size_t m = 8; m <= kLargestRecommendedM; m *= 2) ms.push_back(m);
  return ms;
}

ConvergenceTable run_convergence(const ConvergenceSpec& spec) {
  const FractionalOrder beta(spec.beta);
  const BuiltinProblem bp = builtin_problem(spec.problem, beta, spec.params);
  if (!bp.exact) {
    throw std::invalid_argument("problem '" + spec.problem + "' has no exact solution; convergence needs one");
  }
  ConvergenceTable table;
  table.method = spec.method;
  table.beta = spec.beta;
  table.problem = spec.problem;

  for (const std::size_t M : spec.m_list) {
    const Grid g = Grid::over(0.0, 1.0, M);
    SolutionTrace<double> tr;
    try {
      tr = solve(bp.problem, MethodDescriptor{spec.method}, g, spec.newton);
    } catch (const NumericalFailure& e) {
      std::ostringstream os;
      os << "M=" << M << ": " << e.what();
      table.failure = os.str();
      break;
    }
    EocRow row{M, g.h, 0.0, std::nullopt};
    for (std::size_t n = 0; n <= M; ++n) {
      row.max_error = std::max(row.max_error, std::abs(tr.y[static_cast<Eigen::Index>(n)] - bp.exact(g.t(n))));
    }
    if (!table.rows.empty()) row.order = eoc(table.rows.back(), row);
    table.rows.push_back(row);
  }
  return table;
}

std::string_view kind_name(ExperimentKind k) noexcept {
  switch (k) {
    case ExperimentKind::Solve: return "solve";
    case ExperimentKind::Convergence: return "convergence";
    case ExperimentKind::StabilityBoundary: return "stability-boundary";
    case ExperimentKind::StabilityGrid: return "stability-grid";
    case ExperimentKind::StabilityCompare: return "stability-compare";
    case ExperimentKind::Weights: return "weights";
  }
  return "unknown";
}

ExperimentKind parse_kind(std::string_view s) {
  for (auto k : {ExperimentKind::Solve, ExperimentKind::Convergence, ExperimentKind::StabilityBoundary,
                 ExperimentKind::StabilityGrid, ExperimentKind::StabilityCompare, ExperimentKind::Weights}) {
    if (kind_name(k) == s) return k;
  }
  throw std::invalid_argument("unknown experiment kind '" + std::string(s) + "'");
}

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format '" + std::string(s) + "'; expected csv or json");
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
  if (betas.empty()) throw std::invalid_argument("at least one beta is required");
  for (double b : betas) (void)FractionalOrder(b);
  newton.validate();
  switch (kind) {
    case ExperimentKind::Solve:
      (void)Grid::over(t0, t_end, steps);
      break;
    case ExperimentKind::Convergence:
      if (m_list.empty()) throw std::invalid_argument("M-list is empty");
      for (auto m : m_list) {
        if (!is_power_of_two(m)) throw std::invalid_argument("M-list entries must be powers of two, got " + std::to_string(m));
      }
      break;
    case ExperimentKind::StabilityBoundary:
      if (samples < 8) throw std::invalid_argument("samples must be at least 8");
      break;
    case ExperimentKind::StabilityGrid:
      if (samples < 8) throw std::invalid_argument("samples must be at least 8");
      if (cells < 2) throw std::invalid_argument("cells must be at least 2");
      if (!(re_hi > re_lo) || !(im_hi > im_lo)) throw std::invalid_argument("grid ranges must be increasing");
      break;
    case ExperimentKind::StabilityCompare:
    case ExperimentKind::Weights:
      break;
  }
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t lineno = 0;
  for (auto line : split(text, '\n')) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    kv[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

std::vector<double> parse_real_list(std::string_view s) {
  std::vector<double> out;
  for (auto p : split(s, ',')) out.push_back(parse_real(p));
  return out;
}

std::vector<Method> parse_method_list(std::string_view s) {
  std::vector<Method> out;
  for (auto p : split(s, ',')) out.push_back(parse_method(p));
  return out;
}

std::vector<std::size_t> parse_m_list(std::string_view s) {
  std::vector<std::size_t> out;
  if (const auto dots = s.find(".."); dots != std::string_view::npos) {
    const std::size_t lo = parse_count(s.substr(0, dots));
    const std::size_t hi = parse_count(s.substr(dots + 2));
    if (!is_power_of_two(lo) || !is_power_of_two(hi) || hi < lo) {
      throw std::invalid_argument("M range '" + std::string(s) + "' must run between powers of two");
    }
    for (std::size_t m = lo; m <= hi; m *= 2) out.push_back(m);
    return out;
  }
  for (auto p : split(s, ',')) out.push_back(parse_count(p));
  return out;
}

void apply_key_values(ExperimentConfig& cfg, const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "kind") cfg.kind = parse_kind(value);
    else if (key == "method" || key == "methods") cfg.methods = parse_method_list(value);
    else if (key == "beta" || key == "betas") cfg.betas = parse_real_list(value);
    else if (key == "t0") cfg.t0 = parse_real(value);
    else if (key == "T" || key == "t_end") cfg.t_end = parse_real(value);
    else if (key == "N" || key == "steps") cfg.steps = parse_count(value);
    else if (key == "mlist") cfg.m_list = parse_m_list(value);
    else if (key == "problem") cfg.problem = value;
    else if (key == "y0") cfg.params.y0 = parse_real(value);
    else if (key == "lambda") cfg.params.lambda = parse_real(value);
    else if (key == "newton_tol") cfg.newton.tol = parse_real(value);
    else if (key == "newton_max_iters") cfg.newton.max_iters = static_cast<int>(parse_count(value));
    else if (key == "n") cfg.n_weights = parse_count(value);
    else if (key == "samples") cfg.samples = parse_count(value);
    else if (key == "re") {
      const auto r = parse_real_list(value);
      if (r.size() != 2) throw std::invalid_argument("re expects lo,hi");
      cfg.re_lo = r[0];
      cfg.re_hi = r[1];
    } else if (key == "im") {
      const auto r = parse_real_list(value);
      if (r.size() != 2) throw std::invalid_argument("im expects lo,hi");
      cfg.im_lo = r[0];
      cfg.im_hi = r[1];
    } else if (key == "cells") cfg.cells = parse_count(value);
    else if (key == "oracle") cfg.with_oracle = parse_bool(value);
    else if (key == "out") cfg.out = value;
    else if (key == "format") cfg.format = parse_format(value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

}  // namespace flmm
