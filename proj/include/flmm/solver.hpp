#pragma once

// Uniform-grid time stepping for scalar fractional initial value problems
//
//   D^beta y(t) = f(t, y),  y(t0) = y0,  0 < beta <= 1,
//
// with a catalogued implicit FLMM. Problems are first reduced to homogeneous
// initial data at the origin (u = y - y0, t -> t - t0); each step then solves
//
//   A_0 u_n + sum_{k=1}^{n} A_k u_{n-k} = h^beta sum_j Q_j f(t_{n-j}, u_{n-j}).

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "flmm/methods.hpp"
#include "flmm/series.hpp"

namespace flmm {

/// Raised when a step cannot be completed; the CLI maps it to exit code 3.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A_0 - lambda h^beta Q_0 (or the Newton Jacobian) vanished.
class SingularStepError : public NumericalFailure {
 public:
  SingularStepError(const std::string& what, std::size_t step) : NumericalFailure(what), step_(step) {}
  [[nodiscard]] std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class NewtonFailure : public NumericalFailure {
 public:
  NewtonFailure(std::size_t step, double residual, int iterations);
  [[nodiscard]] std::size_t step() const noexcept { return step_; }
  [[nodiscard]] double residual() const noexcept { return residual_; }
  [[nodiscard]] int iterations() const noexcept { return iterations_; }

 private:
  std::size_t step_;
  double residual_;
  int iterations_;
};

/// t_n = t0 + n h, n = 0..steps.
struct Grid {
  double t0 = 0.0;
  double h = 1.0;
  std::size_t steps = 1;

  /// Grid with h = (t_end - t0)/steps.
  [[nodiscard]] static Grid over(double t0, double t_end, std::size_t steps);

  [[nodiscard]] double t(std::size_t n) const noexcept { return t0 + static_cast<double>(n) * h; }
  [[nodiscard]] double t_end() const noexcept { return t(steps); }
};

struct NewtonConfig {
  double tol = 1e-12;
  int max_iters = 50;

  void validate() const;
};

/// f(t, y) = lambda y + s(t).
template <typename Scalar>
struct LinearProblem {
  FractionalOrder beta;
  Scalar y0{};
  Scalar lambda{};
  std::function<Scalar(double)> source = [](double) { return Scalar{}; };
};

/// General right-hand side with its analytic partial derivative in y.
struct NonlinearProblem {
  FractionalOrder beta;
  double y0 = 0.0;
  std::function<double(double, double)> f;
  std::function<double(double, double)> f_y;
};

using ProblemDef = std::variant<LinearProblem<double>, NonlinearProblem>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct SolutionTrace {
  Grid grid;
  Vector<Scalar> y;
  /// Newton iterations per step (index 0 unused); empty for linear solves.
  std::vector<int> newton_iters;
  Method method = Method::NFLMM2;
  double beta = 1.0;

  [[nodiscard]] Vector<double> times() const {
    return Vector<double>::LinSpaced(static_cast<Eigen::Index>(grid.steps + 1), 0.0, static_cast<double>(grid.steps))
               .unaryExpr([this](double n) { return grid.t0 + n * grid.h; });
  }
};

/// sum_{k=1}^{n} A_k u_{n-k}, accumulated in ascending k.
template <typename Scalar>
[[nodiscard]] Scalar history_convolution(const CoeffSeries& weights, std::span<const Scalar> u, std::size_t n) {
  if (n == 0 || u.size() < n || weights.size() <= n) {
    throw std::invalid_argument("history_convolution: need n >= 1, len(u) >= n and len(A) > n");
  }
  Scalar acc{};
  for (std::size_t k = 1; k <= n; ++k) acc += weights[k] * u[n - k];
  return acc;
}

/// Shift to u = y - y0 on a time axis starting at zero.
template <typename Scalar>
[[nodiscard]] LinearProblem<Scalar> reduce_initial(const LinearProblem<Scalar>& p, double t0) {
  LinearProblem<Scalar> r{p.beta, Scalar{}, p.lambda, {}};
  r.source = [src = p.source, lambda = p.lambda, y0 = p.y0, t0](double t) { return src(t + t0) + lambda * y0; };
  return r;
}

[[nodiscard]] NonlinearProblem reduce_initial(const NonlinearProblem& p, double t0);

template <typename Scalar>
[[nodiscard]] SolutionTrace<Scalar> solve_linear(const LinearProblem<Scalar>& p, MethodDescriptor m, const Grid& g);

extern template SolutionTrace<double> solve_linear(const LinearProblem<double>&, MethodDescriptor, const Grid&);
extern template SolutionTrace<std::complex<double>> solve_linear(const LinearProblem<std::complex<double>>&,
                                                                 MethodDescriptor, const Grid&);

[[nodiscard]] SolutionTrace<double> solve_nonlinear(const NonlinearProblem& p, MethodDescriptor m, const Grid& g,
                                                    const NewtonConfig& cfg = {});

/// Dispatches on the right-hand side kind.
[[nodiscard]] SolutionTrace<double> solve(const ProblemDef& p, MethodDescriptor m, const Grid& g,
                                          const NewtonConfig& cfg = {});

[[nodiscard]] inline const FractionalOrder& order_of(const ProblemDef& p) {
  return std::visit([](const auto& q) -> const FractionalOrder& { return q.beta; }, p);
}

}  // namespace flmm
