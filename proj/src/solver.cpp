#include "flmm/solver.hpp"

#include <cmath>
#include <sstream>

namespace flmm {

NewtonFailure::NewtonFailure(std::size_t step, double residual, int iterations)
    : NumericalFailure([&] {
        std::ostringstream os;
        os << "Newton iteration did not converge at step " << step << " after " << iterations
           << " iterations (last update " << residual << ")";
        return os.str();
      }()),
      step_(step),
      residual_(residual),
      iterations_(iterations) {}

Grid Grid::over(double t0, double t_end, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("grid needs at least one step");
  if (!(t_end > t0) || !std::isfinite(t_end) || !std::isfinite(t0)) {
    std::ostringstream os;
    os << "grid end " << t_end << " must exceed start " << t0;
    throw std::invalid_argument(os.str());
  }
  return {t0, (t_end - t0) / static_cast<double>(steps), steps};
}

void NewtonConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("Newton tolerance must be positive");
  if (max_iters < 1) throw std::invalid_argument("Newton max_iters must be at least 1");
}

NonlinearProblem reduce_initial(const NonlinearProblem& p, double t0) {
  NonlinearProblem r{p.beta, 0.0, {}, {}};
  r.f = [f = p.f, y0 = p.y0, t0](double t, double u) { return f(t + t0, u + y0); };
  r.f_y = [fy = p.f_y, y0 = p.y0, t0](double t, double u) { return fy(t + t0, u + y0); };
  return r;
}

namespace {

void check_grid(const Grid& g) {
  if (g.steps == 0 || !(g.h > 0.0) || !std::isfinite(g.h)) {
    throw std::invalid_argument("grid must have a positive finite step and at least one step");
  }
}

}  // namespace

template <typename Scalar>
SolutionTrace<Scalar> solve_linear(const LinearProblem<Scalar>& p, MethodDescriptor m, const Grid& g) {
  check_grid(g);
  const std::size_t n_steps = g.steps;
  const auto reduced = reduce_initial(p, g.t0);
  const auto [a, q] = method_weights(m, p.beta, n_steps);
  const double hb = std::pow(g.h, p.beta.value());
  const Scalar lambda = p.lambda;

  const Scalar denom = a[0] - lambda * hb * q[0];
  if (std::abs(denom) == 0.0 || !std::isfinite(std::abs(denom))) {
    std::ostringstream os;
    os << "singular linear step: lambda h^beta = " << lambda * hb << " makes A_0 - lambda h^beta Q_0 vanish";
    throw SingularStepError(os.str(), 1);
  }

  std::vector<Scalar> s(n_steps + 1);
  for (std::size_t n = 0; n <= n_steps; ++n) s[n] = reduced.source(static_cast<double>(n) * g.h);

  std::vector<Scalar> u(n_steps + 1, Scalar{});
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const Scalar c = history_convolution<Scalar>(a, std::span<const Scalar>(u.data(), n), n);
    Scalar f_side = q[0] * s[n];
    for (std::size_t j = 1; j < q.size() && j <= n; ++j) f_side += q[j] * (lambda * u[n - j] + s[n - j]);
    u[n] = (hb * f_side - c) / denom;
  }

  SolutionTrace<Scalar> out;
  out.grid = g;
  out.method = m.id();
  out.beta = p.beta.value();
  out.y.resize(static_cast<Eigen::Index>(n_steps + 1));
  out.y[0] = p.y0;
  for (std::size_t n = 1; n <= n_steps; ++n) out.y[static_cast<Eigen::Index>(n)] = u[n] + p.y0;
  return out;
}

template SolutionTrace<double> solve_linear(const LinearProblem<double>&, MethodDescriptor, const Grid&);
template SolutionTrace<std::complex<double>> solve_linear(const LinearProblem<std::complex<double>>&,
                                                          MethodDescriptor, const Grid&);

SolutionTrace<double> solve_nonlinear(const NonlinearProblem& p, MethodDescriptor m, const Grid& g,
                                      const NewtonConfig& cfg) {
  check_grid(g);
  cfg.validate();
  if (!p.f || !p.f_y) throw std::invalid_argument("nonlinear problem needs both f and f_y");

  const std::size_t n_steps = g.steps;
  const NonlinearProblem reduced = reduce_initial(p, g.t0);
  const auto [a, q] = method_weights(m, p.beta, n_steps);
  const double hb = std::pow(g.h, p.beta.value());
  const double a0 = a[0];
  const double q0 = q[0];

  SolutionTrace<double> out;
  out.grid = g;
  out.method = m.id();
  out.beta = p.beta.value();
  out.newton_iters.assign(n_steps + 1, 0);

  std::vector<double> u(n_steps + 1, 0.0);
  std::vector<double> fval(n_steps + 1, 0.0);
  fval[0] = reduced.f(0.0, 0.0);

  for (std::size_t n = 1; n <= n_steps; ++n) {
    const double tn = static_cast<double>(n) * g.h;
    const double c = history_convolution<double>(a, std::span<const double>(u.data(), n), n);
    double lagged = 0.0;
    for (std::size_t j = 1; j < q.size() && j <= n; ++j) lagged += q[j] * fval[n - j];

    double x = u[n - 1];
    double last_update = 0.0;
    int k = 0;
    bool converged = false;
    while (k < cfg.max_iters) {
      ++k;
      const double residual = a0 * x + c - hb * (q0 * reduced.f(tn, x) + lagged);
      const double jac = a0 - hb * q0 * reduced.f_y(tn, x);
      if (jac == 0.0 || !std::isfinite(jac)) {
        std::ostringstream os;
        os << "singular Newton Jacobian at step " << n << " (iterate " << x + p.y0 << ")";
        throw SingularStepError(os.str(), n);
      }
      const double dx = residual / jac;
      x -= dx;
      last_update = std::abs(dx);
      if (!std::isfinite(x)) break;
      if (last_update <= cfg.tol * (1.0 + std::abs(x + p.y0))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NewtonFailure(n, last_update, k);

    u[n] = x;
    fval[n] = reduced.f(tn, x);
    out.newton_iters[n] = k;
  }

  out.y.resize(static_cast<Eigen::Index>(n_steps + 1));
  out.y[0] = p.y0;
  for (std::size_t n = 1; n <= n_steps; ++n) out.y[static_cast<Eigen::Index>(n)] = u[n] + p.y0;
  return out;
}

SolutionTrace<double> solve(const ProblemDef& p, MethodDescriptor m, const Grid& g, const NewtonConfig& cfg) {
  if (const auto* lin = std::get_if<LinearProblem<double>>(&p)) return solve_linear(*lin, m, g);
  return solve_nonlinear(std::get<NonlinearProblem>(p), m, g, cfg);
}

}  // namespace flmm
