#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "flmm/harness.hpp"
#include "flmm/solver.hpp"

using flmm::FractionalOrder;
using flmm::Grid;
using flmm::LinearProblem;
using flmm::Method;
using flmm::MethodDescriptor;
using flmm::NonlinearProblem;

namespace {

const MethodDescriptor kNflmm2{Method::NFLMM2};

double max_error(const flmm::SolutionTrace<double>& tr, const std::function<double(double)>& exact) {
  double e = 0.0;
  for (std::size_t n = 0; n <= tr.grid.steps; ++n) e = std::max(e, std::abs(tr.y[n] - exact(tr.grid.t(n))));
  return e;
}

}  // namespace

TEST_CASE("grid construction") {
  const Grid g = Grid::over(0.5, 2.5, 8);
  CHECK(g.h == 0.25);
  CHECK(g.t(8) == 2.5);
  CHECK_THROWS_AS(Grid::over(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Grid::over(1.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("history convolution") {
  const std::vector<double> five{5.0};
  CHECK(flmm::history_convolution<double>({1.0, -1.0}, five, 1) == -5.0);
  const std::vector<double> ones2{1.0, 1.0};
  CHECK(flmm::history_convolution<double>({1.5, -2.0, 0.5}, ones2, 2) == -1.5);

  const auto w = flmm::nflmm2_weights(FractionalOrder(0.5), 64);
  const std::vector<double> ones(64, 1.0);
  const double conv = flmm::history_convolution<double>(w, ones, 64);
  CHECK(conv == doctest::Approx(w.sum() - w[0]).epsilon(1e-13));

  CHECK_THROWS_AS(flmm::history_convolution<double>(w, ones, 0), std::invalid_argument);
  CHECK_THROWS_AS(flmm::history_convolution<double>({1.0, 2.0}, ones, 2), std::invalid_argument);
}

TEST_CASE("initial-value reduction") {
  const FractionalOrder b(0.5);
  SUBCASE("zero data is the identity") {
    const NonlinearProblem p{b, 0.0, [](double t, double y) { return t * y + 1.0; }, [](double t, double) { return t; }};
    const auto r = flmm::reduce_initial(p, 0.0);
    for (double t : {0.0, 0.3, 1.7}) {
      for (double y : {-1.0, 0.0, 2.0}) {
        CHECK(r.f(t, y) == p.f(t, y));
        CHECK(r.f_y(t, y) == p.f_y(t, y));
      }
    }
  }
  SUBCASE("linear source gains lambda*y0") {
    const LinearProblem<double> p{b, 3.0, -2.0, [](double t) { return t; }};
    const auto r = flmm::reduce_initial(p, 1.0);
    CHECK(r.y0 == 0.0);
    CHECK(r.lambda == -2.0);
    CHECK(r.source(0.5) == doctest::Approx(1.5 - 6.0));
  }
  SUBCASE("registry problem with y(0) = 0 is unchanged") {
    const auto bp = flmm::builtin_problem("paper-nonlinear", FractionalOrder(0.6));
    const auto& p = std::get<NonlinearProblem>(bp.problem);
    const auto r = flmm::reduce_initial(p, 0.0);
    CHECK(r.f(0.4, 0.2) == p.f(0.4, 0.2));
  }
}

TEST_CASE("constant solution is reproduced exactly") {
  for (Method id : flmm::kAllMethods) {
    const LinearProblem<double> p{FractionalOrder(0.7), 2.5, 0.0, [](double) { return 0.0; }};
    const auto tr = flmm::solve_linear(p, MethodDescriptor{id}, Grid::over(0.0, 3.0, 50));
    for (Eigen::Index n = 0; n < tr.y.size(); ++n) CHECK(tr.y[n] == 2.5);
  }
}

TEST_CASE("quadratic solution converges at second order") {
  // D^b t^2 = Gamma(3)/Gamma(3-b) t^{2-b}.
  for (double beta : {0.3, 0.5, 0.9}) {
    const auto bp = flmm::builtin_problem("poly2-linear", FractionalOrder(beta));
    const auto coarse = flmm::solve(bp.problem, kNflmm2, Grid::over(0.0, 1.0, 64));
    const auto fine = flmm::solve(bp.problem, kNflmm2, Grid::over(0.0, 1.0, 128));
    const double e1 = max_error(coarse, bp.exact);
    const double e2 = max_error(fine, bp.exact);
    CHECK(fine.y[128] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("test equation with negative lambda decays monotonically") {
  const LinearProblem<double> p{FractionalOrder(0.5), 1.0, -1.0, [](double) { return 0.0; }};
  const auto tr = flmm::solve_linear(p, kNflmm2, Grid{0.0, 0.1, 200});
  for (Eigen::Index n = 1; n < tr.y.size(); ++n) {
    CHECK(tr.y[n] > 0.0);
    CHECK(tr.y[n] < tr.y[n - 1]);
  }
  // The exact solution decays like t^{-1/2}/Gamma(1/2); at t = 20 that is about 0.126.
  CHECK(tr.y[200] < 0.15);
}

TEST_CASE("complex lambda is supported on the linear path") {
  using C = std::complex<double>;
  const LinearProblem<C> p{FractionalOrder(0.5), C{1.0, 0.0}, C{-1.0, 2.0}, [](double) { return C{}; }};
  const auto tr = flmm::solve_linear(p, kNflmm2, Grid{0.0, 0.05, 400});
  CHECK(tr.y[0] == C{1.0, 0.0});
  CHECK(std::abs(tr.y[400]) < 0.5);

  // Real lambda embedded in the complex path matches the real path.
  const LinearProblem<C> pc{FractionalOrder(0.5), C{1.0, 0.0}, C{-1.0, 0.0}, [](double) { return C{}; }};
  const LinearProblem<double> pr{FractionalOrder(0.5), 1.0, -1.0, [](double) { return 0.0; }};
  const auto tc = flmm::solve_linear(pc, kNflmm2, Grid{0.0, 0.05, 100});
  const auto tr2 = flmm::solve_linear(pr, kNflmm2, Grid{0.0, 0.05, 100});
  for (Eigen::Index n = 0; n <= 100; ++n) {
    CHECK(tc.y[n].real() == doctest::Approx(tr2.y[n]).epsilon(1e-14));
    CHECK(tc.y[n].imag() == 0.0);
  }
}

TEST_CASE("nonzero initial data equals the shifted homogeneous solve") {
  const FractionalOrder b(0.6);
  const double c = 1.75;
  const double t0 = 0.5;
  auto src = [](double t) { return std::sin(t); };
  const LinearProblem<double> shifted{b, c, -0.8, src};
  const LinearProblem<double> reduced{b, 0.0, -0.8, [=](double t) { return src(t + t0) - 0.8 * c; }};
  for (Method id : {Method::NFLMM2, Method::FAM1}) {
    const auto a = flmm::solve_linear(shifted, MethodDescriptor{id}, Grid::over(t0, t0 + 2.0, 80));
    const auto r = flmm::solve_linear(reduced, MethodDescriptor{id}, Grid::over(0.0, 2.0, 80));
    CHECK(a.y[0] == c);
    for (Eigen::Index n = 0; n <= 80; ++n) CHECK(std::abs((a.y[n] - c) - r.y[n]) <= 1e-13);
  }
}

TEST_CASE("nonlinear path agrees with the linear path on a linear problem") {
  const FractionalOrder b(0.45);
  const double lambda = -1.3;
  auto src = [](double t) { return 1.0 + t * t; };
  const LinearProblem<double> lin{b, 0.4, lambda, src};
  const NonlinearProblem non{b, 0.4, [=](double t, double y) { return lambda * y + src(t); },
                             [=](double, double) { return lambda; }};
  for (Method id : flmm::kAllMethods) {
    const MethodDescriptor m{id};
    const Grid g = Grid::over(0.0, 2.0, 100);
    const auto a = flmm::solve_linear(lin, m, g);
    const auto c = flmm::solve_nonlinear(non, m, g);
    for (Eigen::Index n = 0; n <= 100; ++n) CHECK(std::abs(a.y[n] - c.y[n]) <= 1e-10);
    for (std::size_t n = 1; n <= 100; ++n) CHECK(c.newton_iters[n] <= 3);
  }
}

TEST_CASE("nonlinear registry problem against published reference errors") {
  SUBCASE("beta=0.4, M=8") {
    const auto bp = flmm::builtin_problem("paper-nonlinear", FractionalOrder(0.4));
    const auto tr = flmm::solve(bp.problem, kNflmm2, Grid::over(0.0, 1.0, 8));
    CHECK(max_error(tr, bp.exact) == doctest::Approx(1.698e-01).epsilon(0.05));
  }
  SUBCASE("beta=1.0, M=4096") {
    const auto bp = flmm::builtin_problem("paper-nonlinear", FractionalOrder(1.0));
    const auto tr = flmm::solve(bp.problem, kNflmm2, Grid::over(0.0, 1.0, 4096));
    CHECK(max_error(tr, bp.exact) == doctest::Approx(2.752e-07).epsilon(0.05));
  }
}

TEST_CASE("Newton converges quickly once the grid is fine") {
  for (double beta : {0.4, 0.6, 0.8, 1.0}) {
    const auto bp = flmm::builtin_problem("paper-nonlinear", FractionalOrder(beta));
    for (std::size_t M : {64u, 256u}) {
      const auto tr = flmm::solve(bp.problem, kNflmm2, Grid::over(0.0, 1.0, M), flmm::NewtonConfig{1e-12, 50});
      for (std::size_t n = 1; n <= M; ++n) CHECK(tr.newton_iters[n] <= 10);
    }
  }
}

TEST_CASE("solves are bitwise deterministic") {
  const auto bp = flmm::builtin_problem("paper-nonlinear", FractionalOrder(0.6));
  const auto a = flmm::solve(bp.problem, MethodDescriptor{Method::FT2}, Grid::over(0.0, 1.0, 300));
  const auto b = flmm::solve(bp.problem, MethodDescriptor{Method::FT2}, Grid::over(0.0, 1.0, 300));
  CHECK(a.y == b.y);
  CHECK(a.newton_iters == b.newton_iters);
}

TEST_CASE("failure modes") {
  const FractionalOrder b(0.5);
  SUBCASE("singular linear step") {
    // A_0 = 1.25 for NFLMM2 at beta = 1/2; h = 1 makes lambda h^beta = A_0.
    const LinearProblem<double> p{b, 1.0, 1.25, [](double) { return 0.0; }};
    CHECK_THROWS_AS(flmm::solve_linear(p, kNflmm2, Grid{0.0, 1.0, 4}), flmm::SingularStepError);
    CHECK_THROWS_WITH(flmm::solve_linear(p, kNflmm2, Grid{0.0, 1.0, 4}), doctest::Contains("lambda h^beta"));
  }
  SUBCASE("singular Jacobian") {
    const NonlinearProblem p{b, 1.0, [](double, double y) { return 1.25 * y; }, [](double, double) { return 1.25; }};
    CHECK_THROWS_AS(flmm::solve_nonlinear(p, kNflmm2, Grid{0.0, 1.0, 4}), flmm::SingularStepError);
  }
  SUBCASE("Newton iteration cap") {
    const auto bp = flmm::builtin_problem("paper-nonlinear", b);
    try {
      (void)flmm::solve(bp.problem, kNflmm2, Grid::over(0.0, 1.0, 16), flmm::NewtonConfig{1e-15, 1});
      FAIL("expected NewtonFailure");
    } catch (const flmm::NewtonFailure& e) {
      CHECK(e.step() >= 1);
      CHECK(e.iterations() == 1);
    }
  }
  SUBCASE("invalid configuration") {
    CHECK_THROWS_AS(flmm::NewtonConfig({0.0, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(flmm::NewtonConfig({1e-12, 0}).validate(), std::invalid_argument);
    const NonlinearProblem incomplete{b, 0.0, [](double, double y) { return y; }, {}};
    CHECK_THROWS_AS(flmm::solve_nonlinear(incomplete, kNflmm2, Grid{0.0, 0.1, 4}), std::invalid_argument);
  }
}
