#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "flmm/series.hpp"

using flmm::CoeffSeries;
using flmm::FractionalOrder;

namespace {

// (-1)^k binom(beta, k) from Gamma functions; valid for non-integer beta.
double binomial_oracle(double beta, int k) {
  const double mag = std::tgamma(beta + 1.0) / (std::tgamma(static_cast<double>(k) + 1.0) * std::tgamma(beta - k + 1.0));
  return (k % 2 == 0 ? 1.0 : -1.0) * mag;
}

void check_close(const CoeffSeries& got, std::initializer_list<double> want, double tol) {
  REQUIRE(got.size() == want.size());
  std::size_t k = 0;
  for (double w : want) {
    CHECK_MESSAGE(std::abs(got[k] - w) <= tol, "k=" << k << " got " << got[k] << " want " << w);
    ++k;
  }
}

double max_deviation_from_unit(const CoeffSeries& s) {
  double m = std::abs(s[0] - 1.0);
  for (std::size_t k = 1; k < s.size(); ++k) m = std::max(m, std::abs(s[k]));
  return m;
}

}  // namespace

TEST_CASE("fractional order range") {
  CHECK_NOTHROW(FractionalOrder(1.0));
  CHECK_NOTHROW(FractionalOrder(1e-6));
  CHECK_THROWS_AS(FractionalOrder(0.0), std::invalid_argument);
  CHECK_THROWS_AS(FractionalOrder(1.0000001), std::invalid_argument);
  CHECK_THROWS_AS(FractionalOrder(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(FractionalOrder(std::nan("")), std::invalid_argument);
}

TEST_CASE("coefficient series invariants") {
  CHECK_THROWS_AS(CoeffSeries(Eigen::VectorXd(0)), std::invalid_argument);
  CHECK_THROWS_AS((CoeffSeries{1.0, INFINITY}), std::invalid_argument);
  const CoeffSeries s{1.0, 2.0};
  CHECK(s.at(5) == 0.0);
  CHECK(s.sum() == 3.0);
}

TEST_CASE("grunwald weights") {
  check_close(flmm::grunwald_weights(FractionalOrder(1.0), 3), {1.0, -1.0, 0.0, 0.0}, 0.0);
  check_close(flmm::grunwald_weights(FractionalOrder(0.5), 3), {1.0, -0.5, -0.125, -0.0625}, 1e-16);
  check_close(flmm::grunwald_weights(FractionalOrder(0.4), 1), {1.0, -0.4}, 0.0);
  CHECK(flmm::grunwald_weights(FractionalOrder(0.3), 0).size() == 1);
}

TEST_CASE("grunwald weights agree with the Gamma-function closed form") {
  for (int j = 1; j <= 9; ++j) {
    const double beta = j / 10.0;
    const CoeffSeries g = flmm::grunwald_weights(FractionalOrder(beta), 64);
    for (int k = 0; k <= 64; ++k) {
      const double want = binomial_oracle(beta, k);
      CHECK_MESSAGE(std::abs(g[k] - want) <= 1e-12 * std::abs(want), "beta=" << beta << " k=" << k);
    }
  }
}

TEST_CASE("grunwald weights are negative past k=0 with decreasing positive partial sums") {
  for (double beta : {0.1, 0.35, 0.5, 0.9}) {
    const CoeffSeries g = flmm::grunwald_weights(FractionalOrder(beta), 200);
    double partial = g[0];
    for (std::size_t k = 1; k < g.size(); ++k) {
      CHECK(g[k] < 0.0);
      const double next = partial + g[k];
      CHECK(next > 0.0);
      CHECK(next < partial);
      partial = next;
    }
  }
}

TEST_CASE("binomial series of (1+x)^(-beta)") {
  check_close(flmm::binom_neg_series(FractionalOrder(1.0), 3), {1.0, -1.0, 1.0, -1.0}, 0.0);
  check_close(flmm::binom_neg_series(FractionalOrder(0.5), 2), {1.0, -0.5, 0.375}, 1e-16);
  check_close(flmm::binom_neg_series(FractionalOrder(0.7), 0), {1.0}, 0.0);
}

TEST_CASE("cauchy product") {
  check_close(flmm::cauchy_product({1.0, -1.0}, {1.0, 1.0}, 2), {1.0, 0.0, -1.0}, 0.0);

  const CoeffSeries x{0.3, -1.7, 2.5, 4.0};
  CHECK(flmm::cauchy_product({1.0}, x, 3) == x);

  // ((1-x)/(1+x))^{1/2}: reference Taylor coefficients from a 50-digit expansion.
  const FractionalOrder half(0.5);
  const auto prod = flmm::cauchy_product(flmm::grunwald_weights(half, 4), flmm::binom_neg_series(half, 4), 4);
  check_close(prod, {1.0, -1.0, 0.5, -0.5, 0.375}, 1e-15);

  // Same coefficients via Miller on the rational series (1-x)/(1+x) = 1 - 2x + 2x^2 - ...
  const CoeffSeries rational{1.0, -2.0, 2.0, -2.0, 2.0};
  const auto miller = flmm::miller_power(rational, 0.5, 4);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(std::abs(miller[k] - prod[k]) < 1e-15);
}

TEST_CASE("cauchy product is bitwise commutative") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_int_distribution<int> len(1, 40);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd a(len(rng)), b(len(rng));
    for (auto& v : a) v = coef(rng);
    for (auto& v : b) v = coef(rng);
    const std::size_t n = static_cast<std::size_t>(len(rng)) + 10;
    CHECK(flmm::cauchy_product(CoeffSeries(a), CoeffSeries(b), n) ==
          flmm::cauchy_product(CoeffSeries(b), CoeffSeries(a), n));
  }
}

TEST_CASE("miller power") {
  check_close(flmm::miller_power({1.0, -1.0}, 0.5, 3), {1.0, -0.5, -0.125, -0.0625}, 1e-16);
  const auto g = flmm::grunwald_weights(FractionalOrder(0.37), 50);
  const auto m = flmm::miller_power({1.0, -1.0}, 0.37, 50);
  for (std::size_t k = 0; k <= 50; ++k) CHECK(std::abs(m[k] - g[k]) <= 1e-14 * std::abs(g[k]) + 1e-300);

  check_close(flmm::miller_power({1.5, -2.0, 0.5}, 1.0, 2), {1.5, -2.0, 0.5}, 1e-15);
  check_close(flmm::miller_power({4.0}, 0.5, 1), {2.0, 0.0}, 0.0);

  // (3/2 - 2x + x^2/2)^{1/2}, 50-digit Taylor reference.
  check_close(flmm::miller_power({1.5, -2.0, 0.5}, 0.5, 4),
              {1.2247448713915890, -0.81649658092772603, -0.068041381743977169, -0.045360921162651446,
               -0.032130652490211441},
              1e-15);

  CHECK_THROWS_AS(flmm::miller_power({0.0, 1.0}, 0.5, 3), std::domain_error);
  CHECK_THROWS_AS(flmm::miller_power({-1.0, 1.0}, 0.5, 3), std::domain_error);
}

TEST_CASE("miller power and its negative power are inverse") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lead(0.5, 2.0);
  std::uniform_real_distribution<double> coef(-0.2, 0.2);
  std::uniform_int_distribution<int> deg(1, 4);
  std::uniform_real_distribution<double> pw(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd u(deg(rng) + 1);
    u[0] = lead(rng);
    for (Eigen::Index k = 1; k < u.size(); ++k) u[k] = coef(rng) * u[0];
    const double p = pw(rng);
    const CoeffSeries us(u);
    const auto prod = flmm::cauchy_product(flmm::miller_power(us, p, 64), flmm::miller_power(us, -p, 64), 64);
    CHECK(max_deviation_from_unit(prod) < 1e-10);
  }
}

TEST_CASE("series reciprocal") {
  check_close(flmm::series_reciprocal({1.0, 1.0}, 3), {1.0, -1.0, 1.0, -1.0}, 0.0);
  check_close(flmm::series_reciprocal({2.0}, 2), {0.5, 0.0, 0.0}, 0.0);
  const auto r = flmm::series_reciprocal({0.75, 0.25}, 2);
  check_close(r, {4.0 / 3.0, -4.0 / 9.0, 4.0 / 27.0}, 1e-15);
  check_close(flmm::cauchy_product({0.75, 0.25}, r, 2), {1.0, 0.0, 0.0}, 1e-15);
  CHECK_THROWS_AS(flmm::series_reciprocal({0.0, 1.0}, 2), std::domain_error);
}

TEST_CASE("reciprocal inverse property") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coef(-0.2, 0.2);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd q(5);
    q[0] = 1.0;
    for (Eigen::Index k = 1; k < q.size(); ++k) q[k] = coef(rng);
    const CoeffSeries qs(q);
    CHECK(max_deviation_from_unit(flmm::cauchy_product(qs, flmm::series_reciprocal(qs, 100), 100)) < 1e-12);
  }
}
