#include "flmm/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flmm {

FractionalOrder::FractionalOrder(double beta) : beta_(beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    std::ostringstream os;
    os << "fractional order must lie in (0, 1], got " << beta;
    throw std::invalid_argument(os.str());
  }
}

CoeffSeries::CoeffSeries(Vector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 1) {
    throw std::invalid_argument("coefficient series must have at least one entry");
  }
  if (!coeffs_.allFinite()) {
    throw std::invalid_argument("coefficient series contains a non-finite entry");
  }
}

CoeffSeries::CoeffSeries(std::initializer_list<double> coeffs)
    : CoeffSeries(Eigen::Map<const Vector>(coeffs.begin(), static_cast<Eigen::Index>(coeffs.size()))) {}

double CoeffSeries::sum() const noexcept {
  double s = 0.0;
  for (Eigen::Index k = 0; k < coeffs_.size(); ++k) s += coeffs_[k];
  return s;
}

CoeffSeries operator*(double s, const CoeffSeries& a) { return CoeffSeries(s * a.coeffs()); }

CoeffSeries unit_series(std::size_t n) {
  CoeffSeries::Vector v = CoeffSeries::Vector::Zero(static_cast<Eigen::Index>(n + 1));
  v[0] = 1.0;
  return CoeffSeries(std::move(v));
}

CoeffSeries grunwald_weights(FractionalOrder beta, std::size_t n) {
  CoeffSeries::Vector g(static_cast<Eigen::Index>(n + 1));
  g[0] = 1.0;
  const double b = beta.value();
  // (1 - (b+1)/k) written as (k-1-b)/k, which is exact for k = 1.
  for (Eigen::Index k = 1; k < g.size(); ++k) {
    const auto kd = static_cast<double>(k);
    g[k] = g[k - 1] * ((kd - 1.0 - b) / kd);
  }
  return CoeffSeries(std::move(g));
}

CoeffSeries binom_neg_series(FractionalOrder beta, std::size_t n) {
  CoeffSeries::Vector c(static_cast<Eigen::Index>(n + 1));
  c[0] = 1.0;
  const double b = beta.value();
  for (Eigen::Index k = 1; k < c.size(); ++k) {
    const auto kd = static_cast<double>(k);
    c[k] = -c[k - 1] * (b + kd - 1.0) / kd;
  }
  return CoeffSeries(std::move(c));
}

CoeffSeries cauchy_product(const CoeffSeries& a, const CoeffSeries& b, std::size_t n) {
  CoeffSeries::Vector c(static_cast<Eigen::Index>(n + 1));
  for (std::size_t k = 0; k <= n; ++k) {
    // Pair term j with term k-j; each pair sum is symmetric in (a, b).
    double s = 0.0;
    std::size_t j = 0;
    for (; 2 * j < k; ++j) {
      s += a.at(j) * b.at(k - j) + a.at(k - j) * b.at(j);
    }
    if (2 * j == k) s += a.at(j) * b.at(j);
    c[static_cast<Eigen::Index>(k)] = s;
  }
  return CoeffSeries(std::move(c));
}

CoeffSeries miller_power(const CoeffSeries& u, double power, std::size_t n) {
  const double u0 = u[0];
  if (!(u0 > 0.0)) {
    std::ostringstream os;
    os << "miller_power: leading coefficient must be positive, got " << u0;
    throw std::domain_error(os.str());
  }
  CoeffSeries::Vector f(static_cast<Eigen::Index>(n + 1));
  f[0] = std::pow(u0, power);
  for (std::size_t m = 1; m <= n; ++m) {
    const auto md = static_cast<double>(m);
    const std::size_t kmax = std::min(m, u.degree());
    double s = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
      const double kd = static_cast<double>(k);
      s += (kd * (power + 1.0) - md) * u[k] * f[static_cast<Eigen::Index>(m - k)];
    }
    f[static_cast<Eigen::Index>(m)] = s / (md * u0);
  }
  return CoeffSeries(std::move(f));
}

CoeffSeries series_reciprocal(const CoeffSeries& q, std::size_t n) {
  const double q0 = q[0];
  if (q0 == 0.0) {
    throw std::domain_error("series_reciprocal: constant term is zero");
  }
  CoeffSeries::Vector r(static_cast<Eigen::Index>(n + 1));
  r[0] = 1.0 / q0;
  for (std::size_t m = 1; m <= n; ++m) {
    const std::size_t kmax = std::min(m, q.degree());
    double s = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) s += q[k] * r[static_cast<Eigen::Index>(m - k)];
    r[static_cast<Eigen::Index>(m)] = -s / q0;
  }
  return CoeffSeries(std::move(r));
}

}  // namespace flmm
