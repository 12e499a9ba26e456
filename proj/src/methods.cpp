#include "flmm/methods.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace flmm {

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::NFLMM2: return "nflmm2";
    case Method::GL1: return "gl1";
    case Method::FBDF2: return "fbdf2";
    case Method::FAM1: return "fam1";
    case Method::FT2: return "ft2";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  std::ostringstream os;
  os << "unknown method '" << name << "'; expected one of:";
  for (Method m : kAllMethods) os << ' ' << method_name(m);
  throw std::invalid_argument(os.str());
}

CoeffSeries nflmm2_weights(FractionalOrder beta, std::size_t n) {
  const auto [p0, p1] = Nflmm2Params::for_order(beta);
  const CoeffSeries g = grunwald_weights(beta, n);
  CoeffSeries::Vector w(static_cast<Eigen::Index>(n + 1));
  w[0] = p0 * g[0];
  for (std::size_t k = 1; k <= n; ++k) {
    w[static_cast<Eigen::Index>(k)] = p0 * g[k] + p1 * g[k - 1];
  }
  return CoeffSeries(std::move(w));
}

CoeffSeries MethodDescriptor::y_series(FractionalOrder beta, std::size_t n) const {
  switch (id_) {
    case Method::NFLMM2:
      return nflmm2_weights(beta, n);
    case Method::GL1:
    case Method::FAM1:
      return grunwald_weights(beta, n);
    case Method::FBDF2:
      return miller_power(CoeffSeries{1.5, -2.0, 0.5}, beta.value(), n);
    case Method::FT2:
      return std::pow(2.0, beta.value()) * cauchy_product(grunwald_weights(beta, n), binom_neg_series(beta, n), n);
  }
  throw std::logic_error("unhandled method");
}

CoeffSeries MethodDescriptor::f_poly(FractionalOrder beta) const {
  if (id_ == Method::FAM1) {
    const double b = beta.value();
    return CoeffSeries{1.0 - 0.5 * b, 0.5 * b};
  }
  return CoeffSeries{1.0};
}

MethodWeights method_weights(MethodDescriptor m, FractionalOrder beta, std::size_t n) {
  return {m.y_series(beta, n), m.f_poly(beta)};
}

std::size_t defect_truncation(double x) { return static_cast<std::size_t>(std::ceil(40.0 / x)) + 1; }

namespace {

// Horner evaluation of the first `len` coefficients at r.
double evaluate_prefix(const CoeffSeries& s, std::size_t len, double r) {
  double acc = 0.0;
  for (std::size_t k = len; k-- > 0;) acc = acc * r + s[k];
  return acc;
}

void check_defect_argument(double x) {
  if (!(x > 0.0 && x <= 0.5)) {
    std::ostringstream os;
    os << "consistency_defect: x must lie in (0, 0.5], got " << x;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

double consistency_defect(const MethodWeights& w, FractionalOrder beta, double x) {
  check_defect_argument(x);
  const std::size_t len = defect_truncation(x);
  if (w.y_side.size() < len) {
    throw std::invalid_argument("consistency_defect: weight series shorter than the truncation rule requires");
  }
  const double r = std::exp(-x);
  const double num = evaluate_prefix(w.y_side, len, r);
  const double den = evaluate_prefix(w.f_side, w.f_side.size(), r);
  return num / den / std::pow(x, beta.value()) - 1.0;
}

double consistency_defect(MethodDescriptor m, FractionalOrder beta, double x) {
  check_defect_argument(x);
  return consistency_defect(method_weights(m, beta, defect_truncation(x)), beta, x);
}

OrderEstimate estimate_order(MethodDescriptor m, FractionalOrder beta) {
  constexpr int kFirst = 4;
  constexpr int kLast = 10;
  constexpr double kFloor = 1e-13;

  const MethodWeights w = method_weights(m, beta, defect_truncation(std::ldexp(1.0, -kLast)));
  std::vector<double> lx;
  std::vector<double> ld;
  for (int j = kFirst; j <= kLast; ++j) {
    const double x = std::ldexp(1.0, -j);
    const double d = std::abs(consistency_defect(w, beta, x));
    if (d < kFloor) continue;
    lx.push_back(std::log(x));
    ld.push_back(std::log(d));
  }

  OrderEstimate est;
  est.samples_used = lx.size();
  if (lx.size() < 2) {
    est.below_resolution = true;
    return est;
  }
  const auto n = static_cast<Eigen::Index>(lx.size());
  const Eigen::Map<const Eigen::VectorXd> xs(lx.data(), n);
  const Eigen::Map<const Eigen::VectorXd> ys(ld.data(), n);
  const Eigen::VectorXd xc = xs.array() - xs.mean();
  const Eigen::VectorXd yc = ys.array() - ys.mean();
  est.order = xc.dot(yc) / xc.squaredNorm();
  return est;
}

}  // namespace flmm
