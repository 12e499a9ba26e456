#include "flmm/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "flmm/solver.hpp"

namespace flmm {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kInfinity{std::numeric_limits<double>::infinity(), 0.0};

// delta(xi) given the already-evaluated factor (1 - xi)^beta and, where the
// method needs it, (1 + xi)^(-beta).
Complex assemble(MethodDescriptor m, FractionalOrder beta, Complex xi, Complex one_minus_pow,
                 Complex one_plus_neg_pow) {
  const double b = beta.value();
  switch (m.id()) {
    case Method::NFLMM2: {
      const auto [p0, p1] = Nflmm2Params::for_order(beta);
      return one_minus_pow * (p0 + p1 * xi);
    }
    case Method::GL1:
      return one_minus_pow;
    case Method::FBDF2:
      // 3/2 - 2x + x^2/2 = (1 - x)(3 - x)/2; both factors have Re > 0 on |x| <= 1.
      return one_minus_pow * std::pow((3.0 - xi) / 2.0, b);
    case Method::FAM1: {
      const Complex q = (1.0 - 0.5 * b) + 0.5 * b * xi;
      if (q == 0.0) return kInfinity;
      return one_minus_pow / q;
    }
    case Method::FT2:
      return std::pow(2.0, b) * one_minus_pow * one_plus_neg_pow;
  }
  throw std::logic_error("unhandled method");
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

}  // namespace

Complex generating_function(MethodDescriptor m, FractionalOrder beta, Complex xi) {
  const double b = beta.value();
  const Complex one_minus = 1.0 - xi;
  const Complex one_minus_pow = one_minus == 0.0 ? Complex{} : std::pow(one_minus, b);
  Complex one_plus_neg_pow{1.0, 0.0};
  if (m.id() == Method::FT2) {
    const Complex one_plus = 1.0 + xi;
    if (one_plus == 0.0) return kInfinity;
    one_plus_neg_pow = std::pow(one_plus, -b);
  }
  return assemble(m, beta, xi, one_minus_pow, one_plus_neg_pow);
}

Complex boundary_value(MethodDescriptor m, FractionalOrder beta, double theta) {
  const double b = beta.value();
  const double t = wrap_angle(theta);
  // Real coefficients: delta(conj x) = conj delta(x). Reflect the lower half
  // circle so both halves round identically.
  if (t > kPi) return std::conj(boundary_value(m, beta, 2.0 * kPi - t));
  const Complex xi = std::polar(1.0, t);

  // 1 - e^{it} = 2 sin(t/2) e^{i(t/2 - pi/2)}, with 2 sin(t/2) >= 0 on [0, pi].
  const double radius = 2.0 * std::sin(0.5 * t);
  const double phase = 0.5 * t - 0.5 * kPi;
  const Complex one_minus_pow = radius == 0.0 ? Complex{} : std::polar(std::pow(radius, b), b * phase);

  // 1 + e^{it} = 2 cos(t/2) e^{it/2}, with 2 cos(t/2) >= 0 on [0, pi].
  Complex one_plus_neg_pow{1.0, 0.0};
  if (m.id() == Method::FT2) {
    const double c = 2.0 * std::cos(0.5 * t);
    if (c <= 0.0) return kInfinity;
    one_plus_neg_pow = std::polar(std::pow(c, -b), -0.5 * b * t);
  }
  return assemble(m, beta, xi, one_minus_pow, one_plus_neg_pow);
}

BoundaryCurve boundary_curve(MethodDescriptor m, FractionalOrder beta, std::size_t n_samples) {
  if (n_samples < 8) throw std::invalid_argument("boundary_curve needs at least 8 samples");
  BoundaryCurve curve;
  curve.method = m.id();
  curve.beta = beta.value();
  curve.samples.reserve(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    // theta_{n-k} = 2 pi - theta_k exactly.
    const double theta = 2 * k <= n_samples
                             ? 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n_samples)
                             : 2.0 * kPi - 2.0 * kPi * static_cast<double>(n_samples - k) / static_cast<double>(n_samples);
    BoundarySample s{theta, {}, true};
    if (m.id() == Method::FT2 && std::abs(theta - kPi) < kPoleExclusion) {
      s.value = kInfinity;
    } else {
      s.value = boundary_value(m, beta, theta);
    }
    s.finite = std::isfinite(s.value.real()) && std::isfinite(s.value.imag());
    if (!s.finite) ++curve.excluded;
    curve.samples.push_back(s);
  }
  return curve;
}

double StabilityWedge::half_angle() const noexcept { return 0.5 * beta * kPi; }

bool StabilityWedge::contains(Complex z, double tol) const noexcept {
  if (z == 0.0) return true;
  return std::abs(std::arg(z)) <= half_angle() + tol;
}

SignCheckReport real_part_sign_check(FractionalOrder beta, std::size_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("real_part_sign_check needs at least 2 samples");
  const MethodDescriptor m{Method::NFLMM2};
  SignCheckReport rep;
  bool ok = true;
  for (std::size_t k = 1; k < n_samples; ++k) {
    const double theta = kPi * static_cast<double>(k) / static_cast<double>(n_samples);
    const Complex d = boundary_value(m, beta, theta);
    if (d.real() < rep.min_re) {
      rep.min_re = d.real();
      rep.theta_at_min_re = theta;
    }
    rep.max_im = std::max(rep.max_im, d.imag());
    ok = ok && d.real() > 0.0 && d.imag() < 0.0;
    ++rep.samples;
  }
  rep.passed = ok;
  return rep;
}

TangentProfile tangent_profile(FractionalOrder beta, std::size_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("tangent_profile needs at least 2 samples");
  const MethodDescriptor m{Method::NFLMM2};
  TangentProfile prof;
  prof.samples.reserve(n_samples);
  for (std::size_t k = 1; k <= n_samples; ++k) {
    const double theta = kPi * static_cast<double>(k) / static_cast<double>(n_samples);
    const Complex d = boundary_value(m, beta, theta);
    prof.samples.emplace_back(theta, d.imag() / d.real());
  }
  prof.strictly_increasing = std::adjacent_find(prof.samples.begin(), prof.samples.end(), [](const auto& a, const auto& b) {
                               return !(b.second > a.second);
                             }) == prof.samples.end();

  if (beta.value() == 1.0) {
    prof.unbounded_below = true;
    prof.limit_at_zero = -std::numeric_limits<double>::infinity();
  } else {
    // The tangent is flat to third order at theta = 0.
    const Complex d = boundary_value(m, beta, 1e-8);
    prof.limit_at_zero = d.imag() / d.real();
  }
  return prof;
}

AStabilityReport a_stability_check(MethodDescriptor m, FractionalOrder beta, std::size_t n_samples) {
  const BoundaryCurve curve = boundary_curve(m, beta, n_samples);
  AStabilityReport rep;
  rep.half_angle = StabilityWedge{beta.value()}.half_angle();
  for (const auto& s : curve.samples) {
    if (!s.finite || s.value == 0.0) {
      ++rep.samples_skipped;
      continue;
    }
    const double a = std::abs(std::arg(s.value));
    if (a > rep.max_abs_arg) {
      rep.max_abs_arg = a;
      rep.theta_at_max = s.theta;
    }
    ++rep.samples_checked;
  }
  rep.margin = rep.half_angle - rep.max_abs_arg;
  rep.passed = rep.max_abs_arg <= rep.half_angle + kAngleTolerance;
  return rep;
}

MembershipResult unstable_membership(const BoundaryCurve& curve, Complex zeta) {
  MembershipResult res;
  if (curve.method == Method::FT2) {
    // The image of the closed disk under (2(1-x)/(1+x))^beta is the closed wedge.
    const StabilityWedge wedge{curve.beta};
    const double r = std::abs(zeta);
    const double gap = std::abs(std::abs(std::arg(zeta)) - wedge.half_angle());
    res.boundary_distance = r == 0.0 ? 0.0 : (gap >= 0.5 * kPi ? r : r * std::sin(gap));
    res.indeterminate = res.boundary_distance < kBoundaryBand;
    res.member = wedge.contains(zeta);
    res.winding = res.member ? 1 : 0;
    return res;
  }

  const auto& pts = curve.samples;
  const std::size_t n = pts.size();
  double dist = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = pts[k].value;
    const Complex b = pts[(k + 1) % n].value;
    dist = std::min(dist, segment_distance(zeta, a, b));
    total += std::arg((b - zeta) / (a - zeta));
  }
  res.boundary_distance = dist;
  if (dist < kBoundaryBand) {
    res.indeterminate = true;
    return res;
  }
  res.winding = static_cast<int>(std::lround(total / (2.0 * kPi)));
  res.member = res.winding != 0;
  return res;
}

MembershipResult unstable_membership(MethodDescriptor m, FractionalOrder beta, Complex zeta, std::size_t n_samples) {
  return unstable_membership(boundary_curve(m, beta, n_samples), zeta);
}

DynamicVerdict dynamic_oracle(MethodDescriptor m, FractionalOrder beta, Complex zeta, const DynamicOracleConfig& cfg) {
  const LinearProblem<Complex> p{beta, Complex{1.0, 0.0}, zeta, [](double) { return Complex{}; }};
  SolutionTrace<Complex> tr;
  try {
    tr = solve_linear(p, m, Grid{0.0, 1.0, cfg.steps});
  } catch (const SingularStepError&) {
    return DynamicVerdict::Inconclusive;
  }
  const double last = std::abs(tr.y[static_cast<Eigen::Index>(cfg.steps)]);
  const double mid = std::abs(tr.y[static_cast<Eigen::Index>(cfg.steps / 2)]);
  if (!std::isfinite(last) || last > cfg.growth_factor) return DynamicVerdict::Growth;
  if (last < 1.0 && last <= mid) return DynamicVerdict::Decay;
  return DynamicVerdict::Inconclusive;
}

std::vector<GridCell> membership_grid(MethodDescriptor m, FractionalOrder beta, double re_lo, double re_hi,
                                      double im_lo, double im_hi, std::size_t cells, std::size_t n_samples) {
  if (cells < 2) throw std::invalid_argument("membership_grid needs at least 2 cells per axis");
  const BoundaryCurve curve = boundary_curve(m, beta, n_samples);
  const Eigen::VectorXd re = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(cells), re_lo, re_hi);
  const Eigen::VectorXd im = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(cells), im_lo, im_hi);
  std::vector<GridCell> out;
  out.reserve(cells * cells);
  for (Eigen::Index i = 0; i < re.size(); ++i) {
    for (Eigen::Index j = 0; j < im.size(); ++j) {
      const Complex z{re[i], im[j]};
      out.push_back({z, unstable_membership(curve, z)});
    }
  }
  return out;
}

MinusOneComparison compare_at_minus_one(FractionalOrder beta) {
  const Complex minus_one{-1.0, 0.0};
  MinusOneComparison c;
  c.beta = beta.value();
  c.fbdf2 = generating_function(MethodDescriptor{Method::FBDF2}, beta, minus_one).real();
  c.nflmm2 = generating_function(MethodDescriptor{Method::NFLMM2}, beta, minus_one).real();
  c.fam1 = generating_function(MethodDescriptor{Method::FAM1}, beta, minus_one).real();
  c.ft2 = generating_function(MethodDescriptor{Method::FT2}, beta, minus_one).real();
  c.degenerate = beta.value() == 1.0 || !std::isfinite(c.fam1);
  c.ordered = !c.degenerate && c.fbdf2 < c.nflmm2 && c.nflmm2 < c.fam1 && c.fam1 < c.ft2;
  return c;
}

}  // namespace flmm
