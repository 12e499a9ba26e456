#pragma once

// Stability regions of the catalogued methods. For the scalar test equation
// D^beta y = lambda y the scheme is stable when z = lambda h^beta lies in
//
//   S = { delta(x) : |x| > 1 },
//
// so the boundary locus delta(e^{i theta}) separates S from the unstable
// region S^c = { delta(x) : |x| <= 1 }.

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "flmm/methods.hpp"
#include "flmm/series.hpp"

namespace flmm {

using Complex = std::complex<double>;

/// delta(x) = A(x)/Q(x) on the principal branch. Returns an infinite value at
/// a pole (x = -1 for FT2, and for FAM1 when beta = 1).
[[nodiscard]] Complex generating_function(MethodDescriptor m, FractionalOrder beta, Complex xi);

/// delta(e^{i theta}) using 1 - e^{i theta} = 2 sin(theta/2) e^{i(theta/2 - pi/2)},
/// which is exact in argument near theta = 0.
[[nodiscard]] Complex boundary_value(MethodDescriptor m, FractionalOrder beta, double theta);

struct BoundarySample {
  double theta = 0.0;
  Complex value;
  bool finite = true;
};

struct BoundaryCurve {
  Method method = Method::NFLMM2;
  double beta = 1.0;
  /// Uniform theta_k = 2 pi k / n, k = 0..n-1.
  std::vector<BoundarySample> samples;
  /// Number of samples flagged infinite (FT2 pole neighbourhood).
  std::size_t excluded = 0;
};

inline constexpr double kPoleExclusion = 1e-6;

[[nodiscard]] BoundaryCurve boundary_curve(MethodDescriptor m, FractionalOrder beta, std::size_t n_samples);

/// Half-angle beta pi / 2 of the sector where the exact solution grows.
struct StabilityWedge {
  double beta;
  [[nodiscard]] double half_angle() const noexcept;
  [[nodiscard]] bool contains(Complex z, double tol = 0.0) const noexcept;
};

struct SignCheckReport {
  bool passed = false;
  double min_re = std::numeric_limits<double>::infinity();
  double theta_at_min_re = 0.0;
  double max_im = -std::numeric_limits<double>::infinity();
  std::size_t samples = 0;
};

/// Re delta > 0 and Im delta < 0 for NFLMM2 on theta in (0, pi).
[[nodiscard]] SignCheckReport real_part_sign_check(FractionalOrder beta, std::size_t n_samples);

struct TangentProfile {
  /// (theta, Im delta / Re delta) at theta_k = pi k / n, k = 1..n.
  std::vector<std::pair<double, double>> samples;
  /// Tangent as theta -> 0+, evaluated on the boundary curve.
  double limit_at_zero = 0.0;
  /// Set when the limit is -infinity (beta = 1).
  bool unbounded_below = false;
  bool strictly_increasing = false;
};

[[nodiscard]] TangentProfile tangent_profile(FractionalOrder beta, std::size_t n_samples);

struct AStabilityReport {
  bool passed = false;
  double max_abs_arg = 0.0;
  double theta_at_max = 0.0;
  double half_angle = 0.0;
  /// half_angle - max_abs_arg; negative when the check fails.
  double margin = 0.0;
  std::size_t samples_checked = 0;
  std::size_t samples_skipped = 0;
};

inline constexpr double kAngleTolerance = 1e-9;

/// Every finite boundary point satisfies |arg delta| <= beta pi/2 + tol.
[[nodiscard]] AStabilityReport a_stability_check(MethodDescriptor m, FractionalOrder beta, std::size_t n_samples);

struct MembershipResult {
  bool member = false;  // inside S^c
  bool indeterminate = false;
  int winding = 0;
  double boundary_distance = 0.0;
};

inline constexpr double kBoundaryBand = 1e-9;
inline constexpr std::size_t kMembershipSamples = 4096;

/// Membership of zeta in the unstable region by the winding number of the
/// boundary curve. FT2's region is the closed wedge |arg z| <= beta pi/2.
[[nodiscard]] MembershipResult unstable_membership(MethodDescriptor m, FractionalOrder beta, Complex zeta,
                                                   std::size_t n_samples = kMembershipSamples);

/// Same, against a precomputed curve.
[[nodiscard]] MembershipResult unstable_membership(const BoundaryCurve& curve, Complex zeta);

enum class DynamicVerdict { Decay, Growth, Inconclusive };

struct DynamicOracleConfig {
  std::size_t steps = 2000;
  double growth_factor = 1e2;
};

/// Runs the scheme on D^beta y = lambda y with lambda h^beta = zeta, y0 = 1.
/// Growth: |y_N| > growth_factor or non-finite. Decay: |y_N| < 1 and
/// |y_N| <= |y_{N/2}|. Anything else is inconclusive.
[[nodiscard]] DynamicVerdict dynamic_oracle(MethodDescriptor m, FractionalOrder beta, Complex zeta,
                                            const DynamicOracleConfig& cfg = {});

struct GridCell {
  Complex zeta;
  MembershipResult membership;
};

/// Membership on a uniform cells x cells lattice over [re_lo, re_hi] x [im_lo, im_hi].
[[nodiscard]] std::vector<GridCell> membership_grid(MethodDescriptor m, FractionalOrder beta, double re_lo,
                                                    double re_hi, double im_lo, double im_hi, std::size_t cells,
                                                    std::size_t n_samples = kMembershipSamples);

struct MinusOneComparison {
  double beta = 0.0;
  double fbdf2 = 0.0;
  double nflmm2 = 0.0;
  double fam1 = 0.0;
  double ft2 = 0.0;
  bool ordered = false;
  /// beta = 1: FAM1 has a pole at -1 and the ordering is not asserted.
  bool degenerate = false;
};

/// delta(-1) for FBDF2, NFLMM2, FAM1 and FT2.
[[nodiscard]] MinusOneComparison compare_at_minus_one(FractionalOrder beta);

}  // namespace flmm
