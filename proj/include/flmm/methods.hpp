#pragma once

// Catalogue of implicit fractional linear multistep methods. Every method is
//
//   sum_{k=0}^{n} A_k u_{n-k} = h^beta sum_j Q_j f_{n-j},
//
// with a y-side series A(x) and a short f-side polynomial Q(x), so that the
// generating function is A(x)/Q(x).

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "flmm/series.hpp"

namespace flmm {

enum class Method { NFLMM2, GL1, FBDF2, FAM1, FT2 };

inline constexpr std::array<Method, 5> kAllMethods{Method::NFLMM2, Method::GL1, Method::FBDF2, Method::FAM1,
                                                   Method::FT2};

/// Canonical CLI name (`nflmm2`, `gl1`, `fbdf2`, `fam1`, `ft2`).
[[nodiscard]] std::string_view method_name(Method m) noexcept;

/// Inverse of method_name. Throws std::invalid_argument listing the catalogue.
[[nodiscard]] Method parse_method(std::string_view name);

/// Coefficients of the shift polynomial p(x) = p0 + p1 x multiplying (1-x)^beta.
struct Nflmm2Params {
  double p0;
  double p1;

  [[nodiscard]] static Nflmm2Params for_order(FractionalOrder beta) noexcept {
    return {1.0 + 0.5 * beta.value(), -0.5 * beta.value()};
  }
};

struct MethodWeights {
  CoeffSeries y_side;  // A
  CoeffSeries f_side;  // Q
};

class MethodDescriptor {
 public:
  constexpr explicit MethodDescriptor(Method id) noexcept : id_(id) {}

  [[nodiscard]] constexpr Method id() const noexcept { return id_; }
  [[nodiscard]] std::string_view name() const noexcept { return method_name(id_); }
  [[nodiscard]] constexpr int declared_order() const noexcept { return id_ == Method::GL1 ? 1 : 2; }

  [[nodiscard]] CoeffSeries y_series(FractionalOrder beta, std::size_t n) const;
  [[nodiscard]] CoeffSeries f_poly(FractionalOrder beta) const;

  friend constexpr bool operator==(MethodDescriptor a, MethodDescriptor b) noexcept { return a.id_ == b.id_; }

 private:
  Method id_;
};

/// w_k = p0 g_k + p1 g_{k-1}: coefficients of (1-x)^beta (p0 + p1 x).
[[nodiscard]] CoeffSeries nflmm2_weights(FractionalOrder beta, std::size_t n);

/// Both weight sequences of a catalogued method; A has length n+1.
[[nodiscard]] MethodWeights method_weights(MethodDescriptor m, FractionalOrder beta, std::size_t n);

/// Smallest series length for which the tail of sum A_k e^{-kx} is negligible.
[[nodiscard]] std::size_t defect_truncation(double x);

/// (1/x^beta) A(e^{-x}) / Q(e^{-x}) - 1. Vanishes like x^p for a method of order p.
[[nodiscard]] double consistency_defect(MethodDescriptor m, FractionalOrder beta, double x);

/// Same as above with precomputed weights; A must hold at least
/// defect_truncation(x) coefficients.
[[nodiscard]] double consistency_defect(const MethodWeights& w, FractionalOrder beta, double x);

struct OrderEstimate {
  /// Least-squares slope of log|defect| against log x.
  double order = 0.0;
  /// Set when every sampled defect fell below the resolution floor; `order`
  /// is then meaningless.
  bool below_resolution = false;
  std::size_t samples_used = 0;
};

/// Sample points x = 2^{-4}, ..., 2^{-10}.
[[nodiscard]] OrderEstimate estimate_order(MethodDescriptor m, FractionalOrder beta);

}  // namespace flmm
