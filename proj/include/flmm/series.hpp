#pragma once

// Formal power series over real coefficients: Grünwald (binomial) series,
// truncated products, reciprocals and real powers via Miller's recurrence.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace flmm {

/// Order of the Caputo derivative, restricted to (0, 1].
class FractionalOrder {
 public:
  explicit FractionalOrder(double beta);

  [[nodiscard]] double value() const noexcept { return beta_; }
  operator double() const noexcept { return beta_; }

 private:
  double beta_;
};

/// Truncated power series c_0 + c_1 x + ... + c_N x^N. Index k holds the
/// coefficient of x^k.
class CoeffSeries {
 public:
  using Vector = Eigen::VectorXd;

  CoeffSeries() : coeffs_(Vector::Ones(1)) {}
  explicit CoeffSeries(Vector coeffs);
  CoeffSeries(std::initializer_list<double> coeffs);

  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(coeffs_.size()); }
  [[nodiscard]] std::size_t degree() const noexcept { return size() - 1; }

  /// Coefficient k, or 0 beyond the stored length.
  [[nodiscard]] double at(std::size_t k) const noexcept {
    return k < size() ? coeffs_[static_cast<Eigen::Index>(k)] : 0.0;
  }
  [[nodiscard]] double operator[](std::size_t k) const noexcept { return coeffs_[static_cast<Eigen::Index>(k)]; }

  [[nodiscard]] const Vector& coeffs() const noexcept { return coeffs_; }

  /// Sum of all stored coefficients, accumulated in ascending index order.
  [[nodiscard]] double sum() const noexcept;

  friend bool operator==(const CoeffSeries& a, const CoeffSeries& b) {
    return a.size() == b.size() && a.coeffs_ == b.coeffs_;
  }

 private:
  Vector coeffs_;
};

[[nodiscard]] CoeffSeries operator*(double s, const CoeffSeries& a);

/// Unit series [1, 0, ..., 0] of length n+1.
[[nodiscard]] CoeffSeries unit_series(std::size_t n);

/// Coefficients g_0..g_n of (1 - x)^beta by the two-term recurrence
/// g_k = (1 - (beta + 1)/k) g_{k-1}.
[[nodiscard]] CoeffSeries grunwald_weights(FractionalOrder beta, std::size_t n);

/// Coefficients of (1 + x)^(-beta).
[[nodiscard]] CoeffSeries binom_neg_series(FractionalOrder beta, std::size_t n);

/// Truncated product c_k = sum_{j<=k} a_j b_{k-j}, k = 0..n. Coefficients
/// beyond either operand's length are zero. The summation pairs terms
/// symmetrically so that a*b and b*a round identically.
[[nodiscard]] CoeffSeries cauchy_product(const CoeffSeries& a, const CoeffSeries& b, std::size_t n);

/// Coefficients of u(x)^power by Miller's recurrence. Requires u_0 > 0.
[[nodiscard]] CoeffSeries miller_power(const CoeffSeries& u, double power, std::size_t n);

/// Coefficients of 1/q(x). Requires q_0 != 0.
[[nodiscard]] CoeffSeries series_reciprocal(const CoeffSeries& q, std::size_t n);

}  // namespace flmm
