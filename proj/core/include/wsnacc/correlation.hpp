#pragma once

#include <span>
#include <vector>

namespace wsnacc {

/// Parameters of the power-exponential correlation kernel
/// exp(-(d / range)^smoothness) together with the correlation threshold that
/// decides whether two nodes are "strongly correlated".
///
/// Construct through make(); a default-constructed value is the exponential
/// kernel with range 1 and threshold 1.
class CorrelationParams {
public:
  CorrelationParams() = default;

  /// Throws DomainError unless range > 0, 0 < smoothness <= 2 and
  /// 0 < threshold <= 1.
  static CorrelationParams make(double range, double smoothness,
                                double threshold = 1.0);

  double range() const noexcept { return range_; }
  double smoothness() const noexcept { return smoothness_; }
  double threshold() const noexcept { return threshold_; }

  CorrelationParams with_threshold(double threshold) const;

  friend bool operator==(const CorrelationParams &,
                         const CorrelationParams &) = default;

private:
  CorrelationParams(double range, double smoothness, double threshold)
      : range_(range), smoothness_(smoothness), threshold_(threshold) {}

  double range_ = 1.0;
  double smoothness_ = 1.0;
  double threshold_ = 1.0;
};

/// Correlation between two readings taken `distance` apart. In (0, 1],
/// equal to 1 at distance 0 and strictly decreasing.
double kernel(double distance, const CorrelationParams &params);

/// Largest distance at which kernel() is still >= the threshold:
/// range * ln(1/threshold)^(1/smoothness). Zero when the threshold is 1.
double radius_from_threshold(const CorrelationParams &params);

// Empirical statistics over one node's readings in a window frame.

double sample_mean(std::span<const double> window);

/// Unbiased (n - 1) variance. Needs n >= 2.
double sample_variance(std::span<const double> window);

/// Unbiased (n - 1) cross-covariance. Windows must have equal length >= 2.
double sample_covariance(std::span<const double> a, std::span<const double> b);

/// Pearson correlation of two windows. Throws DegenerateWindowError if either
/// window is constant; the result is clamped to [-1, 1] only to absorb
/// rounding.
double sample_correlation(std::span<const double> a,
                          std::span<const double> b);

} // namespace wsnacc
