#include "wsnacc/correlation.hpp"

#include "wsnacc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wsnacc {

CorrelationParams CorrelationParams::make(double range, double smoothness,
                                          double threshold) {
  if (!(range > 0.0) || !std::isfinite(range))
    throw DomainError("theta1 (range) must be > 0, got " +
                      std::to_string(range));
  if (!(smoothness > 0.0 && smoothness <= 2.0))
    throw DomainError("theta2 (smoothness) must be in (0, 2], got " +
                      std::to_string(smoothness));
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw DomainError("tau (threshold) must be in (0, 1], got " +
                      std::to_string(threshold));
  return {range, smoothness, threshold};
}

CorrelationParams CorrelationParams::with_threshold(double threshold) const {
  return make(range_, smoothness_, threshold);
}

double kernel(double distance, const CorrelationParams &params) {
  if (!(distance >= 0.0))
    throw DomainError("distance must be >= 0, got " +
                      std::to_string(distance));
  return std::exp(-std::pow(distance / params.range(), params.smoothness()));
}

double radius_from_threshold(const CorrelationParams &params) {
  // Inverts exp(-(r/theta1)^theta2) = tau.
  const double log_inverse = -std::log(params.threshold());
  if (log_inverse <= 0.0)
    return 0.0;
  return params.range() * std::pow(log_inverse, 1.0 / params.smoothness());
}

double sample_mean(std::span<const double> window) {
  if (window.empty())
    throw DomainError("sample_mean: empty window");
  double sum = 0.0;
  for (double v : window)
    sum += v;
  return sum / static_cast<double>(window.size());
}

double sample_covariance(std::span<const double> a,
                         std::span<const double> b) {
  if (a.size() != b.size())
    throw DomainError("sample_covariance: window lengths differ (" +
                      std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()) + ")");
  if (a.size() < 2)
    throw DomainError("sample_covariance: need at least 2 samples");
  const double mean_a = sample_mean(a);
  const double mean_b = sample_mean(b);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    sum += (a[k] - mean_a) * (b[k] - mean_b);
  return sum / static_cast<double>(a.size() - 1);
}

double sample_variance(std::span<const double> window) {
  if (window.size() < 2)
    throw DomainError("sample_variance: need at least 2 samples");
  return sample_covariance(window, window);
}

double sample_correlation(std::span<const double> a,
                          std::span<const double> b) {
  const double cov = sample_covariance(a, b);
  const double var_a = sample_variance(a);
  const double var_b = sample_variance(b);
  if (var_a <= 0.0 || var_b <= 0.0)
    throw DegenerateWindowError(
        "sample_correlation: constant window, correlation undefined");
  const double rho = cov / std::sqrt(var_a * var_b);
  return std::clamp(rho, -1.0, 1.0);
}

} // namespace wsnacc
