#pragma once

#include "wsnacc/clustering.hpp"
#include "wsnacc/correlation.hpp"
#include "wsnacc/field.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace wsnacc {

/// Joint-Gaussian observation model of M sensing nodes and one tracing point,
/// normalized by the signal variance: the tracing-point correlations R, the
/// node-to-node correlations B, and the noise-to-signal ratio gamma.
struct CovarianceModel {
  Eigen::VectorXd r;
  Eigen::MatrixXd b;
  double gamma = 0.0;

  Eigen::Index size() const noexcept { return r.size(); }
};

/// Whether the cluster head contributes its own reading.
enum class HeadRole { Senses, RelayOnly };

/// Model over an explicit, ordered list of sensing nodes. gamma comes from
/// the field's variances.
CovarianceModel build_covariance(const Field &field,
                                 std::span<const NodeId> sensing,
                                 const TracingPoint &tracing,
                                 const CorrelationParams &params);

/// Model over a cluster; with HeadRole::Senses the head is the first entry.
CovarianceModel build_covariance(const Field &field, const Cluster &cluster,
                                 const TracingPoint &tracing,
                                 const CorrelationParams &params,
                                 HeadRole role);

/// Validates shape, symmetry, unit diagonal and gamma >= 0.
void validate_model(const CovarianceModel &model);

/// Joint MMSE weights (B + gamma I)^-1 R.
Eigen::VectorXd mmse_weights(const CovarianceModel &model);

/// Cluster-head estimate of the tracing point from the M observations.
double mmse_estimate(const CovarianceModel &model,
                     std::span<const double> observations);

/// Normalized accuracy of the joint MMSE estimate, R^T (B + gamma I)^-1 R.
double data_accuracy(const CovarianceModel &model);

/// Per-node scalar MMSE weights R_i / (1 + gamma) used by the averaging
/// baseline.
Eigen::VectorXd averaging_weights(const CovarianceModel &model);

/// Estimate obtained by averaging every node's own scalar MMSE estimate.
double averaging_estimate(const CovarianceModel &model,
                          std::span<const double> observations);

/// Normalized accuracy of the averaging baseline,
/// 1 - E[(S - S_avg)^2] / sigma_s2, in closed form.
double info_accuracy(const CovarianceModel &model);

struct AccuracyReport {
  std::size_t m = 0;
  double data_accuracy = 0.0;
  double info_accuracy = 0.0;
  /// sigma_s2 * (1 - data_accuracy).
  double distortion = 0.0;
  double gamma = 0.0;
  double sigma_s2 = 1.0;
  std::uint64_t seed = 0;
};

AccuracyReport evaluate(const CovarianceModel &model, double sigma_s2,
                        std::uint64_t seed = 0);

/// Column names of write_report_row, comma separated.
const char *report_header();
/// m,d_a,i_m,distortion,gamma,sigma_s2,seed with 6-decimal reals.
void write_report_row(std::ostream &out, const AccuracyReport &report);

/// The gamma in (0, upper] at which data_accuracy(model at gamma)
/// equals `target`, by bisection. Throws DomainError when the target is not
/// attainable on that interval.
double calibrate_gamma(const CovarianceModel &model, double target,
                       double upper = 10.0, double tolerance = 1e-12);

// Monte Carlo oracle ------------------------------------------------------

/// Draws (S, S_1..S_M, X_1..X_M); row-major with one row per draw.
struct SampleBatch {
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<double> tracing;      // n
  std::vector<double> signals;      // n * m
  std::vector<double> observations; // n * m

  std::size_t size() const noexcept { return tracing.size(); }
  std::span<const double> signals_of(std::size_t draw) const {
    return {signals.data() + draw * m, m};
  }
  std::span<const double> observations_of(std::size_t draw) const {
    return {observations.data() + draw * m, m};
  }
};

/// Draws are produced in blocks of this many; block k uses the substream
/// Rng::substream(seed, k), so any prefix of draws is reproducible on its own.
inline constexpr std::size_t kDrawBlock = 4096;

/// Samples the joint model sigma_s2 * [[1, R^T], [R, B]] through a pivoted
/// LDL^T square root, then adds i.i.d. N(0, sigma_s2 * gamma) noise per observation.
SampleBatch sample_observations(const CovarianceModel &model, double sigma_s2,
                                std::size_t n_draws, std::uint64_t seed);

/// Same draws as sample_observations with the field's variances.
SampleBatch sample_observations(const Field &field,
                                std::span<const NodeId> sensing,
                                const TracingPoint &tracing,
                                const CorrelationParams &params,
                                std::size_t n_draws, std::uint64_t seed);

enum class Estimator { JointMmse, Averaging };

struct MonteCarloResult {
  double mse = 0.0;
  double standard_error = 0.0;
  std::size_t draws = 0;
};

MonteCarloResult monte_carlo_distortion(const SampleBatch &batch,
                                        const CovarianceModel &model,
                                        Estimator estimator);

/// Both estimators over n_draws without materializing the batch. Results
/// equal monte_carlo_distortion on sample_observations(model, sigma_s2,
/// n_draws, seed).
struct MonteCarloPair {
  MonteCarloResult joint;
  MonteCarloResult averaging;
};
MonteCarloPair monte_carlo_stream(const CovarianceModel &model,
                                  double sigma_s2, std::size_t n_draws,
                                  std::uint64_t seed);

} // namespace wsnacc
