#include "wsnacc/accuracy.hpp"

#include "wsnacc/error.hpp"
#include "wsnacc/linalg.hpp"
#include "wsnacc/rng.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <unordered_set>

namespace wsnacc {

CovarianceModel build_covariance(const Field &field,
                                 std::span<const NodeId> sensing,
                                 const TracingPoint &tracing,
                                 const CorrelationParams &params) {
  if (sensing.empty())
    throw DomainError("build_covariance: no sensing nodes");
  std::unordered_set<NodeId> seen;
  std::vector<const Node *> nodes;
  nodes.reserve(sensing.size());
  for (NodeId id : sensing) {
    if (!seen.insert(id).second)
      throw DomainError("build_covariance: node " + std::to_string(id) +
                        " listed twice");
    nodes.push_back(&field.node(id));
  }
  const auto m = static_cast<Eigen::Index>(nodes.size());
  CovarianceModel model;
  model.gamma = field.gamma();
  model.r.resize(m);
  model.b.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    model.r(i) = kernel(euclidean_distance(*nodes[i], tracing), params);
    model.b(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double rho =
          kernel(euclidean_distance(*nodes[i], *nodes[j]), params);
      model.b(i, j) = rho;
      model.b(j, i) = rho;
    }
  }
  return model;
}

CovarianceModel build_covariance(const Field &field, const Cluster &cluster,
                                 const TracingPoint &tracing,
                                 const CorrelationParams &params,
                                 HeadRole role) {
  std::vector<NodeId> sensing;
  sensing.reserve(cluster.size());
  if (role == HeadRole::Senses)
    sensing.push_back(cluster.head);
  sensing.insert(sensing.end(), cluster.members.begin(),
                 cluster.members.end());
  return build_covariance(field, sensing, tracing, params);
}

void validate_model(const CovarianceModel &model) {
  const auto m = model.r.size();
  if (m == 0)
    throw DomainError("covariance model is empty");
  if (model.b.rows() != m || model.b.cols() != m)
    throw DomainError("covariance model: B must be M x M");
  if (!(model.gamma >= 0.0) || !std::isfinite(model.gamma))
    throw DomainError("covariance model: gamma must be finite and >= 0");
  if (!model.r.allFinite() || !model.b.allFinite())
    throw DomainError("covariance model: non-finite entries");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (model.b(i, i) != 1.0)
      throw DomainError("covariance model: B needs a unit diagonal");
    for (Eigen::Index j = 0; j < i; ++j)
      if (model.b(i, j) != model.b(j, i))
        throw DomainError("covariance model: B is not symmetric");
  }
}

namespace {

Eigen::MatrixXd regularized(const CovarianceModel &model) {
  Eigen::MatrixXd a = model.b;
  a.diagonal().array() += model.gamma;
  return a;
}

// Both estimators reduce to R^2 / (1 + gamma) for one node; sharing the
// expression keeps them bit-identical there.
double single_node_accuracy(const CovarianceModel &model) {
  return model.r(0) * model.r(0) / (1.0 + model.gamma);
}

} // namespace

Eigen::VectorXd mmse_weights(const CovarianceModel &model) {
  validate_model(model);
  if (model.size() == 1)
    return model.r / (1.0 + model.gamma);
  return SpdFactor(regularized(model)).solve(model.r);
}

double mmse_estimate(const CovarianceModel &model,
                     std::span<const double> observations) {
  if (static_cast<Eigen::Index>(observations.size()) != model.size())
    throw DomainError("mmse_estimate: expected " +
                      std::to_string(model.size()) + " observations");
  const Eigen::VectorXd w = mmse_weights(model);
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    s += w(i) * observations[static_cast<std::size_t>(i)];
  return s;
}

double data_accuracy(const CovarianceModel &model) {
  validate_model(model);
  if (model.size() == 1)
    return single_node_accuracy(model);
  return model.r.dot(mmse_weights(model));
}

Eigen::VectorXd averaging_weights(const CovarianceModel &model) {
  validate_model(model);
  return model.r / (1.0 + model.gamma);
}

double averaging_estimate(const CovarianceModel &model,
                          std::span<const double> observations) {
  if (static_cast<Eigen::Index>(observations.size()) != model.size())
    throw DomainError("averaging_estimate: expected " +
                      std::to_string(model.size()) + " observations");
  const Eigen::VectorXd w = averaging_weights(model);
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    s += w(i) * observations[static_cast<std::size_t>(i)];
  return s / static_cast<double>(w.size());
}

double info_accuracy(const CovarianceModel &model) {
  validate_model(model);
  if (model.size() == 1)
    return single_node_accuracy(model);
  // With a = w / M the averaged estimate is a^T x, so
  // E[(S - a^T x)^2] / sigma_s2 = 1 - 2 a^T R + a^T (B + gamma I) a.
  const Eigen::VectorXd a =
      averaging_weights(model) / static_cast<double>(model.size());
  const double cross = a.dot(model.r);
  const double quad = a.dot(regularized(model) * a);
  return 2.0 * cross - quad;
}

AccuracyReport evaluate(const CovarianceModel &model, double sigma_s2,
                        std::uint64_t seed) {
  if (!(sigma_s2 > 0.0))
    throw DomainError("evaluate: sigma_s2 must be > 0");
  AccuracyReport report;
  report.m = static_cast<std::size_t>(model.size());
  report.data_accuracy = data_accuracy(model);
  report.info_accuracy = info_accuracy(model);
  report.distortion = sigma_s2 * (1.0 - report.data_accuracy);
  report.gamma = model.gamma;
  report.sigma_s2 = sigma_s2;
  report.seed = seed;
  return report;
}

const char *report_header() {
  return "m,d_a,i_m,distortion,gamma,sigma_s2,seed";
}

void write_report_row(std::ostream &out, const AccuracyReport &report) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%" PRIu64,
                report.m, report.data_accuracy, report.info_accuracy,
                report.distortion, report.gamma, report.sigma_s2,
                report.seed);
  out << buf << '\n';
}

double calibrate_gamma(const CovarianceModel &model, double target,
                       double upper, double tolerance) {
  if (!(upper > 0.0))
    throw DomainError("calibrate_gamma: upper bound must be > 0");
  auto accuracy_at = [&](double gamma) {
    CovarianceModel m = model;
    m.gamma = gamma;
    return data_accuracy(m);
  };
  double lo = 0.0;
  double hi = upper;
  const double at_lo = accuracy_at(lo);
  const double at_hi = accuracy_at(hi);
  if (!(target <= at_lo && target >= at_hi))
    throw DomainError("calibrate_gamma: target " + std::to_string(target) +
                      " outside attainable range [" + std::to_string(at_hi) +
                      ", " + std::to_string(at_lo) + "]");
  // Data accuracy is strictly decreasing in gamma.
  for (int iter = 0; iter < 400 && hi - lo > tolerance * std::max(1.0, hi);
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (accuracy_at(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Monte Carlo ---------------------------------------------------------------

namespace {

class DrawGenerator {
public:
  DrawGenerator(const CovarianceModel &model, double sigma_s2)
      : m_(static_cast<std::size_t>(model.size())) {
    validate_model(model);
    if (!(sigma_s2 > 0.0))
      throw DomainError("sample_observations: sigma_s2 must be > 0");
    const Eigen::Index n = model.size() + 1;
    Eigen::MatrixXd joint(n, n);
    joint(0, 0) = 1.0;
    joint.block(1, 0, n - 1, 1) = model.r;
    joint.block(0, 1, 1, n - 1) = model.r.transpose();
    joint.block(1, 1, n - 1, n - 1) = model.b;
    root_ = psd_square_root(joint) * std::sqrt(sigma_s2);
    noise_sd_ = std::sqrt(sigma_s2 * model.gamma);
    z_.resize(n);
  }

  // Calls fn(s, signals, observations) for each draw in [0, n_draws).
  template <class Fn>
  void run(std::size_t n_draws, std::uint64_t seed, Fn &&fn) {
    std::vector<double> signals(m_), observations(m_);
    const std::size_t blocks = (n_draws + kDrawBlock - 1) / kDrawBlock;
    for (std::size_t block = 0; block < blocks; ++block) {
      Rng rng = Rng::substream(seed, block);
      const std::size_t end = std::min(n_draws, (block + 1) * kDrawBlock);
      for (std::size_t draw = block * kDrawBlock; draw < end; ++draw) {
        for (Eigen::Index k = 0; k < z_.size(); ++k)
          z_(k) = rng.normal();
        const Eigen::VectorXd v = root_ * z_;
        for (std::size_t i = 0; i < m_; ++i) {
          signals[i] = v(static_cast<Eigen::Index>(i) + 1);
          observations[i] = signals[i] + noise_sd_ * rng.normal();
        }
        fn(v(0), std::span<const double>(signals),
           std::span<const double>(observations));
      }
    }
  }

private:
  std::size_t m_;
  Eigen::MatrixXd root_;
  double noise_sd_ = 0.0;
  Eigen::VectorXd z_;
};

// Welford accumulator for squared errors.
class ErrorStats {
public:
  void add(double squared_error) {
    ++n_;
    const double delta = squared_error - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (squared_error - mean_);
  }

  MonteCarloResult result() const {
    MonteCarloResult r;
    r.draws = n_;
    r.mse = mean_;
    r.standard_error =
        n_ < 2 ? std::numeric_limits<double>::infinity()
               : std::sqrt(m2_ / static_cast<double>(n_ - 1) /
                           static_cast<double>(n_));
    return r;
  }

private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

double dot(const Eigen::VectorXd &w, std::span<const double> x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    s += w(i) * x[static_cast<std::size_t>(i)];
  return s;
}

} // namespace

SampleBatch sample_observations(const CovarianceModel &model, double sigma_s2,
                                std::size_t n_draws, std::uint64_t seed) {
  if (n_draws == 0)
    throw DomainError("sample_observations: n_draws must be >= 1");
  DrawGenerator gen(model, sigma_s2);
  SampleBatch batch;
  batch.m = static_cast<std::size_t>(model.size());
  batch.seed = seed;
  batch.tracing.reserve(n_draws);
  batch.signals.reserve(n_draws * batch.m);
  batch.observations.reserve(n_draws * batch.m);
  gen.run(n_draws, seed,
          [&](double s, std::span<const double> sig,
              std::span<const double> obs) {
            batch.tracing.push_back(s);
            batch.signals.insert(batch.signals.end(), sig.begin(), sig.end());
            batch.observations.insert(batch.observations.end(), obs.begin(),
                                      obs.end());
          });
  return batch;
}

SampleBatch sample_observations(const Field &field,
                                std::span<const NodeId> sensing,
                                const TracingPoint &tracing,
                                const CorrelationParams &params,
                                std::size_t n_draws, std::uint64_t seed) {
  return sample_observations(build_covariance(field, sensing, tracing, params),
                             field.sigma_s2(), n_draws, seed);
}

MonteCarloResult monte_carlo_distortion(const SampleBatch &batch,
                                        const CovarianceModel &model,
                                        Estimator estimator) {
  if (static_cast<Eigen::Index>(batch.m) != model.size())
    throw DomainError("monte_carlo_distortion: batch and model sizes differ");
  Eigen::VectorXd w = estimator == Estimator::JointMmse
                          ? mmse_weights(model)
                          : Eigen::VectorXd(averaging_weights(model) /
                                            static_cast<double>(model.size()));
  ErrorStats stats;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const double e = batch.tracing[k] - dot(w, batch.observations_of(k));
    stats.add(e * e);
  }
  return stats.result();
}

MonteCarloPair monte_carlo_stream(const CovarianceModel &model,
                                  double sigma_s2, std::size_t n_draws,
                                  std::uint64_t seed) {
  if (n_draws == 0)
    throw DomainError("monte_carlo_stream: n_draws must be >= 1");
  const Eigen::VectorXd joint_w = mmse_weights(model);
  const Eigen::VectorXd avg_w =
      averaging_weights(model) / static_cast<double>(model.size());
  ErrorStats joint, averaging;
  DrawGenerator gen(model, sigma_s2);
  gen.run(n_draws, seed,
          [&](double s, std::span<const double>, std::span<const double> obs) {
            const double ej = s - dot(joint_w, obs);
            const double ea = s - dot(avg_w, obs);
            joint.add(ej * ej);
            averaging.add(ea * ea);
          });
  return {joint.result(), averaging.result()};
}

} // namespace wsnacc
