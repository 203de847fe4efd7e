// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fail.
#include <wsnacc/accuracy.hpp>
#include <wsnacc/clustering.hpp>
#include <wsnacc/correlation.hpp>
#include <wsnacc/field.hpp>
#include <wsnacc/linalg.hpp>
#include <wsnacc/rng.hpp>
#include <wsnacc/scenarios.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iterator>
#include <numeric>
#include <string>
#include <vector>

using namespace wsnacc;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string &why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0,
                double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int run(int number, const char *name, double limit_s,
        const std::function<Outcome()> &body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception &e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (out.ok && elapsed >= limit_s)
    out.fail(fmt("runtime %.2f s over limit %.0f s", elapsed, limit_s));
  std::printf("%s %d %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", number,
              name, elapsed, out.detail.empty() ? "" : ": ",
              out.detail.c_str());
  std::fflush(stdout);
  return out.ok ? 0 : 1;
}

Outcome radius_law() {
  Outcome o;
  double previous = INFINITY;
  for (int k = 1; k <= 10; ++k) {
    const double tau = k / 10.0;
    const auto p = CorrelationParams::make(70.0, 1.0, tau);
    const double r = radius_from_threshold(p);
    if (!(r < previous)) o.fail(fmt("not strictly decreasing at tau %.1f", tau));
    if (std::abs(kernel(r, p) - tau) > 1e-9)
      o.fail(fmt("kernel(r(%.1f)) = %.12f", tau, kernel(r, p)));
    previous = r;
  }
  if (radius_from_threshold(CorrelationParams::make(70.0, 1.0, 1.0)) != 0.0)
    o.fail("tau = 1 does not give radius 0");
  o.detail = o.ok ? fmt("r(0.5) = %.4f", radius_from_threshold(
                                             CorrelationParams::make(70, 1, 0.5)))
                  : o.detail;
  return o;
}

Outcome cluster_count_law() {
  Outcome o;
  const double diag = 100.0 * std::sqrt(2.0);
  auto mean = [](double r) {
    return average_cluster_count(30, 100.0, 100.0, r, 100, 1);
  };
  if (mean(0.0) != 30.0) o.fail("mean at r = 0 is not 30");
  double previous = INFINITY;
  for (int r = 5; r <= 150; r += 5) {
    const double c = mean(r);
    if (c > previous) o.fail(fmt("mean rises at r = %.0f (%.2f)", r, c));
    if (r >= diag && c != 1.0) o.fail(fmt("mean %.2f at r = %.0f", c, r));
    previous = c;
  }
  if (mean(diag) != 1.0) o.fail("mean at r = 100*sqrt(2) is not 1");
  if (o.ok) o.detail = fmt("mean at r = 25: %.2f", mean(25.0));
  return o;
}

Outcome anchor() {
  Outcome o;
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < std::size(kAnchorNodes); ++i)
    nodes.push_back({static_cast<NodeId>(i), kAnchorNodes[i]});
  const auto params = CorrelationParams::make(70.0, 1.0);
  const double gamma = calibrate_anchor_gamma(params, kAnchorDataAccuracy);
  if (!(gamma > 0.0 && gamma <= 10.0)) o.fail(fmt("gamma* = %g", gamma));
  const Field field(nodes, {kAnchorTracing}, 1.0, gamma);
  const std::vector<NodeId> four{0, 1, 2, 3}, five{0, 1, 2, 3, 4};
  const auto m4 = build_covariance(field, four, kAnchorTracing, params);
  const auto m5 = build_covariance(field, five, kAnchorTracing, params);
  const double d4 = data_accuracy(m4), d5 = data_accuracy(m5);
  const double i4 = info_accuracy(m4), i5 = info_accuracy(m5);
  const std::string values =
      fmt("gamma* %.6f D_A(4) %.5f D_A(5) %.5f", gamma, d4, d5) +
      fmt(" I(4) %.5f I(5) %.5f", i4, i5);
  if (std::abs(d4 - kAnchorDataAccuracy) > 0.0005) o.fail("D_A(4) off target");
  if (d5 < 0.75 || d5 > 0.78) o.fail("D_A(5) outside [0.75, 0.78]");
  if (!(d5 > d4)) o.fail("D_A(5) <= D_A(4)");
  if (!(i5 < i4)) o.fail("I(5) >= I(4)");
  if (!(i4 < d4 && i5 < d5)) o.fail("I >= D_A");
  o.detail = o.ok ? values : o.detail + "; " + values;
  return o;
}

Outcome fig3_shape() {
  Outcome o;
  const auto result = run_fig3(default_scenario_config(ScenarioKind::Fig3));
  if (result.rows.size() != 34) o.fail("expected 34 rows");
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const double d = result.number(i, "d_a"), im = result.number(i, "i_m");
    if (i > 0 && d < result.number(i - 1, "d_a"))
      o.fail(fmt("D_A decreases at M = %.0f", double(i + 1)));
    if (d < im) o.fail(fmt("D_A < I at M = %.0f", double(i + 1)));
  }
  if (result.rows.size() == 34) {
    const double gain = result.number(33, "d_a") - result.number(19, "d_a");
    if (!(gain < 0.02)) o.fail(fmt("gain M=20..34 is %.4f", gain));
    if (o.ok)
      o.detail = fmt("D_A(1) %.4f D_A(34) %.4f gain 20..34 %.4f",
                     result.number(0, "d_a"), result.number(33, "d_a"), gain);
  }
  return o;
}

Outcome fig4_shape() {
  Outcome o;
  const auto result = run_fig4(default_scenario_config(ScenarioKind::Fig4));
  if (result.rows.size() != 20) o.fail("expected a 20-point sweep");
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const double d = result.number(i, "d_a"), im = result.number(i, "i_m");
    const double r = result.number(i, "radius");
    if (i > 0 && d > result.number(i - 1, "d_a"))
      o.fail(fmt("D_A rises at radius %.0f", r));
    if (i > 0 && im > result.number(i - 1, "i_m"))
      o.fail(fmt("I rises at radius %.0f", r));
    if (d < im) o.fail(fmt("D_A < I at radius %.0f", r));
  }
  return o;
}

Outcome table1_qualitative() {
  Outcome o;
  std::size_t clusters = 0, singletons = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto config = default_scenario_config(ScenarioKind::Table1);
    config.seed = seed;
    const Field field =
        deploy_random(config.nodes, config.width, config.height, seed);
    const auto clustering = cluster_field(field, config.radius);
    const std::string why = check_partition(field, clustering);
    if (!why.empty()) o.fail(why);

    const auto result = run_table1(config);
    if (result.rows.size() != clustering.clusters.size())
      o.fail("row count differs from cluster count");
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      const double d = result.number(i, "d_a"), im = result.number(i, "i_m");
      ++clusters;
      if (result.number(i, "m") == 1.0) {
        ++singletons;
        if (d != im) o.fail(fmt("singleton with D_A %.17g != I %.17g", d, im));
      } else if (!(d > im)) {
        o.fail(fmt("multi-node cluster with D_A %.6f <= I %.6f", d, im));
      }
    }
  }
  if (o.ok)
    o.detail = fmt("10 seeds, %.0f clusters, %.0f singletons", double(clusters),
                   double(singletons));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  constexpr std::size_t kConfigs = 24, kDraws = 1000000;
  const auto params = CorrelationParams::make(70.0, 1.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < kConfigs; ++k) {
    Rng rng = Rng::substream(20240601, k);
    const auto m = 1 + static_cast<std::size_t>(rng.uniform() * 8.0);
    std::vector<Node> nodes;
    for (std::size_t i = 0; i < m; ++i)
      nodes.push_back({static_cast<NodeId>(i),
                       {rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)}});
    const TracingPoint tracing{rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)};
    const double gamma = std::pow(10.0, rng.uniform(-2.0, 1.0));
    const double s2 = rng.uniform(0.5, 2.0);
    const Field field(nodes, {tracing}, s2, s2 * gamma);
    const auto ids = field.ids();
    const auto model = build_covariance(field, ids, tracing, params);
    const auto mc = monte_carlo_stream(model, s2, kDraws, mix_seed(7, k));
    const double analytic_joint = s2 * (1.0 - data_accuracy(model));
    const double analytic_avg = s2 * (1.0 - info_accuracy(model));
    const double zj = (analytic_joint - mc.joint.mse) / mc.joint.standard_error;
    const double za =
        (analytic_avg - mc.averaging.mse) / mc.averaging.standard_error;
    worst = std::max({worst, std::abs(zj), std::abs(za)});
    if (!(std::abs(zj) <= 3.0))
      o.fail(fmt("config %.0f joint z = %.2f", double(k), zj));
    if (!(std::abs(za) <= 3.0))
      o.fail(fmt("config %.0f averaging z = %.2f", double(k), za));
  }
  o.detail = (o.ok ? "" : o.detail + "; ") +
             fmt("%.0f configs x 2 estimators, max |z| %.2f", double(kConfigs),
                 worst);
  return o;
}

Outcome properties() {
  Outcome o;
  constexpr std::size_t kInstances = 250;
  std::size_t psd = 0, monotone = 0, dominance = 0, bounds = 0, clusterings = 0;
  for (std::size_t k = 0; k < kInstances; ++k) {
    Rng rng = Rng::substream(99, k);
    const auto m = 2 + static_cast<std::size_t>(rng.uniform() * 11.0);
    const double extent = rng.uniform(1.0, 200.0);
    std::vector<Node> nodes;
    for (std::size_t i = 0; i < m; ++i)
      nodes.push_back({static_cast<NodeId>(i),
                       {rng.uniform(0.0, extent), rng.uniform(0.0, extent)}});
    const TracingPoint tracing{rng.uniform(0.0, extent),
                               rng.uniform(0.0, extent)};
    const auto params = CorrelationParams::make(
        rng.uniform(1.0, 200.0), rng.uniform(0.05, 2.0), rng.uniform(0.05, 1.0));
    const double gamma = std::pow(10.0, rng.uniform(-3.0, 1.0));
    const Field field(nodes, {tracing}, 1.0, gamma);
    const auto ids = field.ids();

    const auto full = build_covariance(field, ids, tracing, params);
    SpdFactor factor(full.b);
    if (factor.jitter() <= 1e-6 * full.b.trace() / double(m)) ++psd;

    bool mono = true, dom = true, bound = true;
    double previous = 0.0;
    for (std::size_t n = 1; n <= m; ++n) {
      const std::vector<NodeId> prefix(ids.begin(), ids.begin() + n);
      const auto model = build_covariance(field, prefix, tracing, params);
      const double d = data_accuracy(model), im = info_accuracy(model);
      if (d < previous - 1e-12) mono = false;
      if (d < im - 1e-12) dom = false;
      if (!(d >= 0.0 && d < 1.0)) bound = false;
      previous = d;
    }
    monotone += mono;
    dominance += dom;
    bounds += bound;

    const double radius = radius_from_threshold(params);
    const auto first = cluster_field(field, radius);
    std::vector<Node> shuffled = nodes;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto second = cluster_field(Field(shuffled, {tracing}, 1.0, gamma), radius);
    if (first == second && first == cluster_field(field, radius) &&
        check_partition(field, first).empty())
      ++clusterings;
  }
  auto need = [&](std::size_t passed, const char *what) {
    if (passed != kInstances)
      o.fail(std::string(what) + ": " + std::to_string(kInstances - passed) +
             " failures");
  };
  need(psd, "PSD");
  need(monotone, "monotonicity");
  need(dominance, "dominance");
  need(bounds, "bounds");
  need(clusterings, "clustering");
  if (o.ok) o.detail = std::to_string(kInstances) + " instances per property";
  return o;
}

} // namespace

int main() {
  int failures = 0;
  failures += run(1, "radius law", 1.0, radius_law);
  failures += run(2, "cluster-count law", 10.0, cluster_count_law);
  failures += run(3, "anchor calibration", 5.0, anchor);
  failures += run(4, "node-count sweep shape", 10.0, fig3_shape);
  failures += run(5, "circular radius sweep shape", 5.0, fig4_shape);
  failures += run(6, "per-cluster table", 10.0, table1_qualitative);
  failures += run(7, "oracle equivalence", 120.0, oracle_equivalence);
  failures += run(8, "property suites", 60.0, properties);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
