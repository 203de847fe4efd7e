#include "wsnacc/scenarios.hpp"

#include "wsnacc/accuracy.hpp"
#include "wsnacc/error.hpp"
#include "wsnacc/rng.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>

#ifndef WSNACC_VERSION
#define WSNACC_VERSION "0.0.0"
#endif

namespace wsnacc {

std::string_view version() { return WSNACC_VERSION; }

namespace {

constexpr double kTolerance = 1e-12;

struct KindName {
  ScenarioKind kind;
  std::string_view name;
};
constexpr KindName kKindNames[] = {{ScenarioKind::Fig1a, "fig1a"},
                                   {ScenarioKind::Fig1b, "fig1b"},
                                   {ScenarioKind::Fig3, "fig3"},
                                   {ScenarioKind::Fig4, "fig4"},
                                   {ScenarioKind::Table1, "table1"}};

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> range_sweep(double first, double step, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = first + step * static_cast<double>(k);
  return out;
}


std::vector<std::pair<std::string, std::string>>
base_provenance(const ScenarioConfig &c) {
  return {{"kind", std::string(to_string(c.kind))},
          {"version", "wsnacc " + std::string(version())},
          {"seed", std::to_string(c.seed)}};
}

// Indices of `values` in ascending order (stable).
std::vector<std::size_t> ascending(const std::vector<double> &values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  return idx;
}

enum class Trend { StrictlyDecreasing, NonIncreasing, NonDecreasing };

void check_trend(const ScenarioResult &result, std::string_view key,
                 std::string_view metric, Trend trend) {
  std::vector<double> keys, metrics;
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    keys.push_back(result.number(r, key));
    metrics.push_back(result.number(r, metric));
  }
  const auto idx = ascending(keys);
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const double prev = metrics[idx[k - 1]];
    const double cur = metrics[idx[k]];
    if (keys[idx[k]] == keys[idx[k - 1]])
      continue;
    bool ok = true;
    switch (trend) {
    case Trend::StrictlyDecreasing: ok = cur < prev; break;
    case Trend::NonIncreasing: ok = cur <= prev + kTolerance; break;
    case Trend::NonDecreasing: ok = cur >= prev - kTolerance; break;
    }
    if (!ok)
      throw CheckFailure(std::string(to_string(result.kind)) + ": " +
                         std::string(metric) + " is not monotone in " +
                         std::string(key) + " between " +
                         real(keys[idx[k - 1]]) + " and " + real(keys[idx[k]]));
  }
}

void check_dominance(const ScenarioResult &result) {
  for (std::size_t r = 0; r < result.rows.size(); ++r)
    if (result.number(r, "d_a") < result.number(r, "i_m") - kTolerance)
      throw CheckFailure(std::string(to_string(result.kind)) +
                         ": data accuracy below the averaging baseline in row " +
                         std::to_string(r + 1));
}

void add_oracle_columns(std::vector<std::string> &columns) {
  for (const char *c :
       {"d_a_mc", "d_a_se", "d_a_z", "i_m_mc", "i_m_se", "i_m_z"})
    columns.emplace_back(c);
}

// Appends normalized Monte Carlo accuracies, their standard errors and the
// z-scores of the analytic values.
void append_oracle(std::vector<Cell> &row, const CovarianceModel &model,
                   double sigma_s2, double d_a, double i_m,
                   std::size_t draws, std::uint64_t seed) {
  const auto mc = monte_carlo_stream(model, sigma_s2, draws, seed);
  auto push = [&](const MonteCarloResult &r, double analytic) {
    const double acc = 1.0 - r.mse / sigma_s2;
    const double se = r.standard_error / sigma_s2;
    row.emplace_back(acc);
    row.emplace_back(se);
    row.emplace_back(se > 0.0 ? (analytic - acc) / se : 0.0);
  };
  push(mc.joint, d_a);
  push(mc.averaging, i_m);
}

std::optional<NodeId> node_at(const Field &field, const Point &p) {
  for (const auto &n : field.nodes())
    if (euclidean_distance(n.position, p) < 1e-9)
      return n.id;
  return std::nullopt;
}

Field anchor_field(double sigma_s2, double gamma) {
  std::vector<Node> nodes;
  for (std::size_t k = 0; k < std::size(kAnchorNodes); ++k)
    nodes.push_back({static_cast<NodeId>(k), kAnchorNodes[k]});
  return Field(std::move(nodes), {kAnchorTracing}, sigma_s2, sigma_s2 * gamma);
}

double resolve_gamma(const ScenarioConfig &c) {
  return c.gamma ? *c.gamma
                 : calibrate_anchor_gamma(c.params(), c.calibration_target);
}

std::vector<VarianceOverride> parse_overrides(const std::string &text) {
  std::vector<VarianceOverride> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::stringstream is(item);
    std::string a, b, c;
    if (!std::getline(is, a, ':') || !std::getline(is, b, ':') ||
        !std::getline(is, c, ':'))
      throw DomainError("overrides: expected 'cluster:sigma_s2:sigma_n2', got '" +
                        item + "'");
    const auto k = parse_uint(a);
    const auto s2 = parse_double(b);
    const auto n2 = parse_double(c);
    if (!k || !s2 || !n2)
      throw DomainError("overrides: malformed entry '" + item + "'");
    out.push_back({static_cast<std::size_t>(*k), *s2, *n2});
  }
  return out;
}

} // namespace

std::string_view to_string(ScenarioKind kind) {
  for (const auto &k : kKindNames)
    if (k.kind == kind)
      return k.name;
  return "unknown";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
  for (const auto &k : kKindNames)
    if (k.name == name)
      return k.kind;
  throw DomainError("unknown scenario kind '" + std::string(name) +
                    "' (expected fig1a, fig1b, fig3, fig4 or table1)");
}

CorrelationParams ScenarioConfig::params() const {
  return CorrelationParams::make(theta1, theta2, tau);
}

ScenarioConfig default_scenario_config(ScenarioKind kind) {
  ScenarioConfig c;
  c.kind = kind;
  switch (kind) {
  case ScenarioKind::Fig1a:
    c.sweep.clear();
    for (int k = 1; k <= 10; ++k)
      c.sweep.push_back(k / 10.0);
    break;
  case ScenarioKind::Fig1b:
    c.sweep = range_sweep(0.0, 5.0, 31);
    break;
  case ScenarioKind::Fig3:
    c.gamma.reset();
    c.sweep = range_sweep(1.0, 1.0, c.grid_rows * c.grid_cols - 1);
    break;
  case ScenarioKind::Fig4:
    c.sweep = range_sweep(0.0, 5.0, 20);
    break;
  case ScenarioKind::Table1:
    break;
  }
  return c;
}

ScenarioConfig scenario_config_from(KeyValueConfig &cfg, ScenarioKind kind) {
  ScenarioConfig c = default_scenario_config(kind);
  auto take_size = [&](const char *key, std::size_t &slot) {
    if (auto v = cfg.take_uint(key))
      slot = static_cast<std::size_t>(*v);
  };
  auto take_real = [&](const char *key, double &slot) {
    if (auto v = cfg.take_double(key))
      slot = *v;
  };

  if (auto v = cfg.take_uint("seed"))
    c.seed = *v;
  if (kind != ScenarioKind::Fig1b) {
    take_real("theta1", c.theta1);
    take_real("theta2", c.theta2);
  }
  if (kind != ScenarioKind::Table1) {
    if (auto v = cfg.take_doubles("sweep"))
      c.sweep = *v;
  }
  if (kind == ScenarioKind::Fig3 || kind == ScenarioKind::Fig4 ||
      kind == ScenarioKind::Table1) {
    if (auto g = cfg.take_string("gamma")) {
      if (*g == "calibrate") {
        c.gamma.reset();
      } else if (auto v = parse_double(*g)) {
        c.gamma = *v;
      } else {
        throw DomainError("gamma: expected a number or 'calibrate', got '" +
                          *g + "'");
      }
    }
    take_real("calibration_target", c.calibration_target);
    take_real("sigma_s2", c.sigma_s2);
    take_size("mc_draws", c.mc_draws);
  }
  if (kind == ScenarioKind::Fig1b || kind == ScenarioKind::Table1) {
    take_size("nodes", c.nodes);
    take_real("width", c.width);
    take_real("height", c.height);
  }
  switch (kind) {
  case ScenarioKind::Fig1a:
    break;
  case ScenarioKind::Fig1b:
    take_size("trials", c.trials);
    break;
  case ScenarioKind::Fig3: {
    const bool custom_sweep = cfg.has("sweep");
    take_size("grid_rows", c.grid_rows);
    take_size("grid_cols", c.grid_cols);
    take_real("grid_spacing", c.grid_spacing);
    if (!custom_sweep && c.grid_rows * c.grid_cols >= 2)
      c.sweep = range_sweep(1.0, 1.0, c.grid_rows * c.grid_cols - 1);
    break;
  }
  case ScenarioKind::Fig4:
    take_size("circle_nodes", c.circle_nodes);
    break;
  case ScenarioKind::Table1:
    take_real("radius", c.radius);
    take_real("tau", c.tau);
    if (auto o = cfg.take_string("overrides"))
      c.overrides = parse_overrides(*o);
    break;
  }
  cfg.finish();
  validate(c);
  return c;
}

void validate(const ScenarioConfig &c) {
  (void)c.params();
  if (c.gamma && !(*c.gamma > 0.0))
    throw DomainError("gamma must be > 0");
  if (!(c.sigma_s2 > 0.0))
    throw DomainError("sigma_s2 must be > 0");
  if (!(c.calibration_target > 0.0 && c.calibration_target < 1.0))
    throw DomainError("calibration_target must be in (0, 1)");
  if (c.kind != ScenarioKind::Table1 && c.sweep.empty())
    throw DomainError("sweep must not be empty");
  if (c.mc_draws == 1)
    throw DomainError("mc_draws must be 0 (disabled) or >= 2");
  for (double v : c.sweep)
    if (!std::isfinite(v))
      throw DomainError("sweep values must be finite");
  switch (c.kind) {
  case ScenarioKind::Fig1a:
    for (double tau : c.sweep)
      if (!(tau > 0.0 && tau <= 1.0))
        throw DomainError("fig1a sweep values are thresholds in (0, 1]");
    break;
  case ScenarioKind::Fig1b:
    for (double r : c.sweep)
      if (!(r >= 0.0))
        throw DomainError("fig1b sweep values are radii >= 0");
    if (c.trials == 0)
      throw DomainError("trials must be >= 1");
    [[fallthrough]];
  case ScenarioKind::Table1:
    if (c.nodes == 0)
      throw DomainError("nodes must be >= 1");
    if (!(c.width > 0.0 && c.height > 0.0))
      throw DomainError("width and height must be > 0");
    if (c.kind == ScenarioKind::Table1) {
      if (!(c.radius >= 0.0))
        throw DomainError("radius must be >= 0");
      for (const auto &o : c.overrides)
        if (o.cluster == 0 || !(o.sigma_s2 > 0.0) || !(o.sigma_n2 > 0.0))
          throw DomainError("overrides need cluster >= 1 and positive variances");
    }
    break;
  case ScenarioKind::Fig3: {
    if (c.grid_rows == 0 || c.grid_cols == 0 || !(c.grid_spacing > 0.0))
      throw DomainError("grid dimensions and spacing must be positive");
    const double sensing =
        static_cast<double>(c.grid_rows * c.grid_cols) - 1.0;
    for (double m : c.sweep)
      if (m < 1.0 || m > sensing || m != std::floor(m))
        throw DomainError("fig3 sweep values are node counts in [1, " +
                          real(sensing) + "]");
    break;
  }
  case ScenarioKind::Fig4:
    if (c.circle_nodes == 0)
      throw DomainError("circle_nodes must be >= 1");
    for (double r : c.sweep)
      if (!(r >= 0.0))
        throw DomainError("fig4 sweep values are radii >= 0");
    break;
  }
}

std::size_t ScenarioResult::column(std::string_view name) const {
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == name)
      return k;
  throw DomainError("no column '" + std::string(name) + "'");
}

double ScenarioResult::number(std::size_t row,
                              std::string_view column_name) const {
  const Cell &cell = rows.at(row).at(column(column_name));
  if (const auto *d = std::get_if<double>(&cell))
    return *d;
  if (const auto *i = std::get_if<std::int64_t>(&cell))
    return static_cast<double>(*i);
  throw DomainError("column '" + std::string(column_name) + "' is not numeric");
}

std::vector<NodeId> fig3_node_order(const Field &grid) {
  const TracingPoint tracing = grid.tracing_points().front();
  const auto head = grid.designated_head();
  std::vector<NodeId> order;
  for (const Point &p : kAnchorNodes) {
    auto id = node_at(grid, p);
    if (!id)
      throw DomainError("grid has no node at anchor (" + real(p.x) + ", " +
                        real(p.y) + ")");
    if (head && *id == *head)
      throw DomainError("an anchor position coincides with the cluster head");
    order.push_back(*id);
  }
  std::vector<NodeId> rest;
  for (NodeId id : grid.ids())
    if ((!head || id != *head) &&
        std::find(order.begin(), order.end(), id) == order.end())
      rest.push_back(id);
  std::sort(rest.begin(), rest.end(), [&](NodeId a, NodeId b) {
    const double da = euclidean_distance(grid.node(a), tracing);
    const double db = euclidean_distance(grid.node(b), tracing);
    return da != db ? da < db : a < b;
  });
  order.insert(order.end(), rest.begin(), rest.end());
  return order;
}

double calibrate_anchor_gamma(const CorrelationParams &params, double target) {
  const Field field = anchor_field(1.0, 1.0);
  const std::vector<NodeId> four{0, 1, 2, 3};
  const auto model =
      build_covariance(field, four, kAnchorTracing, params);
  return calibrate_gamma(model, target, 10.0);
}

ScenarioResult run_fig1a(const ScenarioConfig &c) {
  if (c.kind != ScenarioKind::Fig1a)
    throw DomainError("run_fig1a: wrong scenario kind");
  validate(c);
  ScenarioResult result;
  result.kind = c.kind;
  result.columns = {"tau", "radius"};
  result.provenance = base_provenance(c);
  result.provenance.emplace_back("theta1", real(c.theta1));
  result.provenance.emplace_back("theta2", real(c.theta2));
  result.provenance.emplace_back("note",
                                 "radius = theta1 * ln(1/tau)^(1/theta2)");
  for (double tau : c.sweep) {
    const auto p = CorrelationParams::make(c.theta1, c.theta2, tau);
    result.rows.push_back({tau, radius_from_threshold(p)});
  }
  check_trend(result, "tau", "radius", Trend::StrictlyDecreasing);
  return result;
}

ScenarioResult run_fig1b(const ScenarioConfig &c) {
  if (c.kind != ScenarioKind::Fig1b)
    throw DomainError("run_fig1b: wrong scenario kind");
  validate(c);
  ScenarioResult result;
  result.kind = c.kind;
  result.columns = {"radius", "avg_clusters"};
  result.provenance = base_provenance(c);
  result.provenance.emplace_back("nodes", std::to_string(c.nodes));
  result.provenance.emplace_back("field", real(c.width) + "x" + real(c.height));
  result.provenance.emplace_back("trials", std::to_string(c.trials));
  for (double r : c.sweep)
    result.rows.push_back(
        {r, average_cluster_count(c.nodes, c.width, c.height, r, c.trials,
                                  c.seed)});
  check_trend(result, "radius", "avg_clusters", Trend::NonIncreasing);
  return result;
}

ScenarioResult run_fig3(const ScenarioConfig &c) {
  if (c.kind != ScenarioKind::Fig3)
    throw DomainError("run_fig3: wrong scenario kind");
  validate(c);
  const double gamma = resolve_gamma(c);
  const auto params = c.params();
  const Field grid = deploy_grid(c.grid_rows, c.grid_cols, c.grid_spacing,
                                 Corner::BottomLeft, c.sigma_s2,
                                 c.sigma_s2 * gamma);
  const auto order = fig3_node_order(grid);
  const TracingPoint tracing = grid.tracing_points().front();

  ScenarioResult result;
  result.kind = c.kind;
  result.columns = {"m", "d_a", "i_m"};
  if (c.mc_draws > 0)
    add_oracle_columns(result.columns);
  result.provenance = base_provenance(c);
  result.provenance.emplace_back("theta1", real(c.theta1));
  result.provenance.emplace_back("theta2", real(c.theta2));
  result.provenance.emplace_back("gamma", real(gamma));
  if (!c.gamma)
    result.provenance.emplace_back(
        "gamma_calibration",
        "four anchor nodes at d_a = " + real(c.calibration_target));
  result.provenance.emplace_back("sigma_s2", real(c.sigma_s2));
  result.provenance.emplace_back(
      "grid", std::to_string(c.grid_rows) + "x" + std::to_string(c.grid_cols) +
                  " spacing " + real(c.grid_spacing) + ", head node " +
                  std::to_string(*grid.designated_head()));
  result.provenance.emplace_back("tracing",
                                 real(tracing.x) + " " + real(tracing.y));
  std::string order_text;
  for (NodeId id : order)
    order_text += (order_text.empty() ? "" : " ") + std::to_string(id);
  result.provenance.emplace_back("node_order", order_text);
  result.provenance.emplace_back("mc_draws", std::to_string(c.mc_draws));

  for (double mv : c.sweep) {
    const auto m = static_cast<std::size_t>(mv);
    const std::span<const NodeId> sensing(order.data(), m);
    const auto model = build_covariance(grid, sensing, tracing, params);
    const double d_a = data_accuracy(model);
    const double i_m = info_accuracy(model);
    std::vector<Cell> row{static_cast<std::int64_t>(m), d_a, i_m};
    if (c.mc_draws > 0)
      append_oracle(row, model, c.sigma_s2, d_a, i_m, c.mc_draws,
                    mix_seed(c.seed, m));
    result.rows.push_back(std::move(row));
  }
  check_trend(result, "m", "d_a", Trend::NonDecreasing);
  check_dominance(result);
  return result;
}

ScenarioResult run_fig4(const ScenarioConfig &c) {
  if (c.kind != ScenarioKind::Fig4)
    throw DomainError("run_fig4: wrong scenario kind");
  validate(c);
  const double gamma = resolve_gamma(c);
  const auto params = c.params();
  ScenarioResult result;
  result.kind = c.kind;
  result.columns = {"radius", "d_a", "i_m"};
  if (c.mc_draws > 0)
    add_oracle_columns(result.columns);
  result.provenance = base_provenance(c);
  result.provenance.emplace_back("theta1", real(c.theta1));
  result.provenance.emplace_back("theta2", real(c.theta2));
  result.provenance.emplace_back("gamma", real(gamma));
  result.provenance.emplace_back("sigma_s2", real(c.sigma_s2));
  result.provenance.emplace_back("circle_nodes",
                                 std::to_string(c.circle_nodes));
  result.provenance.emplace_back("mc_draws", std::to_string(c.mc_draws));
  for (std::size_t k = 0; k < c.sweep.size(); ++k) {
    const double radius = c.sweep[k];
    const Field field = deploy_circular(c.circle_nodes, radius, {0.0, 0.0},
                                        c.sigma_s2, c.sigma_s2 * gamma);
    const auto ids = field.ids();
    const auto model =
        build_covariance(field, ids, field.tracing_points().front(), params);
    const double d_a = data_accuracy(model);
    const double i_m = info_accuracy(model);
    std::vector<Cell> row{radius, d_a, i_m};
    if (c.mc_draws > 0)
      append_oracle(row, model, c.sigma_s2, d_a, i_m, c.mc_draws,
                    mix_seed(c.seed, k));
    result.rows.push_back(std::move(row));
  }
  check_trend(result, "radius", "d_a", Trend::NonIncreasing);
  check_trend(result, "radius", "i_m", Trend::NonIncreasing);
  check_dominance(result);
  return result;
}

ScenarioResult run_table1(const ScenarioConfig &c) {
  if (c.kind != ScenarioKind::Table1)
    throw DomainError("run_table1: wrong scenario kind");
  validate(c);
  const double gamma = resolve_gamma(c);
  const auto params = c.params();
  const Field field = deploy_random(c.nodes, c.width, c.height, c.seed,
                                    c.sigma_s2, c.sigma_s2 * gamma);
  const Clustering clustering = cluster_field(field, c.radius);
  if (auto err = check_partition(field, clustering); !err.empty())
    throw CheckFailure("table1: invalid clustering: " + err);
  for (const auto &o : c.overrides)
    if (o.cluster > clustering.clusters.size())
      throw DomainError("overrides: cluster " + std::to_string(o.cluster) +
                        " does not exist (" +
                        std::to_string(clustering.clusters.size()) +
                        " clusters formed)");

  ScenarioResult result;
  result.kind = c.kind;
  result.columns = {"cluster",  "head",     "members",  "m",   "tracing_x",
                    "tracing_y", "sigma_s2", "sigma_n2", "i_m", "d_a"};
  if (c.mc_draws > 0)
    add_oracle_columns(result.columns);
  result.provenance = base_provenance(c);
  result.provenance.emplace_back("theta1", real(c.theta1));
  result.provenance.emplace_back("theta2", real(c.theta2));
  result.provenance.emplace_back("radius", real(c.radius));
  result.provenance.emplace_back("gamma", real(gamma));
  result.provenance.emplace_back("nodes", std::to_string(c.nodes));
  result.provenance.emplace_back("field", real(c.width) + "x" + real(c.height));
  result.provenance.emplace_back("clusters",
                                 std::to_string(clustering.clusters.size()));
  result.provenance.emplace_back("mc_draws", std::to_string(c.mc_draws));

  // Stream 0 of the seed is the deployment; tracing points use stream 1.
  Rng rng = Rng::substream(c.seed, 1);
  for (std::size_t k = 0; k < clustering.clusters.size(); ++k) {
    const Cluster &cl = clustering.clusters[k];
    Point lo = field.node(cl.head).position, hi = lo;
    for (NodeId j : cl.members) {
      const Point &p = field.node(j).position;
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const double tx = rng.uniform(lo.x, hi.x);
    const double ty = rng.uniform(lo.y, hi.y);
    const TracingPoint tracing{tx, ty};

    double s2 = c.sigma_s2, n2 = c.sigma_s2 * gamma;
    for (const auto &o : c.overrides)
      if (o.cluster == k + 1) {
        s2 = o.sigma_s2;
        n2 = o.sigma_n2;
      }
    const Field local = field.with_variances(s2, n2);
    const auto model =
        build_covariance(local, cl, tracing, params, HeadRole::Senses);
    const double d_a = data_accuracy(model);
    const double i_m = info_accuracy(model);
    if (cl.members.empty() ? d_a != i_m : d_a < i_m - kTolerance)
      throw CheckFailure("table1: accuracy ordering violated in cluster " +
                         std::to_string(k + 1));

    std::string members;
    for (NodeId j : cl.members)
      members += (members.empty() ? "" : " ") + std::to_string(j);
    if (members.empty())
      members = "-";
    std::vector<Cell> row{static_cast<std::int64_t>(k + 1),
                          static_cast<std::int64_t>(cl.head),
                          members,
                          static_cast<std::int64_t>(cl.size()),
                          tx,
                          ty,
                          s2,
                          n2,
                          i_m,
                          d_a};
    if (c.mc_draws > 0)
      append_oracle(row, model, s2, d_a, i_m, c.mc_draws,
                    mix_seed(c.seed, 100 + k));
    result.rows.push_back(std::move(row));
  }
  return result;
}

ScenarioResult run_scenario(const ScenarioConfig &config) {
  switch (config.kind) {
  case ScenarioKind::Fig1a: return run_fig1a(config);
  case ScenarioKind::Fig1b: return run_fig1b(config);
  case ScenarioKind::Fig3: return run_fig3(config);
  case ScenarioKind::Fig4: return run_fig4(config);
  case ScenarioKind::Table1: return run_table1(config);
  }
  throw DomainError("unknown scenario kind");
}

void write_csv(std::ostream &out, const ScenarioResult &result) {
  for (const auto &[key, value] : result.provenance)
    out << "# " << key << ": " << value << '\n';
  for (std::size_t k = 0; k < result.columns.size(); ++k)
    out << (k ? "," : "") << result.columns[k];
  out << '\n';
  char buf[64];
  for (const auto &row : result.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k)
        out << ',';
      if (const auto *d = std::get_if<double>(&row[k])) {
        std::snprintf(buf, sizeof buf, "%.6f", *d);
        out << buf;
      } else if (const auto *i = std::get_if<std::int64_t>(&row[k])) {
        out << *i;
      } else {
        out << std::get<std::string>(row[k]);
      }
    }
    out << '\n';
  }
}

} // namespace wsnacc
