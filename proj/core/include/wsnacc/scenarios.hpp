#pragma once

#include "wsnacc/clustering.hpp"
#include "wsnacc/config.hpp"
#include "wsnacc/correlation.hpp"
#include "wsnacc/field.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace wsnacc {

enum class ScenarioKind { Fig1a, Fig1b, Fig3, Fig4, Table1 };

std::string_view to_string(ScenarioKind kind);
/// Throws DomainError for unknown names.
ScenarioKind scenario_kind_from_string(std::string_view name);

/// Signal/noise variances of one Table 1 cluster (1-based formation index).
struct VarianceOverride {
  std::size_t cluster = 0;
  double sigma_s2 = 1.0;
  double sigma_n2 = 0.1;
};

/// The Fig 2 anchor positions in the order they join the cluster.
inline constexpr Point kAnchorNodes[] = {
    {6, 2}, {8, 4}, {6, 4}, {4, 4}, {10, 4}};
inline constexpr Point kAnchorTracing{6, 4};
/// Four-node accuracy used to calibrate gamma.
inline constexpr double kAnchorDataAccuracy = 0.7545;

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Fig1a;
  double theta1 = 70.0;
  double theta2 = 1.0;
  double tau = 0.5;
  /// Noise-to-signal ratio; empty means "calibrate against the anchor".
  std::optional<double> gamma = 0.1;
  double calibration_target = kAnchorDataAccuracy;
  double sigma_s2 = 1.0;

  // fig1b / table1
  std::size_t nodes = 30;
  double width = 100.0;
  double height = 100.0;
  std::size_t trials = 100;
  // table1
  double radius = 23.5432;
  std::vector<VarianceOverride> overrides;
  // fig3
  std::size_t grid_rows = 5;
  std::size_t grid_cols = 7;
  double grid_spacing = 2.0;
  // fig4
  std::size_t circle_nodes = 4;

  std::vector<double> sweep;
  std::uint64_t seed = 1;
  std::size_t mc_draws = 0;

  CorrelationParams params() const;
};

/// Defaults per kind, including the default sweep.
ScenarioConfig default_scenario_config(ScenarioKind kind);

/// Starts from the kind's defaults and consumes the keys allowed for it.
/// Unknown keys or invalid values throw ParseError or DomainError.
ScenarioConfig scenario_config_from(KeyValueConfig &config, ScenarioKind kind);

/// Throws DomainError if a knob is invalid for the kind.
void validate(const ScenarioConfig &config);

using Cell = std::variant<std::int64_t, double, std::string>;

struct ScenarioResult {
  ScenarioKind kind = ScenarioKind::Fig1a;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view column_name) const;
};

/// Fourth-and-later Fig 3 nodes: the remaining grid nodes ordered by distance
/// to the tracing point, ties by id. The designated head is excluded.
std::vector<NodeId> fig3_node_order(const Field &grid);

/// Gamma for which the four anchor nodes reach `target` data accuracy.
double calibrate_anchor_gamma(const CorrelationParams &params,
                              double target = kAnchorDataAccuracy);

ScenarioResult run_fig1a(const ScenarioConfig &config);
ScenarioResult run_fig1b(const ScenarioConfig &config);
ScenarioResult run_fig3(const ScenarioConfig &config);
ScenarioResult run_fig4(const ScenarioConfig &config);
ScenarioResult run_table1(const ScenarioConfig &config);
ScenarioResult run_scenario(const ScenarioConfig &config);

/// `# key: value` provenance lines, header row, one row per sweep value.
/// Reals use fixed 6-decimal formatting.
void write_csv(std::ostream &out, const ScenarioResult &result);

/// Library version string.
std::string_view version();

} // namespace wsnacc
