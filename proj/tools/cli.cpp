#include "cli.hpp"

#include <CLI11.hpp>

#include <wsnacc/accuracy.hpp>
#include <wsnacc/clustering.hpp>
#include <wsnacc/config.hpp>
#include <wsnacc/correlation.hpp>
#include <wsnacc/error.hpp>
#include <wsnacc/field.hpp>
#include <wsnacc/rng.hpp>
#include <wsnacc/scenarios.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace wsnsim {

namespace {

using namespace wsnacc;

constexpr const char *kOutDirEnv = "WSNSIM_OUT_DIR";
constexpr std::size_t kMinValidateDraws = 10'000;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Where a subcommand writes its main output: --out, else a file under
// $WSNSIM_OUT_DIR, else the caller's stream.
class Sink {
public:
  Sink(const std::string &out_path, const std::string &default_name,
       std::ostream &fallback) {
    std::string path = out_path;
    if (path.empty())
      if (const char *dir = std::getenv(kOutDirEnv); dir && *dir)
        path = (std::filesystem::path(dir) / default_name).string();
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_)
      throw ParseError(path, 0, 0, "cannot open output file");
    stream_ = file_.get();
  }

  std::ostream &stream() { return *stream_; }

private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream *stream_ = nullptr;
};

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> gamma;
  std::optional<double> theta1;
  std::optional<double> theta2;
  std::optional<double> tau;
  std::optional<double> radius;
  std::optional<std::size_t> draws;
};

std::vector<NodeId> parse_id_list(const std::string &text) {
  std::vector<NodeId> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_uint(item);
    if (!v || *v > 0xffffffffULL)
      throw DomainError("bad node id '" + item + "' in --nodes");
    ids.push_back(static_cast<NodeId>(*v));
  }
  if (ids.empty())
    throw DomainError("--nodes is empty");
  return ids;
}

double parse_gamma(const std::string &text) {
  const auto v = parse_double(text);
  if (!v || *v < 0.0)
    throw DomainError("--gamma must be a number >= 0, got '" + text + "'");
  return *v;
}

// radius ----------------------------------------------------------------------

int cmd_radius(const CommonFlags &f, std::ostream &out) {
  const auto params = CorrelationParams::make(f.theta1.value_or(70.0),
                                              f.theta2.value_or(1.0),
                                              f.tau.value_or(0.5));
  Sink sink(f.out, "radius.txt", out);
  sink.stream() << fixed6(radius_from_threshold(params)) << '\n';
  return kSuccess;
}

// cluster ---------------------------------------------------------------------

int cmd_cluster(const CommonFlags &f, const std::string &field_path,
                std::ostream &out) {
  const Field field = read_field_file(field_path);
  double radius = 0.0;
  if (f.radius) {
    radius = *f.radius;
  } else {
    radius = radius_from_threshold(CorrelationParams::make(
        f.theta1.value_or(70.0), f.theta2.value_or(1.0), f.tau.value_or(0.5)));
  }
  if (!(radius >= 0.0))
    throw DomainError("--radius must be >= 0");
  const Clustering clustering = cluster_field(field, radius);
  if (auto err = check_partition(field, clustering); !err.empty())
    throw CheckFailure("clustering violates its invariants: " + err);
  Sink sink(f.out, "clustering.txt", out);
  write_clustering(sink.stream(), clustering);
  return kSuccess;
}

// accuracy --------------------------------------------------------------------

int cmd_accuracy(const CommonFlags &f, const std::string &field_path,
                 const std::string &nodes, std::size_t tracing_index,
                 std::ostream &out) {
  Field field = read_field_file(field_path);
  if (f.gamma)
    field = field.with_variances(field.sigma_s2(),
                                 field.sigma_s2() * parse_gamma(*f.gamma));
  std::vector<NodeId> sensing;
  if (!nodes.empty()) {
    sensing = parse_id_list(nodes);
  } else {
    for (NodeId id : field.ids())
      if (field.designated_head() != id)
        sensing.push_back(id);
    if (sensing.empty())
      sensing = field.ids();
  }
  if (tracing_index >= field.tracing_points().size())
    throw DomainError("--tracing index out of range");
  const auto params = CorrelationParams::make(f.theta1.value_or(70.0),
                                              f.theta2.value_or(1.0));
  const TracingPoint tracing = field.tracing_points()[tracing_index];
  const auto model = build_covariance(field, sensing, tracing, params);
  const std::uint64_t seed = f.seed.value_or(1);
  const auto report = evaluate(model, field.sigma_s2(), seed);

  Sink sink(f.out, "accuracy.csv", out);
  auto &os = sink.stream();
  const std::size_t draws = f.draws.value_or(0);
  if (draws == 0) {
    os << report_header() << '\n';
    write_report_row(os, report);
    return kSuccess;
  }
  const auto mc = monte_carlo_stream(model, field.sigma_s2(), draws, seed);
  os << report_header() << ",distortion_mc,distortion_se,i_m_mc,i_m_se\n";
  std::ostringstream row;
  write_report_row(row, report);
  std::string line = row.str();
  line.pop_back();
  const double s2 = field.sigma_s2();
  os << line << ',' << fixed6(mc.joint.mse) << ','
     << fixed6(mc.joint.standard_error) << ','
     << fixed6(1.0 - mc.averaging.mse / s2) << ','
     << fixed6(mc.averaging.standard_error / s2) << '\n';
  return kSuccess;
}

// scenario --------------------------------------------------------------------

// std::to_string rounds to 6 decimals; overrides must keep full precision.
std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_scenario(CommonFlags f, const std::string &kind_name,
                 std::ostream &out) {
  const ScenarioKind kind = scenario_kind_from_string(kind_name);
  KeyValueConfig cfg;
  if (!f.config.empty())
    cfg = KeyValueConfig::parse_file(f.config);
  if (f.seed)
    cfg.set("seed", std::to_string(*f.seed));
  if (f.gamma)
    cfg.set("gamma", *f.gamma);
  if (f.theta1)
    cfg.set("theta1", exact(*f.theta1));
  if (f.theta2)
    cfg.set("theta2", exact(*f.theta2));
  if (f.tau)
    cfg.set("tau", exact(*f.tau));
  if (f.radius)
    cfg.set("radius", exact(*f.radius));
  if (f.draws)
    cfg.set("mc_draws", std::to_string(*f.draws));
  const ScenarioConfig config = scenario_config_from(cfg, kind);
  const ScenarioResult result = run_scenario(config);
  Sink sink(f.out, "scenario-" + kind_name + ".csv", out);
  write_csv(sink.stream(), result);
  return kSuccess;
}

// validate --------------------------------------------------------------------

struct ValidateCase {
  Field field;
  std::vector<NodeId> sensing;
  TracingPoint tracing;
  CorrelationParams params;
};

int cmd_validate(const CommonFlags &f, const std::string &field_path,
                 double corrupt, std::ostream &out, std::ostream &err) {
  KeyValueConfig cfg;
  if (!f.config.empty())
    cfg = KeyValueConfig::parse_file(f.config);
  const std::uint64_t seed =
      f.seed ? *f.seed : cfg.take_uint("seed").value_or(1);
  const std::size_t draws = f.draws ? *f.draws
                                    : static_cast<std::size_t>(
                                          cfg.take_uint("draws").value_or(1'000'000));
  std::optional<double> gamma;
  if (f.gamma)
    gamma = parse_gamma(*f.gamma);
  else if (auto g = cfg.take_double("gamma"))
    gamma = *g;
  if (gamma && *gamma < 0.0)
    throw DomainError("gamma must be >= 0");
  const double theta1 = f.theta1 ? *f.theta1 : cfg.take_double("theta1").value_or(70.0);
  const double theta2 = f.theta2 ? *f.theta2 : cfg.take_double("theta2").value_or(1.0);
  const std::size_t count = cfg.take_uint("count").value_or(20);
  const std::size_t nodes_min = cfg.take_uint("nodes_min").value_or(1);
  const std::size_t nodes_max = cfg.take_uint("nodes_max").value_or(8);
  const double extent = cfg.take_double("extent").value_or(100.0);
  const double sigma_s2 = cfg.take_double("sigma_s2").value_or(1.0);
  std::string field_file = field_path;
  if (auto p = cfg.take_string("field"); p && field_file.empty())
    field_file = *p;
  cfg.finish();

  if (draws < kMinValidateDraws)
    throw DomainError("--draws must be >= " + std::to_string(kMinValidateDraws));
  if (nodes_min == 0 || nodes_max < nodes_min)
    throw DomainError("need 1 <= nodes_min <= nodes_max");
  if (!(extent > 0.0) || !(sigma_s2 > 0.0))
    throw DomainError("extent and sigma_s2 must be > 0");
  if (count == 0)
    throw DomainError("count must be >= 1");
  const auto params = CorrelationParams::make(theta1, theta2);

  std::vector<ValidateCase> cases;
  if (!field_file.empty()) {
    Field field = read_field_file(field_file);
    if (gamma)
      field = field.with_variances(field.sigma_s2(), field.sigma_s2() * *gamma);
    std::vector<NodeId> sensing;
    for (NodeId id : field.ids())
      if (field.designated_head() != id)
        sensing.push_back(id);
    if (sensing.empty())
      sensing = field.ids();
    const TracingPoint t = field.tracing_points().front();
    cases.push_back({std::move(field), std::move(sensing), t, params});
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      Rng rng = Rng::substream(seed, k);
      const std::size_t m =
          nodes_min + static_cast<std::size_t>(rng.next_u64() %
                                               (nodes_max - nodes_min + 1));
      std::vector<Node> nodes;
      for (std::size_t i = 0; i < m; ++i)
        nodes.push_back({static_cast<NodeId>(i),
                         {rng.uniform(0, extent), rng.uniform(0, extent)}});
      const TracingPoint t{rng.uniform(0, extent), rng.uniform(0, extent)};
      const double g = gamma ? *gamma : rng.uniform(0.05, 2.0);
      Field field(std::move(nodes), {t}, sigma_s2, sigma_s2 * g);
      auto ids = field.ids();
      cases.push_back({std::move(field), std::move(ids), t, params});
    }
  }

  Sink sink(f.out, "validate.csv", out);
  auto &os = sink.stream();
  os << "# draws: " << draws << "\n# seed: " << seed << '\n';
  os << "config,m,gamma,estimator,analytic,mc_mean,se,z\n";
  std::size_t failures = 0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto &c = cases[k];
    const auto model = build_covariance(c.field, c.sensing, c.tracing, c.params);
    const double s2 = c.field.sigma_s2();
    const auto mc = monte_carlo_stream(model, s2, draws, mix_seed(seed, 1000 + k));
    const struct {
      const char *name;
      double analytic;
      MonteCarloResult mc;
    } rows[] = {
        {"joint-mmse", s2 * (1.0 - data_accuracy(model)) + corrupt, mc.joint},
        {"averaging", s2 * (1.0 - info_accuracy(model)) + corrupt, mc.averaging},
    };
    for (const auto &r : rows) {
      const double diff = r.analytic - r.mc.mse;
      double z = 0.0;
      if (r.mc.standard_error > 0.0)
        z = diff / r.mc.standard_error;
      else if (std::abs(diff) > 1e-12)
        z = diff > 0 ? INFINITY : -INFINITY;
      if (!(std::abs(z) <= 3.0))
        ++failures;
      char buf[256];
      std::snprintf(buf, sizeof buf, "%zu,%lld,%.6f,%s,%.6f,%.6f,%.6f,%.3f\n",
                    k + 1, static_cast<long long>(model.size()), model.gamma,
                    r.name, r.analytic, r.mc.mse, r.mc.standard_error, z);
      os << buf;
    }
  }
  if (failures > 0) {
    err << "validate: " << failures
        << " comparison(s) outside 3 standard errors\n";
    return kNumericalFailure;
  }
  return kSuccess;
}

template <class T>
void add_optional(CLI::App *app, const std::string &name, std::optional<T> &slot,
                  const std::string &help) {
  app->add_option_function<T>(
      name, [&slot](const T &v) { slot = v; }, help);
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Spatial-correlation clustering and cluster-head accuracy "
               "simulator.\n\nExit codes: 0 success, 1 numerical or check "
               "failure, 2 input or parse failure.\nEnvironment: " +
               std::string(kOutDirEnv) +
               " sets the output directory used when --out is omitted.",
               "wsnsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "wsnsim " + std::string(version()));

  CommonFlags flags;
  std::string field_path, nodes, kind;
  std::size_t tracing_index = 0;
  double corrupt = 0.0;

  auto add_kernel = [&](CLI::App *sub) {
    add_optional(sub, "--theta1", flags.theta1, "Kernel range (default 70)");
    add_optional(sub, "--theta2", flags.theta2,
                 "Kernel smoothness in (0, 2] (default 1)");
  };
  auto add_out = [&](CLI::App *sub) {
    sub->add_option("--out", flags.out, "Output file (default: stdout or $" +
                                            std::string(kOutDirEnv) + ")");
  };

  auto *radius = app.add_subcommand("radius", "Correlation radius for a threshold");
  add_kernel(radius);
  add_optional(radius, "--tau", flags.tau, "Correlation threshold in (0, 1]");
  radius->get_option("--tau")->required();
  add_out(radius);

  auto *cluster = app.add_subcommand("cluster", "Cluster a field file");
  cluster->add_option("--field", field_path, "Field file")->required();
  add_optional(cluster, "--radius", flags.radius,
               "Correlation radius (default: from --tau)");
  add_kernel(cluster);
  add_optional(cluster, "--tau", flags.tau, "Threshold used when --radius is absent (default 0.5)");
  add_out(cluster);

  auto *accuracy = app.add_subcommand("accuracy", "Data and averaging accuracy of a node set");
  accuracy->add_option("--field", field_path, "Field file")->required();
  accuracy->add_option("--nodes", nodes,
                       "Comma-separated sensing node ids (default: all but the head)");
  accuracy->add_option("--tracing", tracing_index, "Tracing point index (default 0)");
  add_kernel(accuracy);
  add_optional(accuracy, "--gamma", flags.gamma, "Override sigma_n2 / sigma_s2");
  add_optional(accuracy, "--seed", flags.seed, "Seed for the Monte Carlo columns");
  add_optional(accuracy, "--draws", flags.draws, "Monte Carlo draws (0 = off)");
  add_out(accuracy);

  auto *scenario = app.add_subcommand("scenario", "Run an experiment: fig1a, fig1b, fig3, fig4, table1");
  scenario->add_option("kind", kind, "Scenario kind")->required();
  scenario->add_option("--config", flags.config, "key = value config file");
  add_optional(scenario, "--seed", flags.seed, "Seed");
  add_optional(scenario, "--gamma", flags.gamma, "Noise-to-signal ratio or 'calibrate'");
  add_kernel(scenario);
  add_optional(scenario, "--tau", flags.tau, "Threshold (table1)");
  add_optional(scenario, "--radius", flags.radius, "Clustering radius (table1)");
  add_optional(scenario, "--draws", flags.draws, "Monte Carlo draws per row (0 = off)");
  add_out(scenario);

  auto *validate = app.add_subcommand("validate", "Compare analytic distortions against Monte Carlo");
  validate->add_option("--config", flags.config, "key = value config file");
  validate->add_option("--field", field_path, "Validate one field file instead of random configurations");
  add_optional(validate, "--seed", flags.seed, "Seed (default 1)");
  add_optional(validate, "--draws", flags.draws, "Draws per configuration (>= 10000, default 1000000)");
  add_optional(validate, "--gamma", flags.gamma, "Fixed noise-to-signal ratio (default: random per configuration)");
  add_kernel(validate);
  validate->add_option("--corrupt", corrupt, "Add this offset to every analytic value (failure-path check)")
      ->group("");
  add_out(validate);

  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputFailure;
  }

  try {
    if (*radius)
      return cmd_radius(flags, out);
    if (*cluster)
      return cmd_cluster(flags, field_path, out);
    if (*accuracy)
      return cmd_accuracy(flags, field_path, nodes, tracing_index, out);
    if (*scenario)
      return cmd_scenario(flags, kind, out);
    if (*validate)
      return cmd_validate(flags, field_path, corrupt, out, err);
  } catch (const ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const NumericalError &e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const CheckFailure &e) {
    err << "check failed: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kInputFailure;
}

} // namespace wsnsim
