#include "conduct/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conduct/config.hpp"
#include "conduct/csv.hpp"
#include "conduct/dataset_io.hpp"
#include "conduct/error.hpp"
#include "conduct/estimation.hpp"
#include "conduct/power.hpp"
#include "conduct/power_io.hpp"

namespace conduct {

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> regime;
  std::optional<int> reps;
  std::optional<int> threads;
  std::optional<std::string> demand_source;
  std::optional<std::string> sides;
  std::optional<long> T;
  std::optional<double> theta;
  std::optional<double> alpha2;
  std::optional<double> sigma;
  std::optional<double> V;
  std::string dataset;
  std::vector<std::string> power_files;
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::InvalidConfig: return kExitConfig;
    case Errc::IoError:
    case Errc::ParseError: return kExitIo;
    default: return kExitNumerical;
  }
}

// Flags win over config-file values; each applied override is recorded.
std::vector<std::string> apply_flags(const Flags& f, RunConfig& cfg) {
  std::vector<std::string> applied;
  auto note = [&](const std::string& key, const std::string& value) { applied.push_back(key + "=" + value); };
  if (f.seed) {
    cfg.seed = *f.seed;
    cfg.grid.base_seed = *f.seed;
    note("seed", std::to_string(*f.seed));
  }
  if (f.out) {
    cfg.out = *f.out;
    note("out", *f.out);
  }
  if (f.regime) {
    std::vector<InstrumentKind> kinds;
    for (auto name : csv::split(*f.regime)) kinds.push_back(parse_regime(name));
    cfg.regime = kinds.front();
    cfg.grid.regimes = kinds;
    note("regime", *f.regime);
  }
  if (f.reps) {
    cfg.grid.replications = *f.reps;
    note("reps", std::to_string(*f.reps));
  }
  if (f.threads) {
    cfg.grid.options.threads = *f.threads;
    note("threads", std::to_string(*f.threads));
  }
  if (f.demand_source) {
    cfg.grid.options.demand_source = *f.demand_source == "true" ? DemandSource::True : DemandSource::Estimated;
    note("demand_source", *f.demand_source);
  }
  if (f.sides) {
    cfg.grid.options.sides = *f.sides == "one" ? TestSides::One : TestSides::Two;
    note("sides", *f.sides);
  }
  if (f.T) {
    cfg.T = *f.T;
    note("T", std::to_string(*f.T));
  }
  if (f.theta) {
    cfg.params.theta = *f.theta;
    note("theta", csv::format_short(*f.theta));
  }
  if (f.alpha2) {
    cfg.params.alpha2 = *f.alpha2;
    note("alpha2", csv::format_short(*f.alpha2));
  }
  if (f.sigma) {
    cfg.params.sigma = *f.sigma;
    note("sigma", csv::format_short(*f.sigma));
  }
  if (f.V) {
    cfg.analytic_V = *f.V;
    note("V", csv::format_short(*f.V));
  }
  cfg.grid.params = cfg.params;
  // Re-validate the merged result through the same path as a config file.
  cfg = config_from_json(to_json(cfg));
  return applied;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

int cmd_simulate(const RunConfig& cfg, const std::vector<std::string>& overrides, std::ostream& out) {
  const fs::path dir = cfg.out;
  fs::create_directories(dir);
  const Dataset data = generate_dataset(cfg.params, cfg.T, cfg.seed);
  const fs::path csv_path = dir / "dataset.csv";
  write_dataset_csv(csv_path, data);
  write_manifest(dir / "manifest.json", cfg, "simulate", overrides);
  out << csv_path.string() << '\n';
  return kExitOk;
}

int cmd_estimate(const RunConfig& cfg, const std::vector<std::string>& overrides, const std::string& dataset,
                 std::ostream& out) {
  const fs::path dir = cfg.out;
  const Dataset data = read_dataset_csv(fs::path(dataset));
  const DemandEstimate demand = estimate_demand(data, cfg.regime);

  SupplyOptions opts;
  opts.regime = cfg.regime;
  opts.ratio_estimator = cfg.grid.options.ratio_estimator;
  opts.optimal_interaction_column = cfg.grid.options.optimal_interaction_column;
  opts.polynomial_supply_features = cfg.grid.options.polynomial_supply_features;
  const SupplyEstimate supply = cfg.grid.options.demand_source == DemandSource::True
                                    ? estimate_supply(data, cfg.params, opts)
                                    : estimate_supply(data, demand, opts);

  fs::create_directories(dir);
  const fs::path csv_path = dir / "estimates.csv";
  auto file = open_out(csv_path);
  write_estimates_csv(file, &demand, supply);
  finish(file, csv_path);
  write_manifest(dir / "manifest.json", cfg, "estimate", overrides);
  out << csv_path.string() << '\n';
  return kExitOk;
}

void write_gains(const std::vector<PowerCell>& cells, const fs::path& path) {
  std::vector<PowerCell> bench, alt;
  for (const auto& c : cells) (c.coord.regime == InstrumentKind::Benchmark ? bench : alt).push_back(c);
  if (bench.empty() || alt.empty()) {
    throw Error(Errc::InvalidConfig, "gain needs benchmark cells and at least one other regime");
  }
  const auto rows = efficiency_gain(alt, bench);
  auto file = open_out(path);
  write_gain_csv(file, rows);
  finish(file, path);
}

int cmd_power(const RunConfig& cfg, const std::vector<std::string>& overrides, std::ostream& out,
              std::ostream& err) {
  const fs::path dir = cfg.out;
  fs::create_directories(dir);
  std::vector<std::string> failures;
  const auto cells = run_grid(
      cfg.grid,
      [&](const PowerCell& c) {
        err << describe(c.coord) << " rejection_freq=" << csv::format_short(c.rejection_frequency)
            << " n_failed=" << c.n_failed << '\n';
      },
      &failures);

  const fs::path csv_path = dir / "power.csv";
  auto file = open_out(csv_path);
  write_power_csv(file, cells);
  finish(file, csv_path);
  out << csv_path.string() << '\n';

  bool has_bench = false, has_alt = false;
  for (auto k : cfg.grid.regimes) (k == InstrumentKind::Benchmark ? has_bench : has_alt) = true;
  if (has_bench && has_alt && failures.empty()) {
    write_gains(cells, dir / "gain.csv");
    out << (dir / "gain.csv").string() << '\n';
  }
  write_manifest(dir / "manifest.json", cfg, "power", overrides);

  if (!failures.empty()) {
    const fs::path err_path = dir / "power_errors.txt";
    auto ef = open_out(err_path);
    for (const auto& f : failures) ef << f << '\n';
    finish(ef, err_path);
    err << failures.size() << " cell(s) failed, see " << err_path.string() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_analytic(const RunConfig& cfg, const std::vector<std::string>& overrides, std::ostream& out) {
  const fs::path dir = cfg.out;
  const auto rows = analytic_grid(cfg.analytic_T_values, cfg.analytic_theta_values, cfg.analytic_V);
  fs::create_directories(dir);
  const fs::path csv_path = dir / "analytic.csv";
  auto file = open_out(csv_path);
  write_analytic_csv(file, rows);
  finish(file, csv_path);
  write_manifest(dir / "manifest.json", cfg, "analytic", overrides);
  out << csv_path.string() << '\n';
  return kExitOk;
}

int cmd_gain(const RunConfig& cfg, const std::vector<std::string>& files, std::ostream& out) {
  std::vector<PowerCell> cells;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + f);
    auto part = read_power_csv(in);
    cells.insert(cells.end(), part.begin(), part.end());
  }
  const fs::path dir = cfg.out;
  fs::create_directories(dir);
  write_gains(cells, dir / "gain.csv");
  out << (dir / "gain.csv").string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo power analysis of conduct-parameter tests", "conduct_sim"};
  app.require_subcommand(1);
  Flags f;

  app.add_option("--config", f.config, "JSON config file");
  app.add_option("--seed", f.seed, "Dataset seed (simulate) and base seed (power)");
  app.add_option("--out", f.out, "Output directory");
  app.add_option("--regime", f.regime, "benchmark | polynomial | optimal, comma-separated for power");
  app.add_option("--reps", f.reps, "Replications per cell")->check(CLI::PositiveNumber);
  app.add_option("--threads", f.threads, "Worker thread cap (0 = all)")->check(CLI::NonNegativeNumber);
  app.add_option("--demand-source", f.demand_source, "Demand parameters for supply estimation")
      ->check(CLI::IsMember({"estimated", "true"}));
  app.add_option("--sides", f.sides, "Two- or one-sided t test")->check(CLI::IsMember({"two", "one"}));
  app.add_option("--T", f.T, "Number of markets (simulate)");
  app.add_option("--theta", f.theta, "Conduct parameter (simulate)");
  app.add_option("--alpha2", f.alpha2, "Demand rotation strength (simulate)");
  app.add_option("--sigma", f.sigma, "Error scale");
  app.add_option("--V", f.V, "Asymptotic variance of theta_hat (analytic)");

  auto* simulate = app.add_subcommand("simulate", "Generate one equilibrium dataset");
  auto* estimate = app.add_subcommand("estimate", "Estimate demand and supply on a dataset CSV");
  estimate->add_option("dataset", f.dataset, "Dataset CSV")->required();
  auto* power = app.add_subcommand("power", "Run the Monte Carlo power grid");
  auto* analytic = app.add_subcommand("analytic", "Tabulate the large-sample power approximation");
  auto* gain = app.add_subcommand("gain", "Efficiency gain of non-benchmark regimes from power CSVs");
  gain->add_option("power_csv", f.power_files, "Power CSV files")->required();
  for (auto* sub : {simulate, estimate, power, analytic, gain}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    RunConfig cfg = f.config ? load_config(*f.config) : RunConfig{};
    const auto overrides = apply_flags(f, cfg);
    if (simulate->parsed()) return cmd_simulate(cfg, overrides, out);
    if (estimate->parsed()) return cmd_estimate(cfg, overrides, f.dataset, out);
    if (power->parsed()) return cmd_power(cfg, overrides, out, err);
    if (analytic->parsed()) return cmd_analytic(cfg, overrides, out);
    if (gain->parsed()) return cmd_gain(cfg, f.power_files, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace conduct
