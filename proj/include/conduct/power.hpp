#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conduct/dgp.hpp"
#include "conduct/estimation.hpp"
#include "conduct/instruments.hpp"

namespace conduct {

// Settings shared by every replication of a cell.
struct CellOptions {
  double significance = 0.05;
  TestSides sides = TestSides::Two;
  DemandSource demand_source = DemandSource::Estimated;
  bool ratio_estimator = false;
  bool optimal_interaction_column = false;
  bool polynomial_supply_features = false;
  int threads = 0;  // 0 lets OpenMP decide

  bool operator==(const CellOptions&) const = default;
};

struct GridSpec {
  std::vector<long> T_values{100, 200, 1000, 2000, 5000, 10000};
  std::vector<double> theta_values{0.05, 0.1, 0.2, 0.33, 0.5, 1.0};
  std::vector<double> alpha2_values{0.1, 0.5, 1.0, 5.0, 20.0};
  std::vector<InstrumentKind> regimes{InstrumentKind::Benchmark};
  int replications = 100;
  std::uint64_t base_seed = 20230601;
  // theta and alpha2 are overwritten per cell.
  ParamConfig params;
  CellOptions options;

  void validate() const;  // throws InvalidConfig
};

struct CellCoord {
  long T = 0;
  double theta = 0.0;
  double alpha2 = 0.0;
  InstrumentKind regime = InstrumentKind::Benchmark;

  auto operator<=>(const CellCoord&) const = default;
};

std::string describe(const CellCoord& c);

struct PowerCell {
  CellCoord coord;
  int M = 0;
  int n_failed = 0;
  double rejection_frequency = 0.0;
  double mean_theta_hat = 0.0;
  double bias = 0.0;
  double rmse = 0.0;
  double mean_se = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const PowerCell&) const = default;
};

// Replication m of a cell draws its dataset from derive_seed(cell_seed, m).
// The cell seed depends on the base seed and T only, so every theta, alpha2
// and regime at the same T sees the same exogenous draws and errors.
std::uint64_t cell_seed(std::uint64_t base_seed, long T);

// Result of one generate/estimate/test pass.
struct Replication {
  bool ok = false;
  bool reject = false;
  double theta_hat = 0.0;
  double se_theta = 0.0;
  std::string error;
};

Replication run_replication(const ParamConfig& params, long T, InstrumentKind regime,
                            std::uint64_t seed, const CellOptions& options);

// Reduces replications in index order. Throws CellFailed when more than a
// tenth of them failed.
PowerCell aggregate_cell(const CellCoord& coord, double true_theta, std::uint64_t seed,
                         const std::vector<Replication>& reps);

// Replications run in parallel with OpenMP; the reduction happens afterwards
// in index order, so the result equals run_cell_serial bit for bit.
PowerCell run_cell(const ParamConfig& params, long T, InstrumentKind regime, int M,
                   std::uint64_t seed, const CellOptions& options = {});

// Single-threaded reference for run_cell.
PowerCell run_cell_serial(const ParamConfig& params, long T, InstrumentKind regime, int M,
                          std::uint64_t seed, const CellOptions& options = {});

using CellLogger = std::function<void(const PowerCell&)>;

// Cartesian product of (T, theta, alpha2, regime), sorted by coordinate.
std::vector<CellCoord> grid_coordinates(const GridSpec& spec);

PowerCell run_grid_cell(const GridSpec& spec, const CellCoord& coord);

// Failed cells are rethrown with their coordinates after the whole grid ran;
// pass `failures` to collect them instead and keep the successful cells.
std::vector<PowerCell> run_grid(const GridSpec& spec, const CellLogger& log = {},
                                std::vector<std::string>* failures = nullptr);

// Large-sample power of the t test, 1 - Phi(c - sqrt(T) theta_hat / sqrt(V)),
// where c = z_{1 - level/2} (1.959964 at the 5% level).
double analytic_power(double theta_hat, long T, double V, double level = 0.05);

struct GainRow {
  long T = 0;
  double theta = 0.0;
  double alpha2 = 0.0;
  InstrumentKind regime_alt = InstrumentKind::Benchmark;
  std::optional<double> gain;  // empty when the benchmark frequency is zero
  double diff = 0.0;           // alt - benchmark
};

// Pairs cells by (T, theta, alpha2). Throws CoordinateMismatch when the two
// lists do not cover the same coordinates.
std::vector<GainRow> efficiency_gain(const std::vector<PowerCell>& alt,
                                     const std::vector<PowerCell>& benchmark);

}  // namespace conduct
