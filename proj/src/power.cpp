#include "conduct/power.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "conduct/csv.hpp"
#include "conduct/error.hpp"
#include "conduct/normal.hpp"
#include "conduct/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace conduct {

void GridSpec::validate() const {
  if (T_values.empty() || theta_values.empty() || alpha2_values.empty() || regimes.empty()) {
    throw Error(Errc::InvalidConfig, "grid lists must be nonempty");
  }
  if (replications < 1) throw Error(Errc::InvalidConfig, "replications must be at least 1");
  for (long T : T_values) {
    if (T <= 10) throw Error(Errc::InvalidConfig, "T values must exceed 10");
  }
  for (double th : theta_values) {
    if (!(th >= 0.0 && th <= 1.0)) throw Error(Errc::InvalidConfig, "theta values must lie in [0,1]");
  }
  for (double a2 : alpha2_values) {
    if (!std::isfinite(a2)) throw Error(Errc::InvalidConfig, "alpha2 values must be finite");
  }
  if (!(options.significance > 0.0 && options.significance < 1.0)) {
    throw Error(Errc::InvalidConfig, "significance must lie in (0,1)");
  }
}

std::string describe(const CellCoord& c) {
  return "T=" + std::to_string(c.T) + " theta=" + csv::format_short(c.theta) +
         " alpha2=" + csv::format_short(c.alpha2) + " regime=" + std::string(regime_name(c.regime));
}

std::uint64_t cell_seed(std::uint64_t base_seed, long T) {
  return derive_seed(base_seed, static_cast<std::uint64_t>(T));
}

Replication run_replication(const ParamConfig& params, long T, InstrumentKind regime,
                            std::uint64_t seed, const CellOptions& options) {
  Replication rep;
  try {
    const Dataset data = generate_dataset(params, T, seed);
    SupplyOptions supply;
    supply.regime = regime;
    supply.ratio_estimator = options.ratio_estimator;
    supply.optimal_interaction_column = options.optimal_interaction_column;
    supply.polynomial_supply_features = options.polynomial_supply_features;

    SupplyEstimate est;
    if (options.demand_source == DemandSource::True) {
      est = estimate_supply(data, params, supply);
    } else {
      est = estimate_supply(data, estimate_demand(data, regime), supply);
    }
    if (!std::isfinite(est.t_theta)) throw Error(Errc::RankDeficient, "non-finite t statistic");
    rep.theta_hat = est.theta;
    rep.se_theta = est.se_theta;
    rep.reject = reject_null(est.t_theta, options.significance, options.sides);
    rep.ok = true;
  } catch (const std::exception& e) {
    rep.ok = false;
    rep.error = e.what();
  }
  return rep;
}

PowerCell aggregate_cell(const CellCoord& coord, double true_theta, std::uint64_t seed,
                         const std::vector<Replication>& reps) {
  PowerCell cell;
  cell.coord = coord;
  cell.seed = seed;
  cell.M = static_cast<int>(reps.size());

  int rejections = 0;
  double sum_theta = 0.0, sum_sq_err = 0.0, sum_se = 0.0;
  const Replication* first_failure = nullptr;
  for (const auto& r : reps) {
    if (!r.ok) {
      ++cell.n_failed;
      if (!first_failure) first_failure = &r;
      continue;
    }
    rejections += r.reject ? 1 : 0;
    sum_theta += r.theta_hat;
    sum_sq_err += (r.theta_hat - true_theta) * (r.theta_hat - true_theta);
    sum_se += r.se_theta;
  }
  if (cell.M == 0 || cell.n_failed * 10 > cell.M || cell.n_failed == cell.M) {
    throw Error(Errc::CellFailed, describe(coord) + ": " + std::to_string(cell.n_failed) + " of " +
                                      std::to_string(cell.M) + " replications failed" +
                                      (first_failure ? " (first: " + first_failure->error + ")" : ""));
  }
  const double n = static_cast<double>(cell.M - cell.n_failed);
  cell.rejection_frequency = rejections / n;
  cell.mean_theta_hat = sum_theta / n;
  cell.bias = cell.mean_theta_hat - true_theta;
  cell.rmse = std::sqrt(sum_sq_err / n);
  cell.mean_se = sum_se / n;
  return cell;
}

PowerCell run_cell(const ParamConfig& params, long T, InstrumentKind regime, int M,
                   std::uint64_t seed, const CellOptions& options) {
  std::vector<Replication> reps(static_cast<std::size_t>(std::max(M, 0)));
#ifdef _OPENMP
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (int m = 0; m < M; ++m) {
    reps[static_cast<std::size_t>(m)] =
        run_replication(params, T, regime, derive_seed(seed, static_cast<std::uint64_t>(m)), options);
  }
  return aggregate_cell({T, params.theta, params.alpha2, regime}, params.theta, seed, reps);
}

PowerCell run_cell_serial(const ParamConfig& params, long T, InstrumentKind regime, int M,
                          std::uint64_t seed, const CellOptions& options) {
  std::vector<Replication> reps;
  reps.reserve(static_cast<std::size_t>(std::max(M, 0)));
  for (int m = 0; m < M; ++m) {
    reps.push_back(
        run_replication(params, T, regime, derive_seed(seed, static_cast<std::uint64_t>(m)), options));
  }
  return aggregate_cell({T, params.theta, params.alpha2, regime}, params.theta, seed, reps);
}

std::vector<CellCoord> grid_coordinates(const GridSpec& spec) {
  std::vector<CellCoord> coords;
  for (long T : spec.T_values)
    for (double theta : spec.theta_values)
      for (double a2 : spec.alpha2_values)
        for (InstrumentKind k : spec.regimes) coords.push_back({T, theta, a2, k});
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  return coords;
}

PowerCell run_grid_cell(const GridSpec& spec, const CellCoord& coord) {
  ParamConfig p = spec.params;
  p.theta = coord.theta;
  p.alpha2 = coord.alpha2;
  return run_cell(p, coord.T, coord.regime, spec.replications, cell_seed(spec.base_seed, coord.T),
                  spec.options);
}

std::vector<PowerCell> run_grid(const GridSpec& spec, const CellLogger& log,
                                std::vector<std::string>* failures) {
  spec.validate();
  std::vector<PowerCell> cells;
  std::vector<std::string> errors;
  for (const CellCoord& c : grid_coordinates(spec)) {
    try {
      cells.push_back(run_grid_cell(spec, c));
      if (log) log(cells.back());
    } catch (const Error& e) {
      errors.push_back(e.what());
    }
  }
  if (failures) {
    *failures = std::move(errors);
  } else if (!errors.empty()) {
    std::string msg = std::to_string(errors.size()) + " cell(s) failed; first: " + errors.front();
    throw Error(Errc::CellFailed, msg);
  }
  return cells;
}

double analytic_power(double theta_hat, long T, double V, double level) {
  if (!(V > 0.0)) throw Error(Errc::NonpositiveVariance, "V = " + std::to_string(V));
  if (T < 1) throw Error(Errc::DimensionMismatch, "T must be at least 1");
  const double c = critical_value(level, TestSides::Two);
  return 1.0 - normal_cdf(c - std::sqrt(static_cast<double>(T)) * theta_hat / std::sqrt(V));
}

std::vector<GainRow> efficiency_gain(const std::vector<PowerCell>& alt,
                                     const std::vector<PowerCell>& benchmark) {
  using Key = std::tuple<long, double, double>;
  std::map<Key, const PowerCell*> bench_by_key;
  for (const auto& c : benchmark) {
    if (!bench_by_key.emplace(Key{c.coord.T, c.coord.theta, c.coord.alpha2}, &c).second) {
      throw Error(Errc::CoordinateMismatch, "duplicate benchmark cell " + describe(c.coord));
    }
  }
  std::map<std::pair<Key, InstrumentKind>, bool> seen;
  std::vector<GainRow> rows;
  for (const auto& c : alt) {
    const Key key{c.coord.T, c.coord.theta, c.coord.alpha2};
    const auto it = bench_by_key.find(key);
    if (it == bench_by_key.end()) {
      throw Error(Errc::CoordinateMismatch, "no benchmark cell for " + describe(c.coord));
    }
    seen[{key, c.coord.regime}] = true;
    GainRow row{c.coord.T, c.coord.theta, c.coord.alpha2, c.coord.regime, std::nullopt, 0.0};
    const double base = it->second->rejection_frequency;
    if (base > 0.0) row.gain = c.rejection_frequency / base;
    row.diff = c.rejection_frequency - base;
    rows.push_back(row);
  }
  // Every benchmark coordinate must be covered by each alternative regime.
  std::map<InstrumentKind, std::size_t> per_regime;
  for (const auto& [k, v] : seen) ++per_regime[k.second];
  for (const auto& [kind, count] : per_regime) {
    if (count != bench_by_key.size()) {
      throw Error(Errc::CoordinateMismatch, std::string(regime_name(kind)) + " covers " +
                                                std::to_string(count) + " of " +
                                                std::to_string(bench_by_key.size()) +
                                                " benchmark coordinates");
    }
  }
  std::sort(rows.begin(), rows.end(), [](const GainRow& a, const GainRow& b) {
    return std::tie(a.T, a.theta, a.alpha2, a.regime_alt) < std::tie(b.T, b.theta, b.alpha2, b.regime_alt);
  });
  return rows;
}

}  // namespace conduct
