#include "conduct/power_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "conduct/csv.hpp"
#include "conduct/error.hpp"

namespace conduct {

void write_power_csv(std::ostream& out, const std::vector<PowerCell>& cells) {
  out << kPowerHeader << '\n';
  for (const auto& c : cells) {
    out << c.coord.T << ',' << csv::format_short(c.coord.theta) << ','
        << csv::format_short(c.coord.alpha2) << ',' << regime_name(c.coord.regime) << ',' << c.M
        << ',' << c.n_failed << ',' << csv::format(c.rejection_frequency) << ','
        << csv::format(c.mean_theta_hat) << ',' << csv::format(c.bias) << ',' << csv::format(c.rmse)
        << ',' << csv::format(c.mean_se) << ',' << c.seed << '\n';
  }
}

std::vector<PowerCell> read_power_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kPowerHeader) {
    throw Error(Errc::ParseError, "line 1: expected power CSV header");
  }
  std::vector<PowerCell> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = csv::split(line);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (f.size() != 12) throw Error(Errc::ParseError, where + "expected 12 fields");
    PowerCell c;
    bool ok = csv::parse_int(f[0], c.coord.T) && csv::parse(f[1], c.coord.theta) &&
              csv::parse(f[2], c.coord.alpha2) && csv::parse_int(f[4], c.M) &&
              csv::parse_int(f[5], c.n_failed) && csv::parse(f[6], c.rejection_frequency) &&
              csv::parse(f[7], c.mean_theta_hat) && csv::parse(f[8], c.bias) &&
              csv::parse(f[9], c.rmse) && csv::parse(f[10], c.mean_se) && csv::parse_int(f[11], c.seed);
    if (!ok) throw Error(Errc::ParseError, where + "malformed field");
    try {
      c.coord.regime = parse_regime(f[3]);
    } catch (const Error&) {
      throw Error(Errc::ParseError, where + "unknown regime '" + std::string(f[3]) + "'");
    }
    cells.push_back(c);
  }
  return cells;
}

void write_gain_csv(std::ostream& out, const std::vector<GainRow>& rows) {
  out << kGainHeader << '\n';
  for (const auto& r : rows) {
    out << r.T << ',' << csv::format_short(r.theta) << ',' << csv::format_short(r.alpha2) << ','
        << regime_name(r.regime_alt) << ',' << (r.gain ? csv::format(*r.gain) : std::string("NA"))
        << ',' << csv::format(r.diff) << '\n';
  }
}

std::vector<AnalyticRow> analytic_grid(const std::vector<long>& T_values,
                                       const std::vector<double>& theta_values, double V) {
  std::vector<AnalyticRow> rows;
  for (long T : T_values)
    for (double theta : theta_values) rows.push_back({T, theta, V, analytic_power(theta, T, V)});
  return rows;
}

void write_analytic_csv(std::ostream& out, const std::vector<AnalyticRow>& rows) {
  out << kAnalyticHeader << '\n';
  for (const auto& r : rows) {
    out << r.T << ',' << csv::format_short(r.theta) << ',' << csv::format_short(r.V) << ','
        << csv::format(r.power) << '\n';
  }
}

void write_estimates_csv(std::ostream& out, const DemandEstimate* demand, const SupplyEstimate& supply) {
  out << kEstimatesHeader << '\n';
  auto row = [&](const char* name, double est, double se) {
    out << name << ',' << csv::format(est) << ',' << csv::format(se) << ',' << csv::format(est / se) << '\n';
  };
  if (demand) {
    const Vector& se = demand->standard_errors;
    row("alpha0", demand->alpha0, se[0]);
    row("alpha1", demand->alpha1, se[1]);
    row("alpha2", demand->alpha2, se[2]);
    row("alpha3", demand->alpha3, se[3]);
  }
  const Vector& se = supply.gamma_standard_errors;
  row("gamma0", supply.gamma0, se[0]);
  row("gamma1", supply.gamma1, se[1]);
  row("gamma2", supply.gamma2, se[2]);
  row("gamma3", supply.gamma3, se[3]);
  row("theta", supply.theta, supply.se_theta);
}

}  // namespace conduct
