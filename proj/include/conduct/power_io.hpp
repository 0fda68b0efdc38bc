#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "conduct/power.hpp"

namespace conduct {

inline constexpr const char* kPowerHeader =
    "T,theta,alpha2,regime,M,n_failed,rejection_freq,mean_theta_hat,bias,rmse,mean_se,seed";
inline constexpr const char* kGainHeader = "T,theta,alpha2,regime_alt,gain,diff";
inline constexpr const char* kAnalyticHeader = "T,theta,V,power";
inline constexpr const char* kEstimatesHeader = "param,estimate,se,t";

// Coordinates use the shortest round-trip form (0.33, not 0.33000000000000002);
// statistics carry 17 significant digits. Undefined gains are written as NA.
void write_power_csv(std::ostream& out, const std::vector<PowerCell>& cells);
std::vector<PowerCell> read_power_csv(std::istream& in);
void write_gain_csv(std::ostream& out, const std::vector<GainRow>& rows);

struct AnalyticRow {
  long T = 0;
  double theta = 0.0;
  double V = 0.0;
  double power = 0.0;
};

std::vector<AnalyticRow> analytic_grid(const std::vector<long>& T_values,
                                       const std::vector<double>& theta_values, double V);
void write_analytic_csv(std::ostream& out, const std::vector<AnalyticRow>& rows);

// Long format, demand block (alpha0..alpha3) then supply block (gamma0..gamma3, theta).
void write_estimates_csv(std::ostream& out, const DemandEstimate* demand, const SupplyEstimate& supply);

}  // namespace conduct
