#pragma once

#include "conduct/dgp.hpp"
#include "conduct/instruments.hpp"
#include "conduct/regression.hpp"

namespace conduct {

enum class DemandSource { Estimated, True };
enum class TestSides { Two, One };

// Demand parameters in structural form. The regression behind them is
//   P = b0 + b1 Q + b2 (ZR Q) + b3 Y
// with {Q, ZR Q} endogenous, so alpha1 = -b1 and alpha2 = -b2.
struct DemandEstimate {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  Vector standard_errors;  // (alpha0, alpha1, alpha2, alpha3)
  RegressionFit fit;
};

struct SupplyOptions {
  InstrumentKind regime = InstrumentKind::Benchmark;
  // Estimate the unrestricted supply regression on (1, Q, ZR Q, W, R) and
  // recover theta as the ZR Q coefficient divided by alpha2.
  bool ratio_estimator = false;
  // Optimal regime: also keep (a1 + a2 ZR) Q_bar as an instrument.
  bool optimal_interaction_column = false;
  // Polynomial regime: add (W^2, R^2, W R) to the supply instruments.
  bool polynomial_supply_features = false;
};

struct SupplyEstimate {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double theta = 0.0;
  double se_theta = 0.0;
  double t_theta = 0.0;
  Vector gamma_standard_errors;  // (gamma0, gamma1, gamma2, gamma3)
  double alpha1_used = 0.0;
  double alpha2_used = 0.0;
  InstrumentRegime regime;
  DemandSource demand_source = DemandSource::Estimated;
  RegressionFit fit;
};

// 2SLS of the inverse demand curve. Benchmark uses (1, ZR, Y, H, K); the
// polynomial regime uses polynomial_demand_instruments. Optimal instruments
// only change the supply side, so Optimal behaves like Benchmark here.
DemandEstimate estimate_demand(const Dataset& data,
                               InstrumentKind regime = InstrumentKind::Benchmark);

// 2SLS of the supply relation holding (alpha1, alpha2) fixed. The regressors
// are (1, (a1 + a2 ZR) Q, Q, W, R) with the middle two endogenous, so the
// coefficient on the composite column is theta itself. se_theta treats the
// demand parameters as known.
SupplyEstimate estimate_supply(const Dataset& data, double alpha1, double alpha2,
                               DemandSource source, const SupplyOptions& options = {});

SupplyEstimate estimate_supply(const Dataset& data, const DemandEstimate& demand,
                               const SupplyOptions& options = {});

// Uses the true alpha1, alpha2 from `truth`.
SupplyEstimate estimate_supply(const Dataset& data, const ParamConfig& truth,
                               const SupplyOptions& options = {});

double critical_value(double level = 0.05, TestSides sides = TestSides::Two);

// Two-sided: |t| > z_{1-level/2}. One-sided: t > z_{1-level}.
bool reject_null(double t_stat, double level = 0.05, TestSides sides = TestSides::Two);

}  // namespace conduct
