#include "conduct/estimation.hpp"

#include <cmath>
#include <string>

#include "conduct/error.hpp"
#include "conduct/normal.hpp"

namespace conduct {

namespace {

void require_observables(const Dataset& data) {
  const Eigen::Index T = data.markets();
  const auto& x = data.exog;
  for (const Vector* v : {&data.P, &x.Y, &x.ZR, &x.W, &x.R, &x.H, &x.K}) {
    if (v->size() != T) throw Error(Errc::DimensionMismatch, "dataset columns have unequal length");
  }
  if (T <= 10) throw Error(Errc::DimensionMismatch, "need more than 10 markets, got " + std::to_string(T));
}

}  // namespace

DemandEstimate estimate_demand(const Dataset& data, InstrumentKind regime) {
  require_observables(data);
  const auto& x = data.exog;
  const Eigen::Index T = data.markets();

  Matrix X(T, 4);
  X << Vector::Ones(T), data.Q, x.ZR.cwiseProduct(data.Q), x.Y;
  const Matrix Z = regime == InstrumentKind::PolynomialApprox ? polynomial_demand_instruments(data)
                                                              : benchmark_demand_instruments(data);

  DemandEstimate est;
  est.fit = tsls(data.P, X, {1, 2}, Z);
  const Vector& b = est.fit.coefficients;
  est.alpha0 = b[0];
  est.alpha1 = -b[1];
  est.alpha2 = -b[2];
  est.alpha3 = b[3];
  est.standard_errors = est.fit.standard_errors;
  return est;
}

SupplyEstimate estimate_supply(const Dataset& data, double alpha1, double alpha2,
                               DemandSource source, const SupplyOptions& options) {
  require_observables(data);
  if (!std::isfinite(alpha1) || !std::isfinite(alpha2)) {
    throw Error(Errc::InvalidDemandEstimate, "alpha1 = " + std::to_string(alpha1) +
                                                 ", alpha2 = " + std::to_string(alpha2));
  }
  const auto& x = data.exog;
  const Eigen::Index T = data.markets();

  SupplyEstimate est;
  est.alpha1_used = alpha1;
  est.alpha2_used = alpha2;
  est.demand_source = source;
  est.regime.kind = options.regime;

  Matrix Z;
  switch (options.regime) {
    case InstrumentKind::Benchmark:
      Z = benchmark_supply_instruments(data);
      break;
    case InstrumentKind::PolynomialApprox:
      Z = options.polynomial_supply_features ? polynomial_supply_instruments(data)
                                             : benchmark_supply_instruments(data);
      break;
    case InstrumentKind::Optimal: {
      Vector q_bar = fit_q_bar(data);
      Z = optimal_supply_instruments(data, q_bar, alpha1, alpha2, options.optimal_interaction_column);
      est.regime.interaction_column = Z.cols() == 7;
      est.regime.alpha1_used = alpha1;
      est.regime.alpha2_used = alpha2;
      est.regime.q_bar = std::move(q_bar);
      break;
    }
  }

  const Vector zr_q = x.ZR.cwiseProduct(data.Q);
  if (!options.ratio_estimator) {
    Matrix X(T, 5);
    X << Vector::Ones(T), alpha1 * data.Q + alpha2 * zr_q, data.Q, x.W, x.R;
    est.fit = tsls(data.P, X, {1, 2}, Z);
    const Vector& b = est.fit.coefficients;
    const Vector& se = est.fit.standard_errors;
    est.gamma0 = b[0];
    est.theta = b[1];
    est.gamma1 = b[2];
    est.gamma2 = b[3];
    est.gamma3 = b[4];
    est.se_theta = se[1];
    est.gamma_standard_errors = Vector{{se[0], se[2], se[3], se[4]}};
  } else {
    // P = g0 + (g1 + theta a1) Q + theta a2 (ZR Q) + g2 W + g3 R
    if (alpha2 == 0.0) throw Error(Errc::InvalidDemandEstimate, "ratio estimator needs alpha2 != 0");
    Matrix X(T, 5);
    X << Vector::Ones(T), data.Q, zr_q, x.W, x.R;
    est.fit = tsls(data.P, X, {1, 2}, Z);
    const Vector& b = est.fit.coefficients;
    const Matrix& V = est.fit.covariance;
    const double c = alpha1 / alpha2;
    est.theta = b[2] / alpha2;
    est.se_theta = est.fit.standard_errors[2] / std::abs(alpha2);
    est.gamma0 = b[0];
    est.gamma1 = b[1] - c * b[2];
    est.gamma2 = b[3];
    est.gamma3 = b[4];
    const double var_g1 = V(1, 1) + c * c * V(2, 2) - 2.0 * c * V(1, 2);
    est.gamma_standard_errors = Vector{{est.fit.standard_errors[0], std::sqrt(std::max(var_g1, 0.0)),
                                        est.fit.standard_errors[3], est.fit.standard_errors[4]}};
  }
  est.t_theta = est.theta / est.se_theta;
  return est;
}

SupplyEstimate estimate_supply(const Dataset& data, const DemandEstimate& demand,
                               const SupplyOptions& options) {
  return estimate_supply(data, demand.alpha1, demand.alpha2, DemandSource::Estimated, options);
}

SupplyEstimate estimate_supply(const Dataset& data, const ParamConfig& truth,
                               const SupplyOptions& options) {
  return estimate_supply(data, truth.alpha1, truth.alpha2, DemandSource::True, options);
}

double critical_value(double level, TestSides sides) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(Errc::InvalidConfig, "significance level must lie in (0,1)");
  }
  return normal_quantile(sides == TestSides::Two ? 1.0 - level / 2.0 : 1.0 - level);
}

bool reject_null(double t_stat, double level, TestSides sides) {
  const double c = critical_value(level, sides);
  return sides == TestSides::Two ? std::abs(t_stat) > c : t_stat > c;
}

}  // namespace conduct
