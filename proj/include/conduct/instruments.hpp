#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "conduct/dgp.hpp"

namespace conduct {

enum class InstrumentKind { Benchmark, PolynomialApprox, Optimal };

// CLI names: benchmark | polynomial | optimal.
std::string_view regime_name(InstrumentKind kind);
InstrumentKind parse_regime(std::string_view name);  // throws InvalidConfig

// What was actually used to instrument one supply regression.
struct InstrumentRegime {
  InstrumentKind kind = InstrumentKind::Benchmark;
  std::optional<Vector> q_bar;         // Optimal only
  std::optional<double> alpha1_used;   // Optimal only
  std::optional<double> alpha2_used;   // Optimal only
  bool interaction_column = false;     // (a1 + a2 ZR) Q_bar kept in the set
};

// (1, ZR, Y, H, K)
Matrix benchmark_demand_instruments(const Dataset& data);

// (1, ZR, W, R, Y)
Matrix benchmark_supply_instruments(const Dataset& data);

inline constexpr int kQuadraticFeatureCount = 28;

// Intercept, (Y, ZR, W, R, H, K), their squares in the same order, then the
// 15 products v_i v_j for i < j in row-major order.
Matrix quadratic_features(const Dataset& data);

// OLS fitted values of Q on quadratic_features(data); stands in for E[Q | Z].
Vector fit_q_bar(const Dataset& data);

// Supply-side optimal instruments: the benchmark supply set plus Q_bar. With
// `append_interaction` the column (a1 + a2 ZR) Q_bar is added as well; if it is
// numerically collinear with the rest (a2 == 0 makes it a multiple of Q_bar)
// it is dropped with a warning on std::clog.
Matrix optimal_supply_instruments(const Dataset& data, const Vector& q_bar, double alpha1_hat,
                                  double alpha2_hat, bool append_interaction = false);
Matrix optimal_supply_instruments(const Dataset& data, double alpha1_hat, double alpha2_hat,
                                  bool append_interaction = false);

// Demand-side polynomial approximation: (1, Y, ZR, W, R, W^2, R^2, W R).
Matrix polynomial_demand_instruments(const Dataset& data);

// Benchmark supply set plus (W^2, R^2, W R). Off by default in estimation.
Matrix polynomial_supply_instruments(const Dataset& data);

// Conditional expectation of the derivative of the supply residual
//   eps_c = P - g0 - theta (a1 + a2 ZR) Q - g1 Q - g2 W - g3 R
// with respect to (g0, g1, g2, g3, theta) at market t, with Q replaced by
// Q_bar: (-1, -Q_bar, -W, -R, -(a1 + a2 ZR) Q_bar).
Eigen::Matrix<double, 1, 5> supply_moment_jacobian(const Dataset& data, const Vector& q_bar,
                                                   Eigen::Index t, double alpha1,
                                                   double alpha2);

// Full-system counterpart over xi = (a0, a1, a2, a3, g0, g1, g2, g3, theta):
// row 0 differentiates the demand residual, row 1 the supply residual. The
// Chamberlain instrument for market t is D' Omega^{-1} (9x2). With
// uncorrelated demand and cost errors the joint system adds nothing over
// equation-by-equation estimation, so estimation never calls this.
Eigen::Matrix<double, 2, 9> system_moment_jacobian(const Dataset& data, const Vector& q_bar,
                                                   Eigen::Index t, const ParamConfig& xi);

Eigen::Matrix<double, 9, 2> system_optimal_instrument(const Dataset& data, const Vector& q_bar,
                                                      Eigen::Index t, const ParamConfig& xi,
                                                      const Eigen::Matrix2d& omega);

}  // namespace conduct
