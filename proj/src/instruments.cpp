#include "conduct/instruments.hpp"

#include <array>
#include <iostream>
#include <string>

#include "conduct/error.hpp"
#include "conduct/regression.hpp"

namespace conduct {

std::string_view regime_name(InstrumentKind kind) {
  switch (kind) {
    case InstrumentKind::Benchmark: return "benchmark";
    case InstrumentKind::PolynomialApprox: return "polynomial";
    case InstrumentKind::Optimal: return "optimal";
  }
  return "?";
}

InstrumentKind parse_regime(std::string_view name) {
  if (name == "benchmark") return InstrumentKind::Benchmark;
  if (name == "polynomial") return InstrumentKind::PolynomialApprox;
  if (name == "optimal") return InstrumentKind::Optimal;
  throw Error(Errc::InvalidConfig, "unknown regime '" + std::string(name) +
                                       "' (expected benchmark, polynomial or optimal)");
}

Matrix benchmark_demand_instruments(const Dataset& data) {
  const auto& x = data.exog;
  Matrix Z(data.markets(), 5);
  Z << Vector::Ones(data.markets()), x.ZR, x.Y, x.H, x.K;
  return Z;
}

Matrix benchmark_supply_instruments(const Dataset& data) {
  const auto& x = data.exog;
  Matrix Z(data.markets(), 5);
  Z << Vector::Ones(data.markets()), x.ZR, x.W, x.R, x.Y;
  return Z;
}

Matrix quadratic_features(const Dataset& data) {
  const auto& x = data.exog;
  const std::array<const Vector*, 6> base = {&x.Y, &x.ZR, &x.W, &x.R, &x.H, &x.K};
  Matrix F(data.markets(), kQuadraticFeatureCount);
  Eigen::Index col = 0;
  F.col(col++).setOnes();
  for (const Vector* v : base) F.col(col++) = *v;
  for (const Vector* v : base) F.col(col++) = v->cwiseProduct(*v);
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) F.col(col++) = base[i]->cwiseProduct(*base[j]);
  }
  return F;
}

Vector fit_q_bar(const Dataset& data) {
  const RegressionFit fit = ols(quadratic_features(data), data.Q);
  return data.Q - fit.residuals;
}

Matrix optimal_supply_instruments(const Dataset& data, const Vector& q_bar, double alpha1_hat,
                                  double alpha2_hat, bool append_interaction) {
  if (q_bar.size() != data.markets()) throw Error(Errc::DimensionMismatch, "Q_bar length differs from T");
  const Matrix bench = benchmark_supply_instruments(data);
  Matrix Z(data.markets(), bench.cols() + 1);
  Z << bench, q_bar;
  LeastSquares check(Z);  // RankDeficient if Q_bar adds nothing
  if (!append_interaction) return Z;

  Matrix Z_ext(data.markets(), Z.cols() + 1);
  Z_ext << Z, ((alpha1_hat + alpha2_hat * data.exog.ZR.array()) * q_bar.array()).matrix();
  try {
    LeastSquares ext_check(Z_ext);
  } catch (const Error& e) {
    if (e.code() != Errc::RankDeficient) throw;
    std::clog << "warning: dropping (alpha1 + alpha2 ZR) Q_bar instrument, collinear with Q_bar\n";
    return Z;
  }
  return Z_ext;
}

Matrix optimal_supply_instruments(const Dataset& data, double alpha1_hat, double alpha2_hat,
                                  bool append_interaction) {
  return optimal_supply_instruments(data, fit_q_bar(data), alpha1_hat, alpha2_hat, append_interaction);
}

Matrix polynomial_demand_instruments(const Dataset& data) {
  const auto& x = data.exog;
  Matrix Z(data.markets(), 8);
  Z << Vector::Ones(data.markets()), x.Y, x.ZR, x.W, x.R, x.W.cwiseProduct(x.W),
      x.R.cwiseProduct(x.R), x.W.cwiseProduct(x.R);
  return Z;
}

Matrix polynomial_supply_instruments(const Dataset& data) {
  const auto& x = data.exog;
  const Matrix bench = benchmark_supply_instruments(data);
  Matrix Z(data.markets(), 8);
  Z << bench, x.W.cwiseProduct(x.W), x.R.cwiseProduct(x.R), x.W.cwiseProduct(x.R);
  return Z;
}

Eigen::Matrix<double, 1, 5> supply_moment_jacobian(const Dataset& data, const Vector& q_bar,
                                                   Eigen::Index t, double alpha1, double alpha2) {
  const auto& x = data.exog;
  Eigen::Matrix<double, 1, 5> row;
  row << -1.0, -q_bar[t], -x.W[t], -x.R[t], -(alpha1 + alpha2 * x.ZR[t]) * q_bar[t];
  return row;
}

Eigen::Matrix<double, 2, 9> system_moment_jacobian(const Dataset& data, const Vector& q_bar,
                                                   Eigen::Index t, const ParamConfig& xi) {
  const auto& x = data.exog;
  const double qb = q_bar[t];
  const double zr = x.ZR[t];
  Eigen::Matrix<double, 2, 9> D;
  D << -1.0, qb, zr * qb, -x.Y[t], 0.0, 0.0, 0.0, 0.0, 0.0,
       0.0, -xi.theta * qb, -xi.theta * zr * qb, 0.0, -1.0, -qb, -x.W[t], -x.R[t],
       -(xi.alpha1 + xi.alpha2 * zr) * qb;
  return D;
}

Eigen::Matrix<double, 9, 2> system_optimal_instrument(const Dataset& data, const Vector& q_bar,
                                                      Eigen::Index t, const ParamConfig& xi,
                                                      const Eigen::Matrix2d& omega) {
  return system_moment_jacobian(data, q_bar, t, xi).transpose() * omega.inverse();
}

}  // namespace conduct
