#pragma once

#include <cstdint>

#include "conduct/linalg.hpp"
#include "conduct/rng.hpp"

namespace conduct {

// Structural parameters of the linear model
//   demand:  P = a0 - (a1 + a2 ZR) Q + a3 Y + eps_d
//   cost:    MC = g0 + g1 Q + g2 W + g3 R + eps_c
//   supply:  P = MC + theta (a1 + a2 ZR) Q
// theta = 0 is perfect competition, 1/N symmetric N-firm Cournot, 1 collusion.
struct ParamConfig {
  double alpha0 = 10.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double alpha3 = 1.0;
  double gamma0 = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double gamma3 = 1.0;
  double theta = 0.5;
  double sigma = 1.0;

  // Throws InvalidParams unless theta in [0,1], alpha1 > 0, gamma1 >= 0,
  // sigma >= 0 and every field is finite.
  void validate() const;

  bool operator==(const ParamConfig&) const = default;
};

struct ExogenousDraw {
  Vector Y;      // demand shifter, N(0,1)
  Vector ZR;     // demand rotation instrument, N(10,1)
  Vector W;      // cost shifter, N(3,1)
  Vector R;      // cost shifter, N(0,1)
  Vector H;      // W + N(0,1)
  Vector K;      // R + N(0,1)
  Vector eps_d;  // N(0, sigma)
  Vector eps_c;  // N(0, sigma)

  Eigen::Index size() const { return Y.size(); }
};

struct Dataset {
  ParamConfig params;
  std::uint64_t seed = 0;
  ExogenousDraw exog;
  Vector P;
  Vector Q;
  // Markets with Q_t <= 0. With the default parameters the reduced-form
  // numerator is N(6, 5), so roughly 0.37% of markets land here.
  Eigen::Index nonpositive_markets = 0;

  Eigen::Index markets() const { return Q.size(); }
};

// Draw order is variable-major: all T values of Y, then ZR, W, R, the H
// noise, the K noise, eps_d and eps_c, each as one pass of draw_normal.
ExogenousDraw draw_exogenous(RngState& rng, Eigen::Index T, double sigma);

// Reduced-form quantity, evaluated term by term as
//   (a0 + a3 Y - g0 - g2 W - g3 R + eps_d - eps_c) / ((1+theta)(a1 + a2 ZR) + g1).
// Throws DegenerateDenominator naming the first market with denominator <= 1e-12.
Vector equilibrium_quantity(const ParamConfig& params, const ExogenousDraw& exog);

// Inverse demand at Q.
Vector equilibrium_price(const ParamConfig& params, const ExogenousDraw& exog, const Vector& Q);

// Supply-relation price at Q, used to check equilibrium consistency.
Vector supply_price(const ParamConfig& params, const ExogenousDraw& exog, const Vector& Q);

enum class QuantityPolicy {
  Flag,    // keep the market, count it in nonpositive_markets
  Reject,  // throw NonpositiveQuantity naming the first offending market
};

// Markets are never resampled.
Dataset generate_dataset(const ParamConfig& params, Eigen::Index T, std::uint64_t seed,
                         QuantityPolicy policy = QuantityPolicy::Flag);

}  // namespace conduct
