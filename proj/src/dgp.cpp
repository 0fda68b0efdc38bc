#include "conduct/dgp.hpp"

#include <cmath>
#include <string>

#include "conduct/error.hpp"

namespace conduct {

void ParamConfig::validate() const {
  const double fields[] = {alpha0, alpha1, alpha2, alpha3, gamma0, gamma1, gamma2, gamma3, theta, sigma};
  for (double v : fields) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidParams, "non-finite parameter");
  }
  if (theta < 0.0 || theta > 1.0) throw Error(Errc::InvalidParams, "theta must lie in [0,1], got " + std::to_string(theta));
  if (!(alpha1 > 0.0)) throw Error(Errc::InvalidParams, "alpha1 must be positive");
  if (gamma1 < 0.0) throw Error(Errc::InvalidParams, "gamma1 must be nonnegative");
  if (sigma < 0.0) throw Error(Errc::NegativeSigma, "sigma = " + std::to_string(sigma));
}

ExogenousDraw draw_exogenous(RngState& rng, Eigen::Index T, double sigma) {
  if (T < 1) throw Error(Errc::DimensionMismatch, "T must be at least 1");
  if (!(sigma >= 0.0)) throw Error(Errc::NegativeSigma, "sigma = " + std::to_string(sigma));

  auto fill = [&](double mean, double sd) {
    Vector v(T);
    for (Eigen::Index t = 0; t < T; ++t) v[t] = draw_normal(rng, mean, sd);
    return v;
  };

  ExogenousDraw d;
  d.Y = fill(0.0, 1.0);
  d.ZR = fill(10.0, 1.0);
  d.W = fill(3.0, 1.0);
  d.R = fill(0.0, 1.0);
  d.H = d.W + fill(0.0, 1.0);
  d.K = d.R + fill(0.0, 1.0);
  d.eps_d = fill(0.0, sigma);
  d.eps_c = fill(0.0, sigma);
  return d;
}

Vector equilibrium_quantity(const ParamConfig& p, const ExogenousDraw& x) {
  const Eigen::Index T = x.size();
  Vector Q(T);
  for (Eigen::Index t = 0; t < T; ++t) {
    const double denom = (1.0 + p.theta) * (p.alpha1 + p.alpha2 * x.ZR[t]) + p.gamma1;
    if (!(denom > 1e-12)) {
      throw Error(Errc::DegenerateDenominator,
                  "market " + std::to_string(t) + " has denominator " + std::to_string(denom));
    }
    const double numer = p.alpha0 + p.alpha3 * x.Y[t] - p.gamma0 - p.gamma2 * x.W[t] -
                         p.gamma3 * x.R[t] + x.eps_d[t] - x.eps_c[t];
    Q[t] = numer / denom;
  }
  return Q;
}

Vector equilibrium_price(const ParamConfig& p, const ExogenousDraw& x, const Vector& Q) {
  if (Q.size() != x.size()) throw Error(Errc::DimensionMismatch, "Q length differs from T");
  Vector P(Q.size());
  for (Eigen::Index t = 0; t < Q.size(); ++t) {
    P[t] = p.alpha0 - (p.alpha1 + p.alpha2 * x.ZR[t]) * Q[t] + p.alpha3 * x.Y[t] + x.eps_d[t];
  }
  return P;
}

Vector supply_price(const ParamConfig& p, const ExogenousDraw& x, const Vector& Q) {
  if (Q.size() != x.size()) throw Error(Errc::DimensionMismatch, "Q length differs from T");
  Vector P(Q.size());
  for (Eigen::Index t = 0; t < Q.size(); ++t) {
    P[t] = p.gamma0 + p.theta * (p.alpha1 + p.alpha2 * x.ZR[t]) * Q[t] + p.gamma1 * Q[t] +
           p.gamma2 * x.W[t] + p.gamma3 * x.R[t] + x.eps_c[t];
  }
  return P;
}

Dataset generate_dataset(const ParamConfig& params, Eigen::Index T, std::uint64_t seed,
                         QuantityPolicy policy) {
  params.validate();
  RngState rng(seed);
  Dataset data;
  data.params = params;
  data.seed = seed;
  data.exog = draw_exogenous(rng, T, params.sigma);
  data.Q = equilibrium_quantity(params, data.exog);
  for (Eigen::Index t = 0; t < T; ++t) {
    if (data.Q[t] > 0.0) continue;
    ++data.nonpositive_markets;
    if (policy == QuantityPolicy::Reject) {
      throw Error(Errc::NonpositiveQuantity,
                  "market " + std::to_string(t) + " has Q = " + std::to_string(data.Q[t]) +
                      " (seed " + std::to_string(seed) + ")");
    }
  }
  data.P = equilibrium_price(params, data.exog, data.Q);
  return data;
}

}  // namespace conduct
