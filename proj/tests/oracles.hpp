#pragma once

// Independent reference computations used only by the tests.

#include "conduct/dgp.hpp"
#include "conduct/linalg.hpp"

namespace oracle {

// Phi(x) = 1/2 + phi(x) * sum_{n>=0} x^{2n+1} / (1*3*...*(2n+1)), summed in
// long double. All terms share the sign of x, so there is no cancellation
// inside the sum.
double normal_cdf_series(double x);

// 2SLS in projection form, (X' P_Z X)^{-1} X' P_Z y, with P_Z formed
// explicitly from (Z'Z)^{-1} in long double through an LU inverse.
conduct::Vector tsls_projection(const conduct::Vector& y, const conduct::Matrix& X,
                                const conduct::Matrix& Z);

// Quantity and price for one market, straight from the model equations.
double scalar_quantity(const conduct::ParamConfig& p, const conduct::ExogenousDraw& x, Eigen::Index t);
double scalar_demand_price(const conduct::ParamConfig& p, const conduct::ExogenousDraw& x,
                           Eigen::Index t, double Q);

// Assembles an exogenous draw from explicit columns; errors default to zero.
conduct::ExogenousDraw make_exog(const conduct::Vector& Y, const conduct::Vector& ZR,
                                 const conduct::Vector& W, const conduct::Vector& R);

// Dataset with given exogenous draw solved from the equilibrium equations.
conduct::Dataset make_dataset(const conduct::ParamConfig& p, conduct::ExogenousDraw x);

}  // namespace oracle
