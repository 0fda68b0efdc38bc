#pragma once

namespace conduct {

// Standard normal CDF, accurate to about 1e-15 absolute.
double normal_cdf(double x);

// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

}  // namespace conduct
