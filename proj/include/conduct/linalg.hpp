#pragma once

#include <Eigen/Dense>

namespace conduct {

// Column-major dense storage; row t is market t, column j is regressor j.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace conduct
