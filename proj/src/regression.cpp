#include "conduct/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conduct/error.hpp"

namespace conduct {

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw Error(Errc::DimensionMismatch, std::string(what) + " has non-finite entries");
}

RegressionFit finish_fit(const LeastSquares& design, const Vector& coefficients, Vector residuals) {
  RegressionFit fit;
  fit.n_obs = static_cast<int>(design.rows());
  fit.n_regressors = static_cast<int>(design.cols());
  fit.coefficients = coefficients;
  fit.sigma2_hat = residuals.squaredNorm() / static_cast<double>(fit.n_obs - fit.n_regressors);
  fit.residuals = std::move(residuals);
  fit.covariance = fit.sigma2_hat * design.inverse_gram();
  fit.standard_errors = fit.covariance.diagonal().cwiseSqrt();
  fit.t_statistics = fit.coefficients.cwiseQuotient(fit.standard_errors);
  return fit;
}

}  // namespace

LeastSquares::LeastSquares(const Matrix& X) : rows_(X.rows()), cols_(X.cols()) {
  if (rows_ < 1 || cols_ < 1) throw Error(Errc::DimensionMismatch, "empty design " + shape(X));
  require_finite(X, "design");
  qr_.compute(X);
  const double max_norm = X.colwise().norm().maxCoeff();
  const auto& r = qr_.matrixR();
  const Eigen::Index diag = std::min(rows_, cols_);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < diag; ++i) {
    if (std::abs(r(i, i)) > kRankTolerance * max_norm) ++rank;
  }
  if (rank < cols_) {
    throw Error(Errc::RankDeficient, "design " + shape(X) + " has numerical rank " +
                                         std::to_string(rank));
  }
}

Vector LeastSquares::solve(const Vector& y) const { return qr_.solve(y); }

Matrix LeastSquares::solve(const Matrix& Y) const { return qr_.solve(Y); }

Matrix LeastSquares::inverse_gram() const {
  // X P = Q R  =>  (X'X)^{-1} = P R^{-1} R^{-T} P'
  const auto r = qr_.matrixR().topLeftCorner(cols_, cols_).triangularView<Eigen::Upper>();
  Matrix r_inv = r.solve(Matrix::Identity(cols_, cols_));
  Matrix inner = r_inv * r_inv.transpose();
  const auto& perm = qr_.colsPermutation();
  return perm * inner * perm.transpose();
}

RegressionFit ols(const Matrix& X, const Vector& y) {
  if (X.rows() != y.size()) {
    throw Error(Errc::DimensionMismatch, "X is " + shape(X) + " but y has " + std::to_string(y.size()));
  }
  if (X.rows() <= X.cols()) {
    throw Error(Errc::DimensionMismatch, "need more observations than regressors, X is " + shape(X));
  }
  require_finite(y, "response");
  LeastSquares design(X);
  Vector b = design.solve(y);
  Vector residuals = y - X * b;
  return finish_fit(design, b, std::move(residuals));
}

RegressionFit tsls(const Vector& y, const Matrix& X, std::span<const int> endogenous_cols,
                   const Matrix& Z) {
  const Eigen::Index n = X.rows();
  if (y.size() != n || Z.rows() != n) {
    throw Error(Errc::DimensionMismatch, "y has " + std::to_string(y.size()) + ", X is " +
                                             shape(X) + ", Z is " + shape(Z));
  }
  if (Z.cols() < X.cols()) {
    throw Error(Errc::UnderIdentified, std::to_string(Z.cols()) + " instruments for " +
                                           std::to_string(X.cols()) + " regressors");
  }
  if (n <= Z.cols()) {
    throw Error(Errc::DimensionMismatch, "need more observations than instruments, Z is " + shape(Z));
  }
  require_finite(y, "response");
  require_finite(X, "regressors");

  std::vector<bool> endogenous(static_cast<std::size_t>(X.cols()), false);
  for (int j : endogenous_cols) {
    if (j < 0 || j >= X.cols() || endogenous[static_cast<std::size_t>(j)]) {
      throw Error(Errc::DimensionMismatch, "bad endogenous column index " + std::to_string(j));
    }
    endogenous[static_cast<std::size_t>(j)] = true;
  }

  const LeastSquares first_stage(Z);
  Matrix X_hat = X;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const Vector projected = Z * first_stage.solve(Vector(X.col(j)));
    if (endogenous[static_cast<std::size_t>(j)]) {
      X_hat.col(j) = projected;
    } else {
      // Exogenous regressors must act as their own instruments.
      const double scale = std::max(1.0, X.col(j).cwiseAbs().maxCoeff());
      if ((X.col(j) - projected).cwiseAbs().maxCoeff() > 1e-8 * scale) {
        throw Error(Errc::UnderIdentified,
                    "exogenous regressor " + std::to_string(j) + " is not in the instrument span");
      }
    }
  }

  const LeastSquares second_stage(X_hat);
  Vector b = second_stage.solve(y);
  Vector residuals = y - X * b;
  return finish_fit(second_stage, b, std::move(residuals));
}

}  // namespace conduct
