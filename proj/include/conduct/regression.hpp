#pragma once

#include <span>
#include <vector>

#include "conduct/linalg.hpp"

namespace conduct {

// Relative rank tolerance: a pivot of R below kRankTolerance times the
// largest column norm of the design counts as zero.
inline constexpr double kRankTolerance = 1e-10;

struct RegressionFit {
  Vector coefficients;
  Vector residuals;
  double sigma2_hat = 0.0;
  Matrix covariance;
  Vector standard_errors;
  Vector t_statistics;
  int n_obs = 0;
  int n_regressors = 0;

  // Fitted values y - residuals; for 2SLS these use the original regressors.
  Vector fitted(const Vector& y) const { return y - residuals; }
};

// Householder QR with column pivoting. Throws RankDeficient when the
// numerical rank is below cols(X).
class LeastSquares {
 public:
  explicit LeastSquares(const Matrix& X);

  Vector solve(const Vector& y) const;
  Matrix solve(const Matrix& Y) const;

  // (X'X)^{-1} assembled from R, without forming X'X.
  Matrix inverse_gram() const;

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

 private:
  Eigen::ColPivHouseholderQR<Matrix> qr_;
  Eigen::Index rows_;
  Eigen::Index cols_;
};

// Throws RankDeficient or DimensionMismatch; needs rows(X) > cols(X).
RegressionFit ols(const Matrix& X, const Vector& y);

// Two-stage least squares. Each column listed in `endogenous_cols` is replaced
// by its fitted value from an OLS regression on the full instrument set Z;
// the second stage regresses y on that fitted design. The error variance uses
// residuals y - X b with the original X, and the covariance is
// sigma2_hat (Xhat' Xhat)^{-1}.
RegressionFit tsls(const Vector& y, const Matrix& X, std::span<const int> endogenous_cols,
                   const Matrix& Z);

inline RegressionFit tsls(const Vector& y, const Matrix& X,
                          std::initializer_list<int> endogenous_cols, const Matrix& Z) {
  std::vector<int> cols(endogenous_cols);
  return tsls(y, X, std::span<const int>(cols), Z);
}

}  // namespace conduct
