#include <cmath>

#include "conduct/error.hpp"
#include "conduct/instruments.hpp"
#include "conduct/regression.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace conduct;

namespace {

// Three markets with distinct, easy-to-read values.
Dataset toy() {
  ParamConfig p;
  auto x = oracle::make_exog(Vector{{0.5, -1.0, 2.0}}, Vector{{10.0, 11.0, 9.0}}, Vector{{3.0, 2.0, 4.0}},
                             Vector{{0.1, -0.2, 0.3}});
  x.H = Vector{{3.5, 1.0, 4.5}};
  x.K = Vector{{0.0, 0.4, -0.6}};
  return oracle::make_dataset(p, x);
}

double r_squared(const Vector& y, const Vector& fitted) {
  const Vector centered = y.array() - y.mean();
  return 1.0 - (y - fitted).squaredNorm() / centered.squaredNorm();
}

// Largest residual from projecting the columns of A on the span of B.
double span_residual(const Matrix& A, const Matrix& B) {
  LeastSquares ls(B);
  return (A - B * ls.solve(A)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("regime names round-trip") {
  for (auto k : {InstrumentKind::Benchmark, InstrumentKind::PolynomialApprox, InstrumentKind::Optimal}) {
    CHECK(parse_regime(regime_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_regime("gmm"), Error);
}

TEST_CASE("benchmark instrument sets match hand assembly") {
  const auto d = toy();
  const Matrix Zd = benchmark_demand_instruments(d);
  const Matrix Zs = benchmark_supply_instruments(d);
  Matrix expected_d(3, 5), expected_s(3, 5);
  expected_d << 1, 10, 0.5, 3.5, 0.0,
                1, 11, -1.0, 1.0, 0.4,
                1, 9, 2.0, 4.5, -0.6;
  expected_s << 1, 10, 3, 0.1, 0.5,
                1, 11, 2, -0.2, -1.0,
                1, 9, 4, 0.3, 2.0;
  CHECK(Zd == expected_d);
  CHECK(Zs == expected_s);
}

TEST_CASE("benchmark instruments: intercept column and counts at any T") {
  for (Eigen::Index T : {11, 200, 3000}) {
    const auto d = generate_dataset(ParamConfig{}, T, 4);
    const Matrix Zd = benchmark_demand_instruments(d);
    const Matrix Zs = benchmark_supply_instruments(d);
    CHECK(Zd.cols() == 5);
    CHECK(Zs.cols() == 5);
    CHECK((Zd.col(0).array() == 1.0).all());
    CHECK((Zs.col(0).array() == 1.0).all());
    // Supply regressors (1, composite, Q, W, R): five, matched by five instruments.
    CHECK(Zs.cols() >= 5);
  }
}

TEST_CASE("polynomial demand instruments") {
  const auto d = toy();
  const Matrix Z = polynomial_demand_instruments(d);
  CHECK(Z.cols() == 8);
  Eigen::RowVectorXd row0(8);
  row0 << 1, 0.5, 10, 3, 0.1, 9, 0.1 * 0.1, 0.3;
  CHECK((Z.row(0) - row0).cwiseAbs().maxCoeff() < 1e-15);
  const Matrix Zs = polynomial_supply_instruments(d);
  CHECK(Zs.cols() == 8);
  CHECK(Zs.leftCols(5) == benchmark_supply_instruments(d));
}

TEST_CASE("quadratic features: count and layout") {
  const auto d = toy();
  const Matrix F = quadratic_features(d);
  CHECK(F.cols() == kQuadraticFeatureCount);
  CHECK(kQuadraticFeatureCount == 1 + 6 + 6 + 15);
  // Market 0: Y=0.5 ZR=10 W=3 R=0.1 H=3.5 K=0
  CHECK(F(0, 0) == 1.0);
  CHECK(F(0, 1) == 0.5);
  CHECK(F(0, 8) == 100.0);        // ZR^2
  CHECK(F(0, 13) == 0.5 * 10.0);  // Y * ZR, first interaction
  CHECK(F(0, 27) == 3.5 * 0.0);   // H * K, last interaction
}

TEST_CASE("fit_q_bar: orthogonality and ordering invariance") {
  const auto d = generate_dataset(ParamConfig{}, 2000, 21);
  const Matrix F = quadratic_features(d);
  const Vector q_bar = fit_q_bar(d);
  const Vector resid = d.Q - q_bar;
  CHECK((F.transpose() * resid).cwiseAbs().maxCoeff() <= 1e-8 * (F.transpose() * d.Q).cwiseAbs().maxCoeff());

  // Reverse the feature order; the fitted values must not move.
  const Matrix F_rev = F.rowwise().reverse();
  const Vector q_rev = F_rev * LeastSquares(F_rev).solve(d.Q);
  CHECK((q_rev - q_bar).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("fit_q_bar: noiseless quantity is almost a quadratic in the exogenous variables") {
  ParamConfig p;
  p.sigma = 0.0;
  p.theta = 0.33;
  p.alpha2 = 1.0;
  const auto d = generate_dataset(p, 20000, 3);
  CHECK(r_squared(d.Q, fit_q_bar(d)) >= 0.99);
}

TEST_CASE("optimal supply instruments") {
  const auto d = generate_dataset(ParamConfig{}, 1000, 8);
  const Vector q_bar = fit_q_bar(d);

  SUBCASE("default adds exactly Q_bar") {
    const Matrix Z = optimal_supply_instruments(d, q_bar, 1.0, 1.0);
    CHECK(Z.cols() == 6);
    CHECK(Z.leftCols(5) == benchmark_supply_instruments(d));
    CHECK(Z.col(5) == q_bar);
    CHECK(optimal_supply_instruments(d, 1.0, 1.0) == Z);
  }
  SUBCASE("interaction column appended when informative") {
    const Matrix Z = optimal_supply_instruments(d, q_bar, 1.0, 2.0, true);
    CHECK(Z.cols() == 7);
  }
  SUBCASE("alpha2 = 0 makes the interaction collinear, so it is dropped") {
    const Matrix Z = optimal_supply_instruments(d, q_bar, 1.0, 0.0, true);
    CHECK(Z.cols() == 6);
  }
  SUBCASE("contains the benchmark span") {
    const Matrix Z = optimal_supply_instruments(d, q_bar, 1.0, 1.0);
    CHECK(span_residual(benchmark_supply_instruments(d), Z) < 1e-9);
  }
  SUBCASE("Q_bar collinear with the benchmark set") {
    const Vector collinear = benchmark_supply_instruments(d).col(2) * 2.0;
    try {
      optimal_supply_instruments(d, collinear, 1.0, 1.0);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::RankDeficient);
    }
  }
}

TEST_CASE("supply moment jacobian: signs for one market") {
  const auto d = toy();
  const Vector q_bar{{2.0, 3.0, 4.0}};
  // Market 1: W = 2, R = -0.2, ZR = 11; a1 = 1, a2 = 0.5 -> (1 + 5.5) * 3 = 19.5
  const auto row = supply_moment_jacobian(d, q_bar, 1, 1.0, 0.5);
  CHECK(row(0) == -1.0);
  CHECK(row(1) == -3.0);
  CHECK(row(2) == -2.0);
  CHECK(row(3) == doctest::Approx(0.2));
  CHECK(row(4) == doctest::Approx(-19.5));
}

TEST_CASE("system moment jacobian and Chamberlain instrument: shape and rows") {
  const auto d = toy();
  const Vector q_bar{{2.0, 3.0, 4.0}};
  ParamConfig xi;
  xi.alpha2 = 0.5;
  xi.theta = 0.2;
  const auto D = system_moment_jacobian(d, q_bar, 1, xi);
  CHECK(D.rows() == 2);
  CHECK(D.cols() == 9);
  CHECK(D(0, 0) == -1.0);
  CHECK(D(0, 1) == 3.0);
  CHECK(D(0, 2) == 33.0);
  CHECK(D(0, 3) == 1.0);  // -Y with Y = -1
  CHECK(D.row(0).tail(5).isZero());
  CHECK(D(1, 1) == doctest::Approx(-0.6));
  CHECK(D(1, 4) == -1.0);
  // Last five entries of the supply row equal the supply-only jacobian.
  CHECK((D.row(1).tail(5) - supply_moment_jacobian(d, q_bar, 1, xi.alpha1, xi.alpha2)).isZero());

  const auto g = system_optimal_instrument(d, q_bar, 1, xi, Eigen::Matrix2d::Identity());
  CHECK(g.rows() == 9);
  CHECK(g.cols() == 2);
  CHECK((g - D.transpose()).isZero());
  Eigen::Matrix2d omega;
  omega << 2.0, 0.0, 0.0, 4.0;
  const auto g2 = system_optimal_instrument(d, q_bar, 1, xi, omega);
  CHECK((g2.col(0) - D.row(0).transpose() / 2.0).isZero());
  CHECK((g2.col(1) - D.row(1).transpose() / 4.0).isZero());
}
