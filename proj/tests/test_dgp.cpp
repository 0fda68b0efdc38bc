#include <cmath>
#include <sstream>

#include "conduct/dataset_io.hpp"
#include "conduct/dgp.hpp"
#include "conduct/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace conduct;

namespace {

ParamConfig toy_params(double theta) {
  ParamConfig p;
  p.alpha0 = 10;
  p.alpha1 = 1;
  p.alpha2 = 0;
  p.alpha3 = 1;
  p.theta = theta;
  return p;
}

ExogenousDraw zero_exog(Eigen::Index T) {
  Vector zr(T);
  for (Eigen::Index t = 0; t < T; ++t) zr[t] = 8.0 + t;
  return oracle::make_exog(Vector::Zero(T), zr, Vector::Zero(T), Vector::Zero(T));
}

double corr(const Vector& a, const Vector& b) {
  const Vector da = a.array() - a.mean();
  const Vector db = b.array() - b.mean();
  return da.dot(db) / std::sqrt(da.squaredNorm() * db.squaredNorm());
}

}  // namespace

TEST_CASE("draw_exogenous: zero sigma gives zero errors") {
  RngState rng(1);
  const auto x = draw_exogenous(rng, 50, 0.0);
  CHECK(x.eps_d.cwiseAbs().maxCoeff() == 0.0);
  CHECK(x.eps_c.cwiseAbs().maxCoeff() == 0.0);
  CHECK(x.size() == 50);
}

TEST_CASE("draw_exogenous: moments and the H/W link") {
  RngState rng(2023);
  const auto x = draw_exogenous(rng, 100000, 1.0);
  CHECK(x.ZR.mean() >= 9.99);
  CHECK(x.ZR.mean() <= 10.01);
  CHECK(x.W.mean() >= 2.99);
  CHECK(x.W.mean() <= 3.01);
  CHECK(std::abs(corr(x.H, x.W) - 1.0 / std::sqrt(2.0)) <= 0.01);
  CHECK(std::abs(corr(x.K, x.R) - 1.0 / std::sqrt(2.0)) <= 0.01);
  CHECK(std::abs(corr(x.eps_d, x.eps_c)) <= 0.015);
  CHECK(std::abs(corr(x.Y, x.ZR)) <= 0.015);
}

TEST_CASE("draw_exogenous: errors") {
  RngState rng(1);
  try {
    draw_exogenous(rng, 10, -0.5);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NegativeSigma);
  }
  CHECK_THROWS_AS(draw_exogenous(rng, 0, 1.0), Error);
}

TEST_CASE("equilibrium_quantity and price: hand examples") {
  const auto x = zero_exog(4);
  SUBCASE("perfect competition") {
    const auto p = toy_params(0.0);
    const Vector Q = equilibrium_quantity(p, x);
    for (Eigen::Index t = 0; t < 4; ++t) CHECK(Q[t] == 4.5);
    const Vector P = equilibrium_price(p, x, Q);
    const Vector S = supply_price(p, x, Q);
    for (Eigen::Index t = 0; t < 4; ++t) {
      CHECK(P[t] == 5.5);
      CHECK(S[t] == 5.5);
    }
  }
  SUBCASE("collusion") {
    const auto p = toy_params(1.0);
    const Vector Q = equilibrium_quantity(p, x);
    for (Eigen::Index t = 0; t < 4; ++t) CHECK(Q[t] == 3.0);
    const Vector P = equilibrium_price(p, x, Q);
    const Vector S = supply_price(p, x, Q);
    for (Eigen::Index t = 0; t < 4; ++t) {
      CHECK(P[t] == 7.0);
      CHECK(S[t] == 7.0);
    }
  }
}

TEST_CASE("equilibrium: random configurations against the scalar oracle") {
  RngState draw(99);
  for (int rep = 0; rep < 20; ++rep) {
    ParamConfig p;
    p.alpha0 = 8 + 4 * draw.uniform();
    p.alpha1 = 0.5 + draw.uniform();
    p.alpha2 = 20 * draw.uniform();
    p.alpha3 = 2 * draw.uniform();
    p.gamma0 = draw.uniform();
    p.gamma1 = 2 * draw.uniform();
    p.gamma2 = draw.uniform();
    p.gamma3 = draw.uniform();
    p.theta = draw.uniform();
    RngState rng(1000 + rep);
    const auto x = draw_exogenous(rng, 300, 1.0);
    const Vector Q = equilibrium_quantity(p, x);
    const Vector P = equilibrium_price(p, x, Q);
    const Vector S = supply_price(p, x, Q);
    for (Eigen::Index t = 0; t < 300; ++t) {
      CHECK(Q[t] == oracle::scalar_quantity(p, x, t));
      CHECK(std::abs(P[t] - S[t]) <= 1e-8 * std::max(1.0, std::abs(P[t])));
    }
  }
}

TEST_CASE("equilibrium_quantity: degenerate denominator names the market") {
  auto p = toy_params(0.0);
  p.alpha2 = -0.2;  // a1 + a2 ZR = 0 at ZR = 5
  Vector zr{{8.0, 9.0, 5.0, 8.0}};
  const auto x = oracle::make_exog(Vector::Zero(4), zr, Vector::Zero(4), Vector::Zero(4));
  p.gamma1 = 0.0;
  try {
    equilibrium_quantity(p, x);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateDenominator);
    CHECK(std::string(e.what()).find("market 0") != std::string::npos);
  }
}

TEST_CASE("equilibrium_price: length mismatch") {
  const auto x = zero_exog(3);
  try {
    equilibrium_price(toy_params(0.0), x, Vector::Ones(2));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("generate_dataset: determinism") {
  ParamConfig p;
  const auto a = generate_dataset(p, 500, 17);
  const auto b = generate_dataset(p, 500, 17);
  CHECK(a.P == b.P);
  CHECK(a.Q == b.Q);
  CHECK(a.exog.H == b.exog.H);
  const auto c = generate_dataset(p, 500, 18);
  CHECK(a.Q != c.Q);
}

TEST_CASE("generate_dataset: nonpositive-quantity rate at the table benchmark") {
  // Numerator 10 + Y - 1 - W - R + eps_d - eps_c ~ N(6, 5) and the
  // denominator is positive, so P(Q <= 0) = Phi(-6 / sqrt(5)) = 0.003645.
  ParamConfig p;
  p.theta = 0.5;
  p.alpha2 = 1.0;
  Eigen::Index flagged = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto d = generate_dataset(p, 1000, seed);
    Eigen::Index count = 0;
    for (Eigen::Index t = 0; t < d.markets(); ++t) count += d.Q[t] <= 0.0 ? 1 : 0;
    CHECK(d.nonpositive_markets == count);
    flagged += count;
    total += d.markets();
  }
  // 50000 markets: expected 182, binomial sd 13.5; allow 4 sd.
  const double rate = static_cast<double>(flagged) / static_cast<double>(total);
  CHECK(std::abs(rate - 0.003645) <= 4 * std::sqrt(0.003645 * (1 - 0.003645) / total));
}

TEST_CASE("generate_dataset: reject policy fails loudly") {
  ParamConfig p;
  p.alpha0 = 1.0;  // numerator mean 1 + 0 - 1 - 3 < 0
  try {
    generate_dataset(p, 100, 1, QuantityPolicy::Reject);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonpositiveQuantity);
  }
  const auto d = generate_dataset(p, 100, 1);
  CHECK(d.nonpositive_markets > 50);
}

TEST_CASE("ParamConfig::validate") {
  ParamConfig p;
  CHECK_NOTHROW(p.validate());
  p.theta = 1.5;
  CHECK_THROWS_AS(p.validate(), Error);
  p = ParamConfig{};
  p.alpha1 = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = ParamConfig{};
  p.gamma1 = -1.0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("comparative statics: higher cost intercept lowers every quantity") {
  RngState rng(8);
  const auto x = draw_exogenous(rng, 400, 1.0);
  ParamConfig lo, hi;
  hi.gamma0 = lo.gamma0 + 0.5;
  const Vector q_lo = equilibrium_quantity(lo, x);
  const Vector q_hi = equilibrium_quantity(hi, x);
  for (Eigen::Index t = 0; t < 400; ++t) CHECK(q_hi[t] <= q_lo[t]);
}

TEST_CASE("dataset CSV: header, row count, full precision round trip") {
  ParamConfig p;
  const auto d = generate_dataset(p, 100, 5);
  std::ostringstream out;
  write_dataset_csv(out, d);
  const std::string text = out.str();
  CHECK(text.rfind("t,P,Q,Y,ZR,W,R,H,K\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 101);

  std::istringstream in(text);
  const auto back = read_dataset_csv(in);
  CHECK(back.P == d.P);
  CHECK(back.Q == d.Q);
  CHECK(back.exog.K == d.exog.K);
  CHECK(back.exog.ZR == d.exog.ZR);
}

TEST_CASE("dataset CSV: parse errors carry the line number") {
  std::istringstream bad_header("t,P,Q\n1,2,3\n");
  CHECK_THROWS_AS(read_dataset_csv(bad_header), Error);

  std::istringstream bad_row("t,P,Q,Y,ZR,W,R,H,K\n1,1,1,1,1,1,1,1,1\n2,1,x,1,1,1,1,1,1\n");
  try {
    read_dataset_csv(bad_row);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
