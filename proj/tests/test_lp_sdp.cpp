#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace symm;

TEST(Simplex, TextbookMaximum) {
  // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  -> (2, 6), value 36
  VectorXd c(2);
  c << 3, 5;
  MatrixXd A(3, 2);
  A << 1, 0, 0, 2, 3, 2;
  VectorXd b(3);
  b << 4, 12, 18;
  const lp::Result r = lp::maximize(c, A, b);
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_NEAR(r.objective, 36.0, 1e-10);
  EXPECT_NEAR(r.x(0), 2.0, 1e-10);
  EXPECT_NEAR(r.x(1), 6.0, 1e-10);
}

TEST(Simplex, NegativeRightHandSideNeedsPhaseOne) {
  // max -x  s.t. -x <= -2 (x >= 2), x <= 5  -> x = 2
  VectorXd c(1);
  c << -1;
  MatrixXd A(2, 1);
  A << -1, 1;
  VectorXd b(2);
  b << -2, 5;
  const lp::Result r = lp::maximize(c, A, b);
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_NEAR(r.x(0), 2.0, 1e-12);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  VectorXd c(1);
  c << 1;
  MatrixXd A(2, 1);
  A << 1, -1;
  VectorXd b(2);
  b << 1, -3;  // x <= 1 and x >= 3
  EXPECT_EQ(lp::maximize(c, A, b).status, lp::Status::Infeasible);
  MatrixXd A2(1, 1);
  A2 << -1;
  VectorXd b2(1);
  b2 << 0;
  EXPECT_EQ(lp::maximize(c, A2, b2).status, lp::Status::Unbounded);
}

TEST(Simplex, DegenerateProblemTerminates) {
  // Degenerate vertex at the origin; Bland's rule must not cycle.
  VectorXd c(4);
  c << 0.75, -150, 0.02, -6;
  MatrixXd A(3, 4);
  A << 0.25, -60, -0.04, 9, 0.5, -90, -0.02, 3, 0, 0, 1, 0;
  VectorXd b(3);
  b << 0, 0, 1;
  const lp::Result r = lp::maximize(c, A, b);
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_NEAR(r.objective, 0.05, 1e-9);
}

TEST(Simplex, AgreesWithVertexEnumerationOnRandomBoxes) {
  // Random objective over a box: optimum picks the upper bound where c > 0.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXd c = fixtures::gaussian(4, 1, rng);
    const VectorXd ub = fixtures::gaussian(4, 1, rng).cwiseAbs();
    const lp::Result r = lp::maximize(c, MatrixXd::Identity(4, 4), ub);
    ASSERT_EQ(r.status, lp::Status::Optimal);
    EXPECT_NEAR(r.objective, c.cwiseMax(0.0).dot(ub), 1e-10);
  }
}

TEST(Sdp, FindsPositiveCombination) {
  // span{diag(1,-1), diag(1,1)}: c = (0, 1) gives I, margin 1.
  std::vector<MatrixXd> basis(2, MatrixXd::Zero(2, 2));
  basis[0].diagonal() << 1, -1;
  basis[1].diagonal() << 1, 1;
  const sdp::MarginResult r = sdp::maximize_min_eigenvalue(basis, 1e-6);
  ASSERT_TRUE(r.reached_target);
  EXPECT_GT(r.margin, 1e-6);
}

TEST(Sdp, ReportsInfeasibleSpan) {
  // Every member of span{diag(1,-1), offdiag} is indefinite or zero.
  std::vector<MatrixXd> basis(2, MatrixXd::Zero(2, 2));
  basis[0].diagonal() << 1, -1;
  basis[1] << 0, 1, 1, 0;
  const sdp::MarginResult r = sdp::maximize_min_eigenvalue(basis, 1e-6);
  EXPECT_FALSE(r.reached_target);
  EXPECT_LE(r.margin, 1e-6);
}

TEST(Sdp, RecoversPlantedPositiveDefiniteMember) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXd G = fixtures::gaussian(5, 5, rng);
    const MatrixXd pd = G * G.transpose() + 0.1 * MatrixXd::Identity(5, 5);
    std::vector<MatrixXd> basis;
    for (int k = 0; k < 3; ++k) {
      const MatrixXd H = fixtures::gaussian(5, 5, rng);
      basis.push_back(H + H.transpose());
    }
    basis.push_back(pd / pd.norm() + 0.3 * basis[0]);
    const sdp::MarginResult r = sdp::maximize_min_eigenvalue(basis, 1e-6);
    EXPECT_TRUE(r.reached_target);
  }
}
