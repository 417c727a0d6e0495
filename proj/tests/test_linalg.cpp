#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace symm;

TEST(Kernel, FullRankGivesEmptyBasis) {
  EXPECT_EQ(kernel(MatrixXd::Identity(2, 2)).cols(), 0);
}

TEST(Kernel, SingleConstraint) {
  MatrixXd M(1, 2);
  M << 1, 1;
  const MatrixXd N = kernel(M);
  ASSERT_EQ(N.cols(), 1);
  EXPECT_NEAR(std::abs(N(0, 0)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(N(0, 0) + N(1, 0), 0.0, 1e-15);
  EXPECT_GT(N.col(0).maxCoeff(), 0.0);  // largest-magnitude entry positive
}

TEST(Kernel, OrthonormalAndAnnihilated) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixXd M = fixtures::gaussian(4, 3, rng) * fixtures::gaussian(3, 7, rng);  // rank 3
    const MatrixXd N = kernel(M, 1e-10);
    ASSERT_EQ(N.cols(), 4);
    const double smax = spectral_norm(M);
    EXPECT_LE(max_abs(M * N), 10 * 1e-10 * smax);
    EXPECT_LT(max_abs(N.transpose() * N - MatrixXd::Identity(4, 4)), 1e-12);
  }
}

TEST(Kernel, ZeroRowsMeansEverything) {
  EXPECT_EQ(kernel(MatrixXd(0, 3)).cols(), 3);
}

TEST(NumericalRank, Basics) {
  EXPECT_EQ(numerical_rank(MatrixXd::Zero(3, 3)), 0);
  EXPECT_EQ(numerical_rank(MatrixXd::Identity(3, 3)), 3);
  MatrixXd M(2, 2);
  M << 1, 2, 2, 4;
  EXPECT_EQ(numerical_rank(M), 1);
}

TEST(PrincipalAngle, SameAndOrthogonalSubspaces) {
  MatrixXd A(3, 1), B(3, 1);
  A << 1, 0, 0;
  B << 2, 0, 0;
  EXPECT_LT(largest_principal_angle(A, B), 1e-12);
  B << 0, 1, 0;
  EXPECT_NEAR(largest_principal_angle(A, B), std::acos(0.0), 1e-12);
}

TEST(SortedEig, DescendingAndReconstructs) {
  std::mt19937_64 rng(8);
  const MatrixXd G = fixtures::gaussian(4, 4, rng);
  const MatrixXd S = G + G.transpose();
  const SortedEig e = sorted_symmetric_eig(S);
  for (int i = 0; i + 1 < 4; ++i) EXPECT_GE(e.values(i), e.values(i + 1));
  EXPECT_LT(max_abs(e.vectors * e.values.asDiagonal() * e.vectors.transpose() - S), 1e-12);
}

TEST(SpdSqrt, SquaresBackAndRejectsIndefinite) {
  MatrixXd S(2, 2);
  S << 4, 1, 1, 3;
  const MatrixXd R = spd_sqrt(S);
  EXPECT_LT(max_abs(R * R - S), 1e-13);
  EXPECT_LT(max_abs(spd_inverse_sqrt(S) * R - MatrixXd::Identity(2, 2)), 1e-13);
  S << 1, 0, 0, -1;
  EXPECT_THROW(spd_sqrt(S), NotPositiveDefinite);
}
