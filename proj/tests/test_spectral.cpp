#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace symm;

namespace {

// max |V⁻¹PV − blockdiag(group blocks)| relative to |P|.
double modal_residual(const MatrixXd& P, const EigStructure& es) {
  const MatrixXd J = es.V.partialPivLu().solve(P * es.V);
  return max_abs(J - es.block_diagonal()) / max_abs(P);
}

}  // namespace

TEST(EigStructure, DiagonalMatrix) {
  MatrixXd P = MatrixXd::Zero(3, 3);
  P.diagonal() << 1, 2, 3;
  const EigStructure es = eig_structure(P, 2, 1);
  EXPECT_EQ(es.groups(), 3);
  EXPECT_EQ(es.t, (std::vector<int>{1, 1, 1}));
  EXPECT_LT(max_abs(es.V.cwiseAbs() - MatrixXd::Identity(3, 3)), 1e-14);
  EXPECT_TRUE(es.distinct_real());
}

TEST(EigStructure, RotationIsOneComplexGroup) {
  MatrixXd P(2, 2);
  P << 0, 1, -1, 0;
  const EigStructure es = eig_structure(P, 1, 1);
  ASSERT_EQ(es.groups(), 1);
  EXPECT_EQ(es.t, (std::vector<int>{2}));
  EXPECT_NEAR(es.lambdas[0].imag(), 1.0, 1e-14);
  EXPECT_FALSE(es.distinct_real());
  EXPECT_LT(modal_residual(P, es), 1e-12);
}

TEST(EigStructure, ExampleHasFiveRealDistinct) {
  const EigStructure es = eig_structure(system_matrix(fixtures::example_system()));
  EXPECT_EQ(es.groups(), 5);
  EXPECT_TRUE(es.distinct_real());
  EXPECT_NEAR(es.lambdas[0].real(), 1.0, 1e-10);
}

TEST(EigStructure, RepeatedEigenvalueGroup) {
  std::mt19937_64 rng(4);
  const MatrixXd S = random_nonsingular(4, rng);
  MatrixXd D = MatrixXd::Zero(4, 4);
  D.diagonal() << 2, 2, -1, 3;
  const MatrixXd P = S * D * S.inverse();
  const EigStructure es = eig_structure(P, 2, 2);
  EXPECT_EQ(es.t, (std::vector<int>{1, 2, 1}));
  EXPECT_LT(modal_residual(P, es), 1e-8);
}

TEST(EigStructure, DefectiveIsRejected) {
  MatrixXd P(2, 2);
  P << 1, 1, 0, 1;
  EXPECT_THROW(eig_structure(P, 1, 1), Defective);
}

TEST(EigStructure, ModalBlocksReconstructForRandomMatrices) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixXd P = fixtures::gaussian(6, 6, rng);
    const EigStructure es = eig_structure(P, 3, 3);
    int total = 0;
    for (int tj : es.t) total += tj;
    EXPECT_EQ(total, 6);
    EXPECT_LT(modal_residual(P, es), 1e-8);
    for (int j = 0; j < es.groups(); ++j) EXPECT_GE(es.lambdas[j].imag(), 0.0);
  }
}

TEST(EigStructure, DeterministicNormalization) {
  const SystemMatrix sm = system_matrix(fixtures::example_system());
  const EigStructure a = eig_structure(sm);
  const EigStructure b = eig_structure(sm);
  EXPECT_EQ(a.V, b.V);
  for (Eigen::Index c = 0; c < a.V.cols(); ++c) {
    EXPECT_NEAR(a.V.col(c).norm(), 1.0, 1e-14);
    EXPECT_GT(a.V(0, c) != 0 ? a.V(0, c) : a.V(1, c), 0.0);
  }
}

TEST(KhatriRao, ScalarBlocks) {
  MatrixXd Z(1, 2), W(1, 2);
  Z << 1, 2;
  W << 3, 4;
  const MatrixXd out = khatri_rao(Z, W, {1, 1});
  MatrixXd expected(1, 2);
  expected << 3, 8;
  EXPECT_EQ(out, expected);
}

TEST(KhatriRao, SingleGroupIsKronecker) {
  std::mt19937_64 rng(6);
  const MatrixXd Z = fixtures::gaussian(2, 3, rng);
  const MatrixXd W = fixtures::gaussian(1, 3, rng);
  const MatrixXd expected = Eigen::kroneckerProduct(Z, W);
  EXPECT_LT(max_abs(khatri_rao(Z, W, {3}) - expected), 1e-15);
}

TEST(KhatriRao, SingletonPartitionColumns) {
  std::mt19937_64 rng(7);
  const MatrixXd Z = fixtures::gaussian(3, 4, rng);
  const MatrixXd W = fixtures::gaussian(2, 4, rng);
  const MatrixXd out = khatri_rao(Z, W, {1, 1, 1, 1});
  ASSERT_EQ(out.rows(), 6);
  for (int k = 0; k < 4; ++k) {
    const MatrixXd col = Eigen::kroneckerProduct(Z.col(k), W.col(k));
    EXPECT_LT(max_abs(out.col(k) - col), 1e-15);
  }
}

TEST(KhatriRao, PartitionMismatch) {
  EXPECT_THROW(khatri_rao(MatrixXd::Ones(1, 3), MatrixXd::Ones(1, 3), {1, 1}), DimensionError);
  EXPECT_THROW(khatri_rao(MatrixXd::Ones(1, 3), MatrixXd::Ones(1, 2), {1, 2}), DimensionError);
}

TEST(KhatriRao, ExampleKernelIsTwoDimensional) {
  const EigStructure es = eig_structure(system_matrix(fixtures::example_system()));
  const MatrixXd kr = khatri_rao(es);
  EXPECT_EQ(kr.rows(), 6);
  EXPECT_EQ(kr.cols(), 5);
  EXPECT_EQ(kernel(kr).cols(), 2);
}

TEST(KhatriRao, RandomSystemsHaveFullRank) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SystemMatrix sm = system_matrix(random_gaussian_system(4, 4, seed));
    const EigStructure es = eig_structure(sm);
    EXPECT_EQ(numerical_rank(khatri_rao(es)), es.khatri_rao_columns());
  }
}

TEST(Inertia, DiagonalAndIdentity) {
  MatrixXd S = MatrixXd::Zero(3, 3);
  S.diagonal() << 2, -3, 0;
  EXPECT_EQ(inertia(S), (Inertia{1, 1, 1}));
  EXPECT_EQ(inertia(S).signature(), 0);
  EXPECT_EQ(inertia(MatrixXd::Identity(4, 4)), (Inertia{4, 0, 0}));
}

TEST(Inertia, RejectsNonSymmetric) {
  MatrixXd S(2, 2);
  S << 1, 2, 0, 1;
  EXPECT_THROW(inertia(S), NotSymmetricMatrix);
}

TEST(Inertia, SylvesterLaw) {
  std::mt19937_64 rng(31);
  MatrixXd S = MatrixXd::Zero(3, 3);
  S.diagonal() << 1, 1, -1;
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixXd M = random_nonsingular(3, rng);
    const MatrixXd C = M.transpose() * S * M;
    EXPECT_EQ(inertia(MatrixXd(0.5 * (C + C.transpose()))), inertia(S));
  }
}
