#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace symm;

TEST(InternalSymmetry, SymmetricMatrixAcceptsIdentity) {
  std::mt19937_64 rng(1);
  const MatrixXd G = fixtures::gaussian(4, 4, rng);
  const SymmetryResult r = check_internal_symmetry(MatrixXd(G + G.transpose()));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r.sigma, SignatureMatrix::identity(4));
}

TEST(InternalSymmetry, RotationForcesMixedSigns) {
  MatrixXd P(2, 2);
  P << 0, 1, -1, 0;
  const SymmetryResult r = check_internal_symmetry(P);
  ASSERT_TRUE(r);
  EXPECT_EQ(r.sigma->diag(), (std::vector<int>{1, -1}));
}

TEST(InternalSymmetry, ExampleIsNotSymmetric) {
  EXPECT_FALSE(check_internal_symmetry(system_matrix(fixtures::example_system())));
}

TEST(InternalSymmetry, MagnitudeMismatchAndOddCycle) {
  MatrixXd P(2, 2);
  P << 1, 2, 1, 1;
  EXPECT_FALSE(check_internal_symmetry(P));
  MatrixXd Q(3, 3);
  Q << 0, 1, 1, 1, 0, 1, -1, 1, 0;  // parities +,-,+ around a triangle
  const SymmetryResult r = check_internal_symmetry(Q);
  EXPECT_FALSE(r);
  EXPECT_NE(r.reason.find("odd cycle"), std::string::npos);
}

TEST(InternalSymmetry, RecoversPlantedSignatures) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 3);
    const SignatureMatrix sigma = fixtures::random_signature(n + m, rng);
    const SystemMatrix sm = system_matrix(random_symmetric_system(n, m, sigma, rng()));
    const SymmetryResult r = check_internal_symmetry(sm);
    ASSERT_TRUE(r);
    EXPECT_LE(internal_symmetry_residual(sm.P, *r.sigma), 1e-12);
    EXPECT_TRUE(*r.sigma == sigma || *r.sigma == sigma.negated());
  }
}

TEST(InternalSymmetry, NegatedWitnessAlsoValid) {
  const SignatureMatrix sigma(std::vector<int>{1, -1, -1});
  const SystemMatrix sm = system_matrix(random_symmetric_system(2, 1, sigma, 5));
  EXPECT_EQ(internal_symmetry_residual(sm.P, sigma.negated()), 0.0);
}

TEST(ExternalSymmetry, SisoAlwaysSymmetric) {
  const SymmetryResult r = check_external_symmetry(random_gaussian_system(3, 1, 4));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r.sigma, SignatureMatrix::identity(1));
}

TEST(ExternalSymmetry, SkewCouplingGivesMixedSignature) {
  // G = [[1/(s+1), 2/(s+2)], [-2/(s+2), 1/(s+3)]]
  MatrixXd A = MatrixXd::Zero(4, 4);
  A.diagonal() << -1, -2, -2, -3;
  MatrixXd B(4, 2), C(2, 4);
  B << 1, 0, 0, 2, 1, 0, 0, 1;
  C << 1, 1, 0, 0, 0, 0, -2, 1;
  const StateSpace ss(A, B, C, MatrixXd::Zero(2, 2));
  ASSERT_TRUE(is_minimal(ss));
  // Check the realization against the rational form at a few points.
  for (double s : {0.5, 1.5, 4.0, 7.0, 10.0}) {
    const MatrixXcd G = transfer_eval(ss, s);
    EXPECT_NEAR(G(0, 0).real(), 1 / (s + 1), 1e-14);
    EXPECT_NEAR(G(0, 1).real(), 2 / (s + 2), 1e-14);
    EXPECT_NEAR(G(1, 0).real(), -2 / (s + 2), 1e-14);
    EXPECT_NEAR(G(1, 1).real(), 1 / (s + 3), 1e-14);
  }
  const SymmetryResult r = check_external_symmetry(ss);
  ASSERT_TRUE(r);
  EXPECT_EQ(r.sigma->diag(), (std::vector<int>{1, -1}));
}

TEST(ExternalSymmetry, ExampleIsNotSymmetric) {
  EXPECT_FALSE(check_external_symmetry(fixtures::example_system()));
}

TEST(ExternalSymmetry, ZeroCouplingImposesNoConstraint) {
  MatrixXd A = MatrixXd::Zero(2, 2);
  A.diagonal() << -1, -2;
  const StateSpace ss(A, MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2), MatrixXd::Zero(2, 2));
  const SymmetryResult r = check_external_symmetry(ss);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r.sigma, SignatureMatrix::identity(2));
}

TEST(ExternalSymmetry, InternalImpliesExternal) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 3);
    const SignatureMatrix sigma = fixtures::random_signature(n + m, rng);
    const StateSpace ss = random_symmetric_system(n, m, sigma, rng());
    const SymmetryResult in = check_internal_symmetry(system_matrix(ss));
    ASSERT_TRUE(in);
    const MatrixXd Se = in.sigma->slice(n, m).matrix();
    for (const auto& s : transfer_sample_points(ss.A())) {
      const MatrixXcd G = transfer_eval(ss, s);
      EXPECT_LT(fixtures::rel_diff(Se * G.transpose(), G * Se), 1e-8);
    }
    EXPECT_TRUE(check_external_symmetry(ss));
  }
}
