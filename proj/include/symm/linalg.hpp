#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "symm/errors.hpp"

namespace symm {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline double max_abs(const MatrixXd& M) {
  return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

inline VectorXd singular_values(const MatrixXd& M) {
  if (M.size() == 0) return VectorXd();
  return Eigen::JacobiSVD<MatrixXd>(M).singularValues();
}

inline double spectral_norm(const MatrixXd& M) {
  const VectorXd s = singular_values(M);
  return s.size() == 0 ? 0.0 : s(0);
}

/// Ratio σ_min/σ_max of a square matrix (0 for the zero matrix).
inline double inverse_condition(const MatrixXd& M) {
  const VectorXd s = singular_values(M);
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

/// True when σ_min(M) >= rel_tol * σ_max(M) and M is square.
inline bool is_nonsingular(const MatrixXd& M, double rel_tol) {
  if (M.rows() != M.cols() || M.rows() == 0) return false;
  return inverse_condition(M) >= rel_tol;
}

/// Flips v so that its largest-magnitude entry is positive. Ties resolve to
/// the first index.
inline void normalize_sign(Eigen::Ref<VectorXd> v) {
  if (v.size() == 0) return;
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  if (v(idx) < 0) v = -v;
}

inline int numerical_rank(const MatrixXd& M, double tol = 1e-10) {
  const VectorXd s = singular_values(M);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = tol * s(0) * static_cast<double>(std::max(M.rows(), M.cols()));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

/// Orthonormal basis of the numerical kernel of M: right singular vectors
/// with σ <= tol·σ_max·max(rows, cols). Each basis column is sign-normalized
/// (largest-magnitude entry positive). A full-rank M yields a matrix with
/// zero columns.
inline MatrixXd kernel(const MatrixXd& M, double tol = 1e-10) {
  const Eigen::Index cols = M.cols();
  if (cols == 0) return MatrixXd(0, 0);
  if (M.rows() == 0) return MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullV);
  const VectorXd& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double cut = tol * smax * static_cast<double>(std::max(M.rows(), cols));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++rank;
  }
  MatrixXd basis = svd.matrixV().rightCols(cols - rank);
  for (Eigen::Index j = 0; j < basis.cols(); ++j) normalize_sign(basis.col(j));
  return basis;
}

/// Largest principal angle (radians) between col(A) and col(B). Both need
/// not be orthonormal; they are orthonormalized first.
inline double largest_principal_angle(const MatrixXd& A, const MatrixXd& B) {
  if (A.cols() != B.cols()) return M_PI / 2;
  if (A.cols() == 0) return 0.0;
  const MatrixXd qa = Eigen::HouseholderQR<MatrixXd>(A).householderQ() *
                      MatrixXd::Identity(A.rows(), A.cols());
  const MatrixXd qb = Eigen::HouseholderQR<MatrixXd>(B).householderQ() *
                      MatrixXd::Identity(B.rows(), B.cols());
  const VectorXd cosines = singular_values(qa.transpose() * qb);
  const double c = std::clamp(cosines(cosines.size() - 1), -1.0, 1.0);
  return std::acos(c);
}

/// Symmetric eigendecomposition with eigenvalues sorted descending (stable
/// for ties) and eigenvector columns sign-normalized.
struct SortedEig {
  VectorXd values;
  MatrixXd vectors;
};

inline SortedEig sorted_symmetric_eig(const MatrixXd& S) {
  const MatrixXd sym = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw SolverFailure("symmetric eigendecomposition failed");
  const Eigen::Index q = sym.rows();
  std::vector<Eigen::Index> order(static_cast<size_t>(q));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return es.eigenvalues()(a) > es.eigenvalues()(b);
  });
  SortedEig out{VectorXd(q), MatrixXd(q, q)};
  for (Eigen::Index k = 0; k < q; ++k) {
    out.values(k) = es.eigenvalues()(order[static_cast<size_t>(k)]);
    out.vectors.col(k) = es.eigenvectors().col(order[static_cast<size_t>(k)]);
    normalize_sign(out.vectors.col(k));
  }
  return out;
}

/// Principal square root of a symmetric positive definite matrix.
inline MatrixXd spd_sqrt(const MatrixXd& S) {
  const SortedEig e = sorted_symmetric_eig(S);
  if (e.values.size() > 0 && e.values.minCoeff() <= 0.0) {
    throw NotPositiveDefinite("matrix square root requires a positive definite argument");
  }
  return e.vectors * e.values.cwiseSqrt().asDiagonal() * e.vectors.transpose();
}

inline MatrixXd spd_inverse_sqrt(const MatrixXd& S) {
  const SortedEig e = sorted_symmetric_eig(S);
  if (e.values.size() > 0 && e.values.minCoeff() <= 0.0) {
    throw NotPositiveDefinite("matrix square root requires a positive definite argument");
  }
  return e.vectors * e.values.cwiseSqrt().cwiseInverse().asDiagonal() * e.vectors.transpose();
}

}  // namespace symm
