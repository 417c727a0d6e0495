#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "symm/errors.hpp"
#include "symm/linalg.hpp"
#include "symm/state_space.hpp"

namespace symm {

/// Real modal basis of a diagonalizable system matrix, grouped by distinct
/// eigenvalue. A real eigenvalue λ_j contributes t_j = mul(λ_j) eigenvector
/// columns; a complex pair contributes t_j = 2·mul(λ_j) columns laid out as
/// (Re v, Im v) per eigenvector, so V⁻¹PV has 2×2 blocks [[a, b], [-b, a]].
struct EigStructure {
  std::vector<std::complex<double>> lambdas;  // representatives, Im >= 0
  std::vector<int> t;                         // group sizes
  std::vector<int> col_offsets;               // first column of each group
  MatrixXd V;
  int n = 0;
  int m = 0;
  bool diagonalizable = true;

  int groups() const { return static_cast<int>(t.size()); }
  bool is_complex(int j) const { return lambdas[j].imag() != 0.0; }
  auto W() const { return V.topRows(n); }
  auto Z() const { return V.bottomRows(m); }

  /// True when every group is a single real eigenvalue.
  bool distinct_real() const {
    for (int j = 0; j < groups(); ++j) {
      if (t[j] != 1 || is_complex(j)) return false;
    }
    return true;
  }

  /// Ideal block of V⁻¹PV for group j.
  MatrixXd group_block(int j) const {
    const int tj = t[j];
    MatrixXd J = MatrixXd::Zero(tj, tj);
    const double a = lambdas[j].real();
    const double b = lambdas[j].imag();
    if (!is_complex(j)) {
      J.diagonal().setConstant(a);
      return J;
    }
    for (int k = 0; k < tj; k += 2) {
      J(k, k) = a;
      J(k, k + 1) = b;
      J(k + 1, k) = -b;
      J(k + 1, k + 1) = a;
    }
    return J;
  }

  /// blockdiag of all group blocks.
  MatrixXd block_diagonal() const {
    const int q = static_cast<int>(V.rows());
    MatrixXd J = MatrixXd::Zero(q, q);
    for (int j = 0; j < groups(); ++j) J.block(col_offsets[j], col_offsets[j], t[j], t[j]) = group_block(j);
    return J;
  }

  /// Σ_j t_j², the column count of Z⋆W.
  int khatri_rao_columns() const {
    int s = 0;
    for (int tj : t) s += tj * tj;
    return s;
  }
};

namespace detail {

inline void normalize_real_vector(Eigen::Ref<VectorXd> v, double tol) {
  v.normalize();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tol) {
      if (v(i) < 0) v = -v;
      break;
    }
  }
}

// Rotates v so its largest-magnitude entry is real positive, then scales to
// unit 2-norm.
inline void normalize_complex_vector(Eigen::Ref<VectorXcd> v) {
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  const std::complex<double> pivot = v(idx);
  if (std::abs(pivot) > 0) v *= std::conj(pivot) / std::abs(pivot);
  v.normalize();
}

}  // namespace detail

/// Eigenvalue clustering with absolute gap tol·ρ(P) and a real modal basis.
/// Throws Defective when a cluster's eigenspace is smaller than its
/// algebraic multiplicity or V is numerically singular.
inline EigStructure eig_structure(const MatrixXd& P, int n, int m, double tol = 1e-7) {
  if (P.rows() != P.cols()) throw DimensionError("system matrix must be square");
  if (P.rows() != n + m) throw DimensionError("system matrix size must be n + m");
  const int q = n + m;
  Eigen::EigenSolver<MatrixXd> es(P, false);
  if (es.info() != Eigen::Success) throw SolverFailure("eigenvalue computation failed");
  const VectorXcd ev = es.eigenvalues();
  double rho = ev.cwiseAbs().maxCoeff();
  const double gap = rho > 0 ? tol * rho : tol;

  // Real eigenvalues and upper-half-plane members of conjugate pairs.
  std::vector<double> reals;
  std::vector<std::complex<double>> uppers;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) <= gap) {
      reals.push_back(ev(i).real());
    } else if (ev(i).imag() > 0) {
      uppers.push_back(ev(i));
    }
  }
  if (static_cast<int>(reals.size() + 2 * uppers.size()) != q) {
    throw SolverFailure("complex eigenvalues do not come in conjugate pairs");
  }

  struct Cluster {
    std::complex<double> rep;
    int count;
  };
  std::vector<Cluster> clusters;
  // Single-linkage clustering on sorted values.
  std::sort(reals.begin(), reals.end());
  for (size_t i = 0; i < reals.size();) {
    size_t k = i + 1;
    while (k < reals.size() && reals[k] - reals[k - 1] <= gap) ++k;
    const double mean = std::accumulate(reals.begin() + static_cast<long>(i),
                                        reals.begin() + static_cast<long>(k), 0.0) /
                        static_cast<double>(k - i);
    clusters.push_back({{mean, 0.0}, static_cast<int>(k - i)});
    i = k;
  }
  {
    std::vector<int> label(uppers.size(), -1);
    int next = 0;
    for (size_t i = 0; i < uppers.size(); ++i) {
      if (label[i] >= 0) continue;
      label[i] = next;
      std::vector<size_t> stack{i};
      while (!stack.empty()) {
        const size_t u = stack.back();
        stack.pop_back();
        for (size_t v = 0; v < uppers.size(); ++v) {
          if (label[v] < 0 && std::abs(uppers[u] - uppers[v]) <= gap) {
            label[v] = next;
            stack.push_back(v);
          }
        }
      }
      ++next;
    }
    for (int c = 0; c < next; ++c) {
      std::complex<double> sum = 0.0;
      int count = 0;
      for (size_t i = 0; i < uppers.size(); ++i) {
        if (label[i] == c) {
          sum += uppers[i];
          ++count;
        }
      }
      clusters.push_back({sum / static_cast<double>(count), count});
    }
  }
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    if (a.rep.real() != b.rep.real()) return a.rep.real() < b.rep.real();
    return a.rep.imag() < b.rep.imag();
  });

  EigStructure out;
  out.n = n;
  out.m = m;
  out.V = MatrixXd::Zero(q, q);
  const double pnorm = std::max(spectral_norm(P), 1e-300);
  const double defect_cut = std::sqrt(tol) * pnorm;
  int col = 0;
  for (const Cluster& c : clusters) {
    const bool is_real = c.rep.imag() == 0.0;
    out.lambdas.push_back(c.rep);
    out.col_offsets.push_back(col);
    if (is_real) {
      out.t.push_back(c.count);
      const MatrixXd shifted = P - c.rep.real() * MatrixXd::Identity(q, q);
      Eigen::JacobiSVD<MatrixXd> svd(shifted, Eigen::ComputeFullV);
      const VectorXd& s = svd.singularValues();
      if (c.count > 1 && s(q - c.count) > defect_cut) {
        throw Defective("eigenvalue " + std::to_string(c.rep.real()) +
                        " has fewer eigenvectors than its multiplicity");
      }
      for (int k = 0; k < c.count; ++k) {
        VectorXd v = svd.matrixV().col(q - 1 - k);
        detail::normalize_real_vector(v, tol);
        out.V.col(col++) = v;
      }
    } else {
      out.t.push_back(2 * c.count);
      const MatrixXcd shifted =
          P.cast<std::complex<double>>() - c.rep * MatrixXcd::Identity(q, q);
      Eigen::JacobiSVD<MatrixXcd> svd(shifted, Eigen::ComputeFullV);
      const VectorXd& s = svd.singularValues();
      if (c.count > 1 && s(q - c.count) > defect_cut) {
        throw Defective("complex eigenvalue has fewer eigenvectors than its multiplicity");
      }
      for (int k = 0; k < c.count; ++k) {
        VectorXcd v = svd.matrixV().col(q - 1 - k);
        detail::normalize_complex_vector(v);
        out.V.col(col++) = v.real();
        out.V.col(col++) = v.imag();
      }
    }
  }
  if (inverse_condition(out.V) <= tol) {
    out.diagonalizable = false;
    throw Defective("modal basis is numerically singular");
  }
  return out;
}

inline EigStructure eig_structure(const SystemMatrix& sm, double tol = 1e-7) {
  return eig_structure(sm.P, sm.n, sm.m, tol);
}

/// Column-wise Khatri-Rao product [Z₁⊗W₁ … Z_r⊗W_r] for the column
/// partition t.
inline MatrixXd khatri_rao(const MatrixXd& Z, const MatrixXd& W, const std::vector<int>& t) {
  const int total = std::accumulate(t.begin(), t.end(), 0);
  if (Z.cols() != total || W.cols() != total) {
    throw DimensionError("column partition does not match matrix widths");
  }
  for (int tj : t) {
    if (tj < 1) throw DimensionError("partition blocks must be non-empty");
  }
  int out_cols = 0;
  for (int tj : t) out_cols += tj * tj;
  MatrixXd out(Z.rows() * W.rows(), out_cols);
  int src = 0;
  int dst = 0;
  for (int tj : t) {
    out.middleCols(dst, tj * tj) =
        Eigen::kroneckerProduct(Z.middleCols(src, tj), W.middleCols(src, tj)).eval();
    src += tj;
    dst += tj * tj;
  }
  return out;
}

inline MatrixXd khatri_rao(const EigStructure& es) {
  return khatri_rao(es.Z(), es.W(), es.t);
}

struct Inertia {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  int signature() const { return n_plus - n_minus; }
  int dimension() const { return n_plus + n_minus + n_zero; }
  bool operator==(const Inertia&) const = default;
};

/// Eigenvalue sign counts of a symmetric matrix; eigenvalues within
/// ±tol·ρ(S) count as zero.
inline Inertia inertia(const MatrixXd& S, double tol = 1e-10) {
  if (S.rows() != S.cols()) throw DimensionError("inertia needs a square matrix");
  if (max_abs(S - S.transpose()) > tol * max_abs(S)) {
    throw NotSymmetricMatrix("inertia needs a symmetric matrix");
  }
  Inertia in;
  if (S.rows() == 0) return in;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
  const VectorXd& ev = es.eigenvalues();
  const double cut = tol * ev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut) {
      ++in.n_plus;
    } else if (ev(i) < -cut) {
      ++in.n_minus;
    } else {
      ++in.n_zero;
    }
  }
  return in;
}

}  // namespace symm
