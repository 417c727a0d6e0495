#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symm/errors.hpp"
#include "symm/linalg.hpp"
#include "symm/lp.hpp"
#include "symm/sdp.hpp"
#include "symm/signature.hpp"
#include "symm/spectral.hpp"
#include "symm/state_space.hpp"
#include "symm/symmetry.hpp"

namespace symm {

/// Numerical knobs shared by the symmetrizability routines.
struct Tolerances {
  double eig_cluster = 1e-7;   // eigenvalue clustering gap, relative to ρ(P)
  double kernel = 1e-10;       // σ <= kernel·σ_max·max(dims) counts as zero
  double nonsingular = 1e-8;   // σ_min(Q) >= nonsingular·‖Q‖₂
  double lp_margin = 1e-8;     // minimum e_j·x_j at the max-margin LP optimum
  double sdp_margin = 1e-6;    // Q ⪰ sdp_margin·I for unit-Frobenius basis
  int pattern_cap = 12;        // sign-pattern enumeration limit on n+m
  int random_tries = 256;      // random subspace combinations per search
  std::uint64_t seed = 7;      // seed for random kernel combinations
};

// ---------------------------------------------------------------------------
// Necessary rank test.

enum class Verdict { MayBeSymmetrizable, NotSymmetrizable };

struct RankTest {
  Verdict verdict = Verdict::MayBeSymmetrizable;
  int rank = 0;
  int columns = 0;   // Σ t_j²
  int rows = 0;      // n·m
  int kernel_dim = 0;
};

/// Not symmetrizable iff Z⋆W has full column rank Σ t_j².
inline RankTest necessary_test(const SystemMatrix& sm, const Tolerances& tol = {}) {
  const EigStructure es = eig_structure(sm, tol.eig_cluster);
  const MatrixXd kr = khatri_rao(es);
  RankTest out;
  out.rows = static_cast<int>(kr.rows());
  out.columns = static_cast<int>(kr.cols());
  out.rank = numerical_rank(kr, tol.kernel);
  out.kernel_dim = out.columns - out.rank;
  out.verdict = out.rank == out.columns ? Verdict::NotSymmetrizable : Verdict::MayBeSymmetrizable;
  return out;
}

// ---------------------------------------------------------------------------
// Solution subspace {Q = Qᵀ : PQ = QPᵀ, Q₁₂ = 0}.

struct SolutionSubspace {
  std::vector<MatrixXd> basis;     // unit Frobenius norm
  std::vector<VectorXd> coords;    // x with Q_k = V·X(x)·Vᵀ (modal route only)
  std::optional<EigStructure> eig; // present for the modal route

  int dimension() const { return static_cast<int>(basis.size()); }
};

/// Block-diagonal X assembled from the stacked column-major blocks vec(X_j).
inline MatrixXd coordinates_to_X(const EigStructure& es, const VectorXd& x) {
  const int q = static_cast<int>(es.V.rows());
  if (x.size() != es.khatri_rao_columns()) throw DimensionError("coordinate vector has wrong length");
  MatrixXd X = MatrixXd::Zero(q, q);
  int pos = 0;
  for (int j = 0; j < es.groups(); ++j) {
    const int tj = es.t[j];
    X.block(es.col_offsets[j], es.col_offsets[j], tj, tj) =
        Eigen::Map<const MatrixXd>(x.data() + pos, tj, tj);
    pos += tj * tj;
  }
  return X;
}

inline MatrixXd q_from_coordinates(const EigStructure& es, const VectorXd& x) {
  const MatrixXd Q = es.V * coordinates_to_X(es, x) * es.V.transpose();
  return 0.5 * (Q + Q.transpose());
}

/// Modal route: Q = V·X·Vᵀ with X = ⊕X_j. Coordinates satisfy (Z⋆W)x = 0,
/// X_j = X_jᵀ, and J_j X_j = X_j J_jᵀ for complex-pair groups.
inline SolutionSubspace solution_subspace(const SystemMatrix& sm, const Tolerances& tol = {}) {
  EigStructure es = eig_structure(sm, tol.eig_cluster);
  const MatrixXd kr = khatri_rao(es);
  const int ncols = static_cast<int>(kr.cols());
  std::vector<Eigen::RowVectorXd> extra;
  int pos = 0;
  for (int j = 0; j < es.groups(); ++j) {
    const int tj = es.t[j];
    for (int a = 0; a < tj; ++a) {
      for (int b = a + 1; b < tj; ++b) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(ncols);
        row(pos + a + b * tj) = 1.0;
        row(pos + b + a * tj) = -1.0;
        extra.push_back(row);
      }
    }
    if (es.is_complex(j)) {
      const MatrixXd J = es.group_block(j);
      const MatrixXd I = MatrixXd::Identity(tj, tj);
      const double scale = std::max(std::abs(es.lambdas[j]), 1e-300);
      // vec(J X − X Jᵀ) = (I⊗J − J⊗I) vec(X)
      const MatrixXd op = (Eigen::kroneckerProduct(I, J) - Eigen::kroneckerProduct(J, I)).eval() / scale;
      for (int r = 0; r < op.rows(); ++r) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(ncols);
        row.segment(pos, tj * tj) = op.row(r);
        extra.push_back(row);
      }
    }
    pos += tj * tj;
  }
  MatrixXd constraints(kr.rows() + static_cast<Eigen::Index>(extra.size()), ncols);
  constraints.topRows(kr.rows()) = kr;
  for (size_t r = 0; r < extra.size(); ++r) constraints.row(kr.rows() + static_cast<Eigen::Index>(r)) = extra[r];

  const MatrixXd N = kernel(constraints, tol.kernel);
  SolutionSubspace out;
  for (Eigen::Index c = 0; c < N.cols(); ++c) {
    const VectorXd x = N.col(c);
    const MatrixXd Q = q_from_coordinates(es, x);
    const double f = Q.norm();
    out.basis.push_back(Q / f);
    out.coords.push_back(x / f);
  }
  out.eig = std::move(es);
  return out;
}

/// Direct route valid for any P, including defective ones: kernel of
/// Q ↦ PQ − QPᵀ over block-diagonal symmetric Q.
inline SolutionSubspace solution_subspace_direct(const SystemMatrix& sm, const Tolerances& tol = {}) {
  const int n = sm.n;
  const int q = sm.size();
  std::vector<std::pair<int, int>> params;  // (i, j) with i <= j, within a diagonal block
  for (int i = 0; i < q; ++i) {
    for (int j = i; j < q; ++j) {
      if ((i < n) == (j < n)) params.push_back({i, j});
    }
  }
  const int rows = q * (q - 1) / 2;
  MatrixXd op = MatrixXd::Zero(std::max(rows, 1), static_cast<Eigen::Index>(params.size()));
  const double scale = std::max(spectral_norm(sm.P), 1e-300);
  for (size_t c = 0; c < params.size(); ++c) {
    MatrixXd E = MatrixXd::Zero(q, q);
    E(params[c].first, params[c].second) = 1.0;
    E(params[c].second, params[c].first) = 1.0;
    const MatrixXd R = (sm.P * E - E * sm.P.transpose()) / scale;
    int r = 0;
    for (int i = 0; i < q; ++i) {
      for (int j = i + 1; j < q; ++j) op(r++, static_cast<Eigen::Index>(c)) = R(i, j);
    }
  }
  const MatrixXd N = kernel(op, tol.kernel);
  SolutionSubspace out;
  for (Eigen::Index c = 0; c < N.cols(); ++c) {
    MatrixXd Q = MatrixXd::Zero(q, q);
    for (size_t p = 0; p < params.size(); ++p) {
      Q(params[p].first, params[p].second) = N(static_cast<Eigen::Index>(p), c);
      Q(params[p].second, params[p].first) = N(static_cast<Eigen::Index>(p), c);
    }
    out.basis.push_back(Q / Q.norm());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gains and certificates.

struct Gains {
  MatrixXd T;
  MatrixXd K;
  SignatureMatrix sigma_i;
  SignatureMatrix sigma_e;
};

/// Q₁₁ = F₁D₁F₁ᵀ, Q₂₂ = F₂D₂F₂ᵀ (eigenvalues descending);
/// T = F₁|D₁|^{1/2}, K = F₂|D₂|^{1/2}, Σ_i = −sgn(D₁), Σ_e = sgn(D₂).
inline Gains gains_from_Q(const MatrixXd& Q, int n, int m, double tol = 1e-8) {
  if (Q.rows() != n + m || Q.cols() != n + m) throw DimensionError("Q must be (n+m)x(n+m)");
  const double qnorm = spectral_norm(Q);
  const auto factor = [&](const MatrixXd& block, bool negate, MatrixXd& F, SignatureMatrix& sigma) {
    const SortedEig e = sorted_symmetric_eig(block);
    std::vector<int> signs(static_cast<size_t>(e.values.size()));
    for (Eigen::Index k = 0; k < e.values.size(); ++k) {
      if (std::abs(e.values(k)) <= tol * qnorm || qnorm == 0.0) {
        throw SingularBlock("diagonal block of Q is singular");
      }
      const int s = e.values(k) > 0 ? 1 : -1;
      signs[static_cast<size_t>(k)] = negate ? -s : s;
    }
    F = e.vectors * e.values.cwiseAbs().cwiseSqrt().asDiagonal();
    sigma = SignatureMatrix(std::move(signs));
  };
  Gains g;
  factor(Q.topLeftCorner(n, n), true, g.T, g.sigma_i);
  factor(Q.bottomRightCorner(m, m), false, g.K, g.sigma_e);
  return g;
}

struct CertificateResiduals {
  double commute = 0.0;  // ‖PQ − QPᵀ‖_max / (‖P‖₂‖Q‖₂)
  double offdiag = 0.0;  // ‖Q₁₂‖_max / ‖Q‖₂
  double q13 = 0.0;      // ‖Q₁₁ + TΣ_iTᵀ‖_max / ‖Q‖₂
  double q14 = 0.0;      // ‖Q₂₂ − KΣ_eKᵀ‖_max / ‖Q‖₂

  double worst() const { return std::max({commute, offdiag, q13, q14}); }
};

struct SymmetrizabilityCertificate {
  MatrixXd Q;
  MatrixXd T;
  MatrixXd K;
  SignatureMatrix sigma_i;
  SignatureMatrix sigma_e;
  int signature = 0;  // i(Σ) for Σ = diag(−Σ_i, Σ_e)
  std::optional<VectorXd> x;
  CertificateResiduals residuals;

  SignatureMatrix system_signature() const { return SignatureMatrix::system(sigma_i, sigma_e); }
};

inline CertificateResiduals certificate_residuals(const MatrixXd& P, const MatrixXd& Q, int n, int m,
                                                  const Gains& g) {
  const double qn = std::max(spectral_norm(Q), 1e-300);
  const double pn = std::max(spectral_norm(P), 1e-300);
  CertificateResiduals r;
  r.commute = max_abs(P * Q - Q * P.transpose()) / (pn * qn);
  r.offdiag = max_abs(Q.topRightCorner(n, m)) / qn;
  r.q13 = max_abs(Q.topLeftCorner(n, n) + g.T * g.sigma_i.matrix() * g.T.transpose()) / qn;
  r.q14 = max_abs(Q.bottomRightCorner(m, m) - g.K * g.sigma_e.matrix() * g.K.transpose()) / qn;
  return r;
}

/// Builds gains, signatures and residuals for a candidate Q. Throws
/// SingularBlock when Q fails the nonsingularity threshold.
inline SymmetrizabilityCertificate make_certificate(const SystemMatrix& sm, const MatrixXd& Q,
                                                    std::optional<VectorXd> x = std::nullopt,
                                                    double nonsingular_tol = 1e-8) {
  if (!is_nonsingular(Q, nonsingular_tol)) throw SingularBlock("certificate Q is singular");
  Gains g = gains_from_Q(Q, sm.n, sm.m, nonsingular_tol);
  SymmetrizabilityCertificate cert;
  cert.residuals = certificate_residuals(sm.P, Q, sm.n, sm.m, g);
  cert.Q = Q;
  cert.T = std::move(g.T);
  cert.K = std::move(g.K);
  cert.signature = g.sigma_e.signature() - g.sigma_i.signature();
  cert.sigma_i = std::move(g.sigma_i);
  cert.sigma_e = std::move(g.sigma_e);
  cert.x = std::move(x);
  return cert;
}

/// Certificate for explicit modal coordinates x (Q = V·X(x)·Vᵀ).
inline SymmetrizabilityCertificate certificate_from_coordinates(const SystemMatrix& sm,
                                                                const EigStructure& es,
                                                                const VectorXd& x,
                                                                double nonsingular_tol = 1e-8) {
  return make_certificate(sm, q_from_coordinates(es, x), x, nonsingular_tol);
}

// ---------------------------------------------------------------------------
// Distinct real eigenvalues: sign patterns and linear programs.

namespace detail {

/// max δ s.t. e_j·(N c)_j >= δ, |c_i| <= 1. Returns x = N c when δ* exceeds
/// the margin.
inline std::optional<VectorXd> pattern_point(const MatrixXd& N, const std::vector<int>& e,
                                             double margin) {
  const int q = static_cast<int>(N.rows());
  const int k = static_cast<int>(N.cols());
  // Variables y = (u, δ), c = u − 1 with 0 <= u <= 2.
  MatrixXd A = MatrixXd::Zero(q + k + 1, k + 1);
  VectorXd b = VectorXd::Zero(q + k + 1);
  for (int j = 0; j < q; ++j) {
    const Eigen::RowVectorXd row = e[static_cast<size_t>(j)] * N.row(j);
    A.row(j).head(k) = -row;
    A(j, k) = 1.0;
    b(j) = -row.sum();
  }
  for (int i = 0; i < k; ++i) {
    A(q + i, i) = 1.0;
    b(q + i) = 2.0;
  }
  A(q + k, k) = 1.0;
  b(q + k) = 1.0;
  VectorXd c = VectorXd::Zero(k + 1);
  c(k) = 1.0;
  const lp::Result res = lp::maximize(c, A, b);
  if (res.status != lp::Status::Optimal || res.objective <= margin) return std::nullopt;
  const VectorXd coeff = res.x.head(k).array() - 1.0;
  return VectorXd(N * coeff);
}

inline std::vector<int> pattern_from_mask(std::uint64_t mask, int q) {
  // e_0 = +1; e_j for j >= 1 read from the mask, most significant first, so
  // ascending masks walk patterns lexicographically with +1 before −1.
  std::vector<int> e(static_cast<size_t>(q), 1);
  for (int j = 1; j < q; ++j) {
    if ((mask >> (q - 1 - j)) & 1u) e[static_cast<size_t>(j)] = -1;
  }
  return e;
}

inline int pattern_sum(const std::vector<int>& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

inline bool all_nonzero(const VectorXd& x, double rel) {
  const double scale = x.cwiseAbs().maxCoeff();
  return scale > 0 && x.cwiseAbs().minCoeff() > rel * scale;
}

inline int sign_sum(const VectorXd& x) {
  int s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += x(i) > 0 ? 1 : -1;
  return s;
}

inline void require_distinct_real(const EigStructure& es) {
  if (!es.distinct_real()) throw WrongStructure("system matrix must have n+m distinct real eigenvalues");
}

}  // namespace detail

/// Result of a decision that may come back negative.
template <typename T>
struct Decision {
  std::optional<T> value;
  std::string reason;

  explicit operator bool() const { return value.has_value(); }
};

/// Exact decision for P with n+m distinct real eigenvalues: symmetrizable iff
/// ker(Z⋆W) holds a vector with no zero entry, and i(Σ) = Σ sgn(x_j).
inline Decision<SymmetrizabilityCertificate> decide_distinct_real(
    const SystemMatrix& sm, std::optional<int> target_signature = std::nullopt,
    const Tolerances& tol = {}) {
  const EigStructure es = eig_structure(sm, tol.eig_cluster);
  detail::require_distinct_real(es);
  const int q = sm.size();
  if (target_signature) {
    const int t = *target_signature;
    if (std::abs(t) > q || (t - q) % 2 != 0) {
      throw ValueError("target signature must satisfy |s| <= n+m and s = n+m (mod 2)");
    }
  } else if (q > 62) {
    throw PatternLimitExceeded("n+m too large");
  }
  const MatrixXd N = kernel(khatri_rao(es), tol.kernel);
  if (N.cols() == 0) return {std::nullopt, "ker(Z*W) is trivial"};

  const auto accept = [&](VectorXd x) -> std::optional<SymmetrizabilityCertificate> {
    x /= x.cwiseAbs().maxCoeff();
    if (!detail::all_nonzero(x, tol.nonsingular)) return std::nullopt;
    try {
      return certificate_from_coordinates(sm, es, x, tol.nonsingular);
    } catch (const SingularBlock&) {
      return std::nullopt;
    }
  };

  // A random kernel combination has no zero entry with probability one when
  // any kernel vector has none.
  std::mt19937_64 rng(tol.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int random_rounds = target_signature ? 64 : 1;
  for (int round = 0; round < random_rounds; ++round) {
    VectorXd g(N.cols());
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = normal(rng);
    VectorXd x = N * g;
    if (target_signature) {
      const int s = detail::sign_sum(x);
      if (s == -*target_signature) x = -x;
      if (std::abs(s) != std::abs(*target_signature)) continue;
    }
    if (auto cert = accept(x)) return {std::move(cert), {}};
  }

  if (!target_signature && q > tol.pattern_cap) {
    throw PatternLimitExceeded("sign-pattern enumeration is capped at n+m = " +
                               std::to_string(tol.pattern_cap) + "; supply a target signature");
  }
  const std::uint64_t patterns = std::uint64_t{1} << (q - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    const std::vector<int> e = detail::pattern_from_mask(mask, q);
    const int s = detail::pattern_sum(e);
    if (target_signature && std::abs(s) != std::abs(*target_signature)) continue;
    auto x = detail::pattern_point(N, e, tol.lp_margin);
    if (!x) continue;
    if (target_signature && s != *target_signature) *x = -*x;
    if (auto cert = accept(*x)) return {std::move(cert), {}};
  }
  return {std::nullopt, target_signature ? "no kernel vector with the requested signature"
                                         : "every kernel vector has a zero entry"};
}

/// {Σ_j sgn(x_j) : x ∈ ker(Z⋆W), x_j ≠ 0 for all j}.
inline std::set<int> achievable_signatures(const SystemMatrix& sm, const Tolerances& tol = {}) {
  const EigStructure es = eig_structure(sm, tol.eig_cluster);
  detail::require_distinct_real(es);
  const int q = sm.size();
  if (q > tol.pattern_cap) {
    throw PatternLimitExceeded("signature enumeration is capped at n+m = " +
                               std::to_string(tol.pattern_cap));
  }
  std::set<int> found;
  const MatrixXd N = kernel(khatri_rao(es), tol.kernel);
  if (N.cols() == 0) return found;
  const std::uint64_t patterns = std::uint64_t{1} << (q - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    const std::vector<int> e = detail::pattern_from_mask(mask, q);
    const int s = detail::pattern_sum(e);
    if (found.count(s)) continue;
    auto x = detail::pattern_point(N, e, tol.lp_margin);
    if (!x) continue;
    *x /= x->cwiseAbs().maxCoeff();
    if (!is_nonsingular(q_from_coordinates(es, *x), tol.nonsingular)) continue;
    found.insert(s);
    found.insert(-s);
  }
  return found;
}

// ---------------------------------------------------------------------------
// Complete symmetrizability (Q ≻ 0).

struct PositiveCertificate {
  MatrixXd Q;
  double margin = 0.0;  // λ_min(Q) / ‖Q‖_F
};

/// Searches Q ≻ 0 with PQ = QPᵀ, Q₁₂ = 0. Distinct real spectra use the
/// all-positive sign-pattern LP; otherwise a small semidefinite program over
/// the solution subspace (the direct route when P is defective).
inline Decision<PositiveCertificate> complete_symmetrizability(const SystemMatrix& sm,
                                                              const Tolerances& tol = {}) {
  std::optional<SolutionSubspace> subspace;
  try {
    const EigStructure es = eig_structure(sm, tol.eig_cluster);
    if (es.distinct_real()) {
      const MatrixXd N = kernel(khatri_rao(es), tol.kernel);
      if (N.cols() == 0) return {std::nullopt, "ker(Z*W) is trivial"};
      auto x = detail::pattern_point(N, std::vector<int>(static_cast<size_t>(sm.size()), 1),
                                     tol.lp_margin);
      if (!x) return {std::nullopt, "no positive kernel vector"};
      *x /= x->cwiseAbs().maxCoeff();
      MatrixXd Q = q_from_coordinates(es, *x);
      Q /= Q.norm();
      const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(Q, Eigen::EigenvaluesOnly).eigenvalues()(0);
      if (lmin <= tol.nonsingular) return {std::nullopt, "positive kernel vector gives a singular Q"};
      return {PositiveCertificate{Q, lmin}, {}};
    }
    subspace = solution_subspace(sm, tol);
  } catch (const Defective&) {
    subspace = solution_subspace_direct(sm, tol);
  }
  if (subspace->dimension() == 0) return {std::nullopt, "solution subspace is trivial"};
  const sdp::MarginResult res = sdp::maximize_min_eigenvalue(subspace->basis, tol.sdp_margin);
  if (!res.reached_target) return {std::nullopt, "no positive definite solution"};
  MatrixXd Q = MatrixXd::Zero(sm.size(), sm.size());
  for (int k = 0; k < subspace->dimension(); ++k) Q += res.coefficients(k) * subspace->basis[k];
  Q = 0.5 * (Q + Q.transpose());
  const double f = Q.norm();
  return {PositiveCertificate{Q / f, res.margin / f}, {}};
}

// ---------------------------------------------------------------------------
// End-to-end symmetrization.

struct SymmetrizeOptions {
  std::optional<int> target_signature;
  bool complete = false;
  Tolerances tol;
};

struct SymmetrizeResult {
  StateSpace system;  // (T⁻¹AT, T⁻¹BK, K⁻¹CT, K⁻¹DK)
  SymmetrizabilityCertificate certificate;
  double internal_residual = 0.0;  // ‖ΣP_H − P_HᵀΣ‖_max / ‖P_H‖_max
};

inline SymmetrizeResult apply_certificate(const StateSpace& ss, SymmetrizabilityCertificate cert) {
  StateSpace transformed = apply_io_transform(ss, cert.K, cert.T);
  const MatrixXd PH = system_matrix(transformed).P;
  const double residual =
      internal_symmetry_residual(PH, cert.system_signature()) / std::max(max_abs(PH), 1e-300);
  return {std::move(transformed), std::move(cert), residual};
}

namespace detail {

// Random combinations of the subspace basis: nonsingular with probability one
// if any member is.
inline Decision<SymmetrizabilityCertificate> search_subspace(const SystemMatrix& sm,
                                                             const SolutionSubspace& sub,
                                                             std::optional<int> target,
                                                             const Tolerances& tol) {
  if (sub.dimension() == 0) return {std::nullopt, "solution subspace is trivial"};
  std::mt19937_64 rng(tol.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int tries = target ? tol.random_tries : 16;
  bool any_nonsingular = false;
  for (int attempt = 0; attempt < tries; ++attempt) {
    MatrixXd Q = MatrixXd::Zero(sm.size(), sm.size());
    VectorXd x;
    if (!sub.coords.empty()) x = VectorXd::Zero(sub.coords.front().size());
    for (int k = 0; k < sub.dimension(); ++k) {
      const double g = normal(rng);
      Q += g * sub.basis[k];
      if (!sub.coords.empty()) x += g * sub.coords[k];
    }
    const double f = spectral_norm(Q);
    if (f == 0.0 || !is_nonsingular(Q, tol.nonsingular)) continue;
    any_nonsingular = true;
    Q /= f;
    if (x.size() > 0) x /= f;
    if (target) {
      const int s = inertia(Q, tol.nonsingular).signature();
      if (s == -*target) {
        Q = -Q;
        if (x.size() > 0) x = -x;
      } else if (s != *target) {
        continue;
      }
    }
    try {
      return {make_certificate(sm, Q, x.size() > 0 ? std::optional<VectorXd>(x) : std::nullopt,
                               tol.nonsingular),
              {}};
    } catch (const SingularBlock&) {
      continue;
    }
  }
  if (!any_nonsingular) return {std::nullopt, "every solution of the certificate equations is singular"};
  return {std::nullopt, "requested signature not found among sampled certificates"};
}

}  // namespace detail

/// Finds gains (T, K) making the system internally symmetric. Requires a
/// minimal realization.
inline Decision<SymmetrizeResult> symmetrize(const StateSpace& ss, const SymmetrizeOptions& opts = {}) {
  if (!is_minimal(ss)) throw MinimalityError("symmetrization requires a minimal realization");
  const SystemMatrix sm = system_matrix(ss);
  const Tolerances& tol = opts.tol;
  const int q = sm.size();
  if (opts.target_signature) {
    const int t = *opts.target_signature;
    if (std::abs(t) > q || (t - q) % 2 != 0) {
      throw ValueError("target signature must satisfy |s| <= n+m and s = n+m (mod 2)");
    }
  }

  Decision<SymmetrizabilityCertificate> found;
  if (opts.complete) {
    if (opts.target_signature && *opts.target_signature != q) {
      throw ValueError("complete symmetry fixes the signature to n+m");
    }
    auto pos = complete_symmetrizability(sm, tol);
    if (!pos) return {std::nullopt, pos.reason};
    found = {make_certificate(sm, pos.value->Q, std::nullopt, tol.nonsingular), {}};
  } else {
    const EigStructure es = eig_structure(sm, tol.eig_cluster);
    if (es.distinct_real()) {
      found = decide_distinct_real(sm, opts.target_signature, tol);
    } else {
      found = detail::search_subspace(sm, solution_subspace(sm, tol), opts.target_signature, tol);
    }
  }
  if (!found) return {std::nullopt, found.reason};
  return {apply_certificate(ss, std::move(*found.value)), {}};
}

}  // namespace symm
