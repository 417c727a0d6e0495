#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "symm/signature.hpp"
#include "symm/state_space.hpp"

namespace symm {

/// Outcome of a symmetry test: a witnessing signature matrix, or the reason
/// none exists.
struct SymmetryResult {
  std::optional<SignatureMatrix> sigma;
  std::string reason;

  explicit operator bool() const { return sigma.has_value(); }
};

/// ‖ΣP − PᵀΣ‖_max.
inline double internal_symmetry_residual(const MatrixXd& P, const SignatureMatrix& sigma) {
  const MatrixXd S = sigma.matrix();
  return max_abs(S * P - P.transpose() * S);
}

/// Searches Σ with ΣP = PᵀΣ. Every pair (i, j) whose entries are not both
/// negligible must satisfy |P_ij| = |P_ji| and contributes the constraint
/// σ_iσ_j = sgn(P_ij P_ji).
inline SymmetryResult check_internal_symmetry(const MatrixXd& P, double tol = 1e-9) {
  if (P.rows() != P.cols()) throw DimensionError("system matrix must be square");
  const int q = static_cast<int>(P.rows());
  const double scale = max_abs(P);
  const double cut = tol * scale;
  SignConstraintGraph graph(q);
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      const double a = P(i, j);
      const double b = P(j, i);
      if (std::max(std::abs(a), std::abs(b)) <= cut) continue;
      if (std::abs(std::abs(a) - std::abs(b)) > cut) {
        return {std::nullopt, "|P(" + std::to_string(i) + "," + std::to_string(j) +
                                  ")| != |P(" + std::to_string(j) + "," + std::to_string(i) + ")|"};
      }
      graph.add_edge(i, j, a * b > 0 ? 1 : -1);
    }
  }
  SignSolution sol = sign_consistency(graph);
  if (!sol.feasible()) return {std::nullopt, "sign constraints contain an odd cycle"};
  if (internal_symmetry_residual(P, *sol.sigma) > cut) {
    return {std::nullopt, "residual above tolerance"};
  }
  return {std::move(sol.sigma), {}};
}

inline SymmetryResult check_internal_symmetry(const SystemMatrix& sm, double tol = 1e-9) {
  return check_internal_symmetry(sm.P, tol);
}

/// Decides Σ_e G(s)ᵀ = G(s) Σ_e by sampling G at transfer_sample_points.
/// Entry pairs that vanish at every sample (relative to the largest entry)
/// impose no constraint; otherwise G_ij = c·G_ji must hold at all samples for
/// c = +1 or c = -1.
inline SymmetryResult check_external_symmetry(const StateSpace& ss, double tol = 1e-9) {
  const int m = ss.m();
  const auto points = transfer_sample_points(ss.A());
  std::vector<MatrixXcd> samples;
  samples.reserve(points.size());
  double scale = 0.0;
  for (const auto& s : points) {
    samples.push_back(transfer_eval(ss, s));
    scale = std::max(scale, samples.back().cwiseAbs().maxCoeff());
  }

  SignConstraintGraph graph(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double magnitude = 0.0;
      double diff_plus = 0.0;
      double diff_minus = 0.0;
      for (const MatrixXcd& G : samples) {
        magnitude = std::max({magnitude, std::abs(G(i, j)), std::abs(G(j, i))});
        diff_plus = std::max(diff_plus, std::abs(G(i, j) - G(j, i)));
        diff_minus = std::max(diff_minus, std::abs(G(i, j) + G(j, i)));
      }
      if (magnitude <= tol * scale) continue;
      const double cut = tol * magnitude;
      if (diff_plus <= cut) {
        graph.add_edge(i, j, 1);
      } else if (diff_minus <= cut) {
        graph.add_edge(i, j, -1);
      } else {
        return {std::nullopt, "G(" + std::to_string(i) + "," + std::to_string(j) +
                                  ") is not +/- G(" + std::to_string(j) + "," +
                                  std::to_string(i) + ")"};
      }
    }
  }
  SignSolution sol = sign_consistency(graph);
  if (!sol.feasible()) return {std::nullopt, "sign constraints contain an odd cycle"};
  return {std::move(sol.sigma), {}};
}

}  // namespace symm
