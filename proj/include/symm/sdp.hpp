#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "symm/errors.hpp"

namespace symm::sdp {

struct MarginResult {
  Eigen::VectorXd coefficients;  // c with |c_k| <= 1
  double margin = 0.0;           // λ_min(Σ c_k A_k) at c
  bool reached_target = false;
};

/// Log-barrier path following for
///   maximize t  subject to  Σ_k c_k A_k − t·I ⪰ 0,  −1 <= c_k <= 1,
/// over symmetric A_k. Stops as soon as t exceeds `target` or when the
/// barrier duality bound certifies the optimum is below it.
inline MarginResult maximize_min_eigenvalue(const std::vector<Eigen::MatrixXd>& A,
                                            double target, double gap_tol = 1e-9) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const int k = static_cast<int>(A.size());
  if (k == 0) return {VectorXd(), -1.0, false};
  const int q = static_cast<int>(A.front().rows());
  const int nvar = k + 1;  // (c, t)

  const auto assemble = [&](const VectorXd& y) {
    MatrixXd F = -y(k) * MatrixXd::Identity(q, q);
    for (int i = 0; i < k; ++i) F += y(i) * A[i];
    return F;
  };
  const auto strictly_feasible = [&](const VectorXd& y, Eigen::LLT<MatrixXd>& llt) {
    for (int i = 0; i < k; ++i) {
      if (std::abs(y(i)) >= 1.0) return false;
    }
    llt.compute(assemble(y));
    return llt.info() == Eigen::Success;
  };
  const auto min_eig = [&](const VectorXd& c) {
    MatrixXd F = MatrixXd::Zero(q, q);
    for (int i = 0; i < k; ++i) F += c(i) * A[i];
    return Eigen::SelfAdjointEigenSolver<MatrixXd>(F, Eigen::EigenvaluesOnly).eigenvalues()(0);
  };

  // c = 0, t = -1 gives F = I.
  VectorXd y = VectorXd::Zero(nvar);
  y(k) = -1.0;
  double tau = 1.0;
  const double barrier_params = q + 2.0 * k;
  Eigen::LLT<MatrixXd> llt;

  for (int outer = 0; outer < 80; ++outer) {
    // Newton centering on  f(y) = −τ·t − logdet F(y) − Σ log(1 − c²).
    for (int inner = 0; inner < 100; ++inner) {
      if (!strictly_feasible(y, llt)) throw SolverFailure("barrier iterate left the interior");
      const MatrixXd Finv = llt.solve(MatrixXd::Identity(q, q));
      std::vector<MatrixXd> G(static_cast<size_t>(nvar));
      for (int i = 0; i < k; ++i) G[i] = Finv * A[i];
      G[k] = -Finv;
      VectorXd grad(nvar);
      MatrixXd hess(nvar, nvar);
      for (int i = 0; i < nvar; ++i) {
        grad(i) = -G[i].trace();
        for (int j = i; j < nvar; ++j) {
          hess(i, j) = (G[i] * G[j]).trace();
          hess(j, i) = hess(i, j);
        }
      }
      grad(k) -= tau;
      for (int i = 0; i < k; ++i) {
        const double lo = 1.0 + y(i), hi = 1.0 - y(i);
        grad(i) += 1.0 / hi - 1.0 / lo;
        hess(i, i) += 1.0 / (hi * hi) + 1.0 / (lo * lo);
      }
      const VectorXd step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      if (!step.allFinite()) throw SolverFailure("singular Newton system");
      if (decrement < 1e-10) break;
      double alpha = 1.0;
      const auto objective = [&](const VectorXd& z, Eigen::LLT<MatrixXd>& f) {
        double v = -tau * z(k);
        const MatrixXd L = f.matrixL();
        v -= 2.0 * L.diagonal().array().log().sum();
        for (int i = 0; i < k; ++i) v -= std::log(1.0 - z(i) * z(i));
        return v;
      };
      strictly_feasible(y, llt);
      const double f0 = objective(y, llt);
      Eigen::LLT<MatrixXd> trial_llt;
      for (;;) {
        const VectorXd trial = y + alpha * step;
        if (strictly_feasible(trial, trial_llt) &&
            objective(trial, trial_llt) <= f0 - 0.25 * alpha * decrement) {
          y = trial;
          break;
        }
        alpha *= 0.5;
        if (alpha < 1e-14) break;
      }
      if (alpha < 1e-14) break;
      if (y(k) > target) break;
    }
    const VectorXd c = y.head(k);
    const double t_now = min_eig(c);
    if (t_now > target) return {c, t_now, true};
    // Central-path bound: t* <= t + m/τ.
    if (y(k) + barrier_params / tau < target || barrier_params / tau < gap_tol) {
      return {c, t_now, false};
    }
    tau *= 8.0;
  }
  const VectorXd c = y.head(k);
  return {c, min_eig(c), min_eig(c) > target};
}

}  // namespace symm::sdp
