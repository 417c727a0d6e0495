#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "symm/errors.hpp"

// Dense two-phase simplex for the small sign-pattern programs. Bland's rule
// keeps it finite on degenerate problems; sizes here are a few dozen rows.
namespace symm::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

namespace detail {

class Tableau {
 public:
  Tableau(Eigen::MatrixXd body, std::vector<int> basis, double eps)
      : T_(std::move(body)), basis_(std::move(basis)), eps_(eps) {}

  int rows() const { return static_cast<int>(T_.rows()); }
  int cols() const { return static_cast<int>(T_.cols()) - 1; }
  double rhs(int i) const { return T_(i, cols()); }
  double at(int i, int j) const { return T_(i, j); }
  const std::vector<int>& basis() const { return basis_; }

  void pivot(int r, int c) {
    T_.row(r) /= T_(r, c);
    for (int i = 0; i < rows(); ++i) {
      if (i != r && T_(i, c) != 0.0) T_.row(i) -= T_(i, c) * T_.row(r);
    }
    basis_[r] = c;
  }

  // Maximizes costᵀ·vars over columns allowed[j]. Returns false if unbounded.
  bool optimize(const Eigen::VectorXd& cost, const std::vector<bool>& allowed) {
    const int max_iter = 100 * (rows() + cols() + 1);
    for (int iter = 0; iter < max_iter; ++iter) {
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (!allowed[j]) continue;
        double reduced = cost(j);
        for (int i = 0; i < rows(); ++i) reduced -= cost(basis_[i]) * T_(i, j);
        if (reduced > eps_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (T_(i, enter) <= eps_) continue;
        const double ratio = rhs(i) / T_(i, enter);
        if (ratio < best - eps_ || (std::abs(ratio - best) <= eps_ && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw SolverFailure("simplex iteration limit reached");
  }

  void drop_row(int r) {
    const int last = rows() - 1;
    if (r != last) {
      T_.row(r) = T_.row(last);
      basis_[r] = basis_[last];
    }
    T_.conservativeResize(last, Eigen::NoChange);
    basis_.pop_back();
  }

 private:
  Eigen::MatrixXd T_;
  std::vector<int> basis_;
  double eps_;
};

}  // namespace detail

/// maximize cᵀx subject to A x <= b, x >= 0.
inline Result maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       double eps = 1e-10) {
  const int rows = static_cast<int>(A.rows());
  const int nv = static_cast<int>(A.cols());
  if (c.size() != nv || b.size() != rows) throw DimensionError("LP data dimensions disagree");

  std::vector<int> needs_artificial;
  for (int i = 0; i < rows; ++i) {
    if (b(i) < 0) needs_artificial.push_back(i);
  }
  const int na = static_cast<int>(needs_artificial.size());
  const int ncols = nv + rows + na;
  Eigen::MatrixXd body = Eigen::MatrixXd::Zero(rows, ncols + 1);
  std::vector<int> basis(rows);
  int art = 0;
  for (int i = 0; i < rows; ++i) {
    const double sign = b(i) < 0 ? -1.0 : 1.0;
    body.row(i).head(nv) = sign * A.row(i);
    body(i, nv + i) = sign;
    body(i, ncols) = sign * b(i);
    if (sign < 0) {
      body(i, nv + rows + art) = 1.0;
      basis[i] = nv + rows + art;
      ++art;
    } else {
      basis[i] = nv + i;
    }
  }
  detail::Tableau tab(std::move(body), std::move(basis), eps);

  if (na > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(ncols);
    phase1.tail(na).setConstant(-1.0);
    tab.optimize(phase1, std::vector<bool>(ncols, true));
    double infeasibility = 0.0;
    for (int i = 0; i < tab.rows(); ++i) {
      if (tab.basis()[i] >= nv + rows) infeasibility += tab.rhs(i);
    }
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (infeasibility > 1e-9 * scale) return {Status::Infeasible, {}, 0.0};
    // Pivot artificials out of the basis; rows with no usable column are
    // redundant.
    for (int i = tab.rows() - 1; i >= 0; --i) {
      if (tab.basis()[i] < nv + rows) continue;
      int col = -1;
      for (int j = 0; j < nv + rows; ++j) {
        if (std::abs(tab.at(i, j)) > eps) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(i, col);
      } else {
        tab.drop_row(i);
      }
    }
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncols);
  cost.head(nv) = c;
  std::vector<bool> allowed(ncols, true);
  for (int j = nv + rows; j < ncols; ++j) allowed[j] = false;
  if (!tab.optimize(cost, allowed)) return {Status::Unbounded, {}, 0.0};

  Eigen::VectorXd x = Eigen::VectorXd::Zero(nv);
  for (int i = 0; i < tab.rows(); ++i) {
    if (tab.basis()[i] < nv) x(tab.basis()[i]) = tab.rhs(i);
  }
  return {Status::Optimal, x, c.dot(x)};
}

}  // namespace symm::lp
