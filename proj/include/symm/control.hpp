#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symm/errors.hpp"
#include "symm/linalg.hpp"
#include "symm/state_space.hpp"
#include "symm/symmetrizability.hpp"

namespace symm {

namespace detail {

inline double max_real_eig(const MatrixXd& M) {
  if (M.rows() == 0) return -std::numeric_limits<double>::infinity();
  return Eigen::EigenSolver<MatrixXd>(M, false).eigenvalues().real().maxCoeff();
}

inline double spectral_radius(const MatrixXd& M) {
  if (M.rows() == 0) return 0.0;
  return Eigen::EigenSolver<MatrixXd>(M, false).eigenvalues().cwiseAbs().maxCoeff();
}

inline double sym_eig_extreme(const MatrixXd& M, bool largest) {
  const VectorXd ev =
      Eigen::SelfAdjointEigenSolver<MatrixXd>(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly).eigenvalues();
  return largest ? ev(ev.size() - 1) : ev(0);
}

}  // namespace detail

/// True iff, with T = Q₁₁^{1/2} and K = Q₂₂^{1/2}: AᵀT⁻² = T⁻²A ⪯ 0,
/// (K⁻¹C)ᵀ = T⁻²BK, K⁻¹DK ⪰ 0, and A and −D have no eigenvalue in the open
/// right half-plane. Tolerances are relative to the size of each term.
inline bool relaxation_check(const StateSpace& ss, const MatrixXd& Q, double tol = 1e-8) {
  const int n = ss.n();
  const int m = ss.m();
  if (Q.rows() != n + m || Q.cols() != n + m) throw DimensionError("Q must be (n+m)x(n+m)");
  if (max_abs(Q - Q.transpose()) > tol * max_abs(Q) ||
      detail::sym_eig_extreme(Q, false) <= 0.0) {
    throw NotPositiveDefinite("certificate Q must be symmetric positive definite");
  }
  const MatrixXd& A = ss.A();
  const MatrixXd& B = ss.B();
  const MatrixXd& C = ss.C();
  const MatrixXd& D = ss.D();

  const double rhoA = detail::spectral_radius(A);
  const double rhoD = detail::spectral_radius(D);
  if (detail::max_real_eig(A) > tol * std::max(1.0, rhoA)) return false;
  if (detail::max_real_eig(-D) > tol * std::max(1.0, rhoD)) return false;

  const MatrixXd Tinv = spd_inverse_sqrt(Q.topLeftCorner(n, n));
  const MatrixXd K = spd_sqrt(Q.bottomRightCorner(m, m));
  const MatrixXd Kinv = spd_inverse_sqrt(Q.bottomRightCorner(m, m));
  const MatrixXd Tinv2 = Tinv * Tinv;

  const MatrixXd TA = Tinv2 * A;
  const double scaleA = std::max(max_abs(TA), 1e-300);
  if (max_abs(A.transpose() * Tinv2 - TA) > tol * scaleA) return false;
  if (detail::sym_eig_extreme(TA, true) > tol * scaleA) return false;

  const MatrixXd lhs = (Kinv * C).transpose();
  const MatrixXd rhs = Tinv2 * B * K;
  if (max_abs(lhs - rhs) > tol * std::max({max_abs(lhs), max_abs(rhs), 1e-300})) return false;

  if (m > 0) {
    const MatrixXd Ds = Kinv * D * K;
    if (detail::sym_eig_extreme(Ds, false) < -tol * std::max(max_abs(Ds), 1.0)) return false;
  }
  return true;
}

struct ControllerResult {
  MatrixXd gain;  // u = gain·y
  double alpha = 1.0;
  MatrixXd R;     // K⁻², output weight
  MatrixXd S;     // T⁻², disturbance weight
  MatrixXd Q;     // positive definite certificate used for T and K
  MatrixXd T;     // Q₁₁^{1/2}
  MatrixXd K;     // Q₂₂^{1/2}
  MatrixXd symmetrized_gain;  // controller of the symmetrized system
  MatrixXd path_gain;         // K·symmetrized_gain·K⁻¹
};

/// u = −α⁻¹(D − CA⁻¹B)·y for systems symmetrizable with Σ = I whose A and −D
/// have spectra in the closed left half-plane.
inline ControllerResult optimal_controller(const StateSpace& ss, double alpha, const Tolerances& tol = {}) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValueError("alpha must be positive");
  const int n = ss.n();
  const int m = ss.m();
  if (n == 0 || !is_nonsingular(ss.A(), 1e-12)) throw SingularA("A must be nonsingular");
  const SystemMatrix sm = system_matrix(ss);
  auto pos = complete_symmetrizability(sm, tol);
  if (!pos) throw PreconditionFailed("system is not completely symmetrizable: " + pos.reason);
  const MatrixXd& Q = pos.value->Q;
  if (!relaxation_check(ss, Q)) throw PreconditionFailed("system is not of relaxation type");

  ControllerResult out;
  out.alpha = alpha;
  out.Q = Q;
  const Eigen::PartialPivLU<MatrixXd> luA(ss.A());
  out.gain = -(ss.D() - ss.C() * luA.solve(ss.B())) / alpha;

  out.T = spd_sqrt(Q.topLeftCorner(n, n));
  out.K = spd_sqrt(Q.bottomRightCorner(m, m));
  const MatrixXd Tinv = spd_inverse_sqrt(Q.topLeftCorner(n, n));
  const MatrixXd Kinv = spd_inverse_sqrt(Q.bottomRightCorner(m, m));
  out.R = Kinv * Kinv;
  out.S = Tinv * Tinv;

  const StateSpace sym = apply_io_transform(ss, out.K, out.T);
  const Eigen::PartialPivLU<MatrixXd> luAs(sym.A());
  out.symmetrized_gain = -(sym.D() - sym.C() * luAs.solve(sym.B())) / alpha;
  out.path_gain = out.K * out.symmetrized_gain * Kinv;
  return out;
}

// ---------------------------------------------------------------------------
// Closed-loop simulation.

/// Disturbance w(t) = amplitude·shape(t)·direction.
struct Disturbance {
  enum class Kind { Zero, Step, Pulse, Sine };
  Kind kind = Kind::Zero;
  VectorXd direction;      // length n; empty means all ones
  double amplitude = 1.0;
  double width = 0.1;      // pulse duration
  double frequency = 1.0;  // sine angular frequency

  VectorXd at(double t, int n) const {
    if (kind == Kind::Zero) return VectorXd::Zero(n);
    const VectorXd dir = direction.size() == 0 ? VectorXd::Ones(n) : direction;
    if (dir.size() != n) throw DimensionError("disturbance direction must have length n");
    double shape = 0.0;
    switch (kind) {
      case Kind::Step: shape = 1.0; break;
      case Kind::Pulse: shape = t < width ? 1.0 : 0.0; break;
      case Kind::Sine: shape = std::sin(frequency * t); break;
      case Kind::Zero: break;
    }
    return amplitude * shape * dir;
  }
};

struct SimulationOptions {
  double horizon = 10.0;
  std::optional<double> dt;  // default 1e-3 of the fastest closed-loop time constant
  VectorXd x0;               // empty means zero
  MatrixXd R;                // empty means identity
  double alpha = 1.0;
};

struct Trajectory {
  std::vector<double> t;
  MatrixXd x;  // one row per sample
  MatrixXd y;
  MatrixXd u;
  double cost = 0.0;  // ∫ yᵀRy + α²uᵀRu dt (trapezoidal)
  bool unstable = false;
  std::vector<std::string> warnings;

  std::string to_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "t";
    for (Eigen::Index i = 0; i < x.cols(); ++i) os << ",x" << i + 1;
    for (Eigen::Index i = 0; i < y.cols(); ++i) os << ",y" << i + 1;
    for (Eigen::Index i = 0; i < u.cols(); ++i) os << ",u" << i + 1;
    os << '\n';
    for (size_t k = 0; k < t.size(); ++k) {
      const auto r = static_cast<Eigen::Index>(k);
      os << t[k];
      for (Eigen::Index i = 0; i < x.cols(); ++i) os << ',' << x(r, i);
      for (Eigen::Index i = 0; i < y.cols(); ++i) os << ',' << y(r, i);
      for (Eigen::Index i = 0; i < u.cols(); ++i) os << ',' << u(r, i);
      os << '\n';
    }
    os << "cost," << cost << '\n';
    return os.str();
  }
};

/// Closed-loop matrices for u = F·y, y = Cx + Du: y = (I − DF)⁻¹Cx.
struct ClosedLoop {
  MatrixXd A;        // A + BF(I − DF)⁻¹C
  MatrixXd output;   // (I − DF)⁻¹C
};

inline ClosedLoop close_loop(const StateSpace& ss, const MatrixXd& gain) {
  const int m = ss.m();
  if (gain.rows() != m || gain.cols() != m) throw DimensionError("gain must be m x m");
  const MatrixXd L = MatrixXd::Identity(m, m) - ss.D() * gain;
  if (m > 0 && !is_nonsingular(L, 1e-12)) throw IllPosedLoop("I - D*gain is singular");
  ClosedLoop cl;
  cl.output = m > 0 ? MatrixXd(L.partialPivLu().solve(ss.C())) : MatrixXd(0, ss.n());
  cl.A = ss.A() + ss.B() * gain * cl.output;
  return cl;
}

/// Integrates ẋ = Ax + Bu + w with u = gain·y by classical RK4.
inline Trajectory simulate_closed_loop(const StateSpace& ss, const MatrixXd& gain, const Disturbance& w,
                                       const SimulationOptions& opts = {}) {
  const int n = ss.n();
  const int m = ss.m();
  if (!(opts.horizon > 0.0)) throw ValueError("horizon must be positive");
  const ClosedLoop cl = close_loop(ss, gain);
  const double rho = detail::spectral_radius(cl.A);
  Trajectory out;
  if (n > 0 && !(detail::max_real_eig(cl.A) < -1e-9 * rho)) {
    out.unstable = true;
    out.warnings.push_back("UnstableLoop: closed-loop A is not Hurwitz");
  }
  double dt = opts.dt.value_or(rho > 0 ? 1e-3 / rho : 1e-3 * opts.horizon);
  if (!(dt > 0.0)) throw ValueError("dt must be positive");
  const long steps = std::max(1L, static_cast<long>(std::ceil(opts.horizon / dt - 1e-9)));
  dt = opts.horizon / static_cast<double>(steps);

  const MatrixXd R = opts.R.size() == 0 ? MatrixXd::Identity(m, m) : opts.R;
  if (R.rows() != m || R.cols() != m) throw DimensionError("R must be m x m");
  VectorXd x = opts.x0.size() == 0 ? VectorXd::Zero(n) : opts.x0;
  if (x.size() != n) throw DimensionError("x0 must have length n");

  const auto f = [&](double t, const VectorXd& s) -> VectorXd { return cl.A * s + w.at(t, n); };
  out.x.resize(steps + 1, n);
  out.y.resize(steps + 1, m);
  out.u.resize(steps + 1, m);
  out.t.reserve(static_cast<size_t>(steps + 1));
  double prev_rate = 0.0;
  const double a2 = opts.alpha * opts.alpha;
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const VectorXd y = cl.output * x;
    const VectorXd u = gain * y;
    out.t.push_back(t);
    out.x.row(k) = x.transpose();
    out.y.row(k) = y.transpose();
    out.u.row(k) = u.transpose();
    const double rate = y.dot(R * y) + a2 * u.dot(R * u);
    if (k > 0) out.cost += 0.5 * dt * (prev_rate + rate);
    prev_rate = rate;
    if (k == steps) break;
    const VectorXd k1 = f(t, x);
    const VectorXd k2 = f(t + 0.5 * dt, x + 0.5 * dt * k1);
    const VectorXd k3 = f(t + 0.5 * dt, x + 0.5 * dt * k2);
    const VectorXd k4 = f(t + dt, x + dt * k3);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return out;
}

}  // namespace symm
