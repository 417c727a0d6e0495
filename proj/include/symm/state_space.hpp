#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "symm/errors.hpp"
#include "symm/linalg.hpp"

namespace symm {

/// Continuous-time LTI system with a square transfer function:
///   ẋ = A x + B u,  y = C x + D u,
/// with n states and m inputs = m outputs.
class StateSpace {
 public:
  StateSpace(MatrixXd A, MatrixXd B, MatrixXd C, MatrixXd D)
      : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
    validate();
  }

  const MatrixXd& A() const { return A_; }
  const MatrixXd& B() const { return B_; }
  const MatrixXd& C() const { return C_; }
  const MatrixXd& D() const { return D_; }
  int n() const { return static_cast<int>(A_.rows()); }
  int m() const { return static_cast<int>(D_.rows()); }

 private:
  void validate() const {
    const auto n = A_.rows();
    const auto m = D_.rows();
    if (n < 1 || m < 1) throw DimensionError("state and io dimensions must be at least 1");
    if (A_.cols() != n) throw DimensionError("A must be square");
    if (D_.cols() != m) throw DimensionError("D must be square (inputs = outputs)");
    if (B_.rows() != n || B_.cols() != m) {
      throw DimensionError("B must be " + std::to_string(n) + "x" + std::to_string(m));
    }
    if (C_.rows() != m || C_.cols() != n) {
      throw DimensionError("C must be " + std::to_string(m) + "x" + std::to_string(n));
    }
    for (const MatrixXd* M : {&A_, &B_, &C_, &D_}) {
      if (!M->allFinite()) throw ValueError("system matrices must have finite entries");
    }
  }

  MatrixXd A_, B_, C_, D_;
};

/// Short-hand system matrix P = [[A, B], [C, D]].
struct SystemMatrix {
  MatrixXd P;
  int n = 0;
  int m = 0;

  auto A() const { return P.topLeftCorner(n, n); }
  auto B() const { return P.topRightCorner(n, m); }
  auto C() const { return P.bottomLeftCorner(m, n); }
  auto D() const { return P.bottomRightCorner(m, m); }
  int size() const { return n + m; }
};

inline SystemMatrix system_matrix(const StateSpace& ss) {
  const int n = ss.n();
  const int m = ss.m();
  SystemMatrix sm{MatrixXd(n + m, n + m), n, m};
  sm.P << ss.A(), ss.B(), ss.C(), ss.D();
  return sm;
}

inline StateSpace from_system_matrix(const SystemMatrix& sm) {
  return StateSpace(sm.A(), sm.B(), sm.C(), sm.D());
}

// ---------------------------------------------------------------------------
// JSON interchange: {"n":..,"m":..,"A":[[..]],"B":..,"C":..,"D":..}, row-major.

namespace detail {

inline MatrixXd matrix_from_json(const nlohmann::json& j, const char* name, Eigen::Index rows,
                                 Eigen::Index cols) {
  if (!j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
  const auto& arr = j.at(name);
  if (!arr.is_array()) throw ParseError(std::string("field \"") + name + "\" must be an array");
  if (static_cast<Eigen::Index>(arr.size()) != rows) {
    throw DimensionError(std::string(name) + " must have " + std::to_string(rows) + " rows");
  }
  MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = arr.at(static_cast<size_t>(i));
    if (!row.is_array()) throw ParseError(std::string(name) + " rows must be arrays");
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw DimensionError(std::string(name) + " must be " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& v = row.at(static_cast<size_t>(k));
      if (!v.is_number()) {
        if (v.is_null()) throw ValueError(std::string(name) + " has a non-finite entry");
        throw ParseError(std::string(name) + " entries must be numbers");
      }
      M(i, k) = v.get<double>();
    }
  }
  return M;
}

}  // namespace detail

inline nlohmann::json matrix_to_json(const MatrixXd& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < M.cols(); ++k) row.push_back(M(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatrixXd matrix_from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw ParseError("matrix must be a nested array");
  const auto rows = static_cast<Eigen::Index>(arr.size());
  if (rows == 0) return MatrixXd(0, 0);
  if (!arr.at(0).is_array()) throw ParseError("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(arr.at(0).size());
  nlohmann::json wrapper{{"M", arr}};
  return detail::matrix_from_json(wrapper, "M", rows, cols);
}

inline StateSpace system_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("system document must be a JSON object");
  for (const char* key : {"n", "m"}) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
      throw ParseError(std::string("field \"") + key + "\" must be an integer");
    }
  }
  const auto n = j.at("n").get<Eigen::Index>();
  const auto m = j.at("m").get<Eigen::Index>();
  if (n < 1 || m < 1) throw DimensionError("n and m must be at least 1");
  return StateSpace(detail::matrix_from_json(j, "A", n, n), detail::matrix_from_json(j, "B", n, m),
                    detail::matrix_from_json(j, "C", m, n), detail::matrix_from_json(j, "D", m, m));
}

/// Parses a system document. Throws ParseError, DimensionError or ValueError.
inline StateSpace load_system(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return system_from_json(j);
}

inline nlohmann::json system_to_json(const StateSpace& ss) {
  return nlohmann::json{{"n", ss.n()},
                        {"m", ss.m()},
                        {"A", matrix_to_json(ss.A())},
                        {"B", matrix_to_json(ss.B())},
                        {"C", matrix_to_json(ss.C())},
                        {"D", matrix_to_json(ss.D())}};
}

// ---------------------------------------------------------------------------
// Transfer function and io transformations.

/// G(s) = C (sI - A)^{-1} B + D. Throws SingularResolvent when sI - A is
/// numerically singular.
inline MatrixXcd transfer_eval(const StateSpace& ss, std::complex<double> s,
                               double tol = 1e-12) {
  const int n = ss.n();
  const MatrixXcd resolvent =
      s * MatrixXcd::Identity(n, n) - ss.A().cast<std::complex<double>>();
  Eigen::JacobiSVD<MatrixXcd> svd(resolvent);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) <= tol * std::max(1.0, sv(0))) {
    throw SingularResolvent("s is (numerically) an eigenvalue of A");
  }
  const MatrixXcd X = resolvent.partialPivLu().solve(ss.B().cast<std::complex<double>>());
  return ss.C().cast<std::complex<double>>() * X + ss.D().cast<std::complex<double>>();
}

/// (T⁻¹AT, T⁻¹BK, K⁻¹CT, K⁻¹DK); the transfer function becomes K⁻¹G(s)K.
inline StateSpace apply_io_transform(const StateSpace& ss, const MatrixXd& K, const MatrixXd& T,
                                     double tol = 1e-12) {
  if (K.rows() != ss.m() || K.cols() != ss.m()) throw DimensionError("K must be m x m");
  if (T.rows() != ss.n() || T.cols() != ss.n()) throw DimensionError("T must be n x n");
  if (!is_nonsingular(K, tol)) throw SingularTransform("K is singular");
  if (!is_nonsingular(T, tol)) throw SingularTransform("T is singular");
  const auto Tlu = T.partialPivLu();
  const auto Klu = K.partialPivLu();
  return StateSpace(Tlu.solve(ss.A() * T), Tlu.solve(ss.B() * K), Klu.solve(ss.C() * T),
                    Klu.solve(ss.D() * K));
}

// ---------------------------------------------------------------------------
// Minimality.

inline MatrixXd controllability_matrix(const MatrixXd& A, const MatrixXd& B) {
  const auto n = A.rows();
  const auto m = B.cols();
  MatrixXd ctrb(n, n * m);
  ctrb.leftCols(m) = B;
  for (Eigen::Index i = 1; i < n; ++i) {
    ctrb.middleCols(m * i, m) = A * ctrb.middleCols(m * (i - 1), m);
  }
  return ctrb;
}

/// Rank test with threshold tol·σ_max·max(dims). The Krylov matrix is built
/// from a balanced copy (A and B scaled to unit norm) so powers of A do not
/// swamp the rank decision.
inline bool controllable(const MatrixXd& A, const MatrixXd& B, double tol = 1e-10) {
  const double a = std::max(spectral_norm(A), 1e-300);
  const double b = std::max(spectral_norm(B), 1e-300);
  return numerical_rank(controllability_matrix(A / a, B / b), tol) == A.rows();
}

inline bool observable(const MatrixXd& A, const MatrixXd& C, double tol = 1e-10) {
  return controllable(A.transpose(), C.transpose(), tol);
}

inline bool is_minimal(const StateSpace& ss, double tol = 1e-10) {
  return controllable(ss.A(), ss.B(), tol) && observable(ss.A(), ss.C(), tol);
}

// ---------------------------------------------------------------------------
// Sample points for transfer-function comparisons.

/// 10 log-spaced points iω, ω ∈ [1e-2, 1e2], plus seeded random complex
/// points (10, or more so the total is at least 2n+2), each kept at distance
/// >= 1e-3 from the eigenvalues of A.
inline std::vector<std::complex<double>> transfer_sample_points(const MatrixXd& A,
                                                                std::uint64_t seed = 20240611) {
  const Eigen::ComplexEigenSolver<MatrixXd> es(A, false);
  const VectorXcd poles = es.eigenvalues();
  const auto clear_of_poles = [&](std::complex<double> s) {
    for (Eigen::Index i = 0; i < poles.size(); ++i) {
      if (std::abs(s - poles(i)) < 1e-3) return false;
    }
    return true;
  };
  const auto nudge = [&](std::complex<double> s) {
    // Rotate outward until clear; bounded since poles are finite.
    for (int k = 0; !clear_of_poles(s) && k < 64; ++k) s += std::complex<double>(2e-3, 1e-3);
    return s;
  };

  std::vector<std::complex<double>> pts;
  for (int k = 0; k < 10; ++k) {
    const double w = std::pow(10.0, -2.0 + 4.0 * k / 9.0);
    pts.push_back(nudge({0.0, w}));
  }
  double scale = 1.0;
  for (Eigen::Index i = 0; i < poles.size(); ++i) scale = std::max(scale, std::abs(poles(i)));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int n = static_cast<int>(A.rows());
  const int random_count = std::max(10, 2 * n + 2 - 10);
  for (int k = 0; k < random_count; ++k) {
    const double re = scale * uni(rng);
    const double im = scale * uni(rng);
    pts.push_back(nudge({re, im}));
  }
  return pts;
}

}  // namespace symm
