#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "symm/errors.hpp"
#include "symm/signature.hpp"
#include "symm/state_space.hpp"

namespace symm {

/// Quadruple-tank process parameters.
struct TankParams {
  double A1 = 28.0, A2 = 32.0, A3 = 28.0, A4 = 32.0;  // cross-sections
  double T1 = 10.0, T2 = 10.0, T3 = 5.0, T4 = 5.0;    // time constants
  double k1 = 3.33, k2 = 3.35;                        // pump gains
  double kc = 0.5;                                    // sensor gain
  double gamma1 = 0.7, gamma2 = 0.6;                  // valve splits
};

/// Static gains of the four transfer-function entries.
struct TankCoefficients {
  double c11, c12, c21, c22;
};

inline void validate(const TankParams& p) {
  for (double v : {p.A1, p.A2, p.A3, p.A4}) {
    if (!(v > 0)) throw ValueError("tank cross-sections must be positive");
  }
  for (double v : {p.T1, p.T2, p.T3, p.T4}) {
    if (!(v > 0)) throw ValueError("tank time constants must be positive");
  }
  if (!(p.k1 > 0) || !(p.k2 > 0) || !(p.kc > 0)) throw ValueError("pump and sensor gains must be positive");
  for (double g : {p.gamma1, p.gamma2}) {
    if (!(g >= 0.0 && g <= 1.0)) throw ValueError("valve splits must lie in [0, 1]");
  }
  if (p.gamma1 >= 1.0 || p.gamma2 >= 1.0) throw ValueError("cross couplings c12, c21 must be nonzero");
}

inline TankCoefficients tank_coefficients(const TankParams& p) {
  validate(p);
  return {p.gamma1 * p.k1 * p.T1 * p.kc / p.A1, (1.0 - p.gamma2) * p.k2 * p.T1 * p.kc / p.A1,
          (1.0 - p.gamma1) * p.k1 * p.T2 * p.kc / p.A2, p.gamma2 * p.k2 * p.T2 * p.kc / p.A2};
}

/// Modal realization of
///   G(s) = [[c11/(1+sT1),                c12/((1+sT1)(1+sT3))],
///           [c21/((1+sT2)(1+sT4)),       c22/(1+sT2)]]
/// with A = diag(-1/T1, -1/T2, -1/T3, -1/T4). State k carries the pole
/// -1/T_k; the coupling terms are split by partial fractions, which needs
/// T1 != T3 and T2 != T4.
inline StateSpace quadruple_tank(const TankParams& p) {
  const TankCoefficients c = tank_coefficients(p);
  if (p.T1 == p.T3 || p.T2 == p.T4) {
    throw ValueError("T1 = T3 or T2 = T4 gives a double pole; no diagonal realization");
  }
  const double p1 = 1.0 / p.T1, p2 = 1.0 / p.T2, p3 = 1.0 / p.T3, p4 = 1.0 / p.T4;
  // c/((1+sTa)(1+sTb)) = r/(s+pa) - r/(s+pb),  r = c/(Ta Tb (pb - pa))
  const double r13 = c.c12 / (p.T1 * p.T3 * (p3 - p1));
  const double r24 = c.c21 / (p.T2 * p.T4 * (p4 - p2));

  MatrixXd A = MatrixXd::Zero(4, 4);
  A.diagonal() << -p1, -p2, -p3, -p4;
  MatrixXd B(4, 2);
  // clang-format off
  B << c.c11 * p1, r13,
       r24,        c.c22 * p2,
       0.0,        -r13,
       -r24,       0.0;
  // clang-format on
  MatrixXd C(2, 4);
  // clang-format off
  C << 1, 0, 1, 0,
       0, 1, 0, 1;
  // clang-format on
  StateSpace ss(A, B, C, MatrixXd::Zero(2, 2));
  if (!is_minimal(ss)) throw ValueError("tank parameters give a non-minimal realization");
  return ss;
}

/// Seeded system with ΣP = PᵀΣ exactly: P := Σ·S for a random symmetric S.
/// Resamples until the realization is minimal.
inline StateSpace random_symmetric_system(int n, int m, const SignatureMatrix& sigma,
                                          std::uint64_t seed, int max_tries = 100) {
  if (n < 1 || m < 1) throw DimensionError("n and m must be at least 1");
  if (sigma.size() != n + m) throw DimensionError("signature size must be n + m");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int q = n + m;
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    MatrixXd S(q, q);
    for (int i = 0; i < q; ++i) {
      for (int j = i; j < q; ++j) {
        S(i, j) = normal(rng);
        S(j, i) = S(i, j);
      }
    }
    // Row scaling by ±1 is exact in floating point.
    const SystemMatrix sm{sigma.matrix() * S, n, m};
    StateSpace ss = from_system_matrix(sm);
    if (is_minimal(ss)) return ss;
  }
  throw ExhaustedRetries("could not draw a minimal symmetric system");
}

/// Seeded system with i.i.d. standard normal entries, resampled until minimal.
inline StateSpace random_gaussian_system(int n, int m, std::uint64_t seed, int max_tries = 100) {
  if (n < 1 || m < 1) throw DimensionError("n and m must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto draw = [&](int r, int c) {
    MatrixXd M(r, c);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) M(i, j) = normal(rng);
    }
    return M;
  };
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    MatrixXd A = draw(n, n), B = draw(n, m), C = draw(m, n), D = draw(m, m);
    StateSpace ss(A, B, C, D);
    if (is_minimal(ss)) return ss;
  }
  throw ExhaustedRetries("could not draw a minimal Gaussian system");
}

/// Random q×q matrix I + scale·N(0,1) with inverse condition above 1e-3.
inline MatrixXd random_nonsingular(int q, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    MatrixXd M = MatrixXd::Identity(q, q);
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < q; ++j) M(i, j) += scale * normal(rng);
    }
    if (inverse_condition(M) > 1e-3) return M;
  }
}

}  // namespace symm
