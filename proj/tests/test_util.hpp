#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "symm/symm.hpp"

namespace symm::fixtures {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// The five-state numerical example stored under data/.
inline StateSpace example_system() {
  return load_system(read_text(std::string(SYMM_DATA_DIR) + "/numerical_example.json"));
}

inline MatrixXd gaussian(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd M(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) M(i, j) = normal(rng);
  }
  return M;
}

inline SignatureMatrix random_signature(int q, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> d(static_cast<size_t>(q));
  for (int& v : d) v = coin(rng) ? 1 : -1;
  return SignatureMatrix(d);
}

inline double rel_diff(const MatrixXcd& a, const MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

/// Makes each column's largest-magnitude entry positive.
inline MatrixXd normalize_columns(MatrixXd M) {
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    Eigen::Index idx = 0;
    M.col(c).cwiseAbs().maxCoeff(&idx);
    if (M(idx, c) < 0) M.col(c) = -M.col(c);
  }
  return M;
}

/// The printed 4-digit gain from the numerical example.
inline MatrixXd printed_gain() {
  MatrixXd K(3, 3);
  // clang-format off
  K <<  2.3460, -0.0576, -2.7399,
       -3.0744,  0.0637, -2.1109,
        0.9380,  0.3529, -0.0658;
  // clang-format on
  return K;
}

}  // namespace symm::fixtures
