#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symm/errors.hpp"
#include "symm/state_space.hpp"
#include "symm/symmetrizability.hpp"

namespace symm {

/// {"Q", "T", "K", "sigma_i", "sigma_e", "signature", "x" (or null),
///  "residuals": {"commute", "offdiag", "q13", "q14"}}
inline nlohmann::json certificate_to_json(const SymmetrizabilityCertificate& c) {
  nlohmann::json j;
  j["Q"] = matrix_to_json(c.Q);
  j["T"] = matrix_to_json(c.T);
  j["K"] = matrix_to_json(c.K);
  j["sigma_i"] = c.sigma_i.diag();
  j["sigma_e"] = c.sigma_e.diag();
  j["signature"] = c.signature;
  if (c.x) {
    j["x"] = std::vector<double>(c.x->data(), c.x->data() + c.x->size());
  } else {
    j["x"] = nullptr;
  }
  j["residuals"] = {{"commute", c.residuals.commute},
                    {"offdiag", c.residuals.offdiag},
                    {"q13", c.residuals.q13},
                    {"q14", c.residuals.q14}};
  return j;
}

inline SymmetrizabilityCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    SymmetrizabilityCertificate c;
    c.Q = matrix_from_json(j.at("Q"));
    c.T = matrix_from_json(j.at("T"));
    c.K = matrix_from_json(j.at("K"));
    c.sigma_i = SignatureMatrix(j.at("sigma_i").get<std::vector<int>>());
    c.sigma_e = SignatureMatrix(j.at("sigma_e").get<std::vector<int>>());
    c.signature = j.at("signature").get<int>();
    if (!j.at("x").is_null()) {
      const auto x = j.at("x").get<std::vector<double>>();
      c.x = Eigen::Map<const VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    }
    const auto& r = j.at("residuals");
    c.residuals.commute = r.at("commute").get<double>();
    c.residuals.offdiag = r.at("offdiag").get<double>();
    c.residuals.q13 = r.at("q13").get<double>();
    c.residuals.q14 = r.at("q14").get<double>();
    const int n = c.sigma_i.size();
    const int m = c.sigma_e.size();
    if (c.Q.rows() != n + m || c.Q.cols() != n + m || c.T.rows() != n || c.T.cols() != n ||
        c.K.rows() != m || c.K.cols() != m) {
      throw DimensionError("certificate matrix sizes disagree with the signature lengths");
    }
    if (c.signature != c.sigma_e.signature() - c.sigma_i.signature()) {
      throw ValueError("certificate signature disagrees with sigma_i and sigma_e");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

inline SymmetrizabilityCertificate load_certificate(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

}  // namespace symm
