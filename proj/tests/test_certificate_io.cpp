#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace symm;

TEST(CertificateIo, RoundTrip) {
  SymmetrizeOptions opts;
  opts.target_signature = 3;
  const auto r = symmetrize(fixtures::example_system(), opts);
  ASSERT_TRUE(r);
  const auto& c = r.value->certificate;
  const nlohmann::json j = certificate_to_json(c);
  for (const char* key : {"Q", "T", "K", "sigma_i", "sigma_e", "signature", "x", "residuals"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  const SymmetrizabilityCertificate back = load_certificate(j.dump());
  EXPECT_EQ(back.Q, c.Q);
  EXPECT_EQ(back.K, c.K);
  EXPECT_EQ(back.T, c.T);
  EXPECT_EQ(back.sigma_i, c.sigma_i);
  EXPECT_EQ(back.sigma_e, c.sigma_e);
  EXPECT_EQ(back.signature, c.signature);
  ASSERT_TRUE(back.x.has_value());
  EXPECT_EQ(*back.x, *c.x);
  EXPECT_EQ(back.residuals.commute, c.residuals.commute);
}

TEST(CertificateIo, NullCoordinates) {
  SymmetrizeOptions opts;
  opts.complete = true;
  const StateSpace ss = random_symmetric_system(2, 1, SignatureMatrix::identity(3), 8);
  const auto r = symmetrize(ss, opts);
  ASSERT_TRUE(r);
  const nlohmann::json j = certificate_to_json(r.value->certificate);
  EXPECT_TRUE(j.at("x").is_null());
  EXPECT_FALSE(load_certificate(j.dump()).x.has_value());
}

TEST(CertificateIo, RejectsMalformed) {
  EXPECT_THROW(load_certificate("{"), ParseError);
  EXPECT_THROW(load_certificate(R"({"Q": [[1]]})"), ParseError);
  SymmetrizeOptions opts;
  const auto r = symmetrize(fixtures::example_system(), opts);
  ASSERT_TRUE(r);
  nlohmann::json j = certificate_to_json(r.value->certificate);
  j["signature"] = j["signature"].get<int>() + 2;
  EXPECT_THROW(certificate_from_json(j), ValueError);
  j = certificate_to_json(r.value->certificate);
  j["sigma_e"] = std::vector<int>{1, 1};
  EXPECT_THROW(certificate_from_json(j), DimensionError);
}
