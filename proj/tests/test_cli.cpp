#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "test_util.hpp"

using namespace symm;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string example_path() { return std::string(SYMM_DATA_DIR) + "/numerical_example.json"; }

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, AnalyzeExample) {
  const CliRun r = run({"analyze", example_path()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("summary: not symmetric; symmetrizable; signatures {-5,-3,3,5}"), std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("kernel dimension 2"), std::string::npos);
}

TEST(Cli, AnalyzeJson) {
  const CliRun r = run({"analyze", example_path(), "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.at("external_symmetric").get<bool>());
  EXPECT_TRUE(j.at("symmetrizable").get<bool>());
  EXPECT_EQ(j.at("signatures").get<std::vector<int>>(), (std::vector<int>{-5, -3, 3, 5}));
  EXPECT_EQ(j.at("rank_test").at("kernel_dim").get<int>(), 2);
}

TEST(Cli, SymmetrizeRoundTripsThroughParsers) {
  const CliRun r = run({"symmetrize", example_path(), "--signature", "-3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.at("symmetrizable").get<bool>());
  const SymmetrizabilityCertificate c = certificate_from_json(j.at("certificate"));
  EXPECT_EQ(c.signature, -3);
  const StateSpace ss = system_from_json(j.at("system"));
  EXPECT_TRUE(check_internal_symmetry(system_matrix(ss), 1e-8));
}

TEST(Cli, SymmetrizeBadSignatureIsUsageError) {
  EXPECT_EQ(run({"symmetrize", example_path(), "--signature", "2"}).code, 1);
}

TEST(Cli, SignaturesCommand) {
  const CliRun r = run({"signatures", example_path()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("{-5,-3,3,5}"), std::string::npos);
}

TEST(Cli, RandomSystemIsNotSymmetrizable) {
  const CliRun gen = run({"random", "--n", "3", "--m", "3", "--seed", "5"});
  ASSERT_EQ(gen.code, 0);
  const std::string path = temp_file("symm_cli_random.json", gen.out);
  const CliRun r = run({"analyze", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("; not symmetrizable"), std::string::npos) << r.out;
  std::filesystem::remove(path);
}

TEST(Cli, DeterministicOutput) {
  EXPECT_EQ(run({"random", "--kind", "symmetric", "--seed", "9"}).out,
            run({"random", "--kind", "symmetric", "--seed", "9"}).out);
  EXPECT_EQ(run({"symmetrize", example_path(), "--format", "json"}).out,
            run({"symmetrize", example_path(), "--format", "json"}).out);
}

TEST(Cli, GeneratedSystemsRoundTrip) {
  const CliRun r = run({"tank"});
  ASSERT_EQ(r.code, 0);
  const StateSpace ss = load_system(r.out);
  EXPECT_EQ(ss.n(), 4);
  const CliRun sym = run({"random", "--kind", "symmetric", "--n", "2", "--m", "2", "--seed", "3"});
  EXPECT_TRUE(check_internal_symmetry(system_matrix(load_system(sym.out))));
}

TEST(Cli, ControllerCommand) {
  const std::string path = temp_file(
      "symm_cli_relax.json", R"({"n":1,"m":1,"A":[[-1]],"B":[[1]],"C":[[1]],"D":[[2]]})");
  const CliRun r = run({"controller", path, "--alpha", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out).at("gain")[0][0].get<double>(), -1.5, 1e-12);
  EXPECT_EQ(run({"controller", example_path()}).code, 3);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"analyze"}).code, 1);
  EXPECT_EQ(run({"analyze", "/nonexistent.json"}).code, 1);
  EXPECT_EQ(run({"analyze", example_path(), "--tol", "-1"}).code, 1);
  EXPECT_EQ(run({"analyze", example_path(), "--format", "yaml"}).code, 1);
  const std::string defective = temp_file(
      "symm_cli_defective.json", R"({"n":1,"m":1,"A":[[1]],"B":[[1]],"C":[[0]],"D":[[1]]})");
  EXPECT_EQ(run({"analyze", defective}).code, 3);
  std::filesystem::remove(defective);
}

TEST(Cli, OutFlagWritesFile) {
  const auto path = (std::filesystem::temp_directory_path() / "symm_cli_out.txt").string();
  const CliRun r = run({"signatures", example_path(), "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(fixtures::read_text(path).find("{-5,-3,3,5}"), std::string::npos);
  std::filesystem::remove(path);
}
