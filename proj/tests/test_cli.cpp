#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <sstream>

#include "ttstokes/cli.hpp"

using nlohmann::json;
using namespace ttstokes::cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code = kSuccess) {
  args.insert(args.begin(), {"--format", "json"});
  const CliRun r = run_cli(args);
  EXPECT_EQ(r.code, expected_code) << r.err;
  json j = json::parse(r.out);
  const auto errors = validate_envelope(j);
  EXPECT_TRUE(errors.empty()) << (errors.empty() ? "" : errors.front());
  // re-serialising is byte stable
  EXPECT_EQ(dump_json(json::parse(r.out)), r.out);
  return j;
}

}  // namespace

TEST(Cli, RootsTable) {
  const CliRun r = run_cli({"roots", "--n", "4"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_NE(r.out.find("(1,0) (2,3)"), std::string::npos);
  EXPECT_NE(r.out.find("(0,3) (1,2)"), std::string::npos);
}

TEST(Cli, RootsJson) {
  const json j = run_json({"roots", "--n", "5"});
  EXPECT_EQ(j["command"], "roots");
  EXPECT_EQ(j["n_plus_1"], 5);
  EXPECT_EQ(j["payload"]["directions"].size(), 5u);
  EXPECT_EQ(j["payload"]["directions"][0]["roots"], json::parse("[[2,0],[3,4]]"));
  EXPECT_EQ(j["payload"]["directions"][4]["roots"], json::parse("[[0,3],[1,2]]"));
  EXPECT_EQ(j["residuals"]["table_mismatches"], 0);
}

TEST(Cli, Directions) {
  const json j = run_json({"directions", "--n", "3"});
  EXPECT_EQ(j["payload"]["directions"].size(), 6u);
}

TEST(Cli, FromGamma) {
  const json j = run_json({"from-gamma", "--n", "4", "--gamma", "0,0,0,0"});
  EXPECT_TRUE(j["payload"]["in_polytope"].get<bool>());
  EXPECT_NEAR(j["payload"]["s"]["s1"].get<double>(), 0.0, 1e-12);
  EXPECT_LT(j["residuals"]["reality"].get<double>(), 1e-9);
  EXPECT_LT(j["residuals"]["eigenvalue_match"].get<double>(), 1e-8);
  const json k = run_json({"from-gamma", "--n", "4", "--gamma-free", "-1,-3"});
  EXPECT_NEAR(k["payload"]["s"]["s1"].get<double>(), -4.0, 1e-12);
  EXPECT_NEAR(k["payload"]["s"]["s2"].get<double>(), -6.0, 1e-12);
}

TEST(Cli, FromGammaOutsidePolytopeWarnsButSucceeds) {
  const json j = run_json({"from-gamma", "--n", "4", "--gamma-free", "5,0"});
  EXPECT_FALSE(j["payload"]["in_polytope"].get<bool>());
}

TEST(Cli, Alcove) {
  const json j = run_json({"alcove", "--n", "5", "--rho", "-0.5,-0.25,0,0.25,0.5"});
  EXPECT_TRUE(j["payload"]["in_alcove"].get<bool>());
  EXPECT_LT(j["residuals"]["round_trip"].get<double>(), 1e-12);
}

TEST(Cli, Steinberg) {
  const json j = run_json({"steinberg", "--n", "4", "--t", "1,2,3"});
  EXPECT_TRUE(j["payload"]["sigma_product_is_cyclic"].get<bool>());
  EXPECT_EQ(j["payload"]["sigmas"].size(), 3u);
}

TEST(Cli, Golden) {
  for (const char* n : {"4", "5"}) {
    const json j = run_json({"golden", "--n", n});
    EXPECT_TRUE(j["payload"]["passed"].get<bool>());
  }
}

TEST(Cli, VerifySubset) {
  const json j = run_json({"verify", "--n", "3..5", "--samples", "5", "--suite", "roots", "--suite", "qfamily"});
  EXPECT_EQ(j["payload"]["suites"].size(), 6u);
  EXPECT_TRUE(j["payload"]["passed"].get<bool>());
}

TEST(Cli, TolOverridesThresholds) {
  const json j = run_json({"--tol", "1e-30", "verify", "--n", "4", "--samples", "3", "--suite", "charpoly"},
                          kVerificationFailure);
  EXPECT_FALSE(j["payload"]["passed"].get<bool>());
  EXPECT_EQ(j["payload"]["suites"][0]["threshold"], 1e-30);
}

TEST(Cli, SeedFromEnvironment) {
  const json a = run_json({"--seed", "9", "golden", "--n", "4"});
  setenv("TTSTOKES_SEED", "9", 1);
  const json b = run_json({"golden", "--n", "4"});
  setenv("TTSTOKES_SEED", "not-a-number", 1);
  EXPECT_EQ(run_cli({"golden", "--n", "4"}).code, kUsageError);
  unsetenv("TTSTOKES_SEED");
  EXPECT_EQ(a["payload"]["s_params"], b["payload"]["s_params"]);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kUsageError);
  EXPECT_EQ(run_cli({"bogus"}).code, kUsageError);
  EXPECT_EQ(run_cli({"roots"}).code, kUsageError);
  EXPECT_EQ(run_cli({"roots", "--n", "2"}).code, kUsageError);
  EXPECT_EQ(run_cli({"roots", "--n", "x"}).code, kUsageError);
  EXPECT_EQ(run_cli({"--format", "xml", "roots", "--n", "4"}).code, kUsageError);
  EXPECT_EQ(run_cli({"golden", "--n", "6"}).code, kUsageError);
  EXPECT_EQ(run_cli({"from-gamma", "--n", "4", "--gamma", "1,2,3,4"}).code, kUsageError);
  EXPECT_EQ(run_cli({"from-gamma", "--n", "4"}).code, kUsageError);
  EXPECT_EQ(run_cli({"from-gamma", "--n", "4", "--gamma", "0,0,a,0"}).code, kUsageError);
  EXPECT_EQ(run_cli({"verify", "--n", "5..3"}).code, kUsageError);
  EXPECT_EQ(run_cli({"verify", "--suite", "nope"}).code, kUsageError);
  EXPECT_EQ(run_cli({"steinberg", "--n", "4", "--t", "1,2"}).code, kUsageError);
  EXPECT_EQ(run_cli({"alcove", "--n", "4", "--rho", "1,0,0,0"}).code, kUsageError);
}

TEST(Cli, Help) {
  const CliRun r = run_cli({"--help"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_NE(r.out.find("from-gamma"), std::string::npos);
}

TEST(Envelope, ValidatorCatchesDefects) {
  json env = json::parse(R"({"command":"directions","n_plus_1":3,"payload":{"directions":[]},"residuals":{},"version":"x"})");
  EXPECT_TRUE(validate_envelope(env).empty());
  env.erase("version");
  EXPECT_FALSE(validate_envelope(env).empty());
  env["version"] = "x";
  env["payload"]["directions"] = 3;
  EXPECT_FALSE(validate_envelope(env).empty());
  env["command"] = "nope";
  EXPECT_FALSE(validate_envelope(env).empty());
}

TEST(DumpJson, Formatting) {
  const json j = json::parse(R"({"b":[1,2.5,-0.0],"a":{"x":null}})");
  EXPECT_EQ(dump_json(j), "{\n  \"a\": {\n    \"x\": null\n  },\n  \"b\": [1, 2.5, 0]\n}\n");
}
