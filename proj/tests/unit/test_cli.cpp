#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace splab::app {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "splab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("splab_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(Cli, Catalog) {
  const CliRun r = run({"catalog"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).size(), 5u);
}

TEST(Cli, NormsGeometric) {
  const CliRun r = run({"norms", "--family", "geometric", "--q", "0.5", "--d", "1", "--p", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(j["sp_norm"]["lower"].get<double>(), 3.0);
  EXPECT_GE(j["sp_norm"]["upper"].get<double>(), 3.0);
}

TEST(Cli, NormsRejectsDivergentFamily) {
  const CliRun r = run({"norms", "--family", "power", "--beta", "0.4", "--p", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, BadArgumentsAreConfigErrors) {
  EXPECT_EQ(run({"experiment", "thm9"}).code, 2);
  EXPECT_EQ(run({"experiment", "thm1", "--rho-grid", "5"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CheckOmega) {
  EXPECT_EQ(run({"check-omega", "--alpha", "0.5"}).code, 0);
  EXPECT_EQ(run({"check-omega", "--omega-kind", "power_log", "--alpha", "0", "--omega-beta", "-1"}).code, 1);
}

TEST(Cli, ExperimentWritesArtifacts) {
  const fs::path dir = scratch("thm1");
  const CliRun r = run({"experiment", "thm1", "--family", "power", "--out", dir.string(), "--svg"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  for (const char* f : {"thm1.json", "thm1_E_taylor_error.csv", "thm1_D_poisson_of_bracket_derivative.csv",
                        "thm1_membership.csv", "thm1_E_taylor_error.svg"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const auto j = nlohmann::json::parse(slurp(dir / "thm1.json"));
  EXPECT_EQ(j["experiment"], "thm1");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["config"]["cutoff"], 100000);
  EXPECT_EQ(slurp(dir / "thm1_E_taylor_error.csv").rfind("parameter,value_low,value_high,bound,ratio\n", 0), 0u);
}

TEST(Cli, ConfigFileAndOverrides) {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  std::ofstream(dir / "run.json") << R"({"family": {"name": "power", "beta": 1}, "p": 2, "omega": {"alpha": 0.9},
                                        "out": ")" << (dir / "a").string() << R"("})";
  EXPECT_EQ(run({"experiment", "prop1", "--config", (dir / "run.json").string()}).code, 1);
  const CliRun ok = run({"experiment", "prop1", "--config", (dir / "run.json").string(), "--alpha", "0.5"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  std::ofstream(dir / "bad.json") << R"({"p": "two"})";
  EXPECT_EQ(run({"experiment", "prop1", "--config", (dir / "bad.json").string()}).code, 2);
}

TEST(Cli, OrderOneOperatorsGiveIdenticalCsv) {
  const fs::path a = scratch("id1");
  const fs::path b = scratch("id2");
  ASSERT_EQ(run({"experiment", "thm1", "--r", "1", "--out", a.string()}).code, 0);
  ASSERT_EQ(run({"experiment", "thm2", "--s", "1", "--out", b.string()}).code, 0);
  EXPECT_EQ(slurp(a / "thm1_E_taylor_error.csv"), slurp(b / "thm2_E_abel_poisson_error.csv"));
  EXPECT_EQ(slurp(a / "thm1_D_poisson_of_bracket_derivative.csv"),
            slurp(b / "thm2_D_poisson_of_radial_derivative.csv"));
}

TEST(Cli, Equivalence7Geometric) {
  const fs::path dir = scratch("eq7");
  const CliRun r = run({"experiment", "equiv7", "--family", "geometric", "--q", "0.5", "--d", "2", "--s", "2",
                     "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, NonYSpectrumPath) {
  const fs::path dir = scratch("nony");
  const CliRun r = run({"experiment", "thm1", "--family", "geometric", "--q", "0.5", "--d", "2", "--alpha", "1",
                     "--seed", "3", "--out", dir.string()});
  EXPECT_NE(r.code, 2) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "thm1.json"));
  EXPECT_EQ(j["implications"].size(), 2u);
}

TEST(Cli, VerifyQuickAndFault) {
  const CliRun ok = run({"verify", "--quick"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  const CliRun bad = run({"verify", "--quick", "--inject-fault", "lambda_truncated"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("\"check\":\"taylor_coefficients_vs_oracle[r=2]\",\"passed\":false"), std::string::npos)
      << bad.out;
  EXPECT_EQ(run({"verify", "--inject-fault", "nonsense"}).code, 2);
}

TEST(Config, RangeParsing) {
  EXPECT_EQ(parse_range("2..16").j2, 16);
  EXPECT_THROW(parse_range("16..2"), ConfigError);
  EXPECT_THROW(parse_range("a..b"), ConfigError);
}

}  // namespace
}  // namespace splab::app
