#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "eestat/validation.hpp"

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(EESTAT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST(Cli, ExactPageCsv) {
  const auto r = run("exact --ensemble page --dA 2 --dB 2");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "dA,dB,mean,variance\n2,2,0.33333333333333331,0.032124297741465822\n");
}

TEST(Cli, ExactSectorJson) {
  const auto r = run("exact --ensemble gaussian-fixed-n --V 2 --VA 1 --N 1 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_DOUBLE_EQ(j[0]["mean"].get<double>(), 0.5);
  EXPECT_EQ(j[0]["N"].get<double>(), 1.0);
}

TEST(Cli, CurveRowCount) {
  const auto r = run("curve --ensemble page --V 12 --points 5");
  ASSERT_EQ(r.status, 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 6);
  EXPECT_EQ(r.out.rfind("f,value,asymptotic_value\n", 0), 0u);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("exact --ensemble nope --V 4").status, 2);
  EXPECT_EQ(run("sample --ensemble page --V 4 --VA 2 --samples 10").status, 2);
  EXPECT_EQ(run("exact --ensemble fixed-n --V 4 --VA 2").status, 2);
  EXPECT_EQ(run("exact --ensemble page --V 4 --VA 9").status, 2);
  EXPECT_EQ(run("").status, 2);
}

TEST(Cli, SampleReportFields) {
  const auto a = run("sample --ensemble fixed-n --V 6 --VA 3 --N 3 --samples 200 --seed 5 --threads 2");
  ASSERT_EQ(a.status, 0);
  const auto j = nlohmann::json::parse(a.out);
  for (const char* key : {"ensemble", "params", "mean", "stderr", "sample_variance", "n_samples", "seed", "closed_form", "z_score"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["params"]["N"].get<int>(), 3);
  EXPECT_EQ(j["n_samples"].get<long long>(), 200);
  EXPECT_LT(std::abs(j["z_score"].get<double>()), 5.0);
  // Worker count does not change the stream assignment.
  const auto b = run("sample --ensemble fixed-n --V 6 --VA 3 --N 3 --samples 200 --seed 5 --threads 1");
  EXPECT_EQ(nlohmann::json::parse(b.out)["mean"], j["mean"]);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "eestat_cli_out.csv";
  ASSERT_EQ(run("exact --ensemble gaussian --V 10 --VA 3 -o " + path).status, 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "V,VA,mean,variance");
  std::remove(path.c_str());
}

TEST(Validation, OracleTamperingIsDetected) {
  eestat::ValidationConfig cfg;
  cfg.quick = true;
  EXPECT_TRUE(eestat::run_criterion(1, cfg).pass);
  cfg.oracle_offset = 1e-6;
  EXPECT_FALSE(eestat::run_criterion(1, cfg).pass);
}
