#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bucketeer/cli.hpp"
#include "bucketeer/report.hpp"

namespace bucketeer {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bucketeer");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Runs the real executable; returns exit status and stdout.
std::pair<int, std::string> shell(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + BUCKETEER_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (const auto n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("bucketeer_cli_" + std::to_string(std::rand()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

TEST(CliTest, AssignPrintsVerdict) {
  const auto r = cli({"assign", "--experiment", "exp1", "--user", "user42", "--algo", "4",
                      "--exposure", "100", "--buckets", "control:50,treatment:50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("assignment"), "treatment");
  EXPECT_EQ(j.at("algo"), "algo4");
  EXPECT_FALSE(j.contains("trace"));
}

TEST(CliTest, AssignTrace) {
  const auto r = cli({"assign", "--experiment", "exp", "--user", "user42", "--algo", "1",
                      "--exposure", "50", "--buckets", "control:20,treatment:80", "--salt", "s1",
                      "--trace"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json t = Json::parse(r.out).at("trace");
  EXPECT_EQ(t.at("hash"), "0x486f6b3078eb6511");
  EXPECT_EQ(t.at("bucket_hash"), "0x995eabc8ec80d212");
  EXPECT_EQ(t.at("r_e"), 1);
  EXPECT_EQ(t.at("r_b"), 30);
  EXPECT_EQ(Json::parse(r.out).at("assignment"), "treatment");
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"nope"}).code, 2);
  EXPECT_EQ(cli({"assign", "--experiment", "e", "--user", "u"}).code, 2);
  EXPECT_EQ(cli({"assign", "--experiment", "e", "--user", "u", "--algo", "7"}).code, 2);
  EXPECT_EQ(cli({"assign", "--experiment", "e", "--user", "u", "--algo", "2", "--buckets",
                 "control:50,treatment:40"})
                .code,
            2);
  EXPECT_EQ(cli({"assign", "--experiment", "e", "--user", "u", "--algo", "2", "--buckets", "junk"})
                .code,
            2);
  EXPECT_EQ(cli({"assign", "--experiment", "e", "--user", "", "--algo", "2"}).code, 2);
  EXPECT_EQ(cli({"uniformity", "--algo", "4", "--exposure", "10", "--y", "50", "--users", "1000"})
                .code,
            2);
  EXPECT_EQ(cli({"uniformity", "--algo", "4", "--condition", "le", "--users", "1000"}).code, 2);
  EXPECT_EQ(cli({"independence", "--algo", "3", "--experiments", "a,a", "--users", "1000"}).code, 2);
  EXPECT_EQ(cli({"bench", "--iterations", "0", "--users", "100"}).code, 2);
  EXPECT_EQ(cli({"uniformity", "--algo", "4", "--users", "100", "--pattern", "fixed"}).code, 2);
  const auto r = cli({"srm", "--algo", "1", "--buckets", "a:50,b:51", "--users", "100"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("sum to 100"), std::string::npos) << r.err;
}

TEST(CliTest, HelpExitsZero) {
  const auto r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE((r.out + r.err).find("uniformity"), std::string::npos);
}

TEST(CliTest, VerdictExitCodes) {
  const auto pass = cli({"uniformity", "--algo", "4", "--exposure", "10", "--users", "200000"});
  EXPECT_EQ(pass.code, 0) << pass.err;
  EXPECT_FALSE(Json::parse(pass.out).at("gof_uniform").at("reject").get<bool>());

  const auto fail = cli({"uniformity", "--algo", "1", "--exposure", "10", "--users", "200000"});
  EXPECT_EQ(fail.code, 1) << fail.err;
  EXPECT_TRUE(Json::parse(fail.out).at("gof_uniform").at("reject").get<bool>());

  const auto ind = cli({"independence", "--algo", "4", "--users", "100000"});
  EXPECT_EQ(ind.code, 0) << ind.err;
  const auto srm = cli({"srm", "--algo", "1", "--exposure", "10", "--buckets",
                        "control:10,treatment:90"});
  EXPECT_EQ(srm.code, 1) << srm.err;
}

TEST(CliTest, PlotData) {
  TempDir dir;
  ASSERT_EQ(cli({"uniformity", "--algo", "3", "--users", "20000", "--plot-data",
                 dir.path().string()})
                .code,
            0);
  const std::string hist = slurp(dir.path() / "histogram.csv");
  EXPECT_TRUE(hist.starts_with("cell,count\n"));
  EXPECT_EQ(std::count(hist.begin(), hist.end(), '\n'), 101);

  ASSERT_EQ(cli({"independence", "--algo", "3", "--users", "20000", "--plot-data",
                 dir.path().string()})
                .code,
            0);
  const std::string scatter = slurp(dir.path() / "scatter.csv");
  EXPECT_TRUE(scatter.starts_with("rb_i,rb_j\n"));
  EXPECT_EQ(std::count(scatter.begin(), scatter.end(), '\n'), 1001);
}

TEST(CliTest, OutputIsByteIdenticalAcrossRuns) {
  const std::vector<std::string> args = {"independence", "--algo", "2", "--users", "50000",
                                         "--seed", "11"};
  EXPECT_EQ(cli(args).out, cli(args).out);
  const auto pretty = cli({"--pretty", "uniformity", "--algo", "4", "--users", "50000"});
  EXPECT_NE(pretty.out.find("\n  \""), std::string::npos);
}

TEST(CliTest, BenchTableAndJson) {
  const auto table = cli({"bench", "--algos", "1,2", "--iterations", "1", "--users", "5000"});
  ASSERT_EQ(table.code, 0) << table.err;
  EXPECT_NE(table.out.find("algo2"), std::string::npos);
  const auto json = cli({"bench", "--algos", "1,2", "--iterations", "1", "--users", "5000",
                         "--json"});
  ASSERT_EQ(json.code, 0);
  EXPECT_EQ(Json::parse(json.out).at("rows").size(), 2u);
}

TEST(CliProcessTest, ExitCodesFromExecutable) {
  EXPECT_EQ(shell("assign --experiment e --user u --algo 3").first, 0);
  EXPECT_EQ(shell("assign --experiment e --user u --algo 3 --buckets a:1,b:2").first, 2);
  EXPECT_EQ(shell("uniformity --algo 1 --exposure 10 --users 200000").first, 1);
  EXPECT_EQ(shell("frobnicate").first, 2);
}

TEST(CliProcessTest, SeedEnvironmentVariable) {
  const std::string args = "independence --algo 4 --users 20000";
  const auto seeded = shell(args, "BUCKETEER_SEED=5");
  const auto flagged = shell(args + " --seed 5");
  const auto plain = shell(args, "BUCKETEER_SEED=");
  ASSERT_EQ(seeded.first, 0);
  EXPECT_EQ(seeded.second, flagged.second);
  EXPECT_NE(seeded.second, plain.second);
  EXPECT_EQ(shell(args + " --seed 0", "BUCKETEER_SEED=5").second, plain.second);
  EXPECT_EQ(shell(args, "BUCKETEER_SEED=abc").first, 2);
}

TEST(CliProcessTest, ReproWritesArtifacts) {
  TempDir dir;
  const auto [code, out] = shell("repro --users 100000 --out " + dir.path().string());
  EXPECT_TRUE(code == 0 || code == 1);
  for (const char* f : {"table1.json", "table2.json", "fig1.csv", "fig2.csv", "fig3.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir.path() / f)) << f;
  }
  const Json summary = Json::parse(out);
  EXPECT_EQ(summary.at("all_match").get<bool>(), code == 0);
}

}  // namespace
}  // namespace bucketeer
