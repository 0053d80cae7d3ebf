#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int exit_code = -1;
  std::string out;
};

Result sh(const std::string& args) {
  const std::string cmd = std::string(DRESSSIM) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (auto n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("dresssim_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::size_t lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_F(Cli, RunFig1UnderFcfs) {
  ASSERT_EQ(sh("oracle fig1 -o " + path("fig1.json")).exit_code, 0);
  const auto r = sh("run --scheduler fcfs " + path("fig1.json"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("makespan 40"), std::string::npos) << r.out;
}

TEST_F(Cli, RunWithoutScenarioIsUsageError) {
  EXPECT_EQ(sh("run").exit_code, 1);
  EXPECT_EQ(sh("run --scheduler fcfs " + path("missing.json")).exit_code, 1);
}

TEST_F(Cli, UnknownFlagIsUsageError) {
  EXPECT_EQ(sh("run --fig1 --frobnicate").exit_code, 1);
  EXPECT_EQ(sh("run --fig1 --scheduler lifo").exit_code, 1);
}

TEST_F(Cli, SweepCardinality) {
  const auto r = sh("sweep --preset mixed --seeds 1,2,3,4 --schedulers fcfs,dress --threads 4");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(lines(r.out), 1u + 8u) << r.out;
}

TEST_F(Cli, SweepIsOrderStable) {
  const auto a = sh("sweep --preset wordcount --seeds 3,1,2 --schedulers static,fcfs --threads 3");
  const auto b = sh("sweep --preset wordcount --seeds 3,1,2 --schedulers static,fcfs --threads 1");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, GenRunReport) {
  ASSERT_EQ(sh("gen --preset pagerank --seed 5 -o " + path("pr.json")).exit_code, 0);
  for (const char* s : {"fcfs", "dress"}) {
    ASSERT_EQ(sh(std::string("run --scheduler ") + s + " " + path("pr.json") + " --trace " +
                 path(std::string(s) + ".jsonl"))
                  .exit_code,
              0);
  }
  // A run of another scenario is summarized but not compared.
  ASSERT_EQ(sh("run --fig1 --trace " + path("fig1.jsonl")).exit_code, 0);
  const auto r = sh("report " + path("*.jsonl") + " --out-dir " + path("out"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(fs::exists(path("out/summary.csv")));
  EXPECT_TRUE(fs::exists(path("out/comparison.csv")));
  std::ifstream in(path("out/summary.csv"));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("scheduler,scenario,seed,makespan", 0), 0u);
  std::ifstream cmp(path("out/comparison.csv"));
  const std::string table((std::istreambuf_iterator<char>(cmp)), {});
  EXPECT_EQ(lines(table), 2u) << table;
}

TEST_F(Cli, OverridesAreValidated) {
  EXPECT_EQ(sh("run --fig1 --theta 0.2 --ts 3").exit_code, 0);
  EXPECT_EQ(sh("run --fig1 --theta 3").exit_code, 1);
}

TEST_F(Cli, OracleSolveThenCheck) {
  ASSERT_EQ(sh("oracle fig1 -o " + path("fig1.json")).exit_code, 0);
  const auto solve = sh("oracle solve --gang " + path("fig1.json") + " -o " + path("sol.json"));
  ASSERT_EQ(solve.exit_code, 0);
  EXPECT_EQ(sh("oracle check --gang " + path("fig1.json") + " " + path("sol.json")).exit_code, 0);
}
