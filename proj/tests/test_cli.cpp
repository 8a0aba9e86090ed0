#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace afdm::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "afdm_cli");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("afdm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_config(const std::string& body) {
    const auto p = dir_ / "run.conf";
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

constexpr const char* kSmall =
    "N = 16\nM = 4\nP = 3\ntwo_n_c1 = 5\nc2 = 0.0001\ndoppler_mode = integer\npsi = 0.1\nphi = 8\n"
    "sigma_eps_sq = 0.1\nsnr_grid_db = 0, 10\nframes_per_point = 20\nseed = 3\ndetector = both\n"
    "knowledge = genie\n";

TEST_F(CliTest, OperatorReportHasNoOddSumDiscrepancies) {
  const auto r = run({"operator", "--n", "64", "--k", "5", "--c2", "0.0001", "--out", path("aat.csv"),
                      "--report", path("report.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string rep = slurp(path("report.txt"));
  EXPECT_NE(rep.find("odd_sum_discrepancies=0\n"), std::string::npos);
  EXPECT_NE(rep.find("discrepancies=0\n"), std::string::npos);
  EXPECT_NE(rep.find("c2_pattern_mismatches=0\n"), std::string::npos);
  EXPECT_NE(rep.find("density=0.5\n"), std::string::npos);
  const RMatrix m = import_matrix_csv(path("aat.csv"));
  EXPECT_EQ(m.rows(), 64);
  EXPECT_EQ(m.cols(), 64);
  EXPECT_EQ(slurp(path("aat.csv")).rfind("# rows=64,cols=64,N=64,two_n_c1=5", 0), 0u);
}

TEST_F(CliTest, SimulateWritesBothCurves) {
  const std::string cfg = write_config(kSmall);
  const auto r = run({"simulate", "--config", cfg, "--out", path("ber.csv"), "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const BerCurve wl = read_ber_csv(path("ber.csv"));
  const BerCurve nv = read_ber_csv(path("ber_naive.csv"));
  EXPECT_EQ(wl.detector, "widely_linear");
  EXPECT_EQ(nv.detector, "naive");
  ASSERT_EQ(wl.points.size(), 2u);
  EXPECT_EQ(wl.points[0].bits_total, 20u * 32u);
  EXPECT_NE(slurp(path("ber.csv")).find("# psi=0.10000000000000001\n"), std::string::npos);

  const auto again = run({"simulate", "--config", cfg, "--out", path("ber1.csv"), "--threads", "1"});
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(slurp(path("ber.csv")), slurp(path("ber1.csv")));
  EXPECT_EQ(naive_sibling("a/b.txt"), "a/b_naive.txt");
  EXPECT_EQ(naive_sibling("out"), "out_naive.csv");
}

TEST_F(CliTest, MissingConfigIsReported) {
  const auto r = run({"simulate", "--config", path("nope.conf"), "--out", path("x.csv")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find(path("nope.conf")), std::string::npos);
  EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(CliTest, BadConfigKeyIsReported) {
  const std::string cfg = write_config(std::string(kSmall) + "colour = blue\n");
  const auto r = run({"simulate", "--config", cfg, "--out", path("x.csv")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("colour"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"operator", "--n", "64"}).code, 0);
  EXPECT_NE(run({"operator", "--n", "64", "--k", "5", "--out", path("a.csv"), "--frobnicate"}).code, 0);
  EXPECT_NE(run({"operator", "--n", "63", "--k", "5", "--out", path("a.csv")}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, HeffReportsLeakage) {
  const std::string cfg = write_config(kSmall);
  const auto none = run({"heff", "--config", cfg, "--sigma-eps", "0", "--out", path("h0.csv")});
  ASSERT_EQ(none.code, 0) << none.err;
  EXPECT_NE(none.out.find("leakage=0 "), std::string::npos);
  const auto some = run({"heff", "--config", cfg, "--sigma-eps", "0.1", "--frame", "2", "--out", path("h1.csv")});
  ASSERT_EQ(some.code, 0) << some.err;
  EXPECT_EQ(some.out.find("leakage=0 "), std::string::npos);
  EXPECT_NE(slurp(path("h1.csv")).find("matrix=H_eff,frame=2,epsilon="), std::string::npos);
  EXPECT_EQ(import_matrix_csv(path("h1.csv")).rows(), 16);
}

TEST_F(CliTest, CompositeDump) {
  const std::string cfg = write_config(kSmall);
  const auto r = run({"composite", "--config", cfg, "--out", path("ht.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("per_row_max_nnz="), std::string::npos);
  const RMatrix m = import_matrix_csv(path("ht.csv"));
  EXPECT_EQ(m.rows(), 32);
  EXPECT_EQ(m.cols(), 32);
}

}  // namespace
}  // namespace afdm::cli
