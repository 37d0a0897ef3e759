#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "config.hpp"
#include "eqr/sim.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace eqr;
using eqr::cli::RunOptions;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root = fs::temp_directory_path() / ("eqr_cli_test_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root);
    fs::create_directories(root);
  }
  void TearDown() override { fs::remove_all(root); }

  RunOptions small(const std::string& name) {
    RunOptions o;
    o.trials = 3;
    o.out = root / name;
    o.threads = 1;
    return o;
  }

  int run(const RunOptions& o) { return cli::cmd_run(o, out, err); }

  fs::path root;
  std::ostringstream out, err;
};

}  // namespace

TEST_F(CliTest, WritesOutputs) {
  RunOptions o = small("a");
  o.trajectory = "hover";
  o.symmetry = "all";
  ASSERT_EQ(run(o), 0) << err.str();
  for (const char* f : {"trials.csv", "summary.csv", "rmse.csv", "manifest.json"}) EXPECT_TRUE(fs::exists(o.out / f));

  const auto manifest = nlohmann::json::parse(slurp(o.out / "manifest.json"));
  EXPECT_EQ(manifest["tool"], "eqr");
  EXPECT_EQ(manifest["experiment"], "transient");
  EXPECT_EQ(manifest["campaigns"].size(), 3u);
  EXPECT_EQ(manifest["config"]["trials"], 3);
  EXPECT_EQ(manifest["config"]["process_std"], 0.0);

  std::istringstream summary(slurp(o.out / "summary.csv"));
  std::string header;
  std::getline(summary, header);
  EXPECT_EQ(header, "t,symmetry,p05,p50,p95");
}

TEST_F(CliTest, ManifestConfigParsesBack) {
  RunOptions o = small("a");
  o.experiment = "asymptotic";
  o.trajectory = "lissajous";
  o.summary_only = true;
  ASSERT_EQ(run(o), 0) << err.str();
  EXPECT_FALSE(fs::exists(o.out / "trials.csv"));
  const auto manifest = nlohmann::json::parse(slurp(o.out / "manifest.json"));
  const SimConfig cfg = cli::parse_config(manifest["config"]);
  EXPECT_EQ(cfg.trajectory, TrajectoryKind::Lissajous);
  EXPECT_EQ(cfg.init_std.rot, 0.0);
  EXPECT_EQ(cfg.process_std, 0.1);
  EXPECT_EQ(cfg.trials, 3);
}

TEST_F(CliTest, RerunIsByteIdentical) {
  RunOptions a = small("a");
  RunOptions b = small("b");
  b.threads = 3;
  ASSERT_EQ(run(a), 0);
  ASSERT_EQ(run(b), 0);
  for (const char* f : {"trials.csv", "summary.csv", "rmse.csv"}) EXPECT_EQ(slurp(a.out / f), slurp(b.out / f)) << f;
}

TEST_F(CliTest, FlagsOverrideConfigFile) {
  const fs::path cfg = root / "cfg.json";
  std::ofstream(cfg) << R"({"trials": 7, "seed": 5, "symmetries": ["dp"], "duration": 0.1})";
  RunOptions o = small("a");
  o.config = cfg;
  o.trials.reset();
  o.seed = 11;
  ASSERT_EQ(run(o), 0) << err.str();
  const auto manifest = nlohmann::json::parse(slurp(o.out / "manifest.json"));
  EXPECT_EQ(manifest["config"]["trials"], 7);
  EXPECT_EQ(manifest["config"]["seed"], 11);
  EXPECT_EQ(manifest["campaigns"].size(), 1u);
}

TEST_F(CliTest, ConfigErrors) {
  const fs::path cfg = root / "bad.json";
  std::ofstream(cfg) << R"({"dt": -1})";
  RunOptions o = small("a");
  o.config = cfg;
  EXPECT_EQ(run(o), 2);
  EXPECT_NE(err.str().find("dt"), std::string::npos);

  RunOptions p = small("b");
  p.symmetry = "so3";
  EXPECT_EQ(run(p), 2);
  RunOptions q = small("c");
  q.experiment = "steady";
  EXPECT_EQ(run(q), 2);
}

TEST_F(CliTest, UnwritableOutput) {
  const fs::path file = root / "occupied";
  std::ofstream(file) << "x";
  RunOptions o = small("unused");
  o.out = file / "sub";
  EXPECT_EQ(run(o), 3);
}

TEST(Verify, FreshBuildPasses) {
  std::ostringstream out;
  EXPECT_EQ(cli::cmd_verify(out), 0) << out.str();
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
  EXPECT_NE(out.str().find("finite-difference linearisation (se3r3)"), std::string::npos);
}

TEST(Verify, SignFaultIsCaught) {
  // Flip the gravity coupling of the extended-pose closed form.
  OracleOptions o;
  o.lift_samples = 10;
  o.fd_times = 4;
  o.linearizer = [](Symmetry s, const TrajectorySample& x, const PhysParams& p) {
    LinearizedSystem lin = linearize(s, x, p);
    if (s == Symmetry::ExtendedPose) lin.A.block<3, 3>(6, 0) *= -1.0;
    return lin;
  };
  EXPECT_FALSE(check_fd_linearization(o, Symmetry::ExtendedPose).passed);
  EXPECT_TRUE(check_fd_linearization(o, Symmetry::PoseVelocity).passed);
  std::ostringstream out;
  EXPECT_EQ(cli::cmd_verify(out, o), 1);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
}
