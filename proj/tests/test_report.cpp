#include <gtest/gtest.h>

#include <charconv>
#include <limits>
#include <sstream>

#include "eqr/report.hpp"

using namespace eqr;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

CampaignResult small_campaign() {
  SimConfig cfg;
  cfg.trials = 3;
  cfg.duration = 0.05;
  return run_campaign(cfg, 1);
}

}  // namespace

TEST(FormatDouble, RoundTripsExactly) {
  for (double x : {0.1, 1.0 / 3.0, 9.81, 1e-300, -2.5e17, 0.0}) {
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, x) << s;
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Csv, Headers) {
  const CampaignResult r = small_campaign();
  std::ostringstream trials, summary, rmse;
  write_trials_csv(trials, r);
  write_summary_csv(summary, r);
  write_rmse_csv(rmse, r);
  EXPECT_EQ(lines(trials.str()).front(),
            "t,trial,symmetry,err_att_sq,err_pos_sq,err_vel_sq,err_total_sq,omega_dev_norm,thrust_dev");
  EXPECT_EQ(lines(summary.str()).front(), "t,symmetry,p05,p50,p95");
  EXPECT_EQ(lines(rmse.str()).front(), "symmetry,p20,p50,p80,rmse_median");
}

TEST(Csv, RowCounts) {
  const CampaignResult r = small_campaign();
  std::ostringstream trials, summary, rmse;
  write_trials_csv(trials, r);
  write_summary_csv(summary, r);
  write_rmse_csv(rmse, r);
  EXPECT_EQ(lines(trials.str()).size(), 1u + 3 * 3 * 6);
  EXPECT_EQ(lines(summary.str()).size(), 1u + 3 * 6);
  const auto rows = lines(rmse.str());
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1].substr(0, 3), "dp,");
  EXPECT_EQ(rows[2].substr(0, 5), "se23,");
  EXPECT_EQ(rows[3].substr(0, 6), "se3r3,");
}

TEST(Csv, SummaryValuesReadBack) {
  const CampaignResult r = small_campaign();
  std::ostringstream summary;
  write_summary_csv(summary, r);
  const auto rows = lines(summary.str());
  // Row 1 is dp at t = 0.
  std::istringstream row(rows[1]);
  std::string t, sym, p05, p50, p95;
  std::getline(row, t, ',');
  std::getline(row, sym, ',');
  std::getline(row, p05, ',');
  std::getline(row, p50, ',');
  std::getline(row, p95, ',');
  EXPECT_EQ(sym, "dp");
  EXPECT_EQ(std::stod(p50), r.summaries[0].p50[0]);
  EXPECT_EQ(std::stod(p95), r.summaries[0].p95[0]);
}
