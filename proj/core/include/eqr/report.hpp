#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "eqr/sim.hpp"

namespace eqr {

inline constexpr std::string_view kTrialsHeader =
    "t,trial,symmetry,err_att_sq,err_pos_sq,err_vel_sq,err_total_sq,omega_dev_norm,thrust_dev";
inline constexpr std::string_view kSummaryHeader = "t,symmetry,p05,p50,p95";
inline constexpr std::string_view kRmseHeader = "symmetry,p20,p50,p80,rmse_median";

/// 17 significant digits ("%.17g"), which round-trips every finite double.
/// Infinity is written as "inf".
std::string format_double(double value);

void write_trials_csv(std::ostream& out, const CampaignResult& result);
void write_summary_csv(std::ostream& out, const CampaignResult& result);
void write_rmse_csv(std::ostream& out, const CampaignResult& result);

}  // namespace eqr
