#include "eqr/report.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace eqr {

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return {buf.data(), res.ptr};
}

void write_trials_csv(std::ostream& out, const CampaignResult& result) {
  out << kTrialsHeader << '\n';
  for (const TrialLog& log : result.logs) {
    const std::string_view sym = to_string(log.symmetry);
    for (const StepRecord& r : log.records) {
      out << format_double(r.t) << ',' << log.trial << ',' << sym << ',' << format_double(r.err_att_sq) << ','
          << format_double(r.err_pos_sq) << ',' << format_double(r.err_vel_sq) << ','
          << format_double(r.err_total_sq) << ',' << format_double(r.omega_dev_norm) << ','
          << format_double(r.thrust_dev) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const CampaignResult& result) {
  out << kSummaryHeader << '\n';
  for (const SymmetrySummary& s : result.summaries) {
    const std::string_view sym = to_string(s.symmetry);
    for (std::size_t k = 0; k < s.t.size(); ++k) {
      out << format_double(s.t[k]) << ',' << sym << ',' << format_double(s.p05[k]) << ','
          << format_double(s.p50[k]) << ',' << format_double(s.p95[k]) << '\n';
    }
  }
}

void write_rmse_csv(std::ostream& out, const CampaignResult& result) {
  out << kRmseHeader << '\n';
  for (const SymmetrySummary& s : result.summaries) {
    out << to_string(s.symmetry) << ',' << format_double(s.rmse_p20) << ',' << format_double(s.rmse_p50) << ','
        << format_double(s.rmse_p80) << ',' << format_double(s.rmse_p50) << '\n';
  }
}

}  // namespace eqr
