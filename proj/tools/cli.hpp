#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "eqr/verify.hpp"

namespace eqr::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Experiment {
  Transient,   // perturbed initial state, no process noise
  Asymptotic,  // exact initial state, process noise on
  Custom,      // configuration used as given
};

std::optional<Experiment> parse_experiment(std::string_view label);
std::string_view to_string(Experiment e);

struct RunOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::string> trajectory;
  std::optional<std::string> symmetry;  // dp | se23 | se3r3 | all
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> experiment;
  std::filesystem::path out = "eqr_out";
  bool summary_only = false;
  /// Worker threads; when unset, EQR_THREADS (0 = auto) is consulted.
  std::optional<unsigned> threads;
};

/// Runs the configured campaigns and writes trials.csv, summary.csv,
/// rmse.csv and manifest.json into `options.out`. Returns the exit code.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

/// Runs the oracle suite and prints one row per check. Nonzero if any fails.
int cmd_verify(std::ostream& out, const OracleOptions& options = {});

}  // namespace eqr::cli
