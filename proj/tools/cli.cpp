#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>

#include "config.hpp"
#include "eqr/report.hpp"

namespace eqr::cli {

namespace fs = std::filesystem;

std::optional<Experiment> parse_experiment(std::string_view label) {
  if (label == "transient") return Experiment::Transient;
  if (label == "asymptotic") return Experiment::Asymptotic;
  if (label == "custom") return Experiment::Custom;
  return std::nullopt;
}

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::Transient:
      return "transient";
    case Experiment::Asymptotic:
      return "asymptotic";
    case Experiment::Custom:
      return "custom";
  }
  return "custom";
}

namespace {

unsigned thread_count(const RunOptions& options) {
  if (options.threads) return *options.threads;
  if (const char* env = std::getenv("EQR_THREADS")) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<unsigned>(n);
  }
  return 0;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SimConfig resolve_config(const RunOptions& options, Experiment& experiment) {
  SimConfig cfg = options.config ? parse_config_file(*options.config) : SimConfig{};

  if (options.trajectory) {
    const auto kind = parse_trajectory(*options.trajectory);
    if (!kind) throw ConfigError("--trajectory", "expected hover or lissajous");
    cfg.trajectory = *kind;
  }
  if (options.symmetry) {
    if (*options.symmetry == "all") {
      cfg.symmetries.assign(kAllSymmetries.begin(), kAllSymmetries.end());
    } else {
      const auto s = parse_symmetry(*options.symmetry);
      if (!s) throw ConfigError("--symmetry", "expected dp, se23, se3r3 or all");
      cfg.symmetries = {*s};
    }
  }
  if (options.trials) {
    if (*options.trials < 1) throw ConfigError("--trials", "must be a positive integer");
    cfg.trials = *options.trials;
  }
  if (options.seed) cfg.seed = *options.seed;

  experiment = Experiment::Transient;
  if (options.experiment) {
    const auto e = parse_experiment(*options.experiment);
    if (!e) throw ConfigError("--experiment", "expected transient, asymptotic or custom");
    experiment = *e;
  }
  switch (experiment) {
    case Experiment::Transient:
      cfg.process_std = 0.0;
      break;
    case Experiment::Asymptotic:
      cfg.init_std = {0.0, 0.0, 0.0};
      break;
    case Experiment::Custom:
      break;
  }
  validate(cfg);
  return cfg;
}

}  // namespace

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  SimConfig cfg;
  Experiment experiment{};
  try {
    cfg = resolve_config(options, experiment);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }

  const fs::path dir = options.out;
  const fs::path manifest_path = dir / "manifest.json";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "cannot create output directory " << dir << ": " << ec.message() << '\n';
    return 3;
  }
  std::ofstream manifest_file(manifest_path);
  if (!manifest_file) {
    err << "output directory " << dir << " is not writable\n";
    return 3;
  }

  CampaignResult result;
  try {
    result = run_campaign(cfg, thread_count(options));
  } catch (const std::exception& e) {
    err << "campaign failed: " << e.what() << '\n';
    return 4;
  }

  auto write = [&](const char* name, auto&& writer) {
    std::ofstream f(dir / name);
    writer(f, result);
    f.flush();
    if (!f) throw std::runtime_error(std::string("failed writing ") + name);
  };
  nlohmann::json outputs = {{"summary", "summary.csv"}, {"rmse", "rmse.csv"}};
  try {
    if (!options.summary_only) {
      write("trials.csv", write_trials_csv);
      outputs["trials"] = "trials.csv";
    }
    write("summary.csv", write_summary_csv);
    write("rmse.csv", write_rmse_csv);
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 3;
  }

  nlohmann::json campaigns = nlohmann::json::array();
  for (const SymmetrySummary& s : result.summaries) {
    const double rate = static_cast<double>(s.diverged) / cfg.trials;
    if (rate > 0.5) {
      err << "warning: " << to_string(s.symmetry) << " diverged in " << s.diverged << " of " << cfg.trials
          << " trials\n";
    }
    campaigns.push_back({{"symmetry", std::string(to_string(s.symmetry))},
                         {"trials", cfg.trials},
                         {"diverged", s.diverged},
                         {"rmse_median", format_double(s.rmse_p50)},
                         {"summary", "summary.csv"}});
    out << std::left << std::setw(6) << to_string(s.symmetry) << " trials=" << cfg.trials
        << " diverged=" << s.diverged << " rmse_p50=" << format_double(s.rmse_p50) << '\n';
  }

  const nlohmann::json manifest = {{"tool", "eqr"},
                                   {"version", kToolVersion},
                                   {"timestamp", utc_timestamp()},
                                   {"experiment", std::string(to_string(experiment))},
                                   {"config", config_to_json(cfg)},
                                   {"outputs", outputs},
                                   {"campaigns", campaigns}};
  manifest_file << manifest.dump(2) << '\n';
  if (!manifest_file) {
    err << "failed writing manifest.json\n";
    return 3;
  }
  return 0;
}

int cmd_verify(std::ostream& out, const OracleOptions& options) {
  const std::vector<CheckResult> results = run_oracle_suite(options);
  bool ok = true;
  out << std::left << std::setw(50) << "check" << std::setw(8) << "status" << std::setw(14) << "residual"
      << "threshold\n";
  for (const CheckResult& r : results) {
    char residual[32];
    char threshold[32];
    std::snprintf(residual, sizeof residual, "%.3e", r.residual);
    std::snprintf(threshold, sizeof threshold, "%s %.1e", r.lower_bound ? ">" : "<=", r.threshold);
    out << std::left << std::setw(50) << r.name << std::setw(8) << (r.passed ? "PASS" : "FAIL") << std::setw(14)
        << residual << threshold << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace eqr::cli
