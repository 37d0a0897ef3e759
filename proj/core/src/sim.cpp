#include "eqr/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

namespace eqr {

std::string_view to_string(TrajectoryKind kind) {
  return kind == TrajectoryKind::Hover ? "hover" : "lissajous";
}

std::optional<TrajectoryKind> parse_trajectory(std::string_view label) {
  if (label == "hover") return TrajectoryKind::Hover;
  if (label == "lissajous") return TrajectoryKind::Lissajous;
  return std::nullopt;
}

FlatTrajectory make_trajectory(TrajectoryKind kind) {
  return kind == TrajectoryKind::Hover ? hover_trajectory() : lissajous_trajectory();
}

int SimConfig::steps() const {
  return static_cast<int>(std::ceil(duration / dt - 1e-9));
}

void validate(const SimConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw std::invalid_argument("dt must be positive");
  if (!(cfg.duration > 0.0) || !std::isfinite(cfg.duration)) throw std::invalid_argument("duration must be positive");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (cfg.symmetries.empty()) throw std::invalid_argument("symmetries must not be empty");
  if (!(cfg.init_std.rot >= 0.0 && cfg.init_std.pos >= 0.0 && cfg.init_std.vel >= 0.0)) {
    throw std::invalid_argument("init_std entries must be non-negative");
  }
  if (!(cfg.process_std >= 0.0)) throw std::invalid_argument("process_std must be non-negative");
  validate(cfg.lqr);
  validate(cfg.phys);
}

// ---------------------------------------------------------------------------
// Control and integration
// ---------------------------------------------------------------------------

ControlInput control_step(Symmetry symmetry, const QuadState& state, const TrajectorySample& sample, const Mat49& K,
                          const ControlInput& feedforward) {
  const GroupElement E = equivariant_error(symmetry, sample.state, state);
  if (rotation_angle(E.Q) >= kChartExitAngle) throw ChartExit("attitude error left the logarithm chart");
  const Vec9 eps = group_log(E).coords;
  return ControlInput::from_vector(feedforward.as_vector() - K * eps);
}

ControlInput control_step(Symmetry symmetry, const QuadState& state, const TrajectorySample& sample, const Mat49& K) {
  return control_step(symmetry, state, sample, K, sample.input);
}

QuadState integrate_step(const QuadState& s, const ControlInput& u, const Vec9& noise, double dt,
                         const PhysParams& params) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_step: dt must be positive");
  const Vec3 rate = u.omega + noise.segment<3>(0);
  const Vec3 nx = noise.segment<3>(3);
  const Vec3 nv = noise.segment<3>(6);

  auto accel = [&](double tau, const Vec3& v) {
    const Vec3 thrust_dir = s.R * so3_exp(tau * rate) * kE3;
    return Vec3(-u.thrust * thrust_dir + params.gravity * kE3 - params.drag * v + nv);
  };

  const Vec3 k1x = s.v + nx;
  const Vec3 k1v = accel(0.0, s.v);
  const Vec3 v2 = s.v + 0.5 * dt * k1v;
  const Vec3 k2x = v2 + nx;
  const Vec3 k2v = accel(0.5 * dt, v2);
  const Vec3 v3 = s.v + 0.5 * dt * k2v;
  const Vec3 k3x = v3 + nx;
  const Vec3 k3v = accel(0.5 * dt, v3);
  const Vec3 v4 = s.v + dt * k3v;
  const Vec3 k4x = v4 + nx;
  const Vec3 k4v = accel(dt, v4);

  QuadState out;
  out.R = project_to_so3(s.R * so3_exp(dt * rate));
  out.x = s.x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  out.v = s.v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  return out;
}

QuadState perturb_initial(const QuadState& d, const PerturbationStd& stds, StreamRng& rng) {
  Vec3 eta_r, eta_x, eta_v;
  for (int i = 0; i < 3; ++i) eta_r(i) = rng.normal(0.0, stds.rot);
  for (int i = 0; i < 3; ++i) eta_x(i) = rng.normal(0.0, stds.pos);
  for (int i = 0; i < 3; ++i) eta_v(i) = rng.normal(0.0, stds.vel);
  return {d.R * so3_exp(eta_r), d.x + eta_x, d.v + eta_v};
}

TrackingError tracking_error(const QuadState& d, const QuadState& s) {
  const double angle = rotation_angle(d.R.transpose() * s.R);
  return {angle * angle, (s.x - d.x).squaredNorm(), (s.v - d.v).squaredNorm()};
}

double TrialLog::rmse() const {
  if (diverged || records.empty()) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& r : records) sum += r.err_total_sq;
  return std::sqrt(sum / static_cast<double>(records.size()));
}

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

Reference build_reference(const SimConfig& cfg) {
  const FlatTrajectory traj = make_trajectory(cfg.trajectory);
  const int steps = cfg.steps();
  Reference ref;
  ref.samples = sample_trajectory(traj, cfg.dt, steps, cfg.phys);
  ref.hold.reserve(ref.samples.size());
  for (int k = 0; k < steps; ++k) ref.hold.push_back(flat_to_sample(traj, (k + 0.5) * cfg.dt, cfg.phys).input);
  ref.hold.push_back(ref.samples.back().input);
  return ref;
}

namespace {

bool finite(const QuadState& s) {
  return s.R.allFinite() && s.x.allFinite() && s.v.allFinite();
}

std::uint64_t fold(std::uint64_t h, std::uint64_t value) {
  return splitmix64_mix(h ^ (value + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)));
}

std::uint64_t bits(double x) {
  std::uint64_t b;
  std::memcpy(&b, &x, sizeof b);
  return b;
}

}  // namespace

TrialLog run_trial(const SimConfig& cfg, Symmetry symmetry, int trial_index, const Reference& ref,
                   const GainSchedule& gains) {
  const int steps = cfg.steps();
  const auto trial = static_cast<std::uint64_t>(trial_index);
  StreamRng init_rng(cfg.seed, trial, StreamRng::kInitialPerturbation);
  StreamRng noise_rng(cfg.seed, trial, StreamRng::kProcessNoise);

  TrialLog log;
  log.trial = trial_index;
  log.symmetry = symmetry;
  log.records.reserve(static_cast<std::size_t>(steps) + 1);

  QuadState X = perturb_initial(ref.samples.front().state, cfg.init_std, init_rng);

  std::uint64_t fp = fold(init_rng.key(), noise_rng.key());
  for (int i = 0; i < 9; ++i) fp = fold(fp, bits(X.R.data()[i]));
  for (int i = 0; i < 3; ++i) fp = fold(fold(fp, bits(X.x(i))), bits(X.v(i)));
  log.stream_fingerprint = fp;

  for (int k = 0; k <= steps; ++k) {
    const TrajectorySample& s = ref.samples[static_cast<std::size_t>(k)];
    if (!finite(X)) {
      log.diverged = true;
      break;
    }
    log.max_orthogonality_error = std::max(log.max_orthogonality_error, orthogonality_error(X.R));

    ControlInput u;
    const ControlInput& ff = ref.hold[static_cast<std::size_t>(k)];
    try {
      u = control_step(symmetry, X, s, gains.K[static_cast<std::size_t>(k)], ff);
    } catch (const ChartExit&) {
      log.diverged = true;
      break;
    }
    if (cfg.clamp_thrust && physical_thrust(u.thrust, X.R, X.v, cfg.phys) < 0.0) {
      u.thrust = compensate_thrust(0.0, X.R, X.v, cfg.phys);
    }

    const TrackingError err = tracking_error(s.state, X);
    log.records.push_back({s.t, err.att_sq, err.pos_sq, err.vel_sq, err.total_sq(), (u.omega - ff.omega).norm(),
                           std::abs(u.thrust - ff.thrust)});
    if (k == steps) break;

    Vec9 noise = Vec9::Zero();
    if (cfg.process_std > 0.0) {
      for (int i = 0; i < 9; ++i) noise(i) = noise_rng.normal(0.0, cfg.process_std);
    }
    X = integrate_step(X, u, noise, cfg.dt, cfg.phys);
  }
  return log;
}

TrialLog run_trial(const SimConfig& cfg, Symmetry symmetry, int trial_index) {
  validate(cfg);
  const Reference ref = build_reference(cfg);
  const GainSchedule gains = schedule_gains(ref.samples, symmetry, cfg.lqr, cfg.dt, cfg.phys);
  return run_trial(cfg, symmetry, trial_index, ref, gains);
}

// ---------------------------------------------------------------------------
// Campaigns
// ---------------------------------------------------------------------------

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty set");
  if (!(p >= 0.0 && p <= 100.0)) throw std::invalid_argument("percentile rank must lie in [0, 100]");
  std::sort(values.begin(), values.end());
  const double rank = p / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const double frac = rank - static_cast<double>(lo);
  if (frac == 0.0 || lo + 1 >= values.size()) return values[lo];
  const double a = values[lo];
  const double b = values[lo + 1];
  if (std::isinf(b)) return b;
  return a + frac * (b - a);
}

SymmetrySummary summarize(Symmetry symmetry, const std::vector<const TrialLog*>& logs, int steps, double dt) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  SymmetrySummary out;
  out.symmetry = symmetry;
  std::vector<double> column(logs.size());
  for (int k = 0; k <= steps; ++k) {
    for (std::size_t i = 0; i < logs.size(); ++i) {
      const auto& recs = logs[i]->records;
      column[i] = static_cast<std::size_t>(k) < recs.size() ? recs[static_cast<std::size_t>(k)].err_total_sq : kInf;
    }
    out.t.push_back(k * dt);
    out.p05.push_back(percentile(column, 5.0));
    out.p50.push_back(percentile(column, 50.0));
    out.p95.push_back(percentile(column, 95.0));
  }
  for (const TrialLog* log : logs) {
    out.rmse.push_back(log->rmse());
    if (log->diverged) ++out.diverged;
  }
  out.rmse_p20 = percentile(out.rmse, 20.0);
  out.rmse_p50 = percentile(out.rmse, 50.0);
  out.rmse_p80 = percentile(out.rmse, 80.0);
  return out;
}

CampaignResult run_campaign(const SimConfig& cfg, unsigned threads) {
  validate(cfg);
  const Reference ref = build_reference(cfg);
  const int steps = cfg.steps();

  std::vector<GainSchedule> gains;
  for (Symmetry s : cfg.symmetries) gains.push_back(schedule_gains(ref.samples, s, cfg.lqr, cfg.dt, cfg.phys));

  const std::size_t n_sym = cfg.symmetries.size();
  const auto n_trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t total = n_sym * n_trials;

  CampaignResult result;
  result.logs.resize(total);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t si = job / n_trials;
      const int trial = static_cast<int>(job % n_trials);
      result.logs[job] = run_trial(cfg, cfg.symmetries[si], trial, ref, gains[si]);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (std::size_t si = 0; si < n_sym; ++si) {
    std::vector<const TrialLog*> group;
    group.reserve(n_trials);
    for (std::size_t i = 0; i < n_trials; ++i) group.push_back(&result.logs[si * n_trials + i]);
    result.summaries.push_back(summarize(cfg.symmetries[si], group, steps, cfg.dt));
  }
  return result;
}

}  // namespace eqr
