#include <benchmark/benchmark.h>

#include "eqr/lqr.hpp"
#include "eqr/sim.hpp"

using namespace eqr;

namespace {

const PhysParams kParams;

Symmetry symmetry_arg(const benchmark::State& state) { return kAllSymmetries[static_cast<std::size_t>(state.range(0))]; }

void label(benchmark::State& state) { state.SetLabel(std::string(to_string(symmetry_arg(state)))); }

}  // namespace

static void BM_ExpLog(benchmark::State& state) {
  const Symmetry s = symmetry_arg(state);
  const AlgebraVector v(s, Vec3(0.4, -1.1, 0.7), Vec3(1.0, 2.0, -0.5), Vec3(-0.3, 0.2, 0.9));
  for (auto _ : state) benchmark::DoNotOptimize(group_log(group_exp(v)));
  label(state);
}
BENCHMARK(BM_ExpLog)->DenseRange(0, 2);

static void BM_Linearize(benchmark::State& state) {
  const Symmetry s = symmetry_arg(state);
  const TrajectorySample sample = flat_to_sample(lissajous_trajectory(), 0.8, kParams);
  for (auto _ : state) benchmark::DoNotOptimize(linearize(s, sample, kParams));
  label(state);
}
BENCHMARK(BM_Linearize)->DenseRange(0, 2);

static void BM_NumericLinearize(benchmark::State& state) {
  const Symmetry s = symmetry_arg(state);
  const TrajectorySample sample = flat_to_sample(lissajous_trajectory(), 0.8, kParams);
  for (auto _ : state) benchmark::DoNotOptimize(numeric_linearize(s, sample, kParams));
  label(state);
}
BENCHMARK(BM_NumericLinearize)->DenseRange(0, 2);

static void BM_Discretize(benchmark::State& state) {
  const LinearizedSystem lin = linearize(Symmetry::ExtendedPose, flat_to_sample(lissajous_trajectory(), 0.8, kParams), kParams);
  for (auto _ : state) benchmark::DoNotOptimize(discretize(lin.A, lin.B, 0.01));
}
BENCHMARK(BM_Discretize);

static void BM_DareCold(benchmark::State& state) {
  const LinearizedSystem lin = linearize(Symmetry::ExtendedPose, flat_to_sample(lissajous_trajectory(), 0.8, kParams), kParams);
  const DiscreteSystem d = discretize(lin.A, lin.B, 0.01);
  const LqrWeights w;
  for (auto _ : state) benchmark::DoNotOptimize(solve_dare(d.A, d.B, w.state_cost(), w.input_cost()));
}
BENCHMARK(BM_DareCold)->Unit(benchmark::kMillisecond);

static void BM_GainSchedule(benchmark::State& state) {
  const std::vector<TrajectorySample> samples = sample_trajectory(lissajous_trajectory(), 0.01, 315, kParams);
  for (auto _ : state) benchmark::DoNotOptimize(schedule_gains(samples, symmetry_arg(state), LqrWeights{}, 0.01, kParams));
  label(state);
}
BENCHMARK(BM_GainSchedule)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_Trial(benchmark::State& state) {
  SimConfig cfg;
  cfg.trajectory = TrajectoryKind::Lissajous;
  const Symmetry s = symmetry_arg(state);
  const Reference ref = build_reference(cfg);
  const GainSchedule g = schedule_gains(ref.samples, s, cfg.lqr, cfg.dt, cfg.phys);
  int trial = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(cfg, s, trial++, ref, g));
  label(state);
}
BENCHMARK(BM_Trial)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
