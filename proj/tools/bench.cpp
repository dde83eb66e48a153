// Serial reference against the OpenMP kernels on the sampling batteries.

#include <benchmark/benchmark.h>

#include "conelab/battery.hpp"
#include "conelab/iso.hpp"
#include "conelab/psd.hpp"

using namespace conelab;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void set_label(benchmark::State& state) { state.SetLabel(state.range(0) ? "openmp" : "serial"); }

void BM_OrderIsoBattery(benchmark::State& state) {
  const auto c = cones::product(cones::square(), cones::polygonal(5));
  const auto f = make_identity(c);
  for (auto _ : state) benchmark::DoNotOptimize(check_order_iso_sampled(f, 2000, 1, mode(state)));
  set_label(state);
}

void BM_ConjugationBattery(benchmark::State& state) {
  const auto a = psd::SymMatrix::diagonal({3.0, 2.0, 1.0, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(psd::conjugation_battery(a, 2000, 1, {}, mode(state)));
  set_label(state);
}

void BM_EngagementTrials(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(psd::engagement_trials(1000, 1, mode(state)));
  set_label(state);
}

}  // namespace

BENCHMARK(BM_OrderIsoBattery)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConjugationBattery)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EngagementTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
