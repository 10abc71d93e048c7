#include <benchmark/benchmark.h>

#include "edpnct/attacks.hpp"
#include "edpnct/noise.hpp"
#include "edpnct/sim.hpp"

using namespace edpnct;

static void BM_SampleMeterNoise(benchmark::State& state) {
  auto params = PrivacyParams::create(1.0, 2.0, state.range(0));
  RandomSource rs(1);
  int i = 0;
  for (auto _ : state) {
    auto rng = rs.substream(0, i++, StreamPurpose::kMeterNoise);
    benchmark::DoNotOptimize(sample_meter_noise(params, rng).value);
  }
}
BENCHMARK(BM_SampleMeterNoise)->Arg(1)->Arg(200)->Arg(2000);

static void BM_MeterStep(benchmark::State& state) {
  auto params = PrivacyParams::create(1.0, 2.0, 200);
  RandomSource rs(2);
  MeterState meter;
  meter.meter_id = 1;
  meter.period_length = kSlotsPerDay;
  std::vector<int> masters{3, 5, 7, 9};
  int t = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(meter_step(meter, 0.5, masters, params, rs, t++));
}
BENCHMARK(BM_MeterStep);

static void BM_SelectMasters(benchmark::State& state) {
  RandomSource rs(3);
  int t = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        select_masters(2000, static_cast<int>(state.range(0)), t++, rs));
}
BENCHMARK(BM_SelectMasters)->Arg(1)->Arg(4)->Arg(16);

static void BM_RunSimulationDay(benchmark::State& state) {
  SimConfig cfg;
  cfg.n_meters = static_cast<int>(state.range(0));
  cfg.m_masters = 4;
  cfg.instants_per_period = kSlotsPerDay;
  cfg.n_periods = 1;
  cfg.seed = 4;
  cfg.record_share_messages = false;
  auto trace = synth_trace(cfg.n_meters, 1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg, trace));
  state.SetItemsProcessed(state.iterations() * cfg.n_meters * kSlotsPerDay);
}
BENCHMARK(BM_RunSimulationDay)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_FilteringAttack(benchmark::State& state) {
  auto trace = synth_trace(1, 30, 5);
  std::vector<double> profile(trace.row(0), trace.row(0) + trace.n_instants);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        filtering_attack(profile, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FilteringAttack)->Arg(1)->Arg(6)->Arg(24);

static void BM_CollusionAttack(benchmark::State& state) {
  SimConfig cfg;
  cfg.n_meters = 100;
  cfg.m_masters = 2;
  cfg.instants_per_period = kSlotsPerDay;
  cfg.n_periods = 7;
  cfg.seed = 6;
  cfg.record_share_messages = false;
  auto trace = synth_trace(cfg.n_meters, 7, 6);
  auto transcript = run_simulation(cfg, trace);
  CollusionScenario sc;
  sc.transcript = &transcript;
  for (int i = 0; i < 30; ++i) sc.malicious.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(collusion_attack(sc));
  state.SetItemsProcessed(state.iterations() * transcript.masked.n_instants);
}
BENCHMARK(BM_CollusionAttack)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
