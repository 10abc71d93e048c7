#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edpnct/aggregator.hpp"
#include "edpnct/meter.hpp"
#include "edpnct/metrics.hpp"
#include "edpnct/noise.hpp"
#include "edpnct/trace.hpp"

namespace edpnct {

struct SimConfig {
  int n_meters = 200;
  int m_masters = 1;
  int instants_per_period = kSlotsPerDay;  // 6, 144 or 1008
  int n_periods = 30;
  double epsilon = 1.0;
  Tariff tariff;
  std::uint64_t seed = 1;
  double master_drop_probability = 0.0;
  int runs = 1;
  // Negative means "compute point-wise sensitivity from the trace".
  // Zero gives the degenerate noiseless mode.
  double sensitivity = -1.0;
  // Share messages are bulky; large sweeps can skip recording them.
  bool record_share_messages = true;

  int total_instants() const { return instants_per_period * n_periods; }
};

// Full observable record of one run; replayable bit-for-bit from the seed.
struct SimTranscript {
  SimConfig config;
  PrivacyParams params;
  EnergyTrace ground_truth;
  EnergyTrace masked;     // same shape; values may be negative
  EnergyTrace net_noise;  // per (meter, instant) net noise nu_t
  std::vector<std::vector<int>> masters;          // per instant, m ids
  std::vector<std::vector<double>> master_reports;  // per instant; NaN = dropped
  std::vector<NoiseShareMessage> share_messages;
  std::vector<LoadReport> load_reports;
  std::vector<BillStatement> bills;  // n_periods * n_meters, period-major
};

// Uniformly random m-subset of {0..n_meters-1}, independent across instants.
std::vector<int> select_masters(int n_meters, int m_masters,
                                std::uint64_t instant,
                                const RandomSource& randomness);

// Runs the full protocol over the trace: per instant, meters step, shares
// route to the selected masters, masters aggregate (reports dropped with
// master_drop_probability), the aggregator recovers load; per period,
// billing and error settlement.
SimTranscript run_simulation(const SimConfig& config,
                             const EnergyTrace& trace);

struct ExperimentResult {
  MetricBundle metrics;
  SimTranscript first_run;  // transcript of the run with the base seed
};

// config.runs independent runs with derived seeds, metrics averaged.
// malicious_count > 0 additionally scores the collusion leak per run
// (malicious set = the first c meter ids).
ExperimentResult run_experiment(const SimConfig& config,
                                const EnergyTrace& trace,
                                int malicious_count = 0);

}  // namespace edpnct
