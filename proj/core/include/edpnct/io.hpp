#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "edpnct/metrics.hpp"
#include "edpnct/sim.hpp"

namespace edpnct {

// One row of attacks.csv: attack,param,meter_id,metric,value.
struct AttackRecord {
  std::string attack;
  double param = 0.0;
  int meter_id = -1;
  std::string metric;
  double value = 0.0;
};

// Parses a flat key=value configuration file. Keys match SimConfig field
// names (tariff fields inline: unit_price, surcharge_price,
// max_allowed_units). Unknown keys are reported by name.
SimConfig parse_sim_config(const std::filesystem::path& path);

// Emits load.csv, bills.csv, attacks.csv and metrics.json under out_dir.
void write_reports(const SimTranscript& transcript,
                   const MetricBundle& metrics,
                   const std::vector<AttackRecord>& attacks,
                   const std::filesystem::path& out_dir);

void write_attacks_csv(const std::vector<AttackRecord>& attacks,
                       const std::filesystem::path& path, std::uint64_t seed);

// Transcript persistence for the attack subcommands: a directory holding
// meta.json plus masked/ground-truth/net-noise matrices and the per-instant
// master lists.
void save_transcript(const SimTranscript& transcript,
                     const std::filesystem::path& dir);
SimTranscript load_transcript(const std::filesystem::path& dir);

}  // namespace edpnct
