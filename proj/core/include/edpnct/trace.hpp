#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace edpnct {

// Granularity is fixed at 10-minute slots: 6 per hour, 144 per day.
inline constexpr int kSlotsPerHour = 6;
inline constexpr int kSlotsPerDay = 144;
inline constexpr int kSlotsPerWeek = 1008;

// N x T matrix of non-negative consumption readings, kWh per 10-minute slot.
// Row-major: one contiguous row per meter.
struct EnergyTrace {
  int n_meters = 0;
  int n_instants = 0;
  std::vector<double> values;

  double operator()(int meter, int instant) const {
    return values[static_cast<std::size_t>(meter) * n_instants + instant];
  }
  double& operator()(int meter, int instant) {
    return values[static_cast<std::size_t>(meter) * n_instants + instant];
  }
  const double* row(int meter) const {
    return values.data() + static_cast<std::size_t>(meter) * n_instants;
  }

  static EnergyTrace zeros(int n_meters, int n_instants) {
    return EnergyTrace{n_meters, n_instants,
                       std::vector<double>(
                           static_cast<std::size_t>(n_meters) * n_instants)};
  }
};

// Shape parameters of one synthetic household: flat base load plus two
// diurnal peaks, weekend uplift, multiplicative jitter, and rare large
// appliance spikes.
struct SynthProfileSpec {
  double base_load = 0.05;          // kWh per slot
  double morning_peak_kwh = 0.2;    // bump amplitude
  double morning_peak_hour = 7.5;   // hour of day
  double evening_peak_kwh = 0.3;
  double evening_peak_hour = 19.0;
  double weekend_factor = 1.15;
  double jitter = 0.3;              // relative, in [0, 1)
};

// Loads a trace CSV (header: meter_id,t0,t1,...). Rejects negative values
// ("invalid reading") and ragged rows ("malformed trace").
EnergyTrace load_trace(const std::filesystem::path& path);

// Writes the trace CSV with full round-trip precision. `seed` is recorded
// as a "# seed=..." header comment when nonzero.
void write_trace(const EnergyTrace& trace, const std::filesystem::path& path,
                 std::uint64_t seed = 0);

// One household's readings for n_days from an explicit spec. jitter == 0
// disables randomness entirely, so same-weekday daily profiles repeat.
class SplitMix64;
std::vector<double> synth_profile(const SynthProfileSpec& spec, int n_days,
                                  SplitMix64& rng);

// Deterministic synthetic household corpus: per meter a SynthProfileSpec is
// drawn, then 144 readings per day are emitted.
EnergyTrace synth_trace(int n_meters, int n_days, std::uint64_t seed);

}  // namespace edpnct
