#include "edpnct/trace.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "edpnct/random.hpp"

namespace edpnct {
namespace {

double parse_value(const std::string& field, const char* what) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("malformed trace: bad ") + what);
  }
  if (pos != field.size())
    throw std::invalid_argument(std::string("malformed trace: bad ") + what);
  return v;
}

}  // namespace

EnergyTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path.string());

  std::string line;
  // Skip comment lines (e.g. "# seed=...") before the header.
  do {
    if (!std::getline(in, line))
      throw std::invalid_argument("malformed trace: missing header");
  } while (!line.empty() && line[0] == '#');
  if (line.rfind("meter_id", 0) != 0)
    throw std::invalid_argument("malformed trace: missing header");

  EnergyTrace trace;
  int expected_cols = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream row(line);
    std::string field;
    if (!std::getline(row, field, ','))
      throw std::invalid_argument("malformed trace");
    parse_value(field, "meter id");
    int cols = 0;
    while (std::getline(row, field, ',')) {
      double v = parse_value(field, "reading");
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("invalid reading");
      trace.values.push_back(v);
      ++cols;
    }
    if (expected_cols < 0)
      expected_cols = cols;
    else if (cols != expected_cols)
      throw std::invalid_argument("malformed trace");
    ++trace.n_meters;
  }
  if (trace.n_meters == 0 || expected_cols <= 0)
    throw std::invalid_argument("empty trace");
  trace.n_instants = expected_cols;
  return trace;
}

void write_trace(const EnergyTrace& trace, const std::filesystem::path& path,
                 std::uint64_t seed) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write trace file: " + path.string());
  if (seed != 0) out << "# seed=" << seed << "\n";
  out << "meter_id";
  for (int t = 0; t < trace.n_instants; ++t) out << ",t" << t;
  out << "\n";
  char buf[32];
  for (int i = 0; i < trace.n_meters; ++i) {
    out << i;
    for (int t = 0; t < trace.n_instants; ++t) {
      std::snprintf(buf, sizeof(buf), "%.17g", trace(i, t));
      out << ',' << buf;
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<double> synth_profile(const SynthProfileSpec& spec, int n_days,
                                  SplitMix64& rng) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_days) * kSlotsPerDay);
  for (int day = 0; day < n_days; ++day) {
    bool weekend = (day % 7) >= 5;
    for (int slot = 0; slot < kSlotsPerDay; ++slot) {
      double hour = slot / 6.0;
      double dm = hour - spec.morning_peak_hour;
      double de = hour - spec.evening_peak_hour;
      double v = spec.base_load +
                 spec.morning_peak_kwh * std::exp(-0.5 * dm * dm / (1.1 * 1.1)) +
                 spec.evening_peak_kwh * std::exp(-0.5 * de * de / (1.5 * 1.5));
      if (weekend) v *= spec.weekend_factor;
      if (spec.jitter > 0.0) {
        v *= 1.0 + spec.jitter * (2.0 * uniform01(rng) - 1.0);
        // Rare appliance spike (kettle/shower/EV): bounded so the point-wise
        // sensitivity of a large corpus is stable.
        if (uniform01(rng) < 0.003) {
          double spike = -0.9 * std::log(1.0 - uniform01(rng));
          v += 0.5 + std::min(spike, 4.5);
        }
      }
      values.push_back(v);
    }
  }
  return values;
}

EnergyTrace synth_trace(int n_meters, int n_days, std::uint64_t seed) {
  if (n_meters < 1) throw std::invalid_argument("n_meters must be >= 1");
  if (n_days < 1) throw std::invalid_argument("n_days must be >= 1");
  RandomSource randomness(seed);
  EnergyTrace trace = EnergyTrace::zeros(n_meters, n_days * kSlotsPerDay);
  for (int i = 0; i < n_meters; ++i) {
    auto rng = randomness.substream(static_cast<std::uint64_t>(i), 0,
                                    StreamPurpose::kSynthTrace);
    SynthProfileSpec spec;
    spec.base_load = 0.03 + 0.06 * uniform01(rng);
    spec.morning_peak_kwh = 0.08 + 0.22 * uniform01(rng);
    spec.morning_peak_hour = 6.5 + 2.0 * uniform01(rng);
    spec.evening_peak_kwh = 0.15 + 0.3 * uniform01(rng);
    spec.evening_peak_hour = 18.0 + 2.5 * uniform01(rng);
    spec.weekend_factor = 1.0 + 0.35 * uniform01(rng);
    spec.jitter = 0.2 + 0.25 * uniform01(rng);
    auto profile = synth_profile(spec, n_days, rng);
    std::copy(profile.begin(), profile.end(),
              trace.values.begin() +
                  static_cast<std::size_t>(i) * trace.n_instants);
  }
  return trace;
}

}  // namespace edpnct
