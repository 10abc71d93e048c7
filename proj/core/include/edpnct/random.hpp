#pragma once

#include <cstdint>
#include <limits>

namespace edpnct {

// Counter-based generator (splitmix64). Cheap to construct, so every
// (entity, instant, purpose) tuple can own an independent stream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<std::uint64_t>::max();
  }

 private:
  std::uint64_t state_;
};

enum class StreamPurpose : std::uint64_t {
  kMeterNoise = 1,
  kNoiseSplit = 2,
  kMasterSelect = 3,
  kMasterDrop = 4,
  kSynthTrace = 5,
  kExperimentRun = 6,
};

// Root of all randomness in a run. Substreams are keyed by
// (seed, entity id, instant, purpose) so distinct actors never share a
// stream and replays are exact.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed) {}

  SplitMix64 substream(std::uint64_t entity, std::uint64_t instant,
                       StreamPurpose purpose) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// Derives the seed for run r of a multi-run experiment. Run 0 keeps the
// base seed so a single run and an experiment of one run coincide.
std::uint64_t derive_run_seed(std::uint64_t base_seed, int run_index);

// Inverse-CDF Laplace(0, scale) sample; returns 0 when scale == 0.
double sample_laplace(double scale, SplitMix64& rng);

// Uniform double in [0, 1).
double uniform01(SplitMix64& rng);

}  // namespace edpnct
