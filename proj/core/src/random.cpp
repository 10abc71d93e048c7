#include "edpnct/random.hpp"

#include <cmath>

namespace edpnct {
namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

}  // namespace

SplitMix64 RandomSource::substream(std::uint64_t entity, std::uint64_t instant,
                                   StreamPurpose purpose) const {
  std::uint64_t key = mix64(seed_);
  key = combine(key, entity);
  key = combine(key, instant);
  key = combine(key, static_cast<std::uint64_t>(purpose));
  return SplitMix64(key);
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, int run_index) {
  if (run_index == 0) return base_seed;
  std::uint64_t key = mix64(base_seed);
  key = combine(key, static_cast<std::uint64_t>(run_index));
  key = combine(key, static_cast<std::uint64_t>(StreamPurpose::kExperimentRun));
  return key;
}

double uniform01(SplitMix64& rng) {
  // 53 high bits -> [0, 1)
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sample_laplace(double scale, SplitMix64& rng) {
  if (scale == 0.0) return 0.0;
  double u = uniform01(rng) - 0.5;  // (-0.5, 0.5)
  double mag = -scale * std::log(1.0 - 2.0 * std::abs(u));
  return u < 0.0 ? -mag : mag;
}

}  // namespace edpnct
