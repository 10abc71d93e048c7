#include "edpnct/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace edpnct {

PrivacyParams PrivacyParams::create(double epsilon, double sensitivity,
                                    int n_meters) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(sensitivity >= 0.0))
    throw std::invalid_argument("sensitivity must be >= 0");
  if (n_meters < 1) throw std::invalid_argument("n_meters must be >= 1");
  return PrivacyParams{epsilon, sensitivity, sensitivity / epsilon, n_meters};
}

double compute_sensitivity(const EnergyTrace& trace) {
  if (trace.n_meters <= 0 || trace.n_instants <= 0 || trace.values.empty())
    throw std::invalid_argument("empty trace");
  double max_abs = 0.0;
  for (double v : trace.values) max_abs = std::max(max_abs, std::abs(v));
  return max_abs;
}

NoiseSample sample_meter_noise(const PrivacyParams& params, SplitMix64& rng) {
  if (params.scale == 0.0) return NoiseSample{0.0};
  std::gamma_distribution<double> gamma(1.0 / params.n_meters, params.scale);
  double g = gamma(rng);
  double g_prime = gamma(rng);
  return NoiseSample{g - g_prime};
}

std::vector<double> split_noise(NoiseSample noise, int m, double share_scale,
                                SplitMix64& rng) {
  if (m < 1) throw std::invalid_argument("at least one master required");
  std::vector<double> shares(static_cast<std::size_t>(m));
  double blinded = 0.0;
  for (int k = 0; k + 1 < m; ++k) {
    shares[k] = sample_laplace(share_scale, rng);
    blinded += shares[k];
  }
  shares[m - 1] = noise.value - blinded;  // closing share
  return shares;
}

}  // namespace edpnct
