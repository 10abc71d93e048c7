#pragma once

#include <vector>

#include "edpnct/random.hpp"
#include "edpnct/trace.hpp"

namespace edpnct {

// Privacy budget and derived Laplace scale. scale = sensitivity / epsilon.
struct PrivacyParams {
  double epsilon = 1.0;
  double sensitivity = 0.0;  // S_pw, kWh
  double scale = 0.0;        // lambda, kWh
  int n_meters = 1;

  // Validates epsilon > 0, sensitivity >= 0, n_meters >= 1.
  static PrivacyParams create(double epsilon, double sensitivity,
                              int n_meters);
};

struct NoiseSample {
  double value = 0.0;  // kWh, signed
};

// Point-wise sensitivity: max over all meters and instants of |x_{i,t}|.
// Throws on an empty trace.
double compute_sensitivity(const EnergyTrace& trace);

// One meter's noise contribution: difference of two independent Gamma draws
// with shape 1/N and scale lambda. The sum of N such samples is
// Laplace(0, lambda). scale == 0 returns exactly 0.
NoiseSample sample_meter_noise(const PrivacyParams& params, SplitMix64& rng);

// Additive secret-sharing of a noise value into m shares: m-1 i.i.d.
// Laplace(0, share_scale) blinds plus a closing share. Shares sum to the
// noise within 1e-9 relative. Throws when m < 1.
std::vector<double> split_noise(NoiseSample noise, int m, double share_scale,
                                SplitMix64& rng);

}  // namespace edpnct
