#pragma once

#include <span>
#include <utility>
#include <vector>

#include "edpnct/sim.hpp"

namespace edpnct {

// Moving-average reconstruction of one meter's masked profile. The first and
// last P entries are copied from the source verbatim.
struct FilterProfile {
  int meter_id = -1;
  int half_window = 0;  // P
  std::vector<double> values;
};

// Clamps negative masked readings to zero (consumption is non-negative).
std::vector<double> remove_negative_noise(std::span<const double> profile);

// Centered moving mean with half-window P over 2P+1 values; ends copied.
// `literal_divisor` divides the window sum by P instead of 2P+1 (a published
// variant of the formula); it rescales the interior and leaves Pearson
// correlation unchanged. Throws when 2P+1 exceeds the profile length.
FilterProfile filtering_attack(std::span<const double> masked_profile, int P,
                               bool literal_divisor = false);

// Sweeps P over [p_min, p_max] and returns the (P, correlation) maximizing
// the Pearson correlation of the filtered profile with the original; ties
// break toward the smaller P.
std::pair<int, double> best_fit_window(std::span<const double> masked_profile,
                                       std::span<const double> original_profile,
                                       int p_min, int p_max);

struct CollusionScenario {
  std::vector<int> malicious;  // colluding meter ids
  const SimTranscript* transcript = nullptr;
};

struct LeakStats {
  long long reconstructed_points = 0;
  long long honest_points_total = 0;
  double leak_fraction = 0.0;
};

// All-or-nothing collusion: at instants where every selected master is
// malicious, the adversary holds all noise shares and reconstructs every
// honest meter's reading. Colluders' own points are not counted.
LeakStats collusion_attack(const CollusionScenario& scenario);

// C(c, m) / C(N, m): probability a uniform m-subset of masters is entirely
// malicious. Zero when c < m.
double analytic_leak(int n_meters, int malicious_count, int m_masters);

}  // namespace edpnct
