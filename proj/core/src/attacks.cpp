#include "edpnct/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edpnct/metrics.hpp"

namespace edpnct {

std::vector<double> remove_negative_noise(std::span<const double> profile) {
  std::vector<double> clamped(profile.begin(), profile.end());
  for (double& v : clamped) v = std::max(v, 0.0);
  return clamped;
}

FilterProfile filtering_attack(std::span<const double> masked_profile, int P,
                               bool literal_divisor) {
  const int t_len = static_cast<int>(masked_profile.size());
  if (P < 1) throw std::invalid_argument("window half-size must be >= 1");
  if (2 * P + 1 > t_len) throw std::invalid_argument("window exceeds profile");
  FilterProfile out;
  out.half_window = P;
  out.values.assign(masked_profile.begin(), masked_profile.end());
  const double divisor = literal_divisor ? static_cast<double>(P)
                                         : static_cast<double>(2 * P + 1);
  // Sliding window sum over the interior [P, T-P).
  double window = 0.0;
  for (int j = 0; j < 2 * P + 1; ++j) window += masked_profile[j];
  for (int j = P; j < t_len - P; ++j) {
    out.values[j] = window / divisor;
    if (j + P + 1 < t_len)
      window += masked_profile[j + P + 1] - masked_profile[j - P];
  }
  return out;
}

std::pair<int, double> best_fit_window(std::span<const double> masked_profile,
                                       std::span<const double> original_profile,
                                       int p_min, int p_max) {
  if (p_min > p_max) throw std::invalid_argument("empty window range");
  int best_p = -1;
  double best_r = -2.0;
  for (int p = p_min; p <= p_max; ++p) {
    FilterProfile filtered = filtering_attack(masked_profile, p);
    double r;
    try {
      r = pearson_corr(filtered.values, original_profile);
    } catch (const std::invalid_argument&) {
      continue;  // degenerate filtered profile
    }
    if (r > best_r) {
      best_r = r;
      best_p = p;
    }
  }
  if (best_p < 0) throw std::invalid_argument("no valid window in range");
  return {best_p, best_r};
}

LeakStats collusion_attack(const CollusionScenario& scenario) {
  if (scenario.transcript == nullptr)
    throw std::invalid_argument("scenario missing transcript");
  const SimTranscript& tr = *scenario.transcript;
  const int n = tr.config.n_meters;
  const int total = tr.config.total_instants();

  std::vector<char> is_malicious(static_cast<std::size_t>(n), 0);
  for (int id : scenario.malicious) {
    if (id < 0 || id >= n)
      throw std::invalid_argument("malicious id outside meter range");
    is_malicious[id] = 1;
  }
  const int c = static_cast<int>(std::count(is_malicious.begin(),
                                            is_malicious.end(), 1));

  LeakStats stats;
  stats.honest_points_total =
      static_cast<long long>(n - c) * static_cast<long long>(total);
  long long leaked_instants = 0;
  for (int t = 0; t < total; ++t) {
    bool all_malicious = true;
    for (int master : tr.masters[t]) {
      if (!is_malicious[master]) {
        all_malicious = false;
        break;
      }
    }
    if (!all_malicious) continue;
    ++leaked_instants;
    // The colluders hold every share, so the net noise of each honest meter
    // is known exactly and the reading follows from the masked stream.
    for (int i = 0; i < n; ++i) {
      if (is_malicious[i]) continue;
      double reconstructed = tr.masked(i, t) - tr.net_noise(i, t);
      if (std::abs(reconstructed - tr.ground_truth(i, t)) <= 1e-6)
        ++stats.reconstructed_points;
    }
  }
  if (stats.honest_points_total > 0) {
    stats.leak_fraction = static_cast<double>(stats.reconstructed_points) /
                          static_cast<double>(stats.honest_points_total);
  } else {
    // No honest data; report the fraction of fully covered instants.
    stats.leak_fraction =
        static_cast<double>(leaked_instants) / static_cast<double>(total);
  }
  return stats;
}

double analytic_leak(int n_meters, int malicious_count, int m_masters) {
  if (m_masters < 1 || m_masters > n_meters)
    throw std::invalid_argument("m_masters must be in [1, n_meters]");
  if (malicious_count < 0 || malicious_count > n_meters)
    throw std::invalid_argument("malicious_count must be in [0, n_meters]");
  if (malicious_count < m_masters) return 0.0;
  double p = 1.0;
  for (int j = 0; j < m_masters; ++j)
    p *= static_cast<double>(malicious_count - j) /
         static_cast<double>(n_meters - j);
  return p;
}

}  // namespace edpnct
