#include <doctest.h>

#include <cmath>
#include <vector>

#include "edpnct/attacks.hpp"
#include "edpnct/metrics.hpp"
#include "stats_utils.hpp"

using namespace edpnct;

TEST_CASE("remove_negative_noise clamps and is idempotent") {
  std::vector<double> profile{1.0, -0.5, 0.0, 2.5, -3.0};
  auto once = remove_negative_noise(profile);
  CHECK(once == std::vector<double>{1.0, 0.0, 0.0, 2.5, 0.0});
  CHECK(remove_negative_noise(once) == once);
}

TEST_CASE("filtering leaves a constant profile unchanged") {
  std::vector<double> flat(50, 3.25);
  for (int p = 1; p <= 10; ++p) {
    auto out = filtering_attack(flat, p);
    CHECK(out.half_window == p);
    for (double v : out.values) CHECK(v == doctest::Approx(3.25));
  }
}

TEST_CASE("filtering P=1 on a small worked example") {
  std::vector<double> profile{0.0, 3.0, 0.0, 3.0, 0.0};
  auto out = filtering_attack(profile, 1);
  std::vector<double> expected{0.0, 1.0, 2.0, 1.0, 0.0};
  REQUIRE(out.values.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(out.values[i] == doctest::Approx(expected[i]));
}

TEST_CASE("filtering rejects a window wider than the profile") {
  std::vector<double> profile{1.0, 2.0, 3.0};
  CHECK_THROWS_WITH_AS(filtering_attack(profile, 2), "window exceeds profile",
                       std::invalid_argument);
}

TEST_CASE("filtering preserves the P end values verbatim") {
  RandomSource rs(21);
  auto rng = rs.substream(0, 0, StreamPurpose::kSynthTrace);
  std::vector<double> profile;
  for (int i = 0; i < 144; ++i) profile.push_back(uniform01(rng));
  for (int p = 1; p <= 20; ++p) {
    auto out = filtering_attack(profile, p);
    for (int i = 0; i < p; ++i) {
      CHECK(out.values[i] == profile[i]);
      CHECK(out.values[profile.size() - 1 - i] == profile[profile.size() - 1 - i]);
    }
  }
}

TEST_CASE("best_fit_window on a noiseless linear profile") {
  std::vector<double> profile;
  for (int i = 0; i < 100; ++i) profile.push_back(0.1 * i);
  auto [p, corr] = best_fit_window(profile, profile, 1, 10);
  CHECK(corr == doctest::Approx(1.0));
  CHECK(p >= 1);
  CHECK(p <= 10);
  // a singleton range pins the window
  CHECK(best_fit_window(profile, profile, 3, 3).first == 3);
}

TEST_CASE("best_fit_window breaks exact ties toward the smaller P") {
  // Integer steps of 0.5 make every window mean exact in binary floating
  // point, so all candidate correlations tie at exactly 1.
  std::vector<double> profile;
  for (int i = 0; i < 64; ++i) profile.push_back(0.5 * i);
  auto [p, corr] = best_fit_window(profile, profile, 1, 8);
  CHECK(corr == doctest::Approx(1.0));
  CHECK(p == 1);
}

TEST_CASE("filtering pure noise stays uncorrelated with a real profile") {
  RandomSource rs(22);
  auto noise_rng = rs.substream(0, 0, StreamPurpose::kMeterNoise);
  auto trace = synth_trace(1, 1, 23);
  std::vector<double> profile(trace.row(0), trace.row(0) + trace.n_instants);
  std::vector<double> masked(profile.size());
  for (double& v : masked) v = sample_laplace(5.0, noise_rng);
  auto [p, corr] = best_fit_window(masked, profile, 1, 12);
  CHECK(std::abs(corr) < 0.2);
}

TEST_CASE("literal divisor rescales but keeps the correlation") {
  auto trace = synth_trace(1, 1, 24);
  std::vector<double> base(trace.row(0), trace.row(0) + trace.n_instants);
  RandomSource rs(25);
  auto rng = rs.substream(0, 0, StreamPurpose::kMeterNoise);
  std::vector<double> masked = base;
  for (double& v : masked) v += sample_laplace(0.5, rng);
  for (int p : {2, 5, 9}) {
    auto a = filtering_attack(masked, p, false);
    auto b = filtering_attack(masked, p, true);
    // interior points scale by (2P+1)/P
    double k = (2.0 * p + 1.0) / p;
    for (std::size_t i = p; i + p < masked.size(); ++i)
      CHECK(b.values[i] == doctest::Approx(k * a.values[i]));
    // ends are copied verbatim in both, so compare interiors only
    std::vector<double> ai(a.values.begin() + p, a.values.end() - p);
    std::vector<double> bi(b.values.begin() + p, b.values.end() - p);
    std::vector<double> oi(base.begin() + p, base.end() - p);
    CHECK(pearson_corr(ai, oi) == doctest::Approx(pearson_corr(bi, oi)));
  }
}

namespace {

SimTranscript make_transcript(int n, int m, int periods, std::uint64_t seed) {
  SimConfig cfg;
  cfg.n_meters = n;
  cfg.m_masters = m;
  cfg.instants_per_period = kSlotsPerHour;
  cfg.n_periods = periods;
  cfg.seed = seed;
  int days = (cfg.total_instants() + kSlotsPerDay - 1) / kSlotsPerDay;
  auto trace = synth_trace(n, days, seed + 1);
  EnergyTrace trimmed = EnergyTrace::zeros(n, cfg.total_instants());
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < cfg.total_instants(); ++t) trimmed(i, t) = trace(i, t);
  return run_simulation(cfg, trimmed);
}

}  // namespace

TEST_CASE("collusion with no malicious meters leaks nothing") {
  auto tr = make_transcript(20, 2, 12, 51);
  CollusionScenario sc;
  sc.transcript = &tr;
  auto stats = collusion_attack(sc);
  CHECK(stats.reconstructed_points == 0);
  CHECK(stats.leak_fraction == 0.0);
}

TEST_CASE("m=1 with every meter malicious leaks every instant") {
  auto tr = make_transcript(10, 1, 12, 52);
  CollusionScenario sc;
  sc.transcript = &tr;
  for (int i = 0; i < 10; ++i) sc.malicious.push_back(i);
  auto stats = collusion_attack(sc);
  // no honest meters remain; the leak is counted over instants
  CHECK(stats.leak_fraction == doctest::Approx(1.0));
}

TEST_CASE("analytic_leak worked examples") {
  CHECK(analytic_leak(200, 20, 1) == doctest::Approx(0.10));
  CHECK(analytic_leak(200, 100, 4) ==
        doctest::Approx((100.0 * 99 * 98 * 97) / (200.0 * 199 * 198 * 197)));
  CHECK(analytic_leak(200, 3, 4) == 0.0);
  CHECK(analytic_leak(200, 200, 4) == doctest::Approx(1.0));
}

TEST_CASE("analytic_leak is monotone in c and antitone in m") {
  for (int c = 1; c < 200; ++c)
    CHECK(analytic_leak(200, c, 3) <= analytic_leak(200, c + 1, 3));
  for (int m = 1; m < 8; ++m)
    CHECK(analytic_leak(200, 50, m + 1) <= analytic_leak(200, 50, m));
}

TEST_CASE("simulated collusion rate matches the analytic value") {
  // 30 meters, 2 masters, 10 malicious: p = (10*9)/(30*29) ~ 0.10345.
  const int n = 30, m = 2, c = 10;
  auto tr = make_transcript(n, m, 400, 53);  // 2400 instants
  CollusionScenario sc;
  sc.transcript = &tr;
  for (int i = 0; i < c; ++i) sc.malicious.push_back(i);
  auto stats = collusion_attack(sc);
  double p = analytic_leak(n, c, m);
  int instants = 400 * kSlotsPerHour;
  double se = std::sqrt(p * (1.0 - p) / instants);
  CHECK(std::abs(stats.leak_fraction - p) < 3.0 * se);
}

TEST_CASE("collusion leak counts honest points only") {
  const int n = 12, m = 1, c = 4;
  auto tr = make_transcript(n, m, 24, 54);
  CollusionScenario sc;
  sc.transcript = &tr;
  for (int i = 0; i < c; ++i) sc.malicious.push_back(i);
  auto stats = collusion_attack(sc);
  int instants = 24 * kSlotsPerHour;
  CHECK(stats.honest_points_total == static_cast<long long>(n - c) * instants);
  CHECK(stats.reconstructed_points % (n - c) == 0);
  CHECK(stats.leak_fraction ==
        doctest::Approx(double(stats.reconstructed_points) /
                        stats.honest_points_total));
}
