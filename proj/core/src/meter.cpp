#include "edpnct/meter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edpnct {

int instants_per_period(PeriodModel model) {
  switch (model) {
    case PeriodModel::Hourly:
      return kSlotsPerHour;
    case PeriodModel::Daily:
      return kSlotsPerDay;
    case PeriodModel::Weekly:
      return kSlotsPerWeek;
  }
  throw std::invalid_argument("unknown period model");
}

MeterStepResult meter_step(MeterState& state, double x_t,
                           std::span<const int> masters,
                           const PrivacyParams& params,
                           const RandomSource& randomness, int instant) {
  if (x_t < 0.0) throw std::invalid_argument("consumption cannot be negative");
  if (masters.empty()) throw std::invalid_argument("at least one master required");

  auto noise_rng = randomness.substream(
      static_cast<std::uint64_t>(state.meter_id), instant,
      StreamPurpose::kMeterNoise);
  double n_t = sample_meter_noise(params, noise_rng).value;
  state.queue_current.push_back(n_t);

  double nc = 0.0;
  if (!state.queue_previous.empty()) {
    nc = state.queue_previous.front();
    state.queue_previous.pop_front();
  }

  double net = n_t - nc;
  state.residual_running += net;

  MeterStepResult result;
  result.reading = MaskedReading{state.meter_id, instant, x_t + net};
  result.noise_drawn = n_t;
  result.noise_cancelled = nc;
  result.net_noise = net;

  bool is_master =
      std::find(masters.begin(), masters.end(), state.meter_id) != masters.end();
  if (!is_master) {
    auto split_rng = randomness.substream(
        static_cast<std::uint64_t>(state.meter_id), instant,
        StreamPurpose::kNoiseSplit);
    auto shares = split_noise(NoiseSample{net},
                              static_cast<int>(masters.size()), params.scale,
                              split_rng);
    result.shares.reserve(masters.size());
    for (std::size_t k = 0; k < masters.size(); ++k) {
      result.shares.push_back(
          NoiseShareMessage{state.meter_id, masters[k], instant, shares[k]});
    }
  }

  if (++state.instants_into_period == state.period_length) {
    // Period boundary: N_{t-1} = N_t; N_t = 0.
    state.queue_previous = std::move(state.queue_current);
    state.queue_current.clear();
    state.residual_noise_last_period = state.residual_running;
    state.residual_running = 0.0;
    state.instants_into_period = 0;
  }
  return result;
}

double master_collect(int /*master_id*/,
                      std::span<const NoiseShareMessage> shares,
                      double own_net_noise) {
  double total = own_net_noise;
  for (const auto& msg : shares) total += msg.share;
  return total;
}

double report_billing_error(const MeterState& state, double surcharge_units) {
  if (surcharge_units <= 0.0) return 0.0;
  double residual = state.residual_noise_last_period;
  if (surcharge_units >= std::abs(residual)) return residual;
  return std::copysign(surcharge_units, residual);
}

}  // namespace edpnct
