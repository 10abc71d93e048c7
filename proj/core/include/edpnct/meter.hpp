#pragma once

#include <deque>
#include <span>
#include <vector>

#include "edpnct/noise.hpp"
#include "edpnct/random.hpp"

namespace edpnct {

enum class PeriodModel { Hourly, Daily, Weekly };

// Instants per cancellation period at 10-minute granularity: 6, 144, 1008.
int instants_per_period(PeriodModel model);

// Per-meter protocol state: the noise FIFO for the running period, the
// previous period's FIFO being cancelled, and the billing residual of the
// last completed period.
struct MeterState {
  int meter_id = 0;
  int period_length = kSlotsPerDay;  // instants per cancellation period
  std::deque<double> queue_current;
  std::deque<double> queue_previous;
  int instants_into_period = 0;
  double residual_running = 0.0;             // net noise sum, current period
  double residual_noise_last_period = 0.0;   // net noise sum, last period
  double reported_error_prev_bill = 0.0;     // Er_{T-1}, kWh
};

struct MaskedReading {
  int meter_id = 0;
  int instant = 0;
  double value = 0.0;  // kWh, may be negative under heavy noise
};

struct NoiseShareMessage {
  int from_meter = 0;
  int to_master = 0;
  int instant = 0;
  double share = 0.0;  // kWh
};

struct MeterStepResult {
  MaskedReading reading;
  std::vector<NoiseShareMessage> shares;  // empty when the meter is a master
  double noise_drawn = 0.0;    // n_t
  double noise_cancelled = 0.0;  // nc_{t-1}, 0 on an empty queue
  double net_noise = 0.0;      // n_t - nc_{t-1}
};

// One protocol step: draw fresh noise, pop the cancellation term, emit the
// masked reading and one split share per master. A meter that is itself a
// master keeps its whole net noise for its own aggregate and sends nothing.
// Period boundaries rotate the FIFOs and latch the billing residual.
MeterStepResult meter_step(MeterState& state, double x_t,
                           std::span<const int> masters,
                           const PrivacyParams& params,
                           const RandomSource& randomness, int instant);

// Master-side aggregation: sum of received shares plus the master's own net
// noise contribution for this instant.
double master_collect(int master_id,
                      std::span<const NoiseShareMessage> shares,
                      double own_net_noise);

// Billing-error report (kWh, signed). Zero without a surcharge; otherwise
// the residual capped in magnitude at the surcharge units.
double report_billing_error(const MeterState& state, double surcharge_units);

}  // namespace edpnct
