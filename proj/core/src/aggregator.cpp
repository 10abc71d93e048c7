#include "edpnct/aggregator.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace edpnct {

LoadReport aggregate_load(int instant, std::span<const double> masked_values,
                          std::span<const double> master_reports,
                          int masters_expected) {
  if (masked_values.empty())
    throw std::invalid_argument("at least one masked reading required");
  double masked_sum =
      std::accumulate(masked_values.begin(), masked_values.end(), 0.0);
  double noise_sum =
      std::accumulate(master_reports.begin(), master_reports.end(), 0.0);
  int missing = masters_expected - static_cast<int>(master_reports.size());
  return LoadReport{instant, masked_sum, noise_sum, masked_sum - noise_sum,
                    missing};
}

BillStatement make_bill(int meter_id, int period, double masked_total,
                        const Tariff& tariff, double prev_error_currency) {
  double billable = std::max(0.0, masked_total);
  BillStatement bill;
  bill.meter_id = meter_id;
  bill.period = period;
  bill.masked_total = masked_total;
  bill.error_correction_applied = prev_error_currency;
  if (billable >= tariff.max_allowed_units) {
    bill.surcharge_units = billable - tariff.max_allowed_units;
    bill.base_bill = tariff.max_allowed_units * tariff.unit_price;
    bill.surcharge_bill = bill.surcharge_units * tariff.surcharge_price;
  } else {
    bill.surcharge_units = 0.0;
    bill.base_bill = billable * tariff.unit_price;
    bill.surcharge_bill = 0.0;
  }
  bill.total_bill =
      bill.base_bill + bill.surcharge_bill - bill.error_correction_applied;
  return bill;
}

BillingLedger::BillingLedger(Tariff tariff, int instants_per_billing_period)
    : tariff_(tariff), period_length_(instants_per_billing_period) {
  if (!(tariff_.unit_price > 0.0) || !(tariff_.surcharge_price > 0.0) ||
      !(tariff_.max_allowed_units > 0.0))
    throw std::invalid_argument("tariff values must be positive");
  if (tariff_.surcharge_price < tariff_.unit_price)
    throw std::invalid_argument("surcharge_price must be >= unit_price");
  if (period_length_ < 1)
    throw std::invalid_argument("billing period must be >= 1 instant");
}

BillStatement BillingLedger::compute_bill(
    int meter_id, int period, std::span<const double> masked_readings) {
  if (static_cast<int>(masked_readings.size()) != period_length_)
    throw std::invalid_argument("partial billing period");
  double masked_total =
      std::accumulate(masked_readings.begin(), masked_readings.end(), 0.0);
  double prev = 0.0;
  if (auto it = pending_.find(meter_id); it != pending_.end()) {
    prev = it->second;
    pending_.erase(it);
  }
  BillStatement bill = make_bill(meter_id, period, masked_total, tariff_, prev);
  if (masked_total < 0.0) {
    // Billed as zero; credit the overbilled shortfall next period.
    pending_[meter_id] += (0.0 - masked_total) * tariff_.unit_price;
  }
  return bill;
}

double BillingLedger::settle_error(int meter_id, int period, double error_kwh,
                                   double surcharge_units) {
  if (!settled_.insert({meter_id, period}).second)
    throw std::invalid_argument("duplicate error report");
  double mag = std::abs(error_kwh);
  double in_band = std::min(mag, std::max(0.0, surcharge_units));
  double beyond = mag - in_band;
  double correction =
      in_band * tariff_.surcharge_price + beyond * tariff_.unit_price;
  if (error_kwh < 0.0) correction = -correction;
  pending_[meter_id] += correction;
  return correction;
}

double BillingLedger::pending_correction(int meter_id) const {
  auto it = pending_.find(meter_id);
  return it == pending_.end() ? 0.0 : it->second;
}

}  // namespace edpnct
