#pragma once

#include <set>
#include <span>
#include <unordered_map>
#include <utility>

namespace edpnct {

struct Tariff {
  double unit_price = 10.0;        // currency / kWh
  double surcharge_price = 20.0;   // currency / kWh, >= unit_price
  double max_allowed_units = 5500.0;  // kWh per billing period
};

struct BillStatement {
  int meter_id = 0;
  int period = 0;
  double masked_total = 0.0;              // sum of masked readings, kWh
  double base_bill = 0.0;                 // currency
  double surcharge_bill = 0.0;            // currency
  double error_correction_applied = 0.0;  // currency, subtracted
  double total_bill = 0.0;                // base + surcharge - correction
  double surcharge_units = 0.0;           // kWh, notified to the meter
};

struct LoadReport {
  int instant = 0;
  double masked_sum = 0.0;
  double reported_noise_sum = 0.0;
  double recovered_load = 0.0;  // masked_sum - reported_noise_sum
  int masters_missing = 0;
};

// Per-instant load recovery. `master_reports` holds only the reports that
// arrived; missing ones degrade accuracy and are counted.
LoadReport aggregate_load(int instant, std::span<const double> masked_values,
                          std::span<const double> master_reports,
                          int masters_expected);

// Pure billing rule for one period. A negative masked total is billed as
// zero; the caller carries the shortfall forward.
BillStatement make_bill(int meter_id, int period, double masked_total,
                        const Tariff& tariff, double prev_error_currency);

// Stateful aggregator side of billing: holds per-meter corrections that
// carry into the next period's bill.
class BillingLedger {
 public:
  BillingLedger(Tariff tariff, int instants_per_billing_period);

  // Bills one complete period of masked readings, consuming any pending
  // correction. Throws "partial billing period" on a short/long span.
  BillStatement compute_bill(int meter_id, int period,
                             std::span<const double> masked_readings);

  // Registers a meter's reported billing error (kWh) for a billed period.
  // The correction is priced at the surcharge rate for the portion inside
  // the surcharge band and the unit rate beyond it, and is applied to the
  // next bill. Returns the currency correction. Throws on duplicates.
  double settle_error(int meter_id, int period, double error_kwh,
                      double surcharge_units);

  double pending_correction(int meter_id) const;
  const Tariff& tariff() const { return tariff_; }

 private:
  Tariff tariff_;
  int period_length_;
  std::unordered_map<int, double> pending_;  // currency per meter
  std::set<std::pair<int, int>> settled_;    // (meter, period)
};

}  // namespace edpnct
