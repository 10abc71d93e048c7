#pragma once

#include <span>
#include <vector>

namespace edpnct {

// Relative mean absolute error on period totals, as the protocol's utility
// papers report it: |original - masked| / original.
double mae(double original_total, double masked_total);

// Pearson product-moment correlation. Throws on length < 2, length
// mismatch, or a zero-variance series.
double pearson_corr(std::span<const double> a, std::span<const double> b);

struct MetricBundle {
  double mae_energy = 0.0;
  double mae_bill = 0.0;
  double corr_masked_vs_original = 0.0;
  double leak_fraction = 0.0;
  std::vector<double> per_run_mae_energy;
  std::vector<double> per_run_mae_bill;
  std::vector<double> per_run_corr;
  std::vector<double> per_run_leak;
};

}  // namespace edpnct
