#include "edpnct/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace edpnct {

double mae(double original_total, double masked_total) {
  if (!(original_total > 0.0))
    throw std::invalid_argument("undefined relative error");
  return std::abs(original_total - masked_total) / original_total;
}

double pearson_corr(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("series lengths differ");
  std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("series too short");
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double s_ab = 0.0, s_aa = 0.0, s_bb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double da = a[i] - mean_a;
    double db = b[i] - mean_b;
    s_ab += da * db;
    s_aa += da * da;
    s_bb += db * db;
  }
  if (s_aa == 0.0 || s_bb == 0.0)
    throw std::invalid_argument("degenerate series");
  return s_ab / std::sqrt(s_aa * s_bb);
}

}  // namespace edpnct
