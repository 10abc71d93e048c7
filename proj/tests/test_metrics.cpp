#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "edpnct/metrics.hpp"
#include "edpnct/random.hpp"

using namespace edpnct;

TEST_CASE("mae basics") {
  CHECK(mae(100.0, 100.0) == 0.0);
  CHECK(mae(100.0, 95.0) == doctest::Approx(0.05));
  CHECK_THROWS_WITH_AS(mae(0.0, 5.0), "undefined relative error",
                       std::invalid_argument);
}

TEST_CASE("mae positive homogeneity") {
  RandomSource rs(41);
  auto rng = rs.substream(0, 0, StreamPurpose::kSynthTrace);
  for (int i = 0; i < 1000; ++i) {
    double x = 1.0 + 100.0 * uniform01(rng);
    double m = 200.0 * uniform01(rng) - 50.0;
    double k = 0.1 + 10.0 * uniform01(rng);
    CHECK(mae(k * x, k * m) == doctest::Approx(mae(x, m)).epsilon(1e-12));
  }
}

TEST_CASE("pearson of a series with itself and its negation") {
  std::vector<double> a{1.0, 2.0, 4.0, 3.0, 5.0};
  std::vector<double> neg;
  for (double v : a) neg.push_back(-v);
  CHECK(pearson_corr(a, a) == doctest::Approx(1.0));
  CHECK(pearson_corr(a, neg) == doctest::Approx(-1.0));
}

TEST_CASE("pearson rejects degenerate input") {
  std::vector<double> flat{2.0, 2.0, 2.0};
  std::vector<double> b{1.0, 2.0, 3.0};
  CHECK_THROWS_WITH_AS(pearson_corr(flat, b), "degenerate series",
                       std::invalid_argument);
  std::vector<double> one{1.0}, two{2.0};
  CHECK_THROWS_AS(pearson_corr(one, two), std::invalid_argument);
  CHECK_THROWS_AS(pearson_corr(b, flat), std::invalid_argument);
}

TEST_CASE("independent noise streams are uncorrelated") {
  RandomSource rs(42);
  auto ra = rs.substream(1, 0, StreamPurpose::kSynthTrace);
  auto rb = rs.substream(2, 0, StreamPurpose::kSynthTrace);
  std::vector<double> a, b;
  for (int i = 0; i < 4320; ++i) {
    a.push_back(sample_laplace(1.0, ra));
    b.push_back(sample_laplace(1.0, rb));
  }
  CHECK(std::abs(pearson_corr(a, b)) < 0.05);  // 3 sigma ~ 3/sqrt(4320)
}

TEST_CASE("pearson is invariant under positive affine maps") {
  RandomSource rs(43);
  auto rng = rs.substream(0, 0, StreamPurpose::kSynthTrace);
  std::vector<double> a, b;
  for (int i = 0; i < 500; ++i) {
    a.push_back(uniform01(rng));
    b.push_back(uniform01(rng) + 0.2 * a.back());
  }
  double base = pearson_corr(a, b);
  std::vector<double> scaled;
  for (double v : a) scaled.push_back(3.7 * v + 11.0);
  CHECK(std::abs(pearson_corr(scaled, b) - base) < 1e-12);
}
