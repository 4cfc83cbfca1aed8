#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "momlab/distributions.hpp"
#include "momlab/errors.hpp"
#include "momlab/estimators.hpp"
#include "momlab/rng.hpp"

using namespace momlab;

TEST_CASE("median of means on small inputs") {
  const std::vector<double> x{0, 1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(median_of_means(x, 3) == 4.0);
  const std::vector<double> y{1, 2, 3, 4};
  CHECK(median_of_means(y, 1) == 2.5);
  CHECK(median_of_means(y, 2) == 1.5);
  CHECK(median_of_means(std::vector<double>{1, 2, 3, 4, 100}, 2) == 1.5);
  CHECK_THROWS_AS(median_of_means(y, 0), ParameterError);
  CHECK_THROWS_AS(median_of_means(y, 5), ParameterError);
}

TEST_CASE("median of means reductions") {
  const auto x = sample(DistributionSpec::student_t(3), 1001, 5);
  CHECK(median_of_means(x, 1) == sample_mean(x));
  CHECK(median_of_means(x, x.size()) == sample_median(x));
  CHECK(median_of_means(x, 1, Partition::Shuffled, 8) == doctest::Approx(sample_mean(x)));
}

TEST_CASE("median of means equivariance") {
  const auto x = sample(DistributionSpec::gpd(0.45), 600, 12);
  for (auto part : {Partition::Sequential, Partition::Shuffled}) {
    const double base = median_of_means(x, 25, part, 3);
    std::vector<double> shifted(x), scaled(x);
    for (auto& v : shifted) v += 2.5;
    for (auto& v : scaled) v *= 4.0;
    CHECK(median_of_means(shifted, 25, part, 3) == doctest::Approx(base + 2.5));
    CHECK(median_of_means(scaled, 25, part, 3) == doctest::Approx(4.0 * base));
  }
}

TEST_CASE("median of means ignores within-block order and trailing samples") {
  std::vector<double> x{5, 1, 9, 2, 8, 3, 7, 4, 6, 100};
  const double base = median_of_means(x, 3);
  std::swap(x[0], x[2]);
  std::swap(x[3], x[5]);
  CHECK(median_of_means(x, 3) == base);
  x[9] = -1e9;
  CHECK(median_of_means(x, 3) == base);
}

TEST_CASE("breakdown containment") {
  const auto clean = sample(DistributionSpec::gaussian(), 900, 31);
  const std::size_t k = 9, m = clean.size() / k;
  std::vector<double> means(k);
  for (std::size_t b = 0; b < k; ++b)
    means[b] = std::accumulate(clean.begin() + b * m, clean.begin() + (b + 1) * m, 0.0) / m;
  const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
  auto bad = clean;
  for (std::size_t b = 0; b < (k + 1) / 2 - 1; ++b) bad[b * m] = (b % 2 ? -1e12 : 1e12);
  const double est = median_of_means(bad, k);
  CHECK(est >= *lo);
  CHECK(est <= *hi);
}

TEST_CASE("shuffled partition depends only on the seed") {
  const auto x = sample(DistributionSpec::gaussian(), 500, 1);
  CHECK(median_of_means(x, 10, Partition::Shuffled, 4) == median_of_means(x, 10, Partition::Shuffled, 4));
  CHECK(median_of_contiguous_blocks(x, 10) == median_of_means(x, 10));
}

TEST_CASE("trimmed mean") {
  CHECK(trimmed_mean(std::vector<double>{1, 2, 3, 4, 100}, 0.2) == 3.0);
  const std::vector<double> x{3, 1, 4, 1, 5, 9, 2, 6};
  CHECK(trimmed_mean(x, 0.0) == sample_mean(x));
  CHECK(trimmed_mean(std::vector<double>{5, 5, 5, 5}, 0.25) == 5.0);
  CHECK_THROWS_AS(trimmed_mean(std::vector<double>{1, 2}, 0.5), ParameterError);
}

TEST_CASE("trimmed mean stays between the trimmed order statistics") {
  auto x = sample(DistributionSpec::gpd(0.75), 200, 44);
  const double eps = 0.1;
  const double t = trimmed_mean(x, eps);
  std::sort(x.begin(), x.end());
  const std::size_t cut = static_cast<std::size_t>(std::floor(eps * x.size()));
  CHECK(t >= x[cut]);
  CHECK(t <= x[x.size() - cut - 1]);
  std::vector<double> shifted(x);
  for (auto& v : shifted) v = 3.0 * v - 1.0;
  CHECK(trimmed_mean(shifted, eps) == doctest::Approx(3.0 * t - 1.0));
}

TEST_CASE("catoni") {
  CHECK(catoni(std::vector<double>(20, 1.75), 1.0, 0.05) == doctest::Approx(1.75));
  CHECK(std::abs(catoni(std::vector<double>{-2, -1, 1, 2, -3, 3, -0.5, 0.5, -4, 4}, 1.0, 0.3)) < 1e-9);
  const auto g = sample(DistributionSpec::gaussian(), 100000, 9);
  CHECK(std::abs(catoni(g, 1.0, 0.05)) <= 0.02);
  CHECK_THROWS_AS(catoni(std::vector<double>{1, 2, 3}, 1.0, 0.05), ParameterError);
}

TEST_CASE("sample median is the lower median") {
  CHECK(sample_median(std::vector<double>{4, 1, 3, 2}) == 2.0);
  CHECK(sample_median(std::vector<double>{4, 1, 3}) == 3.0);
}

TEST_CASE("estimator labels") {
  CHECK(to_string(EstimatorSpec{MedianOfMeans{HeavyTail{3}, Partition::Shuffled}}) == "mom(rule=heavy_tail(3))");
  CHECK(to_string(EstimatorSpec{TrimmedMean{}}) == "trimmed(eps=auto)");
  CHECK(to_string(EstimatorSpec{Catoni{std::nullopt, 0.05}}) == "catoni(scale=oracle, delta=0.05)");
}
