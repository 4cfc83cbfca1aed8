#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "momlab/errors.hpp"
#include "momlab/quantlab.hpp"
#include "momlab/rng.hpp"

using namespace momlab;

TEST_CASE("order statistics") {
  CHECK(order_statistic(std::vector<double>{3, 1, 2}, 2) == 2.0);
  CHECK(order_statistic(std::vector<double>{5, 5, 5}, 3) == 5.0);
  std::vector<double> x(100);
  std::iota(x.begin(), x.end(), 0.0);
  const auto perm = random_permutation(100, 8);
  std::vector<double> shuffled(100);
  for (std::size_t i = 0; i < 100; ++i) shuffled[i] = x[perm[i]];
  CHECK(order_statistic(shuffled, 95) == 94.0);
  CHECK_THROWS_AS(order_statistic(shuffled, 0), ParameterError);
  CHECK_THROWS_AS(order_statistic(shuffled, 101), ParameterError);
}

TEST_CASE("type-1 quantile") {
  const std::vector<double> sorted{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(sorted_quantile(sorted, 0.5) == 5.0);
  CHECK(sorted_quantile(sorted, 0.95) == 10.0);
  CHECK(sorted_quantile(sorted, 0.3) == 3.0);
  CHECK(sorted_quantile(sorted, 0.31) == 4.0);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS(parallel_for(10, 2, [](std::size_t i) {
    if (i == 7) throw NumericError("boom");
  }));
}

TEST_CASE("empirical block-mean quantiles") {
  const auto g = DistributionSpec::gaussian();
  const auto med = empirical_block_mean_quantile(g, 100, 0.5, 100000, 1);
  CHECK(std::abs(med.value) <= 0.0012);
  const auto hi = empirical_block_mean_quantile(g, 100, 0.841344746, 1000000, 2);
  CHECK(hi.value == doctest::Approx(0.1).epsilon(0.005));
  const auto pm = empirical_block_mean_quantile(DistributionSpec::point_mass(3.5), 7, 0.9, 200, 3);
  CHECK(pm.value == 0.0);
  CHECK_THROWS_AS(empirical_block_mean_quantile(g, 10, 0.5, 99, 1), ParameterError);
}

TEST_CASE("empirical quantiles agree with the analytic ones") {
  for (const auto& spec : {DistributionSpec::gaussian(), DistributionSpec::negative_exponential()}) {
    for (std::size_t m : {1u, 4u, 30u}) {
      for (double q : {0.05, 0.5, 0.9}) {
        const auto est = empirical_block_mean_quantile(spec, m, q, 40000, 10 + m);
        const double exact = *block_mean_quantile_analytic(spec, m, q);
        CHECK(std::abs(est.value - exact) <= 3.0 * est.standard_error);
      }
    }
  }
}

TEST_CASE("quantile curves are monotone and thread independent") {
  const std::vector<double> levels{0.1, 0.25, 0.5, 0.75, 0.9};
  const auto spec = DistributionSpec::student_t(3);
  const auto a = empirical_block_mean_curve(spec, 5, levels, 5000, 6, 1);
  const auto b = empirical_block_mean_curve(spec, 5, levels, 5000, 6, 3);
  CHECK(a.value == b.value);
  CHECK(std::is_sorted(a.value.begin(), a.value.end()));
  CHECK(a.q == levels);
}

TEST_CASE("symmetric quantiles mirror") {
  const auto spec = DistributionSpec::student_t(3);
  for (double eps : {0.05, 0.2}) {
    const auto up = empirical_block_mean_quantile(spec, 10, 0.5 + eps, 40000, 5);
    const auto down = empirical_block_mean_quantile(spec, 10, 0.5 - eps, 40000, 5);
    CHECK(std::abs(up.value + down.value) <= 3.0 * (up.standard_error + down.standard_error));
  }
}

TEST_CASE("order-statistic coverage") {
  const auto g = DistributionSpec::gaussian();
  const auto c = order_statistic_coverage(g, 1000, 500, 0.05, 10000, 4);
  CHECK(c.upper >= 0.95);
  CHECK(c.lower >= 0.95);
  const auto near_one = order_statistic_coverage(g, 1000, 500, 0.999999, 10000, 4);
  CHECK(near_one.upper == doctest::Approx(0.5).epsilon(0.05));
  CHECK_THROWS_AS(order_statistic_coverage(g, 1000, 1000, 0.05, 100, 4), ContractError);
  CHECK_THROWS_AS(order_statistic_coverage(DistributionSpec::point_mass(1), 100, 50, 0.05, 100, 4),
                  ContractError);
}

TEST_CASE("normal approximation gap") {
  const double band = 1.5 * 1.36 / std::sqrt(20000.0);
  CHECK(normal_approx_gap(DistributionSpec::gaussian(), 3, 20000, 1).g_hat <= band);
  const auto hn1 = normal_approx_gap(DistributionSpec::half_normal(), 1, 100000, 2);
  CHECK(hn1.g_hat >= 0.05);
  CHECK(hn1.g_hat <= 0.30);
  CHECK(hn1.g_hat == doctest::Approx(0.0928166).epsilon(0.05));
  const double se = 1.0 / std::sqrt(100000.0);
  double prev = hn1.g_hat;
  for (std::size_t m : {4u, 16u, 64u}) {
    const double g = normal_approx_gap(DistributionSpec::half_normal(), m, 100000, 2 + m).g_hat;
    CHECK(g <= prev + 3.0 * se);
    prev = g;
  }
  CHECK_THROWS_AS(normal_approx_gap(DistributionSpec::gpd(0.75), 1, 10000, 1), ContractError);
  CHECK_THROWS_AS(normal_approx_gap(DistributionSpec::gaussian(), 1, 100, 1), ParameterError);
}

TEST_CASE("contaminated block count") {
  CHECK(contaminated_block_count(1000, 40, 0.0, 500, 1).mean_z == 0.0);
  const auto z = contaminated_block_count(10000, 400, 0.01, 10000, 2);
  CHECK(z.mean_z > 1.0 - std::exp(-0.5));
  CHECK(z.mean_z == doctest::Approx(expected_contaminated_block_count(10000, 400, 0.01)).epsilon(0.02));
  const auto all = contaminated_block_count(2000, 2000, 0.02, 4000, 3);
  CHECK(all.mean_z == doctest::Approx(20.0).epsilon(0.03));
  CHECK(all.tail_prob(0.0) == 1.0);
  CHECK(all.tail_prob(1e9) == 0.0);
  const auto valued = contaminated_block_count(10000, 400, 0.01, 2000, 4, DistributionSpec::gaussian());
  CHECK(valued.mean_z > 1.0 - std::exp(-0.5));
}

TEST_CASE("symmetric class membership") {
  const std::vector<std::size_t> ms{1, 10, 100};
  const std::vector<double> eps{0.02, 0.1, 0.2, 0.3};
  const auto g = symmetric_class_check(DistributionSpec::gaussian(), 0.3, 6.0, ms, eps, 40000, 1);
  CHECK(g.pass);
  CHECK(g.worst_ratio < 6.0);
  const std::vector<std::size_t> m1{1};
  CHECK(symmetric_class_check(DistributionSpec::student_t(3), 0.3, 6.0, m1, eps, 40000, 2).pass);
  CHECK_THROWS_AS(symmetric_class_check(DistributionSpec::half_normal(), 0.3, 6.0, ms, eps, 1000, 1),
                  ContractError);
  CHECK_THROWS_AS(symmetric_class_check(DistributionSpec::gaussian(), 0.4, 6.0, ms, eps, 1000, 1),
                  ParameterError);
}
