#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "momlab/distributions.hpp"
#include "momlab/errors.hpp"

using namespace momlab;

TEST_CASE("point mass samples are constant") {
  CHECK(sample(DistributionSpec::point_mass(7), 3, 99) == std::vector<double>{7, 7, 7});
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto spec = DistributionSpec::student_t(3);
  CHECK(sample(spec, 50, 1) == sample(spec, 50, 1));
  CHECK(sample(spec, 50, 1) != sample(spec, 50, 2));
}

TEST_CASE("invalid family parameters are rejected") {
  CHECK_THROWS_AS(DistributionSpec::student_t(0.0), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::gaussian(0.0, -1.0), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::gpd(1.2), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::negative_exponential(0.0), ParameterError);
}

TEST_CASE("moment metadata") {
  const auto g = DistributionSpec::gaussian();
  CHECK(g.mu() == 0.0);
  CHECK(g.sigma() == 1.0);
  for (auto tag : {ClassTag::P2, ClassTag::SubGaussian, ClassTag::Symmetric, ClassTag::P3})
    CHECK(g.has(tag));

  const auto t3 = DistributionSpec::student_t(3);
  CHECK(t3.sigma() == doctest::Approx(std::sqrt(3.0)));
  CHECK(t3.has(ClassTag::P2));
  CHECK(t3.has(ClassTag::Symmetric));

  const auto gpd = DistributionSpec::gpd(0.75);
  CHECK(std::isinf(gpd.sigma()));
  CHECK_FALSE(gpd.moments().finite_variance());
  REQUIRE(gpd.moments().v_r.has_value());
  CHECK(gpd.moments().v_r->r < 1.0 / 3.0);
  CHECK(gpd.mu() == doctest::Approx(4.0));

  const auto hn = DistributionSpec::half_normal();
  CHECK(hn.mu() == doctest::Approx(std::sqrt(2.0 / M_PI)));
  CHECK_FALSE(hn.has(ClassTag::Symmetric));
}

TEST_CASE("absolute moment goldens") {
  const auto gpd = DistributionSpec::gpd(0.75);
  CHECK(gpd.moments().v_r->r == doctest::Approx(0.3));
  CHECK(gpd.moments().v_r->value == doctest::Approx(56.9935743253183).epsilon(1e-9));

  const auto t = DistributionSpec::student_t(1.5);
  REQUIRE(t.moments().v_r.has_value());
  CHECK(t.moments().v_r->r == doctest::Approx(0.45));
  CHECK(t.moments().v_r->value == doctest::Approx(22.2216141883259).epsilon(1e-9));
}

TEST_CASE("sample means match the exact mean") {
  for (const auto& spec : {DistributionSpec::gpd(0.45), DistributionSpec::half_normal(),
                           DistributionSpec::negative_exponential(2.0),
                           DistributionSpec::gaussian(3.0, 2.0)}) {
    const auto x = sample(spec, 400000, 17);
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    CHECK(mean == doctest::Approx(spec.mu()).epsilon(0.01));
  }
}

TEST_CASE("analytic block-mean quantiles") {
  const auto g = DistributionSpec::gaussian();
  CHECK(*block_mean_quantile_analytic(g, 100, 0.5) == doctest::Approx(0.0));
  CHECK(*block_mean_quantile_analytic(g, 100, 0.841344746) == doctest::Approx(0.1).epsilon(1e-6));
  CHECK_FALSE(block_mean_quantile_analytic(DistributionSpec::student_t(3), 10, 0.5).has_value());
  CHECK_THROWS_AS(block_mean_quantile_analytic(g, 10, 1.0), ParameterError);

  const auto ne = DistributionSpec::negative_exponential();
  CHECK(*block_mean_quantile_analytic(ne, 4, 0.5) == doctest::Approx(0.08198481278727576).epsilon(1e-10));
  CHECK(*block_mean_quantile_analytic(ne, 4, 0.9) == doctest::Approx(0.5638076092937723).epsilon(1e-10));
  CHECK(*block_mean_quantile_analytic(ne, 10, 0.05) == doctest::Approx(-0.570521642211546).epsilon(1e-10));
  CHECK(*block_mean_quantile_analytic(ne, 1, 0.5) == doctest::Approx(0.3068528194400545).epsilon(1e-10));
  const auto ne2 = DistributionSpec::negative_exponential(2.0);
  CHECK(*block_mean_quantile_analytic(ne2, 3, 0.25) == doctest::Approx(-0.1534003433820934).epsilon(1e-10));
}

TEST_CASE("population quantiles") {
  CHECK(*quantile(DistributionSpec::gaussian(), 0.5) == doctest::Approx(0.0));
  CHECK(*quantile(DistributionSpec::negative_exponential(), 0.5) == doctest::Approx(-std::log(2.0)));
  CHECK_FALSE(quantile(DistributionSpec::point_mass(1), 0.5).has_value());
}

TEST_CASE("config-grammar names") {
  CHECK(DistributionSpec::gpd(0.45).to_string() == "gpd(0.45, 1, 0)");
}
