#include <doctest.h>

#include <cmath>

#include "momlab/distributions.hpp"
#include "momlab/errors.hpp"
#include "momlab/rng.hpp"
#include "momlab/theory.hpp"

using namespace momlab;

TEST_CASE("heavy-tail block rule") {
  CHECK(resolve_blocks(HeavyTail{3}, 1000000, 0.01, 0.05).k == 30000);
  CHECK(resolve_blocks(HeavyTail{3}, 1000000, 0.0, 0.05).k == 133);
  CHECK_FALSE(resolve_blocks(HeavyTail{3}, 1000000, 0.0, 0.05).clamped);
}

TEST_CASE("fraction and power rules") {
  CHECK(resolve_blocks(Fraction{0.2}, 10000000, 0.01, 0.05).k == 2000000);
  CHECK(resolve_blocks(PowerLaw{4, 2.0 / 3.0}, 1000000, 0.001, 0.05).k == 40000);
  const auto zero = resolve_blocks(PowerLaw{4, 2.0 / 3.0}, 1000, 0.0, 0.05);
  CHECK(zero.k == 1);
  CHECK(zero.clamped);
  CHECK(resolve_blocks(Fraction{1.0}, 50, 0.1, 0.05).k == 50);
}

TEST_CASE("block rule hypotheses") {
  CHECK_THROWS_AS(resolve_blocks(HeavyTail{3}, 1000, 0.45, 0.05), ContractError);
  try {
    resolve_blocks(HeavyTail{3}, 1000, 0.45, 0.05);
  } catch (const ContractError& e) {
    CHECK(e.hypothesis() == "Theorem 3.2 requires α ≤ 0.4");
  }
  CHECK_THROWS_AS(resolve_blocks(HeavyTail{3}, 10, 0.0, 0.05), ContractError);
  CHECK_THROWS_AS(resolve_blocks(Fraction{0.2}, 100, 0.5, 0.05), ContractError);
  CHECK_THROWS_AS(resolve_blocks(Fraction{0.2}, 100, 0.1, 1.0), ContractError);
  CHECK_THROWS_AS(resolve_blocks(PowerLaw{4, 1.5}, 100, 0.1, 0.05), ContractError);
}

TEST_CASE("heavy-tail rule keeps 2 alpha n < k <= n on a random grid") {
  Stream rng(2024);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 100 + rng.below(1000000);
    const double alpha = 0.4 * rng.uniform();
    const double delta = 0.001 + 0.9 * rng.uniform();
    const double gamma = 2.05 + 0.45 * rng.uniform();
    const double gap = 0.5 - 1.0 / gamma;
    if (!(delta > 2.0 * std::exp(-gap * gap * n))) continue;
    const auto k = resolve_blocks(HeavyTail{gamma}, n, alpha, delta).k;
    CHECK(k <= n);
    CHECK(2.0 * alpha * n < k);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("finite-variance constant and bound") {
  CHECK(finite_variance_constant(2.5) == doctest::Approx(135.33).epsilon(1e-4));
  const auto b = bound_finite_variance(1000000, 0.01, 0.05, 2.5, 1.0);
  CHECK(b.value == doctest::Approx(13.79).epsilon(1e-3));
  CHECK(b.constant_used == doctest::Approx(finite_variance_constant(2.5)));
  CHECK(b.regime == Regime::BiasTermDominant);
  CHECK(bound_finite_variance(100000000, 0.0, 0.05, 2.5, 1.0).regime == Regime::IidTermDominant);
  CHECK_THROWS_AS(bound_finite_variance(1000, 0.45, 0.05, 2.5, 1.0), ContractError);
  CHECK_THROWS_AS(bound_finite_variance(1000, 0.1, 0.05, 3.0, 1.0), ContractError);
}

TEST_CASE("finite-variance bound is monotone") {
  const double base = bound_finite_variance(100000, 0.01, 0.05, 2.5, 1.0).value;
  CHECK(bound_finite_variance(1000000, 0.01, 0.05, 2.5, 1.0).value <= base);
  CHECK(bound_finite_variance(100000, 0.02, 0.05, 2.5, 1.0).value >= base);
  CHECK(bound_finite_variance(100000, 0.01, 0.2, 2.5, 1.0).value <= base);
  const double big_n = bound_finite_variance(1000000000000ULL, 0.01, 0.05, 2.5, 1.0).value;
  CHECK(big_n == doctest::Approx(finite_variance_constant(2.5) * 0.1).epsilon(1e-3));
}

TEST_CASE("infinite-variance bound") {
  const auto b = bound_infinite_variance(1000000, 0.01, 0.05, 2.5, 1.0, 0.5);
  CHECK(b.constant_used == doctest::Approx(21.544).epsilon(1e-4));
  const auto over = bound_infinite_variance(1000000, 0.01, 0.05, 2.5, 1.0, 0.5, 2.0);
  CHECK(over.constant_used == 2.0);
  const double iid = std::pow(std::log(2.0 / 0.05) / 1e6, 0.5 / 1.5);
  CHECK(bound_infinite_variance(1000000, 0.0, 0.05, 2.5, 1.0, 0.5, 1.0).value == doctest::Approx(iid));
  const double r = 1.0 / 3.0;
  const double lo = bound_infinite_variance(1000000000000000ULL, 1e-4, 0.05, 2.5, 1.0, r, 1.0).value;
  const double hi = bound_infinite_variance(1000000000000000ULL, 1e-2, 0.05, 2.5, 1.0, r, 1.0).value;
  CHECK(hi / lo == doctest::Approx(std::pow(10.0, 0.5)).epsilon(1e-2));
  CHECK_THROWS_AS(bound_infinite_variance(1000, 0.01, 0.05, 2.5, 1.0, 1.5), ContractError);
}

TEST_CASE("general quantile bound") {
  const auto g = DistributionSpec::gaussian();
  const std::size_t k = 133, m = 75;
  QuantileAccessor q = [&](double p) { return *block_mean_quantile_analytic(g, m, p); };
  const double s = std::sqrt(std::log(2.0 / 0.05) / (2.0 * k));
  CHECK(bound_general_quantile(q, k, m, 0.0, 0.05) == doctest::Approx(*block_mean_quantile_analytic(g, m, 0.5 + s)));
  CHECK(bound_general_quantile(q, 100000, m, 0.0, 0.999999) < 1e-3);

  double seen = 0.0;
  QuantileAccessor probe = [&](double p) {
    seen = std::max(seen, p);
    return p;
  };
  bound_general_quantile(probe, 4, 2, 1.0 / 16.0, 0.8);
  CHECK(seen == doctest::Approx(0.5 + std::sqrt(std::log(2.5) / 8.0) + 0.125));
  CHECK(seen == doctest::Approx(0.963).epsilon(1e-3));
  CHECK_THROWS_AS(bound_general_quantile(q, 4, 2, 0.2, 0.05), ContractError);
}

TEST_CASE("asymptotic bias orders") {
  CHECK(asymptotic_bias_order(BiasClass::P2) == 0.5);
  CHECK(asymptotic_bias_order(BiasClass::SubExponential) == doctest::Approx(2.0 / 3.0));
  CHECK(asymptotic_bias_order(BiasClass::P1PlusR, 1.0 / 3.0) == doctest::Approx(0.25));
  CHECK(asymptotic_bias_order(BiasClass::SubGaussianS, std::nullopt, 3) == doctest::Approx(0.75));
  CHECK(asymptotic_bias_order(BiasClass::Symmetric) == 1.0);
  CHECK(parse_bias_class("P_1plus_r") == BiasClass::P1PlusR);
  CHECK(parse_bias_class("SG_s") == BiasClass::SubGaussianS);
  CHECK_THROWS_AS(parse_bias_class("Cauchy"), ParameterError);
  const double e1 = asymptotic_bias_order(BiasClass::Symmetric);
  const double e2 = asymptotic_bias_order(BiasClass::SubExponential);
  const double e3 = asymptotic_bias_order(BiasClass::P2);
  const double alpha = 1e-3;
  CHECK(std::pow(alpha, e1) < std::pow(alpha, e2));
  CHECK(std::pow(alpha, e2) < std::pow(alpha, e3));
}

TEST_CASE("rule names") {
  CHECK(to_string(BlockRule{HeavyTail{3}}) == "heavy_tail(3)");
  CHECK(to_string(BlockRule{Fraction{0.2}}) == "fraction(0.2)");
}
