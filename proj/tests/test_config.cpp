#include <doctest.h>

#include <string>

#include "momlab/config.hpp"
#include "momlab/errors.hpp"

using namespace momlab;

namespace {

const char* kMinimal =
    "# minimal sweep\n"
    "dist = gaussian(0, 1)\n"
    "estimator = mom(rule=heavy_tail(3))\n"
    "alpha = 0.01, 0.02, 0.05\n";

ParseError parse_failure(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("minimal config uses defaults") {
  const auto cfg = parse_config(kMinimal);
  CHECK(cfg.plan.dist == DistributionSpec::gaussian());
  REQUIRE(cfg.plan.estimators.size() == 1);
  CHECK(cfg.plan.alpha_grid == std::vector<double>{0.01, 0.02, 0.05});
  CHECK(cfg.plan.n == 10000);
  CHECK(cfg.plan.delta == 0.05);
  CHECK(cfg.plan.n_rep == 100);
  CHECK(cfg.plan.master_seed == kDefaultSeed);
  CHECK(std::holds_alternative<Identity>(cfg.plan.attack));
  CHECK(cfg.out == "out");
  CHECK(cfg.threads == 1);
  CHECK_FALSE(cfg.svg);
}

TEST_CASE("full config") {
  const auto cfg = parse_config(
      "label = t3 run\n"
      "dist = t(3)   # heavy tails\n"
      "estimator = mom(rule=fraction(0.2), partition=sequential)\n"
      "estimator = trimmed(eps=0.1)\n"
      "estimator = catoni(scale=2, delta=0.1)\n"
      "estimator = mean\n"
      "estimator = median\n"
      "attack = arbitrary_large(1e6, -)\n"
      "alpha = logspace(1e-3, 1e-1, 5)\n"
      "n = 5000\n"
      "delta = 0.1\n"
      "n_rep = 20\n"
      "seed = 7\n"
      "out = results/t3\n"
      "threads = 2\n"
      "scale = 0.5\n"
      "svg = true\n");
  CHECK(cfg.plan.label == "t3 run");
  CHECK(cfg.plan.estimators.size() == 5);
  const auto& mom = std::get<MedianOfMeans>(cfg.plan.estimators[0]);
  CHECK(mom.partition == Partition::Sequential);
  CHECK(std::get<Fraction>(mom.rule).beta == 0.2);
  CHECK(*std::get<TrimmedMean>(cfg.plan.estimators[1]).epsilon == 0.1);
  CHECK(*std::get<Catoni>(cfg.plan.estimators[2]).scale_guess == 2.0);
  CHECK(std::get<ArbitraryLarge>(cfg.plan.attack) == ArbitraryLarge{1e6, -1});
  CHECK(cfg.plan.alpha_grid.size() == 5);
  CHECK(cfg.plan.alpha_grid.back() == 0.1);
  CHECK(cfg.plan.master_seed == 7);
  CHECK(cfg.out == "results/t3");
  CHECK(cfg.threads == 2);
  CHECK(cfg.scale == 0.5);
  CHECK(cfg.svg);
  CHECK(parse_config(dump_config(cfg)) == cfg);
}

TEST_CASE("dump round-trips") {
  const auto cfg = parse_config(kMinimal);
  const auto text = dump_config(cfg);
  CHECK(parse_config(text) == cfg);
  CHECK(dump_config(parse_config(text)) == text);
}

TEST_CASE("unknown keys are rejected with a position") {
  const auto e = parse_failure(std::string(kMinimal) + "  fooo = 1\n");
  CHECK(e.line() == 5);
  CHECK(e.column() == 3);
  CHECK(std::string(e.what()) == "config:5:3: unknown key 'fooo'");
}

TEST_CASE("value errors point at the offending column") {
  auto e = parse_failure("dist = gaussian(0, 1)\nestimator = mom(rule=heavy_tail(3))\nalpha = 0.01, 0.005\n");
  CHECK(e.line() == 3);
  CHECK(e.column() == 15);
  e = parse_failure("dist = cauchy\n");
  CHECK(e.line() == 1);
  CHECK(e.column() == 8);
  e = parse_failure("dist = t(0)\n");
  CHECK(e.line() == 1);
  e = parse_failure("dist = gaussian(0, 1\n");
  CHECK(e.line() == 1);
  e = parse_failure("n = -3\n");
  CHECK(e.column() == 5);
  e = parse_failure("svg = maybe\n");
  CHECK(e.line() == 1);
  e = parse_failure("dist\n");
  CHECK(e.column() == 1);
}

TEST_CASE("duplicate and missing keys") {
  auto e = parse_failure(std::string(kMinimal) + "dist = t(3)\n");
  CHECK(e.line() == 5);
  e = parse_failure("dist = gaussian\nalpha = 0.1\n");
  CHECK(e.line() == 0);
  CHECK(std::string(e.what()) == "config: missing required key 'estimator'");
}

TEST_CASE("value grammars") {
  CHECK(parse_distribution("gpd(0.45)") == DistributionSpec::gpd(0.45, 1, 0));
  CHECK(parse_distribution("halfnormal") == DistributionSpec::half_normal());
  CHECK(parse_distribution("negexp(2)") == DistributionSpec::negative_exponential(2));
  CHECK(std::get<PowerLaw>(parse_block_rule("power(4, 0.5)")) == PowerLaw{4, 0.5});
  CHECK(std::holds_alternative<LargestReplacement>(parse_attack("largest_replacement")));
  CHECK(std::holds_alternative<SampleMean>(parse_estimator("mean")));
  CHECK(!std::get<TrimmedMean>(parse_estimator("trimmed(eps=auto)")).epsilon.has_value());
  CHECK_THROWS_AS(parse_estimator("mom(rule=heavy_tail(3), colour=red)"), ParseError);
  CHECK_THROWS_AS(parse_block_rule("fraction(2)"), ParseError);
  CHECK_THROWS_AS(parse_attack("arbitrary_large(1e9, *)"), ParseError);
}

TEST_CASE("every label re-parses to the same value") {
  for (const char* text : {"mom(rule=heavy_tail(2.5))", "mom(rule=power(4, 0.6666666666666666), partition=sequential)",
                           "trimmed(eps=0.05)", "catoni(scale=oracle, delta=0.05)", "median"}) {
    const auto est = parse_estimator(text);
    CHECK(parse_estimator(to_string(est)) == est);
  }
  for (const auto& d : {DistributionSpec::gpd(0.75, 2, -1), DistributionSpec::point_mass(3),
                        DistributionSpec::student_t(1.5)})
    CHECK(parse_distribution(d.to_string()) == d);
}

TEST_CASE("missing files are parse errors") {
  CHECK_THROWS_AS(load_config("/nonexistent/momlab.cfg"), ParseError);
}
