#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "momlab/distributions.hpp"
#include "momlab/harness.hpp"
#include "momlab/quantlab.hpp"
#include "momlab/theory.hpp"
#include "momlab/verify.hpp"

using namespace momlab;

namespace {

unsigned g_threads = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

ExperimentPlan mom_plan(DistributionSpec dist, BlockRule rule, AttackKind attack,
                        std::vector<double> grid, std::size_t n, std::size_t reps) {
  ExperimentPlan plan;
  plan.label = "acceptance";
  plan.dist = std::move(dist);
  plan.estimators = {MedianOfMeans{rule, Partition::Shuffled}};
  plan.attack = attack;
  plan.alpha_grid = std::move(grid);
  plan.n = n;
  plan.n_rep = reps;
  return plan;
}

double mom_slope(const ExperimentPlan& plan, double lo, double hi,
                 SlopeStatistic stat = SlopeStatistic::Quantile) {
  return fit_slope(run_sweep(plan, g_threads), lo, hi, stat).slope;
}

Outcome slope_within(const ExperimentPlan& plan, double lo, double hi, double target, double tol) {
  const double s = mom_slope(plan, lo, hi);
  return {std::abs(s - target) <= tol, fmt("slope %.4f, target %.4f +- %.2f", s, target, tol)};
}

Outcome criterion_1() {
  const auto plan = mom_plan(DistributionSpec::gpd(0.45), HeavyTail{3}, LargestReplacement{},
                             log_grid(1e-3, 5e-2, 12), 100000, 100);
  return slope_within(plan, 2e-3, 5e-2, 0.5, 0.10);
}

Outcome criterion_2() {
  const auto plan = mom_plan(DistributionSpec::gpd(0.75), HeavyTail{3}, LargestReplacement{},
                             log_grid(1e-3, 5e-2, 12), 100000, 100);
  return slope_within(plan, 2e-3, 5e-2, 0.25, 0.10);
}

Outcome criterion_3() {
  const auto plan = mom_plan(DistributionSpec::student_t(3), Fraction{0.2}, LargestReplacement{},
                             log_grid(1e-3, 5e-2, 12), 1000000, 100);
  return slope_within(plan, 2e-3, 5e-2, 1.0, 0.15);
}

Outcome figure4_with(const AttackKind& attack) {
  const double shifts[] = {-0.2, -0.1, 0.0, 0.15, 0.3};
  Outcome out{true, "slopes"};
  for (double shift : shifts) {
    const double e = 2.0 / 3.0 + shift;
    const auto plan = mom_plan(DistributionSpec::half_normal(), PowerLaw{4, e}, attack,
                               log_grid(1e-3, 1e-2, 12), 1000000, 100);
    const double s = mom_slope(plan, 1e-3, 1e-2);
    out.detail += fmt(" i=%.3f:%.4f", e, s);
    out.pass = out.pass && s <= 0.78;
    if (shift == 0.0) out.pass = out.pass && std::abs(s - 2.0 / 3.0) <= 0.10;
  }
  return out;
}

Outcome criterion_4() {
  const auto gated = figure4_with(ArbitraryLarge{1e9, -1});
  std::printf("  note: figure 4 under largest_replacement (not gating):%s\n",
              figure4_with(LargestReplacement{}).detail.c_str());
  return gated;
}

Outcome criterion_5() {
  const std::vector<double> alphas{0.0, 0.01, 0.05};
  const auto frac = general_bound_failure_fractions(alphas, 10000, 0.05, 10000, kDefaultSeed, g_threads);
  Outcome out{true, "failure fractions"};
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    out.detail += fmt(" alpha=%.2f:%.4f", alphas[i], frac[i]);
    out.pass = out.pass && frac[i] <= 0.05;
  }
  return out;
}

Outcome criterion_6() {
  const auto dist = DistributionSpec::gpd(0.45);
  const std::size_t n = 100000;
  const double delta = 0.05;
  auto plan = mom_plan(dist, HeavyTail{2.5}, Identity{}, {0.0}, n, 1000);
  plan.delta = delta;
  const auto records = run_sweep(plan, g_threads);
  const double q = records.at(0).error_q;
  const double bound = bound_finite_variance(n, 0.0, delta, 2.5, dist.sigma()).value;
  const double floor = 10.0 * dist.sigma() * std::sqrt(std::log(2.0 / delta) / n);
  return {q <= bound && q <= floor,
          fmt("error quantile %.5f, bound %.5f, 10 sigma sqrt(log(2/delta)/n) %.5f", q, bound, floor)};
}

Outcome criterion_7() {
  Outcome out{true, "worst margin"};
  double worst = INFINITY;
  const auto dist = DistributionSpec::gaussian();
  for (std::size_t n : {1000u, 10000u}) {
    for (std::size_t r : {n / 4, n / 2, 3 * n / 4}) {
      for (double delta : {0.05, 0.2}) {
        const auto c = order_statistic_coverage(dist, n, r, delta, 10000, kDefaultSeed + r, g_threads);
        const double need = 1.0 - delta - 0.01;
        worst = std::min({worst, c.upper - need, c.lower - need});
        out.pass = out.pass && c.upper >= need && c.lower >= need;
      }
    }
  }
  out.detail = fmt("smallest coverage minus (1 - delta - 0.01): %.4f", worst);
  return out;
}

Outcome criterion_8() {
  Outcome out{true, "mean Z"};
  const std::size_t n = 10000;
  const double target = 1.0 - std::exp(-0.5);
  for (double alpha : {0.005, 0.01}) {
    // k = 4 alpha n gives m = 1/(4 alpha) < 1/(2 alpha)
    const auto k = static_cast<std::size_t>(std::llround(4.0 * alpha * n));
    const auto z = contaminated_block_count(n, k, alpha, 10000, kDefaultSeed, {}, g_threads);
    out.detail += fmt(" alpha=%.3f,m=%.0f:%.4f", alpha, static_cast<double>(n / k), z.mean_z);
    out.pass = out.pass && z.mean_z > target;
  }
  out.detail += fmt(" (threshold %.4f)", target);
  return out;
}

Outcome criterion_9() {
  const auto plan = mom_plan(DistributionSpec::gaussian(), HeavyTail{3}, ArbitraryLarge{1e9, +1},
                             log_grid(1e-3, 3e-2, 10), 100000, 100);
  const auto records = run_sweep(plan, g_threads);
  const bool positive = std::all_of(records.begin(), records.end(),
                                    [](const auto& r) { return r.error_median > 0.0; });
  const double s = fit_slope(records, 1e-3, 3e-2, SlopeStatistic::Median).slope;
  return {positive && s >= 0.40 && s <= 0.60,
          fmt("median-error slope %.4f, all points positive: %.0f", s, positive ? 1.0 : 0.0)};
}

Outcome criterion_10() {
  const auto results = run_verify("all", {kDefaultSeed, g_threads});
  std::size_t failed = 0;
  for (const auto& r : results)
    if (!r.pass) {
      ++failed;
      std::printf("  failed check: %s (%s) measured %g %s %g\n", r.name.c_str(), r.anchor.c_str(),
                  r.measured, r.relation.c_str(), r.threshold);
    }
  return {failed == 0, fmt("%.0f checks, %.0f failed", static_cast<double>(results.size()),
                           static_cast<double>(failed))};
}

}  // namespace

int main() {
  g_threads = std::max(1u, std::thread::hardware_concurrency());
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 figure 1a slope (finite variance)", criterion_1},
      {"2 figure 1b slope (infinite variance)", criterion_2},
      {"3 figure 1c slope (t3, fraction rule)", criterion_3},
      {"4 figure 4 floor (half-normal, power rules)", criterion_4},
      {"5 general quantile bound coverage", criterion_5},
      {"6 uncontaminated deviation bound", criterion_6},
      {"7 order-statistic coverage", criterion_7},
      {"8 contaminated block count", criterion_8},
      {"9 lower-bound slope", criterion_9},
      {"10 property suites", criterion_10},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", name,
                out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
