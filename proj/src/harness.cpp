#include "momlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>

#include "momlab/errors.hpp"
#include "momlab/format.hpp"
#include "momlab/quantlab.hpp"
#include "momlab/rng.hpp"
#include "momlab/theory.hpp"

namespace momlab {

namespace {

double oracle_scale(const DistributionSpec& dist) {
  const Moments& mo = dist.moments();
  if (mo.finite_variance()) return mo.sigma > 0.0 ? mo.sigma : 1.0;
  if (mo.v_r) return std::pow(mo.v_r->value, 1.0 / (1.0 + mo.v_r->r));
  return 1.0;
}

double auto_trim(double alpha, std::size_t n, double delta) {
  return alpha + std::sqrt(std::log(4.0 / delta) / (2.0 * static_cast<double>(n)));
}

double trim_fraction(const TrimmedMean& t, double alpha, std::size_t n, double delta) {
  return t.epsilon ? *t.epsilon : auto_trim(alpha, n, delta);
}

bool is_shuffled_mom(const EstimatorSpec& e) {
  const auto* mom = std::get_if<MedianOfMeans>(&e);
  return mom != nullptr && mom->partition == Partition::Shuffled;
}

double estimate(const EstimatorSpec& est, std::span<const double> sample, std::size_t k,
                double alpha, double delta, const DistributionSpec& dist,
                std::uint64_t part_seed) {
  if (const auto* mom = std::get_if<MedianOfMeans>(&est))
    return median_of_means(sample, k, mom->partition, part_seed);
  if (const auto* t = std::get_if<TrimmedMean>(&est))
    return trimmed_mean(sample, trim_fraction(*t, alpha, sample.size(), delta));
  if (const auto* c = std::get_if<Catoni>(&est))
    return catoni(sample, c->scale_guess.value_or(oracle_scale(dist)), c->delta);
  if (std::holds_alternative<SampleMean>(est)) return sample_mean(sample);
  return sample_median(sample);
}

using Sink = std::function<void(std::size_t estimator, std::size_t alpha_index, double error)>;

// One replication over every (alpha, estimator) pair. The clean draw does not
// depend on alpha, so it is made once; shuffled MoM works on a pre-permuted
// copy and patches the attacked positions, which reproduces
// median_of_means(contaminated, k, Shuffled, part_seed) exactly.
void replicate(const DistributionSpec& dist, const std::vector<EstimatorSpec>& estimators,
               const AttackKind& attack, const std::vector<double>& grid,
               const std::vector<std::vector<std::size_t>>& ks, std::size_t n, double delta,
               std::size_t rep, std::uint64_t master_seed, const Sink& sink) {
  const std::uint64_t part_seed = derive_seed(master_seed, "part", rep);
  const auto clean = sample(dist, n, derive_seed(master_seed, "draw", rep));
  std::size_t max_count = 0;
  for (double a : grid) max_count = std::max(max_count, contaminated_count(a, n));
  const AttackPlanner planner(attack, clean, derive_seed(master_seed, "attack", rep), max_count);

  std::vector<double> shuffled_clean;
  std::vector<std::uint32_t> inverse;
  if (std::any_of(estimators.begin(), estimators.end(), is_shuffled_mom)) {
    const auto perm = random_permutation(n, part_seed);
    shuffled_clean.resize(n);
    inverse.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      shuffled_clean[i] = clean[perm[i]];
      inverse[perm[i]] = static_cast<std::uint32_t>(i);
    }
  }

  const double mu = dist.mu();
  std::vector<double> buffer;
  std::vector<double> contaminated;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    const auto report = planner.report(grid[a]);
    bool built = false;
    for (std::size_t e = 0; e < estimators.size(); ++e) {
      double value = 0.0;
      if (is_shuffled_mom(estimators[e])) {
        buffer = shuffled_clean;
        for (std::size_t j = 0; j < report.modified_indices.size(); ++j)
          buffer[inverse[report.modified_indices[j]]] = report.replaced_values[j];
        value = median_of_contiguous_blocks(buffer, ks[e][a]);
      } else {
        if (!built) {
          contaminated = clean;
          for (std::size_t j = 0; j < report.modified_indices.size(); ++j)
            contaminated[report.modified_indices[j]] = report.replaced_values[j];
          built = true;
        }
        value = estimate(estimators[e], contaminated, ks[e][a], grid[a], delta, dist, part_seed);
      }
      sink(e, a, std::abs(value - mu));
    }
  }
}

std::vector<std::vector<std::size_t>> block_table(const std::vector<EstimatorSpec>& estimators,
                                                  const std::vector<double>& grid, std::size_t n,
                                                  double delta) {
  std::vector<std::vector<std::size_t>> ks(estimators.size());
  for (std::size_t e = 0; e < estimators.size(); ++e)
    for (double a : grid) ks[e].push_back(blocks_used(estimators[e], n, a, delta));
  return ks;
}

void check_estimator(const EstimatorSpec& est, std::size_t n, double alpha, double delta) {
  if (const auto* t = std::get_if<TrimmedMean>(&est)) {
    const double eps = trim_fraction(*t, alpha, n, delta);
    if (!(eps >= 0.0 && eps < 0.5))
      throw ParameterError("trimmed mean: trimming fraction " + format_double(eps) +
                           " outside [0, 1/2)");
  } else if (const auto* c = std::get_if<Catoni>(&est)) {
    if (!(c->delta > 0.0 && c->delta < 1.0)) throw ParameterError("catoni: delta must lie in (0,1)");
    if (c->scale_guess && !(*c->scale_guess > 0.0))
      throw ParameterError("catoni: scale must be positive");
    if (!(static_cast<double>(n) > 2.0 * std::log(1.0 / c->delta)))
      throw ParameterError("catoni: requires n > 2 log(1/delta)");
  }
}

}  // namespace

std::size_t blocks_used(const EstimatorSpec& estimator, std::size_t n, double alpha,
                        double delta) {
  if (const auto* mom = std::get_if<MedianOfMeans>(&estimator))
    return resolve_blocks(mom->rule, n, alpha, delta).k;
  return 0;
}

void validate(const ExperimentPlan& plan) {
  if (plan.n < 1) throw ParameterError("plan: n must be at least 1");
  if (plan.n > 0xffffffffULL) throw ParameterError("plan: n must fit in 32 bits");
  if (plan.n_rep < 1) throw ParameterError("plan: n_rep must be at least 1");
  if (!(plan.delta > 0.0 && plan.delta < 1.0)) throw ParameterError("plan: delta must lie in (0,1)");
  if (plan.estimators.empty()) throw ParameterError("plan: at least one estimator is required");
  if (plan.alpha_grid.empty()) throw ParameterError("plan: alpha grid is empty");
  for (std::size_t i = 0; i < plan.alpha_grid.size(); ++i) {
    const double a = plan.alpha_grid[i];
    if (!(a >= 0.0)) throw ParameterError("plan: alpha must be nonnegative");
    if (!(a < 0.5)) throw ContractError("contamination requires alpha < 1/2");
    if (i > 0 && !(a > plan.alpha_grid[i - 1]))
      throw ParameterError("plan: alpha grid must be strictly increasing");
  }
  for (const auto& est : plan.estimators) {
    for (double a : plan.alpha_grid) {
      blocks_used(est, plan.n, a, plan.delta);
      check_estimator(est, plan.n, a, plan.delta);
    }
  }
}

double run_replication(const DistributionSpec& dist, const EstimatorSpec& estimator,
                       const AttackKind& attack, double alpha, std::size_t n, double delta,
                       std::size_t replication_index, std::uint64_t master_seed) {
  const std::vector<EstimatorSpec> estimators{estimator};
  const std::vector<double> grid{alpha};
  if (!(alpha >= 0.0)) throw ParameterError("replication: alpha must be nonnegative");
  if (!(alpha < 0.5)) throw ContractError("contamination requires alpha < 1/2");
  check_estimator(estimator, n, alpha, delta);
  const auto ks = block_table(estimators, grid, n, delta);
  double error = 0.0;
  replicate(dist, estimators, attack, grid, ks, n, delta, replication_index, master_seed,
            [&](std::size_t, std::size_t, double err) { error = err; });
  return error;
}

ErrorTable run_errors(const ExperimentPlan& plan, unsigned threads) {
  validate(plan);
  const auto ks = block_table(plan.estimators, plan.alpha_grid, plan.n, plan.delta);
  ErrorTable errors(plan.estimators.size(),
                    std::vector<std::vector<double>>(plan.alpha_grid.size(),
                                                     std::vector<double>(plan.n_rep)));
  parallel_for(plan.n_rep, threads, [&](std::size_t rep) {
    replicate(plan.dist, plan.estimators, plan.attack, plan.alpha_grid, ks, plan.n, plan.delta,
              rep, plan.master_seed,
              [&](std::size_t e, std::size_t a, double err) { errors[e][a][rep] = err; });
  });
  return errors;
}

std::vector<ErrorQuantileRecord> run_sweep(const ExperimentPlan& plan, unsigned threads) {
  auto errors = run_errors(plan, threads);
  std::vector<ErrorQuantileRecord> records;
  const std::string attack = to_string(plan.attack);
  for (std::size_t e = 0; e < plan.estimators.size(); ++e) {
    for (std::size_t a = 0; a < plan.alpha_grid.size(); ++a) {
      auto& errs = errors[e][a];
      std::sort(errs.begin(), errs.end());
      ErrorQuantileRecord r;
      r.label = plan.label;
      r.estimator = to_string(plan.estimators[e]);
      r.attack = attack;
      r.alpha = plan.alpha_grid[a];
      r.n = plan.n;
      r.k = blocks_used(plan.estimators[e], plan.n, r.alpha, plan.delta);
      r.delta = plan.delta;
      r.n_rep = plan.n_rep;
      r.error_q = sorted_quantile(errs, 1.0 - plan.delta);
      r.error_median = sorted_quantile(errs, 0.5);
      r.master_seed = plan.master_seed;
      records.push_back(std::move(r));
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const auto& x, const auto& y) {
    return x.estimator != y.estimator ? x.estimator < y.estimator : x.alpha < y.alpha;
  });
  return records;
}

SlopeFit fit_slope(const std::vector<ErrorQuantileRecord>& records, double lo, double hi,
                   SlopeStatistic statistic) {
  if (!(lo > 0.0 && hi > lo)) throw ParameterError("fit_slope: need 0 < lo < hi");
  std::vector<double> xs, ys;
  SlopeFit fit;
  fit.alpha_lo = lo;
  fit.alpha_hi = hi;
  const double slack = 1e-9;
  for (const auto& r : records) {
    const double v = statistic == SlopeStatistic::Quantile ? r.error_q : r.error_median;
    if (r.alpha < lo * (1.0 - slack) || r.alpha > hi * (1.0 + slack) || !(v > 0.0)) continue;
    if (xs.empty()) {
      fit.label = r.label;
      fit.estimator = r.estimator;
    }
    xs.push_back(std::log(r.alpha));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 3) throw ParameterError("fit_slope: fewer than 3 usable points in the window");
  const auto np = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= np;
  my /= np;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw ParameterError("fit_slope: alphas in the window are all equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = std::max(0.0, syy - fit.slope * sxy);
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.points = xs.size();
  return fit;
}

std::vector<SlopeFit> fit_slopes(const std::vector<ErrorQuantileRecord>& records, double lo,
                                 double hi, SlopeStatistic statistic) {
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<ErrorQuantileRecord>> groups;
  for (const auto& r : records) {
    auto key = std::make_pair(r.label, r.estimator);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(r);
  }
  std::vector<SlopeFit> fits;
  for (const auto& key : order) fits.push_back(fit_slope(groups[key], lo, hi, statistic));
  return fits;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi >= lo)) throw ParameterError("log grid: need 0 < lo <= hi");
  if (count < 1) throw ParameterError("log grid: count must be at least 1");
  if (count == 1) {
    if (lo != hi) throw ParameterError("log grid: a single point needs lo == hi");
    return {lo};
  }
  if (!(hi > lo)) throw ParameterError("log grid: need lo < hi for several points");
  std::vector<double> grid(count);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = std::exp(a + step * static_cast<double>(i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

FigurePreset figure_preset(const std::string& id, double scale) {
  if (!(scale > 0.0 && scale <= 1.0)) throw ParameterError("figure: scale must lie in (0, 1]");
  auto scaled = [&](double base) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(base * scale)));
  };
  ExperimentPlan base;
  base.delta = 0.05;
  base.n_rep = 100;
  base.attack = LargestReplacement{};
  base.alpha_grid = log_grid(1e-3, 5e-2, 12);
  const std::vector<EstimatorSpec> baselines{TrimmedMean{}, Catoni{}};

  FigurePreset preset;
  preset.id = id;
  preset.window_lo = 2e-3;
  preset.window_hi = 5e-2;
  if (id == "1a" || id == "1b") {
    const bool finite = id == "1a";
    base.label = "fig" + id;
    base.dist = DistributionSpec::gpd(finite ? 0.45 : 0.75, 1.0, 0.0);
    base.n = scaled(1e6);
    base.estimators = {MedianOfMeans{HeavyTail{3.0}, Partition::Shuffled}};
    base.estimators.insert(base.estimators.end(), baselines.begin(), baselines.end());
    preset.reference_slope = finite ? 0.5 : asymptotic_bias_order(BiasClass::P1PlusR, 1.0 / 3.0);
    preset.reference_label = finite ? "O(alpha^1/2)" : "O(alpha^r/(1+r)), r = 1/3";
    preset.plans = {base};
  } else if (id == "1c") {
    base.label = "fig1c";
    base.dist = DistributionSpec::student_t(3.0);
    base.n = scaled(1e7);
    base.estimators = {MedianOfMeans{Fraction{0.2}, Partition::Shuffled}};
    base.estimators.insert(base.estimators.end(), baselines.begin(), baselines.end());
    preset.reference_slope = 1.0;
    preset.reference_label = "O(alpha)";
    preset.plans = {base};
  } else if (id == "4") {
    base.label = "fig4";
    base.dist = DistributionSpec::half_normal();
    base.n = scaled(1e7);
    base.attack = ArbitraryLarge{1e9, -1};
    base.alpha_grid = log_grid(1e-3, 1e-2, 12);
    preset.window_lo = 1e-3;
    preset.window_hi = 1e-2;
    const double centre = 2.0 / 3.0;
    for (double shift : {-0.2, -0.1, 0.0, 0.15, 0.3}) {
      ExperimentPlan plan = base;
      plan.estimators = {MedianOfMeans{PowerLaw{4.0, centre + shift}, Partition::Shuffled}};
      preset.plans.push_back(plan);
    }
    preset.reference_slope = centre;
    preset.reference_label = "O(alpha^2/3)";
  } else {
    throw ParameterError("unknown figure id '" + id + "' (expected 1a, 1b, 1c or 4)");
  }
  return preset;
}

void write_results_csv(std::ostream& os, const std::vector<ErrorQuantileRecord>& records) {
  os << "label,estimator,attack,alpha,n,k,delta,n_rep,error_q,error_median,master_seed\n";
  for (const auto& r : records) {
    os << csv_field(r.label) << ',' << csv_field(r.estimator) << ',' << csv_field(r.attack) << ','
       << format_double(r.alpha) << ',' << r.n << ',' << r.k << ',' << format_double(r.delta)
       << ',' << r.n_rep << ',' << format_double(r.error_q) << ','
       << format_double(r.error_median) << ',' << r.master_seed << '\n';
  }
}

void write_slopes_csv(std::ostream& os, const std::vector<SlopeFit>& fits) {
  os << "label,estimator,alpha_lo,alpha_hi,slope,intercept,r_squared,points\n";
  for (const auto& f : fits) {
    os << csv_field(f.label) << ',' << csv_field(f.estimator) << ',' << format_double(f.alpha_lo)
       << ',' << format_double(f.alpha_hi) << ',' << format_double(f.slope) << ','
       << format_double(f.intercept) << ',' << format_double(f.r_squared) << ',' << f.points
       << '\n';
  }
}

}  // namespace momlab
