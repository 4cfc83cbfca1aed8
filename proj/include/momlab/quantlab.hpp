#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "momlab/distributions.hpp"

namespace momlab {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; callers write results by index so the outcome does
/// not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// The r-th smallest value, 1 <= r <= n (selection, not a full sort).
double order_statistic(std::span<const double> sample, std::size_t r);

/// Type-1 empirical quantile of an ascending sample: the ceil(q n)-th value.
double sorted_quantile(std::span<const double> sorted, double q);

/// Binomial-band standard error of the type-1 quantile of an ascending sample.
double sorted_quantile_se(std::span<const double> sorted, double q);

struct QuantileEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// reps independent draws of the centred block mean B_m, in ascending order.
/// Replication i uses its own substream, so the draws ignore `threads`.
std::vector<double> block_mean_draws(const DistributionSpec& spec, std::size_t m, std::size_t reps,
                                     std::uint64_t seed, unsigned threads = 1);

/// Type-1 quantile of B_m from reps >= 100 draws.
QuantileEstimate empirical_block_mean_quantile(const DistributionSpec& spec, std::size_t m,
                                               double q, std::size_t reps, std::uint64_t seed,
                                               unsigned threads = 1);

struct QuantileCurve {
  std::size_t m = 1;
  std::size_t reps = 0;
  std::vector<double> q;      ///< strictly increasing
  std::vector<double> value;  ///< nondecreasing
  std::vector<double> se;
};

/// Q_m at every level of `levels` from one shared set of draws.
QuantileCurve empirical_block_mean_curve(const DistributionSpec& spec, std::size_t m,
                                         std::span<const double> levels, std::size_t reps,
                                         std::uint64_t seed, unsigned threads = 1);

struct Coverage {
  double upper = 0.0;  ///< fraction with X_(r) <= Q(r/n + t)
  double lower = 0.0;  ///< fraction with X_(r) >= Q(r/n - t); 1 when r/n - t <= 0
};

/// Concentration of the r-th order statistic of n draws around Q(r/n), with
/// t = sqrt(log(1/delta) / (2n)). Needs an analytic population quantile.
Coverage order_statistic_coverage(const DistributionSpec& spec, std::size_t n, std::size_t r,
                                  double delta, std::size_t reps, std::uint64_t seed,
                                  unsigned threads = 1);

struct NormalApproxGap {
  std::size_t m = 1;
  double g_hat = 0.0;
  std::size_t reps = 0;
};

/// Kolmogorov-Smirnov distance between sqrt(m) B_m / sigma and the standard
/// normal, from reps >= 10^4 draws. Requires finite positive sigma.
NormalApproxGap normal_approx_gap(const DistributionSpec& spec, std::size_t m, std::size_t reps,
                                  std::uint64_t seed, unsigned threads = 1);

struct BlockCountResult {
  std::vector<std::uint32_t> z;  ///< one count per replication
  double mean_z = 0.0;

  /// Fraction of replications with Z >= threshold.
  double tail_prob(double threshold) const;
};

/// Z: among the ceil(k/2) lowest-ranked blocks, how many hold at least one of
/// the floor(alpha n) contaminated indices. Placement is uniform; the ranking
/// is uniform and independent of it unless `values` is given, in which case
/// clean samples are drawn from it and blocks are ranked by their means.
BlockCountResult contaminated_block_count(std::size_t n, std::size_t k, double alpha,
                                          std::size_t reps, std::uint64_t seed,
                                          const std::optional<DistributionSpec>& values = {},
                                          unsigned threads = 1);

/// E Z under the distribution-free model: ceil(k/2) (1 - C(n-c, m) / C(n, m)).
double expected_contaminated_block_count(std::size_t n, std::size_t k, double alpha);

struct SymmetricCheck {
  bool pass = true;
  double worst_ratio = 0.0;  ///< max of Q_m(1/2+eps) sqrt(m) / (sigma eps)
  std::size_t worst_m = 0;
  double worst_eps = 0.0;
};

/// Checks Q_m(1/2+eps) <= c sigma eps / sqrt(m) + 3 SE on the (m, eps) grid.
SymmetricCheck symmetric_class_check(const DistributionSpec& spec, double epsilon_0, double c,
                                     std::span<const std::size_t> m_grid,
                                     std::span<const double> eps_grid, std::size_t reps,
                                     std::uint64_t seed, unsigned threads = 1);

}  // namespace momlab
