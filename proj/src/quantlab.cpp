#include "momlab/quantlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "momlab/contamination.hpp"
#include "momlab/errors.hpp"
#include "momlab/rng.hpp"

namespace momlab {

namespace {

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::size_t tolerant_ceil_index(double x) {
  return static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))));
}

}  // namespace

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double order_statistic(std::span<const double> sample, std::size_t r) {
  if (r < 1 || r > sample.size()) throw ParameterError("order_statistic: need 1 <= r <= n");
  std::vector<double> v(sample.begin(), sample.end());
  auto nth = v.begin() + static_cast<std::ptrdiff_t>(r - 1);
  std::nth_element(v.begin(), nth, v.end());
  return *nth;
}

double sorted_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ParameterError("quantile: empty sample");
  if (!(q > 0.0 && q <= 1.0)) throw ParameterError("quantile: q must lie in (0,1]");
  const std::size_t r =
      std::clamp<std::size_t>(tolerant_ceil_index(q * static_cast<double>(sorted.size())), 1,
                              sorted.size());
  return sorted[r - 1];
}

double sorted_quantile_se(std::span<const double> sorted, double q) {
  const auto n = static_cast<double>(sorted.size());
  const double s = std::sqrt(q * (1.0 - q) / n);
  const double lo = std::max(q - s, 1.0 / n);
  const double hi = std::min(q + s, 1.0);
  return 0.5 * (sorted_quantile(sorted, hi) - sorted_quantile(sorted, lo));
}

std::vector<double> block_mean_draws(const DistributionSpec& spec, std::size_t m, std::size_t reps,
                                     std::uint64_t seed, unsigned threads) {
  if (m < 1) throw ParameterError("block mean: m must be at least 1");
  if (reps < 1) throw ParameterError("block mean: reps must be at least 1");
  const double mu = spec.mu();
  const auto md = static_cast<double>(m);
  std::vector<double> out(reps);
  parallel_for(reps, threads, [&](std::size_t i) {
    Stream rng(derive_seed(seed, "block_mean", i));
    // centring each term keeps a point mass at exactly zero
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += draw(spec, rng) - mu;
    out[i] = sum / md;
  });
  std::sort(out.begin(), out.end());
  return out;
}

QuantileEstimate empirical_block_mean_quantile(const DistributionSpec& spec, std::size_t m,
                                               double q, std::size_t reps, std::uint64_t seed,
                                               unsigned threads) {
  if (reps < 100) throw ParameterError("block mean quantile: reps must be at least 100");
  if (!(q > 0.0 && q < 1.0)) throw ParameterError("block mean quantile: q must lie in (0,1)");
  const auto draws = block_mean_draws(spec, m, reps, seed, threads);
  return {sorted_quantile(draws, q), sorted_quantile_se(draws, q)};
}

QuantileCurve empirical_block_mean_curve(const DistributionSpec& spec, std::size_t m,
                                         std::span<const double> levels, std::size_t reps,
                                         std::uint64_t seed, unsigned threads) {
  if (reps < 100) throw ParameterError("block mean quantile: reps must be at least 100");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0 && levels[i] < 1.0))
      throw ParameterError("quantile curve: levels must lie in (0,1)");
    if (i > 0 && !(levels[i] > levels[i - 1]))
      throw ParameterError("quantile curve: levels must be strictly increasing");
  }
  const auto draws = block_mean_draws(spec, m, reps, seed, threads);
  QuantileCurve curve;
  curve.m = m;
  curve.reps = reps;
  for (double q : levels) {
    curve.q.push_back(q);
    curve.value.push_back(sorted_quantile(draws, q));
    curve.se.push_back(sorted_quantile_se(draws, q));
  }
  return curve;
}

Coverage order_statistic_coverage(const DistributionSpec& spec, std::size_t n, std::size_t r,
                                  double delta, std::size_t reps, std::uint64_t seed,
                                  unsigned threads) {
  if (r < 1 || r > n) throw ParameterError("order statistic coverage: need 1 <= r <= n");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("order statistic coverage: δ in (0,1)");
  if (reps < 1) throw ParameterError("order statistic coverage: reps must be at least 1");
  const double eps = static_cast<double>(r) / static_cast<double>(n);
  const double t = std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
  if (!(eps + t < 1.0))
    throw ContractError("order statistic coverage requires r/n + sqrt(log(1/δ)/2n) < 1");
  const auto upper_threshold = quantile(spec, eps + t);
  if (!upper_threshold || !spec.is_continuous())
    throw ContractError("order statistic coverage requires a continuous analytic quantile");
  const bool has_lower = eps - t > 0.0;
  const double lower_threshold = has_lower ? *quantile(spec, eps - t) : 0.0;

  // X_(r) is simulated as Q(U_(r)) for n uniforms, which has the law of the
  // r-th order statistic of n draws from the spec.
  std::vector<char> upper_ok(reps), lower_ok(reps);
  parallel_for(reps, threads, [&](std::size_t i) {
    Stream rng(derive_seed(seed, "coverage", i));
    std::vector<double> u(n);
    for (auto& x : u) x = rng.uniform();
    auto nth = u.begin() + static_cast<std::ptrdiff_t>(r - 1);
    std::nth_element(u.begin(), nth, u.end());
    const double x_r = *quantile(spec, *nth);
    upper_ok[i] = x_r <= *upper_threshold;
    lower_ok[i] = !has_lower || x_r >= lower_threshold;
  });
  const auto frac = [&](const std::vector<char>& v) {
    return static_cast<double>(std::count(v.begin(), v.end(), char{1})) /
           static_cast<double>(reps);
  };
  return {frac(upper_ok), frac(lower_ok)};
}

NormalApproxGap normal_approx_gap(const DistributionSpec& spec, std::size_t m, std::size_t reps,
                                  std::uint64_t seed, unsigned threads) {
  if (!spec.moments().finite_variance() || !(spec.sigma() > 0.0))
    throw ContractError("normal approximation gap requires finite positive variance");
  if (reps < 10000) throw ParameterError("normal approximation gap: reps must be at least 10^4");
  const auto draws = block_mean_draws(spec, m, reps, seed, threads);
  const double scale = std::sqrt(static_cast<double>(m)) / spec.sigma();
  const auto nd = static_cast<double>(reps);
  double d = 0.0;
  for (std::size_t i = 0; i < reps; ++i) {
    const double phi = standard_normal_cdf(draws[i] * scale);
    d = std::max({d, static_cast<double>(i + 1) / nd - phi, phi - static_cast<double>(i) / nd});
  }
  return {m, std::clamp(d, 0.0, 1.0), reps};
}

double BlockCountResult::tail_prob(double threshold) const {
  if (z.empty()) return 0.0;
  const auto hits = std::count_if(z.begin(), z.end(),
                                  [&](std::uint32_t v) { return static_cast<double>(v) >= threshold; });
  return static_cast<double>(hits) / static_cast<double>(z.size());
}

BlockCountResult contaminated_block_count(std::size_t n, std::size_t k, double alpha,
                                          std::size_t reps, std::uint64_t seed,
                                          const std::optional<DistributionSpec>& values,
                                          unsigned threads) {
  if (k < 1 || k > n) throw ParameterError("block count: need 1 <= k <= n");
  if (!(alpha >= 0.0 && alpha < 0.5)) throw ParameterError("block count: α must lie in [0, 1/2)");
  if (reps < 1) throw ParameterError("block count: reps must be at least 1");
  const std::size_t c = contaminated_count(alpha, n);
  const std::size_t m = n / k;
  const std::size_t half = (k + 1) / 2;

  BlockCountResult out;
  out.z.assign(reps, 0);
  parallel_for(reps, threads, [&](std::size_t i) {
    Stream place(derive_seed(seed, "zplace", i));
    // Floyd's sampling of c distinct indices out of n
    std::vector<char> contaminated(n, 0);
    for (std::size_t j = n - c; j < n; ++j) {
      const auto t = static_cast<std::size_t>(place.below(j + 1));
      contaminated[contaminated[t] ? j : t] = 1;
    }

    std::vector<std::uint32_t> blocks(k);
    std::iota(blocks.begin(), blocks.end(), 0u);
    if (values) {
      Stream draws(derive_seed(seed, "zvalues", i));
      std::vector<double> means(k);
      for (std::size_t b = 0; b < k; ++b) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) sum += draw(*values, draws);
        means[b] = sum;
      }
      std::nth_element(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(half - 1),
                       blocks.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return means[a] < means[b]; });
    } else {
      Stream rank(derive_seed(seed, "zrank", i));
      for (std::size_t j = 0; j < half; ++j) {
        const auto t = j + static_cast<std::size_t>(rank.below(k - j));
        std::swap(blocks[j], blocks[t]);
      }
    }
    std::uint32_t z = 0;
    for (std::size_t j = 0; j < half; ++j) {
      const std::size_t start = static_cast<std::size_t>(blocks[j]) * m;
      for (std::size_t p = start; p < start + m; ++p) {
        if (contaminated[p]) {
          ++z;
          break;
        }
      }
    }
    out.z[i] = z;
  });
  out.mean_z = std::accumulate(out.z.begin(), out.z.end(), 0.0) / static_cast<double>(reps);
  return out;
}

double expected_contaminated_block_count(std::size_t n, std::size_t k, double alpha) {
  if (k < 1 || k > n) throw ParameterError("block count: need 1 <= k <= n");
  const std::size_t c = contaminated_count(alpha, n);
  const std::size_t m = n / k;
  double clean_prob = 1.0;
  for (std::size_t j = 0; j < m; ++j)
    clean_prob *= static_cast<double>(n - c > j ? n - c - j : 0) / static_cast<double>(n - j);
  return static_cast<double>((k + 1) / 2) * (1.0 - clean_prob);
}

SymmetricCheck symmetric_class_check(const DistributionSpec& spec, double epsilon_0, double c,
                                     std::span<const std::size_t> m_grid,
                                     std::span<const double> eps_grid, std::size_t reps,
                                     std::uint64_t seed, unsigned threads) {
  if (!spec.has(ClassTag::Symmetric) || !spec.moments().finite_variance())
    throw ContractError("symmetric class check requires a symmetric distribution with finite variance");
  if (!(epsilon_0 > 0.0 && epsilon_0 < 1.0 / 3.0))
    throw ParameterError("symmetric class check: ε0 must lie in (0, 1/3)");
  if (!(c > 5.0)) throw ParameterError("symmetric class check: c must exceed 5");
  for (double e : eps_grid)
    if (!(e >= 0.0 && e <= epsilon_0))
      throw ParameterError("symmetric class check: ε grid must lie in [0, ε0]");
  if (reps < 100) throw ParameterError("symmetric class check: reps must be at least 100");

  SymmetricCheck out;
  const double sigma = spec.sigma();
  for (std::size_t j = 0; j < m_grid.size(); ++j) {
    const std::size_t m = m_grid[j];
    const auto draws = block_mean_draws(spec, m, reps, derive_seed(seed, "symmetric", j), threads);
    const double root_m = std::sqrt(static_cast<double>(m));
    for (double eps : eps_grid) {
      const double q = sorted_quantile(draws, 0.5 + eps);
      const double se = sorted_quantile_se(draws, 0.5 + eps);
      if (q > c * sigma * eps / root_m + 3.0 * se) out.pass = false;
      if (eps > 0.0 && sigma > 0.0) {
        const double ratio = q * root_m / (sigma * eps);
        if (out.worst_m == 0 || ratio > out.worst_ratio) {
          out.worst_ratio = ratio;
          out.worst_m = m;
          out.worst_eps = eps;
        }
      }
    }
  }
  return out;
}

}  // namespace momlab
