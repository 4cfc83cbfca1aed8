#include "momlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "momlab/errors.hpp"
#include "momlab/format.hpp"
#include "momlab/rng.hpp"

namespace momlab {

namespace {

void require_nonempty(std::span<const double> sample, const char* who) {
  if (sample.empty()) throw ParameterError(std::string(who) + ": sample must be nonempty");
}

// psi(x) = log(1 + x + x^2/2) for x >= 0 and -log(1 - x + x^2/2) otherwise;
// derivative (1 + |x|) / (1 + |x| + x^2/2).
inline double catoni_psi(double x) {
  const double a = std::abs(x);
  const double v = std::log1p(a + 0.5 * a * a);
  return x >= 0.0 ? v : -v;
}

inline double catoni_psi_prime(double x) {
  const double a = std::abs(x);
  return (1.0 + a) / (1.0 + a + 0.5 * a * a);
}

}  // namespace

std::string to_string(const EstimatorSpec& spec) {
  return std::visit(
      [](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, MedianOfMeans>) {
          std::string s = "mom(rule=" + to_string(e.rule);
          if (e.partition == Partition::Sequential) s += ", partition=sequential";
          return s + ")";
        } else if constexpr (std::is_same_v<T, TrimmedMean>) {
          return "trimmed(eps=" + (e.epsilon ? format_double(*e.epsilon) : std::string("auto")) +
                 ")";
        } else if constexpr (std::is_same_v<T, Catoni>) {
          return "catoni(scale=" +
                 (e.scale_guess ? format_double(*e.scale_guess) : std::string("oracle")) +
                 ", delta=" + format_double(e.delta) + ")";
        } else if constexpr (std::is_same_v<T, SampleMean>) {
          return "mean";
        } else {
          return "median";
        }
      },
      spec);
}

double median_of_contiguous_blocks(std::span<const double> sample, std::size_t k) {
  const std::size_t n = sample.size();
  if (k < 1 || k > n) throw ParameterError("median_of_means: need 1 <= k <= n");
  const std::size_t m = n / k;
  const auto md = static_cast<double>(m);
  std::vector<double> means(k);
  for (std::size_t b = 0; b < k; ++b) {
    const double* block = sample.data() + b * m;
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += block[j];
    means[b] = sum / md;
  }
  const std::size_t rank = (k + 1) / 2;  // ceil(k/2), 1-based
  auto nth = means.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(means.begin(), nth, means.end());
  return *nth;
}

double median_of_means(std::span<const double> sample, std::size_t k, Partition partition,
                       std::uint64_t seed) {
  require_nonempty(sample, "median_of_means");
  if (k < 1 || k > sample.size()) throw ParameterError("median_of_means: need 1 <= k <= n");
  if (partition == Partition::Sequential) return median_of_contiguous_blocks(sample, k);
  const auto perm = random_permutation(sample.size(), seed);
  std::vector<double> shuffled(sample.size());
  for (std::size_t i = 0; i < shuffled.size(); ++i) shuffled[i] = sample[perm[i]];
  return median_of_contiguous_blocks(shuffled, k);
}

double trimmed_mean(std::span<const double> sample, double epsilon) {
  require_nonempty(sample, "trimmed_mean");
  if (!(epsilon >= 0.0 && epsilon < 0.5))
    throw ParameterError("trimmed_mean: epsilon must lie in [0, 1/2)");
  const std::size_t n = sample.size();
  const double raw = epsilon * static_cast<double>(n);
  const auto cut = static_cast<std::size_t>(std::floor(raw + 1e-9 * std::max(1.0, raw)));
  if (2 * cut >= n) throw ParameterError("trimmed_mean: nothing left after trimming");
  std::vector<double> v(sample.begin(), sample.end());
  if (cut > 0) {
    auto lo = v.begin() + static_cast<std::ptrdiff_t>(cut);
    std::nth_element(v.begin(), lo, v.end());
    auto hi = v.begin() + static_cast<std::ptrdiff_t>(n - cut);
    std::nth_element(lo, hi, v.end());
  }
  double sum = 0.0;
  for (std::size_t i = cut; i < n - cut; ++i) sum += v[i];
  return sum / static_cast<double>(n - 2 * cut);
}

double catoni(std::span<const double> sample, double scale_guess, double delta) {
  require_nonempty(sample, "catoni");
  if (!(scale_guess > 0.0) || !std::isfinite(scale_guess))
    throw ParameterError("catoni: scale_guess must be positive and finite");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("catoni: delta must lie in (0,1)");
  const auto n = static_cast<double>(sample.size());
  const double log_term = std::log(1.0 / delta);
  if (!(n > 2.0 * log_term)) throw ParameterError("catoni: requires n > 2 log(1/delta)");

  const double theta_s = std::sqrt(
      2.0 * log_term /
      (n * scale_guess * scale_guess * (1.0 + 2.0 * log_term / (n - 2.0 * log_term))));
  const auto [min_it, max_it] = std::minmax_element(sample.begin(), sample.end());
  double lo = *min_it;
  double hi = *max_it;
  if (lo == hi) return lo;

  auto score = [&](double theta) {
    double s = 0.0;
    for (double x : sample) s += catoni_psi(theta_s * (x - theta));
    return s;
  };
  auto slope = [&](double theta) {
    double d = 0.0;
    for (double x : sample) d += catoni_psi_prime(theta_s * (x - theta));
    return -theta_s * d;
  };

  // score is strictly decreasing in theta: score(lo) >= 0 >= score(hi)
  const double f_lo = score(lo);
  const double f_hi = score(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (!(f_lo > 0.0 && f_hi < 0.0)) throw NumericError("catoni: no sign change on [min, max]");

  // Bisection accelerated by Newton steps that stay inside the bracket. Once a
  // Newton step is shorter than the tolerance, probing half a tolerance on
  // either side of it closes the bracket.
  const double tol = 1e-10 * scale_guess;
  auto shrink = [&](double theta) {
    const double f = score(theta);
    (f > 0.0 ? lo : hi) = theta;
    return f;
  };
  // the sample median is a robust first guess; Newton then needs few steps
  double theta = sample_median(sample);
  if (!(theta > lo && theta < hi)) theta = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    const double f = shrink(theta);
    if (f == 0.0) return theta;
    if (hi - lo <= tol) break;
    const double d = slope(theta);
    double next = d < 0.0 ? theta - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - theta) < 0.5 * tol) {
      const double below = std::max(next - 0.5 * tol, lo);
      const double above = std::min(next + 0.5 * tol, hi);
      if (below > lo && shrink(below) == 0.0) return below;
      if (above < hi && shrink(above) == 0.0) return above;
      next = 0.5 * (lo + hi);
    }
    theta = next;
  }
  return 0.5 * (lo + hi);
}

double sample_mean(std::span<const double> sample) {
  require_nonempty(sample, "sample_mean");
  return std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(sample.size());
}

double sample_median(std::span<const double> sample) {
  require_nonempty(sample, "sample_median");
  std::vector<double> v(sample.begin(), sample.end());
  auto nth = v.begin() + static_cast<std::ptrdiff_t>((v.size() + 1) / 2 - 1);
  std::nth_element(v.begin(), nth, v.end());
  return *nth;
}

}  // namespace momlab
