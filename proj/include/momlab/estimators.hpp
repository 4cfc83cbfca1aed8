#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "momlab/theory.hpp"

namespace momlab {

enum class Partition { Sequential, Shuffled };

struct MedianOfMeans {
  BlockRule rule = HeavyTail{};
  Partition partition = Partition::Shuffled;
  bool operator==(const MedianOfMeans&) const = default;
};
/// epsilon == nullopt means "auto": alpha + sqrt(log(4/delta) / (2n)).
struct TrimmedMean {
  std::optional<double> epsilon;
  bool operator==(const TrimmedMean&) const = default;
};
/// scale_guess == nullopt means the oracle scale of the sampled distribution.
struct Catoni {
  std::optional<double> scale_guess;
  double delta = 0.05;
  bool operator==(const Catoni&) const = default;
};
struct SampleMean {
  bool operator==(const SampleMean&) const = default;
};
struct SampleMedian {
  bool operator==(const SampleMedian&) const = default;
};

using EstimatorSpec = std::variant<MedianOfMeans, TrimmedMean, Catoni, SampleMean, SampleMedian>;

/// Config-grammar form, also used as the estimator label in result files.
std::string to_string(const EstimatorSpec& spec);

/// The ceil(k/2)-th order statistic of the means of k contiguous blocks of
/// size floor(n/k); trailing samples that do not fill a block are dropped.
double median_of_contiguous_blocks(std::span<const double> sample, std::size_t k);

/// Median-of-means. Shuffled partition applies a uniform permutation drawn
/// from `seed` before blocking; sequential uses input order.
double median_of_means(std::span<const double> sample, std::size_t k,
                       Partition partition = Partition::Sequential, std::uint64_t seed = 0);

/// Mean after removing the floor(epsilon n) smallest and largest values.
double trimmed_mean(std::span<const double> sample, double epsilon);

/// Root of sum psi(theta_s (X_i - theta)) with Catoni's narrowest influence
/// function, bracketed on [min, max].
double catoni(std::span<const double> sample, double scale_guess, double delta);

double sample_mean(std::span<const double> sample);

/// Lower median: the ceil(n/2)-th order statistic.
double sample_median(std::span<const double> sample);

}  // namespace momlab
