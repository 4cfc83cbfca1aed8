#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace momlab {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the substream identified by (master, purpose tag, index). Two
/// different triples give statistically independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t index) noexcept;

/// Counter-based generator: the i-th output is mix64(key + i * golden gamma).
/// Cheap to construct, so every replication gets its own stream and results do
/// not depend on how replications are scheduled across threads.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) noexcept : state_(mix64(seed)) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() noexcept;

  /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// Uniform random permutation of 0..n-1 (Fisher-Yates).
std::vector<std::uint32_t> random_permutation(std::size_t n, std::uint64_t seed);

}  // namespace momlab
