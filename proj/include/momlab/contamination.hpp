#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace momlab {

struct Identity {
  bool operator==(const Identity&) const = default;
};
/// Replaces the floor(alpha n) largest values by the sample minimum.
struct LargestReplacement {
  bool operator==(const LargestReplacement&) const = default;
};
/// Sets floor(alpha n) uniformly chosen positions to mean + sign * magnitude * sd.
struct ArbitraryLarge {
  double magnitude = 1e9;
  int sign = +1;
  bool operator==(const ArbitraryLarge&) const = default;
};

using AttackKind = std::variant<Identity, LargestReplacement, ArbitraryLarge>;

/// Config-grammar form, e.g. "arbitrary_large(1e9, +)".
std::string to_string(const AttackKind& kind);

struct AttackSpec {
  AttackKind kind;
  double alpha = 0.0;
};

struct ContaminationReport {
  std::vector<std::size_t> modified_indices;
  std::vector<double> replaced_values;  ///< parallel to modified_indices
};

struct ContaminatedSample {
  std::vector<double> sample;
  ContaminationReport report;
};

/// floor(alpha n), robust to alpha*n landing a few ulps below an integer.
std::size_t contaminated_count(double alpha, std::size_t n);

/// Precomputes what an attack needs from one clean sample so that reports for
/// many alphas (up to `max_count` modified points) cost O(count) each. The
/// report for a given alpha is the same as apply_attack's.
class AttackPlanner {
 public:
  AttackPlanner(const AttackKind& kind, std::span<const double> clean, std::uint64_t seed,
                std::size_t max_count);

  ContaminationReport report(double alpha) const;
  std::size_t size() const { return n_; }

 private:
  AttackKind kind_;
  std::size_t n_;
  std::size_t max_count_;
  double replacement_ = 0.0;
  std::vector<std::size_t> order_;  ///< positions in the order they get attacked
};

ContaminatedSample apply_attack(const AttackSpec& attack, std::span<const double> clean,
                                std::uint64_t seed);

/// True iff at least ceil((1-alpha) n) entries of `contaminated` can be matched
/// one-to-one with equal entries of `clean` (multiset intersection).
bool verify_contamination(std::span<const double> clean, std::span<const double> contaminated,
                          double alpha);

}  // namespace momlab
