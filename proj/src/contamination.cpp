#include "momlab/contamination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "momlab/errors.hpp"
#include "momlab/format.hpp"
#include "momlab/rng.hpp"

namespace momlab {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw ParameterError("attack: alpha must be nonnegative");
  if (!(alpha < 0.5)) throw ContractError("contamination requires alpha < 1/2");
}

}  // namespace

std::string to_string(const AttackKind& kind) {
  if (std::holds_alternative<Identity>(kind)) return "identity";
  if (std::holds_alternative<LargestReplacement>(kind)) return "largest_replacement";
  const auto& a = std::get<ArbitraryLarge>(kind);
  return "arbitrary_large(" + format_double(a.magnitude) + ", " + (a.sign < 0 ? "-" : "+") + ")";
}

std::size_t contaminated_count(double alpha, std::size_t n) {
  const double x = alpha * static_cast<double>(n);
  return static_cast<std::size_t>(std::floor(x + 1e-9 * std::max(1.0, x)));
}

AttackPlanner::AttackPlanner(const AttackKind& kind, std::span<const double> clean,
                             std::uint64_t seed, std::size_t max_count)
    : kind_(kind), n_(clean.size()), max_count_(std::min(max_count, clean.size())) {
  if (clean.empty()) throw ParameterError("attack: clean sample must be nonempty");
  if (std::holds_alternative<LargestReplacement>(kind_)) {
    replacement_ = *std::min_element(clean.begin(), clean.end());
    std::vector<std::size_t> idx(n_);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // descending by value; ties go to the highest original index first
    auto before = [&](std::size_t a, std::size_t b) {
      return clean[a] > clean[b] || (clean[a] == clean[b] && a > b);
    };
    if (max_count_ < n_) {
      std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(max_count_),
                       idx.end(), before);
    }
    idx.resize(max_count_);
    std::sort(idx.begin(), idx.end(), before);
    order_ = std::move(idx);
  } else if (const auto* big = std::get_if<ArbitraryLarge>(&kind_)) {
    if (!(big->magnitude > 0.0)) throw ParameterError("arbitrary_large: magnitude must be positive");
    const double n = static_cast<double>(n_);
    const double mean = std::accumulate(clean.begin(), clean.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : clean) ss += (x - mean) * (x - mean);
    double sd = n_ > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    if (!(sd > 0.0)) sd = 1.0;
    replacement_ = mean + (big->sign < 0 ? -1.0 : 1.0) * big->magnitude * sd;
    // partial Fisher-Yates: the first c picks do not depend on max_count
    std::vector<std::size_t> idx(n_);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Stream rng(seed);
    for (std::size_t i = 0; i < max_count_; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(n_ - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(max_count_);
    order_ = std::move(idx);
  }
}

ContaminationReport AttackPlanner::report(double alpha) const {
  check_alpha(alpha);
  ContaminationReport rep;
  if (std::holds_alternative<Identity>(kind_)) return rep;
  const std::size_t count = contaminated_count(alpha, n_);
  if (count > max_count_) throw ParameterError("attack planner: alpha exceeds the planned maximum");
  rep.modified_indices.assign(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(count));
  rep.replaced_values.assign(count, replacement_);
  return rep;
}

ContaminatedSample apply_attack(const AttackSpec& attack, std::span<const double> clean,
                                std::uint64_t seed) {
  check_alpha(attack.alpha);
  if (clean.empty()) throw ParameterError("attack: clean sample must be nonempty");
  const AttackPlanner planner(attack.kind, clean, seed,
                             contaminated_count(attack.alpha, clean.size()));
  ContaminatedSample out;
  out.sample.assign(clean.begin(), clean.end());
  out.report = planner.report(attack.alpha);
  for (std::size_t i = 0; i < out.report.modified_indices.size(); ++i)
    out.sample[out.report.modified_indices[i]] = out.report.replaced_values[i];
  return out;
}

bool verify_contamination(std::span<const double> clean, std::span<const double> contaminated,
                          double alpha) {
  if (clean.size() != contaminated.size())
    throw ContractError("verify_contamination requires equal lengths");
  std::vector<double> a(clean.begin(), clean.end());
  std::vector<double> b(contaminated.begin(), contaminated.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t common = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const double required = (1.0 - alpha) * static_cast<double>(clean.size());
  return static_cast<double>(common) >= std::ceil(required - 1e-9 * std::max(1.0, required));
}

}  // namespace momlab
