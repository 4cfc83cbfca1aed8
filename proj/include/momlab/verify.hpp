#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "momlab/harness.hpp"

namespace momlab {

struct CheckResult {
  std::string name;
  std::string anchor;    ///< the claim the check exercises
  double measured = 0.0;
  std::string relation;  ///< "<=" or ">="
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
};

/// Suites: "lemmas", "bounds", "invariants" or "all". Unknown names throw
/// ParameterError.
std::vector<CheckResult> run_verify(std::string_view suite, const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

/// Columns: check,anchor,measured,relation,threshold,result.
void write_verify_csv(std::ostream& os, const std::vector<CheckResult>& results);

/// Fraction of replications whose MoM error exceeds the general quantile
/// bound evaluated with the exact Gaussian block-mean quantile. Gaussian(0,1)
/// data, heavy_tail(3) blocks, largest-replacement attack; one entry per alpha.
std::vector<double> general_bound_failure_fractions(const std::vector<double>& alphas,
                                                    std::size_t n, double delta, std::size_t reps,
                                                    std::uint64_t seed, unsigned threads = 1);

}  // namespace momlab
