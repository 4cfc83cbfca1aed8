#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "momlab/harness.hpp"

namespace momlab {

/// Malformed config text. Line and column are 1-based; line 0 means the
/// problem concerns the file as a whole (e.g. a missing key).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

struct RunConfig {
  ExperimentPlan plan;
  std::string out = "out";
  unsigned threads = 1;
  double scale = 1.0;  ///< the sweep runs with n scaled by this factor
  bool svg = false;

  bool operator==(const RunConfig&) const = default;
};

/// Parses `key = value` lines; `#` starts a comment. Keys: label, dist,
/// estimator (repeatable), attack, alpha, n, delta, n_rep, seed, out, threads,
/// scale, svg. dist, estimator and alpha are required.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file; unreadable files raise ParseError at line 0.
RunConfig load_config(const std::string& path);

/// Canonical text that parse_config maps back to an equal RunConfig.
std::string dump_config(const RunConfig& config);

// Value grammars, also used by the command line. Errors are reported with
// line 1 and the column inside `text`.
DistributionSpec parse_distribution(std::string_view text);
EstimatorSpec parse_estimator(std::string_view text);
AttackKind parse_attack(std::string_view text);
BlockRule parse_block_rule(std::string_view text);

}  // namespace momlab
