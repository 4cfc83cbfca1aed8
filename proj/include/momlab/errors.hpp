#pragma once

#include <stdexcept>
#include <string>

namespace momlab {

// Bad argument values: out-of-range parameters, malformed family parameters.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A stated precondition or theorem hypothesis does not hold. `hypothesis()`
// names the violated condition in the form reported by the CLI.
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& hypothesis)
      : std::logic_error(hypothesis), hypothesis_(hypothesis) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace momlab
