#pragma once

#include <iosfwd>

namespace momlab {

/// Entry point of the momlab command line. Exit codes: 0 success, 1 failed
/// verification, 2 usage or parse error, 3 violated hypothesis.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace momlab
