#pragma once

#include <iosfwd>

namespace ctsched::cli {

enum ExitCode : int {
  kOk = 0,
  kMalformed = 1,
  kInfeasible = 2,
  kUnsupported = 3,
};

/// Entry point of the `ctsched` binary: solve, verify, gen, bench.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ctsched::cli
