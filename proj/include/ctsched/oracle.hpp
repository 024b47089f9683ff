#pragma once

// Brute-force ground truth. Deliberately independent of the polynomial
// solvers: a subset dynamic program over pair/singleton sequences and a
// depth-first search over raw start times that assumes no block structure.

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "ctsched/model.hpp"
#include "ctsched/solution.hpp"

namespace ctsched {

inline constexpr int kStructuredCap = 10;
inline constexpr int kTimelineCap = 5;

struct OracleResult {
  Time lmax = 0;
  Sequence witness;
};

struct TimelineOracleResult {
  Time lmax = 0;
  TimedSchedule witness;
};

/// Calls `visit` once for every feasible pair/singleton sequence, in
/// lexicographic element order. Returning false from `visit` stops early.
/// Returns the number of sequences visited.
std::uint64_t enumerate_structured(const Instance& inst,
                                   const std::function<bool(const Sequence&)>& visit,
                                   int cap = kStructuredCap);

/// Minimum lmax over all structured sequences. The witness is the
/// lexicographically least minimizer.
OracleResult oracle_structured(const Instance& inst, int cap = kStructuredCap);

/// Same contract as oracle_structured, computed by scanning every sequence
/// from enumerate_structured. Exponential; used to cross-check the DP.
OracleResult oracle_structured_by_enumeration(const Instance& inst, int cap = kStructuredCap);

/// Minimum lmax over all feasible timed schedules (integer start times),
/// without assuming the pair/singleton structure.
TimelineOracleResult oracle_timeline(const Instance& inst, int cap = kTimelineCap);

}  // namespace ctsched
