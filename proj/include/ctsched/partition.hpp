#pragma once

// Feasibility of a lateness bound for a fixed split of the jobs into spine
// jobs P (each ends its own element) and interlaced first members T, plus an
// exhaustive wrapper over all splits for small instances.

#include <optional>
#include <vector>

#include "ctsched/model.hpp"
#include "ctsched/solution.hpp"

namespace ctsched::partition {

struct Partition {
  std::vector<JobId> P;
  std::vector<JobId> T;
};

/// Throws InvalidInput unless P and T cover every job exactly once, every
/// T-job is short and |P| >= |T|.
void validate(const Partition& part, const Instance& inst);

/// 3p|T| + 2p(|P| - |T|) + sum of b over P: the makespan of any sequence
/// built from the split.
Time initial_beta(const Partition& part, const Instance& inst);

/// Backward greedy: the longest P-job that meets L at the current block end
/// closes the last element, taking the ≺-last remaining T-job as first
/// member when that job also meets L. None if some step finds no P-job or
/// T-jobs are left over.
std::optional<Sequence> partition_test(const Partition& part, Time L, const Instance& inst);

inline constexpr int kGeneralSmallCap = 8;

/// Binary search on L over every split (T drawn from the short jobs, by
/// increasing size). Throws CapExceeded above `cap` jobs and InvalidInput
/// for an empty instance.
Solution solve_general_small(const Instance& inst, int cap = kGeneralSmallCap);

}  // namespace ctsched::partition
