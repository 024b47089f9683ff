#pragma once

// Solver for disagreeable instances (earlier due date implies longer or equal
// second task). Long jobs form an EDD prefix that is enumerated directly; the
// short remainder is built back to front by repeatedly trimming the end of a
// schedule with given makespan C and lateness bound L.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ctsched/model.hpp"
#include "ctsched/solution.hpp"

namespace ctsched::disagreeable {

// In the functions below `inst` is EDD-sorted with b nonincreasing, has no
// long jobs, and job "n-k" means the k-th job from the back.

/// Largest k in [0, n-1] with C - d_{n-k} <= L.
std::optional<int> pivotal_k(Time C, Time L, const Instance& inst);

/// Largest i in (k_star, n-1] such that job n-i, as first member of a final
/// pair closed by n-k_star at C, meets L.
std::optional<int> pivotal_i(Time C, Time L, int k_star, const Instance& inst);

struct Trim {
  int alpha = 0;
  int beta = 0;
  Sequence pairs;  // P_alpha then S_beta, in time order
  Time span = 0;

  /// The last beta + 1 pairs.
  Sequence end() const;
  Time end_span(const Instance& inst) const;
};

/// The trim P_alpha S_beta for alpha + 2 beta + 1 = i_star. Throws
/// std::logic_error if the built end breaks the set equalities it must obey.
Trim build_trim(int alpha, int beta, int k_star, int i_star, const Instance& inst);

/// Lateness of `pairs` when the last one completes at C.
Time lateness_ending_at(const Sequence& pairs, Time C, const Instance& inst);

/// Feasible trim with the largest alpha, or none.
std::optional<Trim> optimal_trim(Time C, Time L, int k_star, int i_star, const Instance& inst);

/// All pairs, makespan at most C, lateness at most L; none if the trimming
/// loop rejects. `inst` must have an even number of short jobs. One line
/// per main step is written to `trace` when given.
std::optional<Sequence> trim_test(Time C, Time L, const Instance& inst,
                                  std::ostream* trace = nullptr);

/// 3p n/2 plus the n/2 smallest b (lower bound) or largest b (upper bound).
Time makespan_lower(const Instance& inst);
Time makespan_upper(const Instance& inst);

struct Options {
  /// Bisect the makespan instead of scanning it upward.
  bool fast_cmax_bisect = false;
  std::ostream* trace = nullptr;
  /// Node limit shared by all exact-search probes of one solve().
  std::int64_t search_budget = 2'000'000;
};

/// A sequence (caller ids) with lateness <= L, trying every long-job prefix
/// and, for an odd short remainder, every trailing singleton. The short
/// remainder is decided by trim_test, which can reject feasible L.
std::optional<Sequence> feasible_within(const Instance& inst, Time L, const Options& opt = {});

enum class SearchStatus : std::uint8_t { Found, Infeasible, OutOfBudget };

struct SearchResult {
  SearchStatus status = SearchStatus::Infeasible;
  Sequence schedule;  // caller ids, when Found
};

/// Exact decision for lateness <= L. Same long-job prefixes as
/// feasible_within; the short remainder is searched forward in time, where
/// each pair's first member is the smallest unplaced job and only the second
/// member is branched on. Consumes `budget` nodes.
SearchResult search_within(const Instance& inst, Time L, std::int64_t& budget);

/// Trimming bound first, then exact search below it. Throws NotApplicable
/// for non-disagreeable input and InvalidInput for an empty instance.
Solution solve(const Instance& inst, const Options& opt = {});

}  // namespace ctsched::disagreeable
