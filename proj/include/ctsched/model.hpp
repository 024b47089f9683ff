#pragma once

// Data model for single-machine coupled-task scheduling with a common first
// task length p, an exact delay p, job-dependent second tasks b_j and due
// dates d_j. Objective: maximum lateness.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctsched {

using Time = std::int64_t;

// 1-based position of a job in EDD order (d ascending, ties by input order).
using JobId = int;

class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Job {
  JobId id = 0;
  Time b = 0;
  Time d = 0;
};

/// A job as it appears in an input file: arbitrary unique label, b, d.
struct RawJob {
  int label = 0;
  Time b = 0;
  Time d = 0;
};

class Instance {
public:
  Instance() = default;

  /// Sorts jobs by due date (stable, so ties keep input order) and assigns
  /// ids 1..n. Labels must be unique; b must be non-negative; p positive.
  Instance(Time p, std::vector<RawJob> raw);

  /// Convenience: jobs given as (b, d) in input order, labels 1..n.
  static Instance from_bd(Time p, const std::vector<std::pair<Time, Time>>& bd);

  Time p() const { return p_; }
  int size() const { return static_cast<int>(jobs_.size()); }
  bool empty() const { return jobs_.empty(); }

  const Job& job(JobId id) const { return jobs_.at(static_cast<std::size_t>(id - 1)); }
  Time b(JobId id) const { return job(id).b; }
  Time d(JobId id) const { return job(id).d; }
  std::span<const Job> jobs() const { return jobs_; }

  /// Label the job carried in the input.
  int label(JobId id) const { return labels_.at(static_cast<std::size_t>(id - 1)); }
  /// Inverse of label(); throws InvalidInput for unknown labels.
  JobId id_of_label(int label) const;

  bool contains(JobId id) const { return id >= 1 && id <= size(); }
  bool is_long(JobId id) const { return b(id) > p_; }

  /// Raw jobs in EDD order with their original labels.
  std::vector<RawJob> raw_jobs() const;

private:
  Time p_ = 1;
  std::vector<Job> jobs_;
  std::vector<int> labels_;
};

class Element {
public:
  enum class Kind : std::uint8_t { Singleton, Pair };

  static Element singleton(JobId j) { return Element(Kind::Singleton, j, 0); }
  /// `first` starts at the block origin; `second` starts p later inside the
  /// delay of `first` and determines the block span.
  static Element pair(JobId first, JobId second) { return Element(Kind::Pair, first, second); }

  Kind kind() const { return kind_; }
  bool is_pair() const { return kind_ == Kind::Pair; }
  bool is_singleton() const { return kind_ == Kind::Singleton; }
  JobId first() const { return first_; }
  JobId second() const { return second_; }
  /// Job whose second task closes the block (the singleton itself for singletons).
  JobId last() const { return is_pair() ? second_ : first_; }
  int job_count() const { return is_pair() ? 2 : 1; }

  bool contains(JobId j) const { return first_ == j || (is_pair() && second_ == j); }

  /// Ordering used for deterministic tie-breaking: by first job, pairs before
  /// the singleton of the same job, then by second job.
  std::strong_ordering operator<=>(const Element& o) const;
  bool operator==(const Element& o) const = default;

  std::string to_string() const;

private:
  Element(Kind k, JobId a, JobId b) : kind_(k), first_(a), second_(b) {}
  Kind kind_ = Kind::Singleton;
  JobId first_ = 0;
  JobId second_ = 0;
};

using Sequence = std::vector<Element>;

std::string to_string(const Sequence& seq);

/// Length of the block an element occupies when laid out without idle time.
Time element_span(const Element& e, const Instance& inst);
/// Sum of element spans.
Time sequence_span(const Sequence& seq, const Instance& inst);
/// Lateness of the element's jobs when its block starts at `start`.
Time element_lateness(const Element& e, Time start, const Instance& inst);

struct TimedSchedule {
  // Indexed by JobId - 1.
  std::vector<Time> start;
  std::vector<Time> completion;
  Time makespan = 0;

  Time start_of(JobId j) const { return start.at(static_cast<std::size_t>(j - 1)); }
  Time completion_of(JobId j) const { return completion.at(static_cast<std::size_t>(j - 1)); }
};

/// Lays out elements back-to-back from `origin`. Throws InvalidInput on
/// unknown or duplicated ids, on pairs whose first job has b > p, and on
/// sequences that do not cover every job of the instance.
TimedSchedule schedule_timeline(const Sequence& seq, const Instance& inst, Time origin = 0);

/// Same layout, but shifted so the last block ends exactly at `end`.
TimedSchedule schedule_right_justified(const Sequence& seq, const Instance& inst, Time end);

/// Builds a timed schedule from raw first-task start times (index JobId - 1).
TimedSchedule timed_from_starts(std::span<const Time> starts, const Instance& inst);

struct Violation {
  enum class Kind : std::uint8_t { Overlap, DelayNotExact, Coverage, Makespan };
  Kind kind;
  JobId job_a = 0;
  JobId job_b = 0;
  std::string message;
};

/// Empty result means the schedule is feasible.
std::vector<Violation> check_feasibility(const TimedSchedule& ts, const Instance& inst);

struct LatenessReport {
  std::vector<Time> lateness;  // by JobId - 1
  Time lmax = 0;
  JobId argmax = 0;
};

LatenessReport lateness_report(const TimedSchedule& ts, const Instance& inst);

/// Maximum lateness of a sequence laid out from time 0.
Time sequence_lmax(const Sequence& seq, const Instance& inst);

struct OrderComparison {
  std::strong_ordering edd = std::strong_ordering::equal;   // by d
  std::strong_ordering prec = std::strong_ordering::equal;  // by d - b
};

OrderComparison compare_orders(JobId i, JobId j, const Instance& inst);

enum class InstanceClass : std::uint8_t { Agreeable, Disagreeable, Both, General };

std::string to_string(InstanceClass c);
std::optional<InstanceClass> parse_instance_class(const std::string& s);

InstanceClass classify(const Instance& inst);

inline bool is_agreeable(InstanceClass c) {
  return c == InstanceClass::Agreeable || c == InstanceClass::Both;
}
inline bool is_disagreeable(InstanceClass c) {
  return c == InstanceClass::Disagreeable || c == InstanceClass::Both;
}

/// Jobs with b_j > p, ascending.
std::vector<JobId> long_job_set(const Instance& inst);

/// Every job once as a singleton in EDD order.
Sequence edd_singletons(const Instance& inst);

/// Lower bound on lmax: no job completes before 2p + b_j.
Time lmax_lower_bound(const Instance& inst);

/// Restriction of `inst` to `ids` (EDD order kept, due dates shifted by
/// -offset). Labels of the result are the parent's JobIds.
Instance sub_instance(const Instance& inst, std::span<const JobId> ids, Time offset = 0);

/// Maps a sequence expressed in a sub-instance's ids back to the parent.
Sequence lift_sequence(const Sequence& seq, const Instance& sub);

/// Same jobs with equal due dates reordered by b (ascending or descending).
/// Labels of the result are the parent's JobIds.
Instance tie_normalized(const Instance& inst, bool b_ascending);

}  // namespace ctsched
