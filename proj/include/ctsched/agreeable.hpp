#pragma once

// Exact solver for agreeable instances (earlier due date implies shorter or
// equal second task). Schedules are paths in a layered graph whose nodes are
// (element, remaining-job count); a lateness bound lambda prunes nodes whose
// earliest completion already exceeds it, and a binary search on lambda finds
// the optimum.

#include <iosfwd>
#include <optional>
#include <vector>

#include "ctsched/model.hpp"
#include "ctsched/solution.hpp"

namespace ctsched {
namespace agreeable {

struct GraphNode {
  Element element;
  int c = 0;  // jobs not yet started when this element starts, itself included
  Time rel_lateness = 0;
};

class PairGraph {
public:
  /// Jobs with equal due dates are internally ordered by b so that the
  /// second-task order agrees with the due-date order everywhere.
  explicit PairGraph(const Instance& inst);

  const Instance& instance() const { return caller_; }
  /// The tie-normalized instance the graph is built on; labels are caller ids.
  const Instance& internal() const { return internal_; }

  int n() const { return internal_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const;
  const GraphNode& node(std::size_t idx) const { return nodes_[idx]; }

  std::span<const std::size_t> initial_nodes() const { return initial_; }
  bool is_final(std::size_t idx) const;
  Time arc_length(std::size_t from) const { return span_[from]; }

  /// Successor node indices of `idx`.
  template <class F>
  void for_each_successor(std::size_t idx, F&& f) const;

  /// Node indices grouped by layer c (index 0 unused).
  const std::vector<std::vector<std::size_t>>& layers() const { return layers_; }

  void dump(std::ostream& os) const;

private:
  std::optional<std::size_t> find(JobId x, JobId y, int c) const;
  void add_node(const Element& e, int c);
  bool precedes(JobId a, JobId b) const;

  Instance caller_;
  Instance internal_;
  std::vector<GraphNode> nodes_;
  std::vector<Time> span_;
  std::vector<std::int32_t> index_;  // dense (x, y, c) -> node, -1 if absent
  std::vector<std::size_t> initial_;
  std::vector<std::vector<std::size_t>> layers_;
  // Long jobs form a due-date suffix and are placed in that order, so only
  // the earliest of them may close a block that follows a short element.
  JobId tail_entry_ = 0;
};

struct PathCandidate {
  std::vector<std::size_t> nodes;  // excluding the artificial source
  std::vector<Time> prefix;        // start time of each node along the path
  Time length = 0;
  Time lambda = 0;

  /// Elements in the graph's internal ids.
  Sequence elements(const PairGraph& g) const;
};

PairGraph build_graph(const Instance& inst);

/// Shortest path from the source to a final node after pruning every node
/// whose shortest prefix plus relative lateness exceeds lambda.
std::optional<PathCandidate> feasibility_test(const PairGraph& graph, Time lambda);

class RepairFailure : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Turns a path that may repeat one job and omit another into a feasible
/// sequence (caller ids) with the same makespan and lateness <= path.lambda.
/// Throws RepairFailure when no makespan-preserving rewrite exists.
Sequence repair_semi_feasible(const PathCandidate& path, const PairGraph& graph);

/// Exhaustive search of the pruned graph for a path that places every job
/// exactly once; caller ids. Used when a shortest path cannot be repaired.
std::optional<Sequence> covering_path(const PairGraph& graph, Time lambda);

/// A feasible sequence (caller ids) with lateness <= lambda, or none:
/// shortest path plus repair first, covering_path otherwise.
std::optional<Sequence> schedule_within(const PairGraph& graph, Time lambda);

/// Binary search on lambda over schedule_within. Throws NotApplicable for
/// non-agreeable input and InvalidInput for an empty instance.
Solution solve(const Instance& inst);

// ---------------------------------------------------------------------------

template <class F>
void PairGraph::for_each_successor(std::size_t idx, F&& f) const {
  const GraphNode& u = nodes_[idx];
  const int nn = n();
  const int c2 = u.c - u.element.job_count();
  if (c2 < 1) return;
  const Time p = internal_.p();
  auto emit = [&](JobId x, JobId y) {
    if (auto v = find(x, y, c2)) f(*v);
  };
  auto emit_both = [&](JobId k, JobId l) {
    emit(k, l);
    if (internal_.b(l) <= p) emit(l, k);
  };
  // Crossing a separator after job j requires exactly jobs 1..j placed,
  // which the layer index records as c = n - j.
  const bool closes_block = [&] {
    const JobId j = u.element.is_pair() ? std::max(u.element.first(), u.element.second())
                                        : u.element.first();
    return c2 == nn - j;
  }();
  // Entering the long tail: the first tail pair is (k, first long job) for
  // a short k after the element's smaller member; an interlaced entry also
  // needs k to follow j in d - b order.
  auto enter_tail = [&](JobId i, JobId j) {
    if (tail_entry_ > nn || !internal_.is_long(tail_entry_)) return;
    for (JobId k = i + 1; k <= nn; ++k) {
      if (k == j || internal_.is_long(k)) continue;
      if (k < j && !precedes(j, k)) continue;
      emit(k, tail_entry_);
    }
  };
  if (u.element.is_pair()) {
    const JobId i = std::min(u.element.first(), u.element.second());
    const JobId j = std::max(u.element.first(), u.element.second());
    if (!internal_.is_long(j)) {
      // A pair interlaced with its successor ({i<k<j<l}) must put the
      // later-due job first. Separated successors start right after j.
      const bool larger_first = u.element.first() == j;
      for (JobId k = i + 1; k <= std::min(j + 1, nn); ++k) {
        if (k == j || internal_.is_long(k)) continue;
        if (k < j && !larger_first) continue;
        if (k > j && !closes_block) continue;
        for (JobId l = std::max(j + 1, k + 1); l <= nn && !internal_.is_long(l); ++l) {
          emit_both(k, l);
        }
      }
      if (larger_first) {
        enter_tail(i, j);
      } else {
        enter_tail(j, j);
      }
    } else if (j + 1 <= nn) {
      for (JobId k = 1; k <= nn; ++k) {
        if (k == i || internal_.is_long(k) || !precedes(i, k)) continue;
        emit(k, j + 1);
      }
    }
    if (j + 1 <= nn && closes_block) emit(j + 1, j + 1);
  } else {
    const JobId i = u.element.first();
    if (!internal_.is_long(i)) enter_tail(i, i);
    if (i + 1 > nn || !closes_block) return;
    if (!internal_.is_long(i) && !internal_.is_long(i + 1)) {
      for (JobId l = i + 2; l <= nn && !internal_.is_long(l); ++l) emit_both(i + 1, l);
    }
    emit(i + 1, i + 1);
  }
}

}  // namespace agreeable
}  // namespace ctsched
