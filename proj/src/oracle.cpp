#include "ctsched/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

namespace ctsched {

namespace {

constexpr Time kInf = std::numeric_limits<Time>::max() / 4;
constexpr int kHardMaskLimit = 24;

void require_cap(const Instance& inst, int cap, const char* what) {
  if (inst.size() > cap) {
    throw CapExceeded(std::string(what) + ": n=" + std::to_string(inst.size()) +
                      " exceeds cap " + std::to_string(cap));
  }
}

// Candidate elements drawn from the jobs not in `used`, in Element order.
std::vector<Element> available_elements(const Instance& inst, std::uint32_t used) {
  std::vector<Element> out;
  const int n = inst.size();
  for (JobId a = 1; a <= n; ++a) {
    if (used >> (a - 1) & 1U) continue;
    if (inst.b(a) <= inst.p()) {
      for (JobId b = 1; b <= n; ++b) {
        if (b == a || (used >> (b - 1) & 1U)) continue;
        out.push_back(Element::pair(a, b));
      }
    }
    out.push_back(Element::singleton(a));
  }
  return out;
}

std::uint32_t element_mask(const Element& e) {
  std::uint32_t m = 1U << (e.first() - 1);
  if (e.is_pair()) m |= 1U << (e.second() - 1);
  return m;
}

struct Enumerator {
  const Instance& inst;
  const std::function<bool(const Sequence&)>& visit;
  Sequence current;
  std::uint64_t count = 0;
  bool stopped = false;

  void run(std::uint32_t used, std::uint32_t full) {
    if (stopped) return;
    if (used == full) {
      ++count;
      if (!visit(current)) stopped = true;
      return;
    }
    for (const auto& e : available_elements(inst, used)) {
      current.push_back(e);
      run(used | element_mask(e), full);
      current.pop_back();
      if (stopped) return;
    }
  }
};

// Latest start time for the jobs outside each mask such that all of them meet
// lateness <= lambda; -kInf when impossible.
std::vector<Time> latest_starts(const Instance& inst, Time lambda,
                                const std::vector<std::vector<Element>>& elems_by_mask) {
  const int n = inst.size();
  const std::uint32_t full = n == 0 ? 0 : (1U << n) - 1;
  std::vector<Time> latest(static_cast<std::size_t>(full) + 1, -kInf);
  latest[full] = kInf;
  for (std::uint32_t m = full; m-- > 0;) {
    Time best = -kInf;
    for (const auto& e : elems_by_mask[m]) {
      const Time next = latest[m | element_mask(e)];
      if (next == -kInf) continue;
      const Time own = lambda - element_lateness(e, 0, inst);
      const Time via = next == kInf ? kInf : next - element_span(e, inst);
      best = std::max(best, std::min(own, via));
    }
    latest[m] = best;
  }
  return latest;
}

}  // namespace

std::uint64_t enumerate_structured(const Instance& inst,
                                   const std::function<bool(const Sequence&)>& visit, int cap) {
  require_cap(inst, cap, "enumerate_structured");
  if (inst.size() > kHardMaskLimit) throw CapExceeded("enumerate_structured: n too large");
  Enumerator en{inst, visit, {}, 0, false};
  const std::uint32_t full = inst.size() == 0 ? 0 : (1U << inst.size()) - 1;
  en.run(0, full);
  return en.count;
}

OracleResult oracle_structured(const Instance& inst, int cap) {
  require_cap(inst, cap, "oracle_structured");
  if (inst.size() > kHardMaskLimit) throw CapExceeded("oracle_structured: n too large");
  if (inst.empty()) throw InvalidInput("oracle_structured: empty instance");
  const int n = inst.size();
  const std::uint32_t full = (1U << n) - 1;

  std::vector<std::vector<Element>> elems(static_cast<std::size_t>(full) + 1);
  for (std::uint32_t m = 0; m < full; ++m) elems[m] = available_elements(inst, m);

  // Binary search on the smallest lambda for which the empty prefix has a
  // non-negative latest start.
  Time lo = lmax_lower_bound(inst);
  Time hi = sequence_lmax(edd_singletons(inst), inst);
  while (lo < hi) {
    const Time mid = lo + (hi - lo) / 2;
    if (latest_starts(inst, mid, elems)[0] >= 0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }

  const auto latest = latest_starts(inst, lo, elems);
  OracleResult result;
  result.lmax = lo;
  std::uint32_t used = 0;
  Time t = 0;
  while (used != full) {
    bool placed = false;
    for (const auto& e : elems[used]) {
      const std::uint32_t next = used | element_mask(e);
      const Time span = element_span(e, inst);
      if (element_lateness(e, t, inst) <= lo && t + span <= latest[next]) {
        result.witness.push_back(e);
        used = next;
        t += span;
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("oracle_structured: witness reconstruction failed");
  }
  return result;
}

OracleResult oracle_structured_by_enumeration(const Instance& inst, int cap) {
  if (inst.empty()) throw InvalidInput("oracle_structured: empty instance");
  OracleResult best;
  bool have = false;
  enumerate_structured(
      inst,
      [&](const Sequence& seq) {
        const Time v = sequence_lmax(seq, inst);
        if (!have || v < best.lmax) {
          best.lmax = v;
          best.witness = seq;
          have = true;
        }
        return true;
      },
      cap);
  return best;
}

namespace {

struct Task {
  Time s, e;
};

bool conflicts(const std::vector<Task>& booked, Time s, Time e) {
  for (const auto& t : booked) {
    if (s < t.e && t.s < e) return true;
  }
  return false;
}

// Depth-first search over jobs in order of their start times. The first job
// starts at 0; every later start lies in [previous start + p, latest booked
// end] because moving a whole suffix of jobs left past that end never creates
// a conflict and never increases lateness.
class TimelineSearch {
public:
  explicit TimelineSearch(const Instance& inst)
      : inst_(inst), n_(inst.size()), starts_(static_cast<std::size_t>(n_), -1) {}

  TimelineOracleResult run() {
    const auto edd = schedule_timeline(edd_singletons(inst_), inst_);
    best_ = lateness_report(edd, inst_).lmax;
    best_starts_ = edd.start;
    for (JobId j = 1; j <= n_; ++j) place(j, 0, -kInf, 0);
    TimelineOracleResult r;
    r.lmax = best_;
    r.witness = timed_from_starts(best_starts_, inst_);
    return r;
  }

private:
  Time lower_bound(Time last_start) const {
    // Unstarted jobs take distinct starts spaced by at least p after
    // last_start; matching them by d - b gives the least possible maximum.
    std::vector<Time> slack;
    for (JobId j = 1; j <= n_; ++j) {
      if (starts_[static_cast<std::size_t>(j - 1)] < 0) slack.push_back(inst_.d(j) - inst_.b(j));
    }
    std::sort(slack.begin(), slack.end());
    Time lb = -kInf;
    Time s = last_start;
    for (Time v : slack) {
      s += inst_.p();
      lb = std::max(lb, s + 2 * inst_.p() - v);
    }
    return lb;
  }

  void place(JobId j, Time s, Time partial, int depth) {
    const Time p = inst_.p();
    const Time lateness = s + 2 * p + inst_.b(j) - inst_.d(j);
    const Time now = std::max(partial, lateness);
    if (now >= best_) return;
    starts_[static_cast<std::size_t>(j - 1)] = s;
    booked_.push_back({s, s + p});
    booked_.push_back({s + 2 * p, s + 2 * p + inst_.b(j)});
    const Time horizon = std::max(horizon_, s + 2 * p + inst_.b(j));
    const Time saved_horizon = horizon_;
    horizon_ = horizon;

    if (depth + 1 == n_) {
      best_ = now;
      best_starts_ = starts_;
    } else if (std::max(now, lower_bound(s)) < best_) {
      for (Time next = s + p; next <= horizon_; ++next) {
        for (JobId k = 1; k <= n_; ++k) {
          if (starts_[static_cast<std::size_t>(k - 1)] >= 0) continue;
          if (conflicts(booked_, next, next + p)) break;
          if (conflicts(booked_, next + 2 * p, next + 2 * p + inst_.b(k))) continue;
          place(k, next, now, depth + 1);
        }
      }
    }

    horizon_ = saved_horizon;
    booked_.pop_back();
    booked_.pop_back();
    starts_[static_cast<std::size_t>(j - 1)] = -1;
  }

  const Instance& inst_;
  int n_;
  std::vector<Time> starts_;
  std::vector<Task> booked_;
  Time horizon_ = 0;
  Time best_ = kInf;
  std::vector<Time> best_starts_;
};

}  // namespace

TimelineOracleResult oracle_timeline(const Instance& inst, int cap) {
  require_cap(inst, cap, "oracle_timeline");
  if (inst.empty()) throw InvalidInput("oracle_timeline: empty instance");
  return TimelineSearch(inst).run();
}

}  // namespace ctsched
