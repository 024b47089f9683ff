#include "ctsched/partition.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace ctsched::partition {

namespace {

bool precedes(JobId a, JobId b, const Instance& inst) {
  const Time ka = inst.d(a) - inst.b(a);
  const Time kb = inst.d(b) - inst.b(b);
  return ka != kb ? ka < kb : a < b;
}

}  // namespace

void validate(const Partition& part, const Instance& inst) {
  std::vector<int> seen(static_cast<std::size_t>(inst.size()) + 1, 0);
  auto mark = [&](JobId j) {
    if (!inst.contains(j)) throw InvalidInput("partition: unknown job " + std::to_string(j));
    if (seen[static_cast<std::size_t>(j)]++) {
      throw InvalidInput("partition: job " + std::to_string(j) + " listed twice");
    }
  };
  for (JobId j : part.P) mark(j);
  for (JobId j : part.T) {
    mark(j);
    if (inst.is_long(j)) throw InvalidInput("partition: T-job " + std::to_string(j) + " has b > p");
  }
  if (part.P.size() + part.T.size() != static_cast<std::size_t>(inst.size())) {
    throw InvalidInput("partition: P and T do not cover every job");
  }
  if (part.P.size() < part.T.size()) throw InvalidInput("partition: |P| < |T|");
}

Time initial_beta(const Partition& part, const Instance& inst) {
  const Time p = inst.p();
  const auto m = static_cast<Time>(part.P.size());
  const auto m1 = static_cast<Time>(part.T.size());
  Time beta = 3 * p * m1 + 2 * p * (m - m1);
  for (JobId j : part.P) beta += inst.b(j);
  return beta;
}

std::optional<Sequence> partition_test(const Partition& part, Time L, const Instance& inst) {
  validate(part, inst);
  const Time p = inst.p();
  std::vector<JobId> spine = part.P;
  std::vector<JobId> firsts = part.T;
  std::sort(firsts.begin(), firsts.end(),
            [&](JobId a, JobId b) { return precedes(a, b, inst); });
  Time beta = initial_beta(part, inst);
  Sequence reversed;
  while (!spine.empty()) {
    // Longest P-job that may end at beta; the later due date wins a tie.
    auto pick = spine.end();
    for (auto it = spine.begin(); it != spine.end(); ++it) {
      if (beta - inst.d(*it) > L) continue;
      if (pick == spine.end() || inst.b(*it) > inst.b(*pick) ||
          (inst.b(*it) == inst.b(*pick) && inst.d(*it) > inst.d(*pick))) {
        pick = it;
      }
    }
    if (pick == spine.end()) return std::nullopt;
    const JobId pi = *pick;
    spine.erase(pick);
    if (!firsts.empty()) {
      const JobId m1 = firsts.back();
      const Time completion = beta - p - inst.b(pi) + inst.b(m1);
      if (completion - inst.d(m1) <= L) {
        reversed.push_back(Element::pair(m1, pi));
        firsts.pop_back();
        beta -= 3 * p + inst.b(pi);
        continue;
      }
    }
    reversed.push_back(Element::singleton(pi));
    beta -= 2 * p + inst.b(pi);
  }
  if (!firsts.empty()) return std::nullopt;
  return Sequence(reversed.rbegin(), reversed.rend());
}

Solution solve_general_small(const Instance& inst, int cap) {
  if (inst.empty()) throw InvalidInput("general-small solver: empty instance");
  const int n = inst.size();
  if (n > cap) {
    throw CapExceeded("general-small solver: n=" + std::to_string(n) + " exceeds cap " +
                      std::to_string(cap));
  }
  std::vector<JobId> shorts;
  for (JobId j = 1; j <= n; ++j) {
    if (!inst.is_long(j)) shorts.push_back(j);
  }
  // Splits by increasing |T|, then by bitmask.
  std::vector<Partition> splits;
  const auto k = static_cast<unsigned>(shorts.size());
  for (int size = 0; 2 * size <= n; ++size) {
    for (unsigned mask = 0; mask < (1U << k); ++mask) {
      if (std::popcount(mask) != size) continue;
      Partition part;
      std::vector<bool> in_t(static_cast<std::size_t>(n) + 1, false);
      for (unsigned bit = 0; bit < k; ++bit) {
        if (mask & (1U << bit)) in_t[static_cast<std::size_t>(shorts[bit])] = true;
      }
      for (JobId j = 1; j <= n; ++j) (in_t[static_cast<std::size_t>(j)] ? part.T : part.P).push_back(j);
      splits.push_back(std::move(part));
    }
  }
  auto attempt = [&](Time L) -> std::optional<Sequence> {
    for (const auto& part : splits) {
      if (auto s = partition_test(part, L, inst)) return s;
    }
    return std::nullopt;
  };

  Time lo = lmax_lower_bound(inst);
  Time hi = sequence_lmax(edd_singletons(inst), inst);
  std::optional<Sequence> best;
  while (lo < hi) {
    const Time mid = lo + (hi - lo) / 2;
    if (auto s = attempt(mid)) {
      best = std::move(s);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (!best) best = attempt(lo);
  if (!best) best = edd_singletons(inst);
  Solution sol;
  sol.schedule = std::move(*best);
  sol.lmax = sequence_lmax(sol.schedule, inst);
  return sol;
}

}  // namespace ctsched::partition
