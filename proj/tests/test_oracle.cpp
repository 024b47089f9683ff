#include <functional>
#include <limits>

#include "ctsched/generators.hpp"
#include "ctsched/oracle.hpp"
#include "doctest.h"

using namespace ctsched;

namespace {

// Minimum lmax over every assignment of integer first-task starts in
// [0, horizon], checked with check_feasibility alone.
Time grid_search(const Instance& inst) {
  const int n = inst.size();
  const Time horizon = sequence_span(edd_singletons(inst), inst);
  std::vector<Time> starts(static_cast<std::size_t>(n), 0);
  Time best = std::numeric_limits<Time>::max();
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      const auto ts = timed_from_starts(starts, inst);
      if (check_feasibility(ts, inst).empty()) best = std::min(best, lateness_report(ts, inst).lmax);
      return;
    }
    for (Time s = 0; s <= horizon; ++s) {
      starts[static_cast<std::size_t>(k)] = s;
      rec(k + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST_CASE("single job") {
  const auto inst = Instance::from_bd(3, {{2, 4}});
  const auto r = oracle_structured(inst);
  CHECK(r.lmax == 4);
  CHECK(r.witness == Sequence{Element::singleton(1)});
  CHECK(oracle_timeline(inst).lmax == 4);
}

TEST_CASE("two jobs") {
  const auto inst = Instance::from_bd(2, {{1, 5}, {2, 7}});
  const auto r = oracle_structured(inst);
  CHECK(r.lmax == 1);
  CHECK(r.witness == Sequence{Element::pair(1, 2)});
  CHECK(oracle_timeline(inst).lmax == 1);

  const auto forced = Instance::from_bd(2, {{3, 5}, {3, 5}});
  CHECK(oracle_structured(forced).lmax == 9);
}

TEST_CASE("enumeration counts") {
  // Two short jobs: [1][2], [2][1], (1,2), (2,1).
  const auto inst = Instance::from_bd(2, {{1, 5}, {2, 7}});
  CHECK(enumerate_structured(inst, [](const Sequence&) { return true; }) == 4);
  // A long job cannot open a pair.
  const auto mixed = Instance::from_bd(2, {{1, 5}, {3, 7}});
  CHECK(enumerate_structured(mixed, [](const Sequence&) { return true; }) == 3);
  int seen = 0;
  enumerate_structured(inst, [&](const Sequence&) { return ++seen < 2; });
  CHECK(seen == 2);
}

TEST_CASE("caps") {
  GenConfig cfg;
  cfg.n = kStructuredCap + 1;
  CHECK_THROWS_AS(oracle_structured(generate(cfg)), CapExceeded);
  cfg.n = kTimelineCap + 1;
  CHECK_THROWS_AS(oracle_timeline(generate(cfg)), CapExceeded);
}

TEST_CASE("dynamic program agrees with enumeration") {
  for (int t = 0; t < 200; ++t) {
    GenConfig cfg;
    cfg.n = 1 + t % 6;
    cfg.seed = static_cast<std::uint64_t>(t);
    cfg.long_job_fraction = (t % 4) * 0.25;
    const Instance inst = generate(cfg);
    const auto dp = oracle_structured(inst);
    const auto en = oracle_structured_by_enumeration(inst);
    CHECK(dp.lmax == en.lmax);
    CHECK(dp.witness == en.witness);
    CHECK(sequence_lmax(dp.witness, inst) == dp.lmax);
  }
}

TEST_CASE("timeline oracle matches a grid search for n <= 3") {
  for (int t = 0; t < 60; ++t) {
    GenConfig cfg;
    cfg.n = 1 + t % 3;
    cfg.p_range = {1, 2};
    cfg.seed = 900 + static_cast<std::uint64_t>(t);
    const Instance inst = generate(cfg);
    const auto tl = oracle_timeline(inst);
    CHECK(tl.lmax == grid_search(inst));
    CHECK(check_feasibility(tl.witness, inst).empty());
    CHECK(lateness_report(tl.witness, inst).lmax == tl.lmax);
  }
}

TEST_CASE("structured optimum is never better than the timeline optimum") {
  for (int t = 0; t < 150; ++t) {
    GenConfig cfg;
    cfg.n = 1 + t % 5;
    cfg.p_range = {1, 3};
    cfg.seed = 3000 + static_cast<std::uint64_t>(t);
    cfg.long_job_fraction = (t % 3) * 0.3;
    const Instance inst = generate(cfg);
    CHECK(oracle_timeline(inst).lmax <= oracle_structured(inst).lmax);
  }
}
