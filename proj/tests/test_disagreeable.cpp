#include <set>
#include <sstream>

#include "ctsched/disagreeable.hpp"
#include "ctsched/generators.hpp"
#include "ctsched/oracle.hpp"
#include "doctest.h"

using namespace ctsched;
namespace dis = ctsched::disagreeable;

namespace {

Instance D1() { return Instance::from_bd(2, {{2, 4}, {1, 9}}); }

Instance random_short_even(std::uint64_t seed, int n) {
  GenConfig cfg;
  cfg.cls = GenClass::Disagreeable;
  cfg.n = n;
  cfg.seed = seed;
  cfg.p_range = {2, 5};
  Instance inst = generate(cfg);
  // Clamp b to p so that every job is short; b stays nonincreasing in EDD order.
  std::vector<RawJob> raw = inst.raw_jobs();
  for (auto& r : raw) r.b = std::min(r.b, inst.p());
  return tie_normalized(Instance(inst.p(), raw), false);
}

void check_structure(const Sequence& seq, const Instance& inst) {
  int singles = 0;
  JobId prev_first = 0;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const auto& e = seq[k];
    if (e.is_singleton()) {
      if (!inst.is_long(e.first())) {
        ++singles;
        CHECK(k + 1 == seq.size());
      }
      continue;
    }
    if (inst.is_long(e.second())) continue;
    CHECK(e.first() < e.second());
    CHECK(e.first() > prev_first);
    prev_first = e.first();
  }
  CHECK(singles <= 1);
}

}  // namespace

TEST_CASE("pivotal indices on a two-job instance") {
  const auto inst = D1();
  CHECK(dis::pivotal_k(7, 2, inst) == 0);
  CHECK(dis::pivotal_i(7, 2, 0, inst) == 1);
  CHECK_FALSE(dis::pivotal_k(7, -3, inst).has_value());
}

TEST_CASE("trim and trim test on a two-job instance") {
  const auto inst = D1();
  const auto trim = dis::optimal_trim(7, 2, 0, 1, inst);
  REQUIRE(trim.has_value());
  CHECK(trim->alpha == 0);
  CHECK(trim->beta == 0);
  CHECK(trim->end() == Sequence{Element::pair(1, 2)});

  const auto seq = dis::trim_test(7, 2, inst);
  REQUIRE(seq.has_value());
  CHECK(*seq == Sequence{Element::pair(1, 2)});
  CHECK_FALSE(dis::trim_test(6, 2, inst).has_value());
  CHECK_FALSE(dis::trim_test(7, 1, inst).has_value());
  CHECK(dis::lateness_ending_at(*seq, 7, inst) == 2);
}

TEST_CASE("trace lines") {
  std::ostringstream os;
  dis::trim_test(7, 2, D1(), &os);
  CHECK(os.str().find("C=7 L=2 k*=0 i*=1 alpha=0 beta=0") != std::string::npos);
}

TEST_CASE("small solves") {
  const auto sol = dis::solve(D1());
  CHECK(sol.lmax == 2);
  CHECK(sol.schedule == Sequence{Element::pair(1, 2)});
  CHECK(sol.proven_optimal);
  CHECK(dis::solve(Instance::from_bd(2, {{3, 5}})).lmax == 2);
  CHECK_THROWS_AS(dis::solve(Instance::from_bd(2, {{1, 5}, {2, 7}})), NotApplicable);
  CHECK_THROWS_AS(dis::solve(Instance{}), InvalidInput);
}

TEST_CASE("makespan bounds") {
  const auto inst = D1();
  CHECK(dis::makespan_lower(inst) == 7);
  CHECK(dis::makespan_upper(inst) == 8);
}

TEST_CASE("pivotal k is maximal") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto inst = random_short_even(s, 4 + 2 * static_cast<int>(s % 3));
    const int n = inst.size();
    const Time C = dis::makespan_lower(inst) + static_cast<Time>(s % 5);
    for (Time L = -5; L <= 20; L += 5) {
      const auto k = dis::pivotal_k(C, L, inst);
      if (!k) {
        CHECK(C - inst.d(n) > L);
        continue;
      }
      CHECK(C - inst.d(n - *k) <= L);
      for (int k2 = *k + 1; k2 <= n - 1; ++k2) CHECK(C - inst.d(n - k2) > L);
    }
  }
}

TEST_CASE("trim test is sound") {
  int accepted = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto inst = random_short_even(1000 + s, 2 + 2 * static_cast<int>(s % 4));
    const Time lo = dis::makespan_lower(inst);
    const Time hi = dis::makespan_upper(inst);
    const Time opt = oracle_structured(inst).lmax;
    for (Time C = lo; C <= hi; ++C) {
      for (Time L = opt; L <= opt + 4; ++L) {
        const auto seq = dis::trim_test(C, L, inst);
        if (!seq) continue;
        ++accepted;
        CHECK(sequence_span(*seq, inst) <= C);
        CHECK(dis::lateness_ending_at(*seq, C, inst) <= L);
        std::set<JobId> seen;
        for (const auto& e : *seq) {
          CHECK(e.is_pair());
          seen.insert(e.first());
          seen.insert(e.second());
        }
        CHECK(static_cast<int>(seen.size()) == inst.size());
      }
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("matches the oracle and keeps the pair structure") {
  for (int t = 0; t < 400; ++t) {
    GenConfig cfg;
    cfg.cls = GenClass::Disagreeable;
    cfg.n = 1 + t % 10;
    cfg.seed = 20000 + static_cast<std::uint64_t>(t);
    cfg.long_job_fraction = (t % 5) * 0.2;
    const Instance inst = tie_normalized(generate(cfg), false);
    const auto sol = dis::solve(inst);
    CHECK(sol.proven_optimal);
    CHECK(sol.lmax == oracle_structured(inst).lmax);
    const auto ts = schedule_timeline(sol.schedule, inst);
    CHECK(check_feasibility(ts, inst).empty());
    CHECK(lateness_report(ts, inst).lmax == sol.lmax);
    check_structure(sol.schedule, inst);
  }
}

TEST_CASE("bisected makespan gives the same optimum") {
  dis::Options opt;
  opt.fast_cmax_bisect = true;
  for (int t = 0; t < 100; ++t) {
    GenConfig cfg;
    cfg.cls = GenClass::Disagreeable;
    cfg.n = 2 + t % 8;
    cfg.seed = 31000 + static_cast<std::uint64_t>(t);
    const Instance inst = generate(cfg);
    CHECK(dis::solve(inst, opt).lmax == dis::solve(inst).lmax);
  }
}

TEST_CASE("exact search decides both sides of the optimum") {
  for (int t = 0; t < 100; ++t) {
    GenConfig cfg;
    cfg.cls = GenClass::Disagreeable;
    cfg.n = 2 + t % 8;
    cfg.seed = 32000 + static_cast<std::uint64_t>(t);
    cfg.long_job_fraction = 0.3;
    const Instance inst = generate(cfg);
    const Time opt = oracle_structured(inst).lmax;
    std::int64_t budget = 1'000'000;
    CHECK(dis::search_within(inst, opt, budget).status == dis::SearchStatus::Found);
    CHECK(dis::search_within(inst, opt - 1, budget).status == dis::SearchStatus::Infeasible);
  }
}
