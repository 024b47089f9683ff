#include "ctsched/generators.hpp"
#include "ctsched/oracle.hpp"
#include "ctsched/partition.hpp"
#include "doctest.h"

using namespace ctsched;
namespace part = ctsched::partition;

TEST_CASE("one interlaced pair") {
  const auto inst = Instance::from_bd(2, {{1, 5}, {2, 7}});
  const part::Partition split{{2}, {1}};
  CHECK(part::initial_beta(split, inst) == 8);
  const auto seq = part::partition_test(split, 1, inst);
  REQUIRE(seq.has_value());
  CHECK(*seq == Sequence{Element::pair(1, 2)});
  CHECK_FALSE(part::partition_test(split, 0, inst).has_value());
}

TEST_CASE("all spine jobs") {
  const auto inst = Instance::from_bd(2, {{2, 4}, {1, 9}});
  const part::Partition split{{1, 2}, {}};
  CHECK(part::initial_beta(split, inst) == 11);
  const auto seq = part::partition_test(split, 2, inst);
  REQUIRE(seq.has_value());
  CHECK(*seq == Sequence{Element::singleton(1), Element::singleton(2)});
}

TEST_CASE("invalid splits") {
  const auto inst = Instance::from_bd(2, {{1, 5}, {3, 7}, {1, 9}});
  CHECK_THROWS_AS(part::validate({{1, 3}, {2}}, inst), InvalidInput);      // long T-job
  CHECK_THROWS_AS(part::validate({{1}, {3}}, inst), InvalidInput);         // job 2 missing
  CHECK_THROWS_AS(part::validate({{1, 2, 3}, {1}}, inst), InvalidInput);   // job 1 twice
  CHECK_THROWS_AS(part::validate({{2}, {1, 3}}, inst), InvalidInput);      // |P| < |T|
  CHECK_NOTHROW(part::validate({{2, 3}, {1}}, inst));
}

TEST_CASE("accepted sequences respect the split and the bound") {
  for (int t = 0; t < 150; ++t) {
    GenConfig cfg;
    cfg.n = 2 + t % 5;
    cfg.seed = 600 + static_cast<std::uint64_t>(t);
    const Instance inst = generate(cfg);
    std::vector<JobId> shorts;
    for (JobId j = 1; j <= inst.size(); ++j) {
      if (!inst.is_long(j)) shorts.push_back(j);
    }
    part::Partition split;
    for (JobId j = 1; j <= inst.size(); ++j) {
      const bool in_t = !inst.is_long(j) && static_cast<int>(split.T.size()) * 2 + 2 <= inst.size() &&
                        (j + t) % 2 == 0;
      (in_t ? split.T : split.P).push_back(j);
    }
    for (Time L = -5; L <= 40; L += 3) {
      const auto seq = part::partition_test(split, L, inst);
      if (!seq) continue;
      CHECK(sequence_lmax(*seq, inst) <= L);
      CHECK(sequence_span(*seq, inst) == part::initial_beta(split, inst));
      for (const auto& e : *seq) {
        if (e.is_pair()) {
          CHECK(std::find(split.T.begin(), split.T.end(), e.first()) != split.T.end());
        }
        CHECK(std::find(split.P.begin(), split.P.end(), e.last()) != split.P.end());
      }
    }
  }
}

TEST_CASE("general small matches the oracle") {
  for (int t = 0; t < 300; ++t) {
    GenConfig cfg;
    cfg.n = 1 + t % 8;
    cfg.seed = 8000 + static_cast<std::uint64_t>(t);
    cfg.long_job_fraction = (t % 4) * 0.25;
    const Instance inst = generate(cfg);
    const auto sol = part::solve_general_small(inst);
    CHECK(sol.lmax == oracle_structured(inst).lmax);
    CHECK(sequence_lmax(sol.schedule, inst) == sol.lmax);
  }
}

TEST_CASE("general small cap") {
  GenConfig cfg;
  cfg.n = part::kGeneralSmallCap + 1;
  CHECK_THROWS_AS(part::solve_general_small(generate(cfg)), CapExceeded);
  CHECK_THROWS_AS(part::solve_general_small(Instance{}), InvalidInput);
}
