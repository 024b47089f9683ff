#include <sstream>

#include "ctsched/agreeable.hpp"
#include "ctsched/generators.hpp"
#include "ctsched/oracle.hpp"
#include "doctest.h"

using namespace ctsched;

TEST_CASE("two short jobs pair up") {
  const auto inst = Instance::from_bd(2, {{1, 5}, {2, 7}});
  const auto sol = agreeable::solve(inst);
  CHECK(sol.lmax == 1);
  CHECK(sol.schedule == Sequence{Element::pair(1, 2)});
  CHECK(sol.proven_optimal);
}

TEST_CASE("single job and all-long instances") {
  CHECK(agreeable::solve(Instance::from_bd(3, {{2, 4}})).lmax == 4);
  const auto inst = Instance::from_bd(1, {{2, 3}, {3, 9}});
  const auto sol = agreeable::solve(inst);
  CHECK(sol.lmax == oracle_structured(inst).lmax);
  CHECK(sol.schedule == Sequence{Element::singleton(1), Element::singleton(2)});
}

TEST_CASE("rejects other classes") {
  CHECK_THROWS_AS(agreeable::solve(Instance::from_bd(2, {{2, 4}, {1, 9}})), NotApplicable);
  CHECK_THROWS_AS(agreeable::solve(Instance{}), InvalidInput);
}

TEST_CASE("graph layers and dump") {
  const auto inst = Instance::from_bd(2, {{1, 5}, {2, 7}});
  const auto g = agreeable::build_graph(inst);
  CHECK(g.n() == 2);
  CHECK(g.node_count() > 0);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const auto& nd = g.node(i);
    CHECK(nd.c >= nd.element.job_count());
    CHECK(nd.c <= g.n());
  }
  std::ostringstream os;
  g.dump(os);
  const std::string text = os.str();
  CHECK(text.find("NODE ") != std::string::npos);
  CHECK(text.find("ARC s ") != std::string::npos);
  std::ostringstream again;
  agreeable::build_graph(inst).dump(again);
  CHECK(text == again.str());
}

TEST_CASE("feasibility test is monotone in lambda and brackets the optimum") {
  for (int t = 0; t < 60; ++t) {
    GenConfig cfg;
    cfg.cls = GenClass::Agreeable;
    cfg.n = 2 + t % 5;
    cfg.seed = 40 + static_cast<std::uint64_t>(t);
    cfg.long_job_fraction = (t % 3) * 0.25;
    const Instance inst = generate(cfg);
    const Time opt = oracle_structured(inst).lmax;
    const auto g = agreeable::build_graph(inst);
    bool seen = false;
    for (Time lam = opt - 3; lam <= opt + 3; ++lam) {
      const auto path = agreeable::feasibility_test(g, lam);
      if (lam < opt) CHECK_FALSE(agreeable::schedule_within(g, lam).has_value());
      if (lam >= opt) CHECK(agreeable::schedule_within(g, lam).has_value());
      if (seen) CHECK(path.has_value());
      seen |= path.has_value();
    }
  }
}

TEST_CASE("matches the oracle with a feasible witness") {
  for (int t = 0; t < 400; ++t) {
    GenConfig cfg;
    cfg.cls = GenClass::Agreeable;
    cfg.n = 1 + t % 9;
    cfg.seed = 7000 + static_cast<std::uint64_t>(t);
    cfg.long_job_fraction = (t % 5) * 0.2;
    const Instance inst = generate(cfg);
    const auto sol = agreeable::solve(inst);
    CHECK(sol.lmax == oracle_structured(inst).lmax);
    const auto ts = schedule_timeline(sol.schedule, inst);
    CHECK(check_feasibility(ts, inst).empty());
    CHECK(lateness_report(ts, inst).lmax == sol.lmax);
  }
}
