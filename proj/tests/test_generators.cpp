#include "ctsched/generators.hpp"
#include "ctsched/io.hpp"
#include "doctest.h"

using namespace ctsched;

TEST_CASE("same seed, same instance") {
  GenConfig cfg;
  cfg.n = 12;
  cfg.seed = 99;
  cfg.long_job_fraction = 0.3;
  CHECK(io::instance_json(generate(cfg)) == io::instance_json(generate(cfg)));
  GenConfig other = cfg;
  other.seed = 100;
  CHECK(io::instance_json(generate(cfg)) != io::instance_json(generate(other)));
}

TEST_CASE("requested class is produced") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    GenConfig cfg;
    cfg.n = 1 + static_cast<int>(s % 12);
    cfg.seed = s;
    cfg.long_job_fraction = static_cast<double>(s % 5) * 0.25;
    cfg.cls = GenClass::Agreeable;
    CHECK(is_agreeable(classify(generate(cfg))));
    cfg.cls = GenClass::Disagreeable;
    CHECK(is_disagreeable(classify(generate(cfg))));
  }
}

TEST_CASE("ranges and long-job share") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    GenConfig cfg;
    cfg.n = 10;
    cfg.seed = s;
    cfg.long_job_fraction = 0.5;
    const Instance inst = generate(cfg);
    CHECK(inst.p() >= 1);
    CHECK(inst.p() <= 5);
    for (const auto& j : inst.jobs()) {
      CHECK(j.b >= 0);
      CHECK(j.b <= 2 * inst.p());
    }
    CHECK(long_job_set(inst).size() == 5);
  }
  GenConfig none;
  none.n = 10;
  none.long_job_fraction = 0.0;
  CHECK(long_job_set(generate(none)).empty());
}

TEST_CASE("bad configurations") {
  GenConfig cfg;
  cfg.p_range = {3, 2};
  CHECK_THROWS_AS(generate(cfg), InvalidInput);
  GenConfig all_long;
  all_long.p_range = {2, 2};
  all_long.b_range = std::pair<Time, Time>{0, 2};
  all_long.long_job_fraction = 1.0;
  CHECK_THROWS_AS(generate(all_long), InvalidInput);
}

TEST_CASE("class names") {
  CHECK(parse_gen_class("agreeable") == GenClass::Agreeable);
  CHECK(parse_gen_class("disagreeable") == GenClass::Disagreeable);
  CHECK(parse_gen_class("general") == GenClass::General);
  CHECK_FALSE(parse_gen_class("other").has_value());
  CHECK(to_string(GenClass::General) == "general");
}
