#include <filesystem>

#include "ctsched/generators.hpp"
#include "ctsched/io.hpp"
#include "doctest.h"

using namespace ctsched;

TEST_CASE("instance parsing keeps labels") {
  const auto inst = io::parse_instance(
      R"({"p": 2, "jobs": [{"id": 10, "b": 2, "d": 7}, {"id": 4, "b": 1, "d": 5}]})");
  CHECK(inst.p() == 2);
  CHECK(inst.size() == 2);
  CHECK(inst.label(1) == 4);
  CHECK(inst.b(2) == 2);
}

TEST_CASE("malformed instances") {
  CHECK_THROWS_AS(io::parse_instance("{"), InvalidInput);
  CHECK_THROWS_AS(io::parse_instance(R"({"jobs": []})"), InvalidInput);
  CHECK_THROWS_AS(io::parse_instance(R"({"p": 0, "jobs": []})"), InvalidInput);
  CHECK_THROWS_AS(io::parse_instance(R"({"p": 1, "jobs": [{"id": 1, "b": -1, "d": 0}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(io::parse_instance(R"({"p": 1, "jobs": [{"id": 1, "b": "x", "d": 0}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(
      io::parse_instance(
          R"({"p": 1, "jobs": [{"id": 1, "b": 0, "d": 0}, {"id": 1, "b": 0, "d": 1}]})"),
      InvalidInput);
}

TEST_CASE("instance round trip") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    GenConfig cfg;
    cfg.n = 1 + static_cast<int>(s % 9);
    cfg.seed = s;
    const Instance inst = generate(cfg);
    const std::string text = io::instance_json(inst);
    CHECK(io::instance_json(io::parse_instance(text)) == text);
  }
}

TEST_CASE("schedule round trip") {
  const auto inst = io::parse_instance(
      R"({"p": 2, "jobs": [{"id": 7, "b": 1, "d": 5}, {"id": 3, "b": 2, "d": 7}, {"id": 5, "b": 0, "d": 20}]})");
  const Sequence seq{Element::pair(1, 2), Element::singleton(3)};
  const std::string text = io::schedule_json(seq, inst);
  CHECK(text.find("\"pair\"") != std::string::npos);
  const auto sf = io::parse_schedule(text, inst);
  CHECK(sf.elements == seq);
  REQUIRE(sf.starts.has_value());
  CHECK(*sf.starts == schedule_timeline(seq, inst).start);
  CHECK(sf.lmax == sequence_lmax(seq, inst));
  CHECK(sf.makespan == sequence_span(seq, inst));
  CHECK_THROWS_AS(io::parse_schedule(R"({"elements": [{"singleton": 99}]})", inst), InvalidInput);
  CHECK_THROWS_AS(io::parse_schedule(R"({"elements": [{"triple": [1, 2, 3]}]})", inst),
                  InvalidInput);
}

TEST_CASE("atomic write") {
  const auto dir = std::filesystem::temp_directory_path() / "ctsched_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "x.json";
  io::write_atomic(path, "first");
  io::write_atomic(path, "second");
  CHECK(io::read_file(path) == "second");
  CHECK_FALSE(std::filesystem::exists(dir / "x.json.tmp"));
  std::filesystem::remove_all(dir);
  CHECK_THROWS(io::read_file(dir / "missing.json"));
}

TEST_CASE("gantt chart") {
  const auto inst = Instance::from_bd(2, {{1, 5}, {2, 7}});
  const std::string g = io::gantt(schedule_timeline({Element::pair(1, 2)}, inst), inst);
  CHECK(g == "1 |##..=...|\n2 |..##..==|\n");
}
