#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "ctsched/cli.hpp"
#include "ctsched/io.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using namespace ctsched;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ctsched");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "ctsched_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path / name;
    io::write_atomic(p, content);
    return p.string();
  }
};

const char* kA1 = R"({"p": 2, "jobs": [{"id": 1, "b": 1, "d": 5}, {"id": 2, "b": 2, "d": 7}]})";
const char* kGeneral =
    R"({"p": 2, "jobs": [{"id": 1, "b": 1, "d": 1}, {"id": 2, "b": 3, "d": 2}, {"id": 3, "b": 2, "d": 3}]})";

}  // namespace

TEST_CASE("solve prints a report and writes the schedule") {
  TempDir tmp;
  const auto in = tmp.file("a1.json", kA1);
  const auto out = (tmp.path / "s.json").string();
  const auto r = run({"solve", "--input", in, "--check-oracle", "--out", out});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("algo=agreeable\n") != std::string::npos);
  CHECK(r.out.find("lmax=1\n") != std::string::npos);
  CHECK(r.out.find("makespan=8\n") != std::string::npos);
  CHECK(r.out.find("schedule=(1,2)\n") != std::string::npos);
  CHECK(r.out.find("match=true\n") != std::string::npos);
  CHECK(r.err.find("wall_us=") != std::string::npos);

  const auto v = run({"verify", "--instance", in, "--schedule", out});
  CHECK(v.code == cli::kOk);
  CHECK(v.out == "ok lmax=1 makespan=8\n");
}

TEST_CASE("verify catches tampering") {
  TempDir tmp;
  const auto in = tmp.file("a1.json", kA1);
  const auto overlap = tmp.file(
      "bad.json", R"({"elements": [{"pair": [1, 2]}], "starts": {"1": 0, "2": 1}})");
  auto v = run({"verify", "--instance", in, "--schedule", overlap});
  CHECK(v.code == cli::kInfeasible);
  CHECK(v.out.find("violation:") != std::string::npos);

  const auto claim =
      tmp.file("claim.json", R"({"lmax": 0, "elements": [{"pair": [1, 2]}]})");
  v = run({"verify", "--instance", in, "--schedule", claim});
  CHECK(v.code == cli::kInfeasible);

  const auto missing = tmp.file("missing.json", R"({"elements": [{"singleton": 1}]})");
  CHECK(run({"verify", "--instance", in, "--schedule", missing}).code == cli::kInfeasible);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  const auto a1 = tmp.file("a1.json", kA1);
  const auto gen = tmp.file("g.json", kGeneral);
  CHECK(run({"solve"}).code == cli::kMalformed);
  CHECK(run({"solve", "--input", tmp.file("junk.json", "{")}).code == cli::kMalformed);
  CHECK(run({"solve", "--input", (tmp.path / "nope.json").string()}).code == cli::kMalformed);
  CHECK(run({"solve", "--input", a1, "--algo", "disagreeable"}).code == cli::kUnsupported);
  CHECK(run({"solve", "--input", gen, "--algo", "agreeable"}).code == cli::kUnsupported);
  CHECK(run({"solve", "--input", gen}).code == cli::kOk);
  CHECK(run({"solve", "--input", a1, "--algo", "partition", "--P", "2", "--T", "1", "--L", "1"})
            .code == cli::kOk);
  CHECK(run({"solve", "--input", a1, "--algo", "partition", "--P", "2", "--T", "1", "--L", "0"})
            .code == cli::kInfeasible);
  CHECK(run({"gen", "--class", "bogus"}).code == cli::kMalformed);
}

TEST_CASE("auto refuses large general instances") {
  const auto g = run({"gen", "--n", "12", "--class", "general", "--seed", "5"});
  REQUIRE(g.code == cli::kOk);
  TempDir tmp;
  const auto in = tmp.file("big.json", g.out);
  REQUIRE(classify(io::parse_instance(g.out)) == InstanceClass::General);
  CHECK(run({"solve", "--input", in}).code == cli::kUnsupported);
}

TEST_CASE("gen is deterministic and bench has one row per trial") {
  const auto a = run({"gen", "--n", "7", "--class", "disagreeable", "--seed", "3"});
  const auto b = run({"gen", "--n", "7", "--class", "disagreeable", "--seed", "3"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(classify(io::parse_instance(a.out)) != InstanceClass::General);

  const auto bench = run({"bench", "--class", "agreeable", "--sizes", "3,4", "--trials", "2"});
  CHECK(bench.code == cli::kOk);
  std::istringstream lines(bench.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,seed,algo,lmax,oracle_lmax,match,micros");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(",true,") != std::string::npos);
  }
  CHECK(rows == 4);
}

TEST_CASE("graph dump and trim trace") {
  TempDir tmp;
  const auto a1 = tmp.file("a1.json", kA1);
  const auto graph = (tmp.path / "g.txt").string();
  CHECK(run({"solve", "--input", a1, "--dump-graph", graph}).code == cli::kOk);
  CHECK(io::read_file(graph).find("NODE") != std::string::npos);

  const auto d1 =
      tmp.file("d1.json", R"({"p": 2, "jobs": [{"id": 1, "b": 2, "d": 6}, {"id": 2, "b": 1, "d": 7}]})");
  const auto trace = (tmp.path / "t.txt").string();
  const auto r = run({"solve", "--input", d1, "--algo", "disagreeable", "--trace-trims", trace});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("lmax=0\n") != std::string::npos);
  CHECK(io::read_file(trace).find("k*=") != std::string::npos);
}
