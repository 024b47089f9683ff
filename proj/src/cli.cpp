#include "ctsched/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctsched/agreeable.hpp"
#include "ctsched/disagreeable.hpp"
#include "ctsched/generators.hpp"
#include "ctsched/io.hpp"
#include "ctsched/oracle.hpp"
#include "ctsched/partition.hpp"

namespace ctsched::cli {

namespace {

struct SolveFlags {
  std::string input;
  std::string algo = "auto";
  bool check_oracle = false;
  std::string out;
  bool gantt = false;
  std::string dump_graph;
  bool fast_cmax_bisect = false;
  std::string trace_trims;
  std::int64_t search_budget = disagreeable::Options{}.search_budget;
  std::vector<int> part_p;
  std::vector<int> part_t;
  std::optional<Time> part_l;
};

struct VerifyFlags {
  std::string instance;
  std::string schedule;
};

struct GenFlags {
  int n = 8;
  std::optional<Time> p;
  std::string cls = "general";
  std::uint64_t seed = 0;
  double long_fraction = 0.0;
  std::string out;
};

struct BenchFlags {
  std::string cls = "general";
  std::vector<int> sizes{4, 6, 8};
  int trials = 10;
  std::uint64_t seed = 0;
  std::string algo = "auto";
  double long_fraction = 0.2;
  std::string out;
};

std::string labeled(const Sequence& seq, const Instance& inst) {
  std::string s;
  for (const Element& e : seq) {
    if (e.is_pair()) {
      s += "(" + std::to_string(inst.label(e.first())) + "," +
           std::to_string(inst.label(e.second())) + ")";
    } else {
      s += "[" + std::to_string(inst.label(e.first())) + "]";
    }
  }
  return s;
}

struct Outcome {
  std::string algo;
  Solution solution;
};

// Runs one of the whole-instance algorithms. NotApplicable and CapExceeded
// propagate to the caller.
Outcome dispatch(const Instance& inst, const std::string& algo, const disagreeable::Options& dopt) {
  std::string chosen = algo;
  if (algo == "auto") {
    const InstanceClass c = classify(inst);
    if (is_agreeable(c)) {
      chosen = "agreeable";
    } else if (is_disagreeable(c)) {
      chosen = "disagreeable";
    } else if (inst.size() <= partition::kGeneralSmallCap) {
      chosen = "general-small";
    } else {
      throw NotApplicable("general instance with n=" + std::to_string(inst.size()) +
                          " exceeds the general-small cap " +
                          std::to_string(partition::kGeneralSmallCap));
    }
  }
  if (chosen == "agreeable") return {chosen, agreeable::solve(inst)};
  if (chosen == "disagreeable") return {chosen, disagreeable::solve(inst, dopt)};
  if (chosen == "general-small") return {chosen, partition::solve_general_small(inst)};
  if (chosen == "oracle") {
    OracleResult r = oracle_structured(inst);
    return {chosen, Solution{r.lmax, std::move(r.witness)}};
  }
  throw InvalidInput("unknown algorithm " + algo);
}

std::vector<JobId> ids_of(const std::vector<int>& labels, const Instance& inst) {
  std::vector<JobId> ids;
  for (int l : labels) ids.push_back(inst.id_of_label(l));
  return ids;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    io::write_atomic(path, content);
  }
}

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  const Instance inst = io::load_instance(f.input);
  if (inst.empty()) {
    err << "error: instance has no jobs\n";
    return kMalformed;
  }
  const auto t0 = std::chrono::steady_clock::now();
  Outcome result;
  if (f.algo == "partition") {
    if (!f.part_l) {
      err << "error: --algo partition needs --P, --T and --L\n";
      return kMalformed;
    }
    const partition::Partition part{ids_of(f.part_p, inst), ids_of(f.part_t, inst)};
    auto seq = partition::partition_test(part, *f.part_l, inst);
    if (!seq) {
      out << "algo=partition\nresult=none\n";
      err << "no sequence with lmax <= " << *f.part_l << " for this partition\n";
      return kInfeasible;
    }
    result = {"partition", Solution{sequence_lmax(*seq, inst), std::move(*seq)}};
  } else {
    disagreeable::Options dopt;
    dopt.fast_cmax_bisect = f.fast_cmax_bisect;
    dopt.search_budget = f.search_budget;
    std::ostringstream trace;
    if (!f.trace_trims.empty()) dopt.trace = &trace;
    try {
      result = dispatch(inst, f.algo, dopt);
    } catch (const NotApplicable& e) {
      err << "unsupported: " << e.what() << '\n';
      return kUnsupported;
    } catch (const CapExceeded& e) {
      err << "unsupported: " << e.what() << '\n';
      return kUnsupported;
    }
    if (!f.trace_trims.empty()) io::write_atomic(f.trace_trims, trace.str());
    if (!f.dump_graph.empty()) {
      if (!is_agreeable(classify(inst))) {
        err << "unsupported: --dump-graph needs an agreeable instance\n";
        return kUnsupported;
      }
      std::ostringstream g;
      agreeable::build_graph(inst).dump(g);
      io::write_atomic(f.dump_graph, g.str());
    }
  }
  const auto micros =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0)
          .count();

  const Solution& sol = result.solution;
  const TimedSchedule ts = schedule_timeline(sol.schedule, inst);
  out << "algo=" << result.algo << '\n'
      << "class=" << to_string(classify(inst)) << '\n'
      << "n=" << inst.size() << '\n'
      << "lmax=" << sol.lmax << '\n'
      << "makespan=" << ts.makespan << '\n'
      << "proven_optimal=" << (sol.proven_optimal ? "true" : "false") << '\n'
      << "schedule=" << labeled(sol.schedule, inst) << '\n';
  if (f.check_oracle) {
    try {
      const Time o = oracle_structured(inst).lmax;
      out << "oracle_lmax=" << o << '\n' << "match=" << (o == sol.lmax ? "true" : "false") << '\n';
    } catch (const CapExceeded& e) {
      out << "oracle_lmax=none\nmatch=unknown\n";
      err << "oracle skipped: " << e.what() << '\n';
    }
  }
  if (f.gantt) out << io::gantt(ts, inst);
  err << "wall_us=" << micros << '\n';
  if (!f.out.empty()) io::write_atomic(f.out, io::schedule_json(sol.schedule, inst));
  return kOk;
}

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  const Instance inst = io::load_instance(f.instance);
  const io::ScheduleFile sf = io::parse_schedule(io::read_file(f.schedule), inst);
  std::vector<std::string> problems;

  std::optional<TimedSchedule> from_elements;
  try {
    from_elements = schedule_timeline(sf.elements, inst);
  } catch (const InvalidInput& e) {
    problems.push_back(std::string("elements: ") + e.what());
  }
  const TimedSchedule ts =
      sf.starts ? timed_from_starts(*sf.starts, inst) : from_elements.value_or(TimedSchedule{});
  if (sf.starts || from_elements) {
    for (const Violation& v : check_feasibility(ts, inst)) problems.push_back(v.message);
  }
  if (sf.starts && from_elements) {
    for (const Element& e : sf.elements) {
      if (e.is_pair() && ts.start_of(e.second()) - ts.start_of(e.first()) != inst.p()) {
        problems.push_back("pair (" + std::to_string(inst.label(e.first())) + "," +
                           std::to_string(inst.label(e.second())) +
                           ") is not interlaced in the start times");
      }
    }
  }
  if (problems.empty()) {
    const Time lmax = lateness_report(ts, inst).lmax;
    if (sf.lmax && *sf.lmax != lmax) {
      problems.push_back("claimed lmax " + std::to_string(*sf.lmax) + " but schedule gives " +
                         std::to_string(lmax));
    }
    if (sf.makespan && *sf.makespan != ts.makespan) {
      problems.push_back("claimed makespan " + std::to_string(*sf.makespan) +
                         " but schedule gives " + std::to_string(ts.makespan));
    }
    if (problems.empty()) {
      out << "ok lmax=" << lmax << " makespan=" << ts.makespan << '\n';
      return kOk;
    }
  }
  for (const auto& p : problems) out << "violation: " << p << '\n';
  return kInfeasible;
}

GenConfig gen_config(const std::string& cls, int n, std::optional<Time> p, double long_fraction,
                     std::uint64_t seed) {
  const auto c = parse_gen_class(cls);
  if (!c) throw InvalidInput("unknown class " + cls + " (agreeable|disagreeable|general)");
  GenConfig cfg;
  cfg.n = n;
  if (p) cfg.p_range = {*p, *p};
  cfg.cls = *c;
  cfg.long_job_fraction = long_fraction;
  cfg.seed = seed;
  return cfg;
}

int cmd_gen(const GenFlags& f, std::ostream& out) {
  const Instance inst = generate(gen_config(f.cls, f.n, f.p, f.long_fraction, f.seed));
  emit(f.out, io::instance_json(inst), out);
  return kOk;
}

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  std::string csv = "n,seed,algo,lmax,oracle_lmax,match,micros\n";
  int trial = 0;
  for (int n : f.sizes) {
    for (int k = 0; k < f.trials; ++k, ++trial) {
      const std::uint64_t seed = f.seed + static_cast<std::uint64_t>(trial);
      const Instance inst = generate(gen_config(f.cls, n, std::nullopt, f.long_fraction, seed));
      std::string algo = f.algo;
      std::string lmax;
      std::string oracle;
      std::string match;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        Outcome r = dispatch(inst, f.algo, {});
        algo = r.algo;
        lmax = std::to_string(r.solution.lmax);
      } catch (const NotApplicable&) {
        algo = "unsupported";
      } catch (const CapExceeded&) {
        algo = "unsupported";
      }
      const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
      if (n <= kStructuredCap) {
        oracle = std::to_string(oracle_structured(inst).lmax);
        if (!lmax.empty()) match = lmax == oracle ? "true" : "false";
      }
      csv += std::to_string(n) + "," + std::to_string(seed) + "," + algo + "," + lmax + "," +
             oracle + "," + match + "," + std::to_string(micros) + "\n";
    }
  }
  emit(f.out, csv, out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coupled-task scheduling with exact delays: maximum lateness solvers"};
  app.require_subcommand(1);

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("--input", sf.input, "Instance JSON")->required();
  solve->add_option("--algo", sf.algo, "auto|agreeable|disagreeable|oracle|general-small|partition")
      ->check(CLI::IsMember(
          {"auto", "agreeable", "disagreeable", "oracle", "general-small", "partition"}));
  solve->add_flag("--check-oracle", sf.check_oracle, "Compare with the structured oracle");
  solve->add_option("--out", sf.out, "Write the schedule JSON here");
  solve->add_flag("--gantt", sf.gantt, "Print a text Gantt chart");
  solve->add_option("--dump-graph", sf.dump_graph, "Write the agreeable pair graph here");
  solve->add_flag("--fast-cmax-bisect", sf.fast_cmax_bisect,
                  "Disagreeable: bisect the makespan instead of scanning it");
  solve->add_option("--trace-trims", sf.trace_trims, "Disagreeable: write trimming steps here");
  solve->add_option("--search-budget", sf.search_budget,
                    "Disagreeable: node limit of the exact search");
  solve->add_option("--P", sf.part_p, "Partition: spine job ids")->delimiter(',');
  solve->add_option("--T", sf.part_t, "Partition: interlaced first-member job ids")->delimiter(',');
  solve->add_option("--L", sf.part_l, "Partition: lateness bound");

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "Check a schedule file against an instance");
  verify->add_option("--instance", vf.instance, "Instance JSON")->required();
  verify->add_option("--schedule", vf.schedule, "Schedule JSON")->required();

  GenFlags gf;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", gf.n, "Number of jobs")->check(CLI::NonNegativeNumber);
  gen->add_option("--p", gf.p, "First-task length and delay (default: drawn from [1,5])");
  gen->add_option("--class", gf.cls, "agreeable|disagreeable|general");
  gen->add_option("--seed", gf.seed, "Random seed");
  gen->add_option("--long-fraction", gf.long_fraction, "Share of jobs with b > p")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--out", gf.out, "Output file (default: stdout)");

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "Compare a solver with the oracle on random instances");
  bench->add_option("--class", bf.cls, "agreeable|disagreeable|general");
  bench->add_option("--sizes", bf.sizes, "Comma-separated job counts")->delimiter(',');
  bench->add_option("--trials", bf.trials, "Instances per size")->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", bf.seed, "Seed of the first instance; later ones count up");
  bench->add_option("--algo", bf.algo, "auto|agreeable|disagreeable|oracle|general-small")
      ->check(CLI::IsMember({"auto", "agreeable", "disagreeable", "oracle", "general-small"}));
  bench->add_option("--long-fraction", bf.long_fraction, "Share of jobs with b > p")
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--out", bf.out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (*solve) return cmd_solve(sf, out, err);
    if (*verify) return cmd_verify(vf, out);
    if (*gen) return cmd_gen(gf, out);
    if (*bench) return cmd_bench(bf, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace ctsched::cli
