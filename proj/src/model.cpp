#include "ctsched/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace ctsched {

Instance::Instance(Time p, std::vector<RawJob> raw) : p_(p) {
  if (p < 1) throw InvalidInput("p must be positive, got " + std::to_string(p));
  std::vector<int> seen;
  seen.reserve(raw.size());
  for (const auto& r : raw) {
    if (r.b < 0) throw InvalidInput("job " + std::to_string(r.label) + ": negative b");
    seen.push_back(r.label);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw InvalidInput("duplicate job id in input");
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawJob& a, const RawJob& b) { return a.d < b.d; });
  jobs_.reserve(raw.size());
  labels_.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    jobs_.push_back(Job{static_cast<JobId>(k + 1), raw[k].b, raw[k].d});
    labels_.push_back(raw[k].label);
  }
}

Instance Instance::from_bd(Time p, const std::vector<std::pair<Time, Time>>& bd) {
  std::vector<RawJob> raw;
  raw.reserve(bd.size());
  for (std::size_t k = 0; k < bd.size(); ++k) {
    raw.push_back(RawJob{static_cast<int>(k + 1), bd[k].first, bd[k].second});
  }
  return Instance(p, std::move(raw));
}

JobId Instance::id_of_label(int label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] == label) return static_cast<JobId>(k + 1);
  }
  throw InvalidInput("unknown job id " + std::to_string(label));
}

std::vector<RawJob> Instance::raw_jobs() const {
  std::vector<RawJob> out;
  out.reserve(jobs_.size());
  for (const auto& j : jobs_) out.push_back(RawJob{label(j.id), j.b, j.d});
  return out;
}

std::strong_ordering Element::operator<=>(const Element& o) const {
  if (auto c = first_ <=> o.first_; c != 0) return c;
  // Pairs sort before the singleton of the same first job.
  if (auto c = static_cast<int>(is_singleton()) <=> static_cast<int>(o.is_singleton()); c != 0) {
    return c;
  }
  return second_ <=> o.second_;
}

std::string Element::to_string() const {
  if (is_pair()) return "(" + std::to_string(first_) + "," + std::to_string(second_) + ")";
  return "[" + std::to_string(first_) + "]";
}

std::string to_string(const Sequence& seq) {
  std::string s;
  for (const auto& e : seq) s += e.to_string();
  return s;
}

Time element_span(const Element& e, const Instance& inst) {
  const Time p = inst.p();
  return e.is_pair() ? 3 * p + inst.b(e.second()) : 2 * p + inst.b(e.first());
}

Time sequence_span(const Sequence& seq, const Instance& inst) {
  Time total = 0;
  for (const auto& e : seq) total += element_span(e, inst);
  return total;
}

Time element_lateness(const Element& e, Time start, const Instance& inst) {
  const Time p = inst.p();
  const Time first = start + 2 * p + inst.b(e.first()) - inst.d(e.first());
  if (!e.is_pair()) return first;
  return std::max(first, start + 3 * p + inst.b(e.second()) - inst.d(e.second()));
}

namespace {

void validate_elements(const Sequence& seq, const Instance& inst) {
  std::vector<char> used(static_cast<std::size_t>(inst.size()), 0);
  auto mark = [&](JobId j) {
    if (!inst.contains(j)) throw InvalidInput("unknown job id " + std::to_string(j));
    auto& u = used[static_cast<std::size_t>(j - 1)];
    if (u) throw InvalidInput("job " + std::to_string(j) + " scheduled twice");
    u = 1;
  };
  for (const auto& e : seq) {
    mark(e.first());
    if (e.is_pair()) {
      mark(e.second());
      if (inst.b(e.first()) > inst.p()) {
        throw InvalidInput("pair " + e.to_string() + ": first job's b exceeds p");
      }
    }
  }
  if (std::find(used.begin(), used.end(), 0) != used.end()) {
    throw InvalidInput("sequence does not cover every job");
  }
}

}  // namespace

TimedSchedule schedule_timeline(const Sequence& seq, const Instance& inst, Time origin) {
  validate_elements(seq, inst);
  const Time p = inst.p();
  TimedSchedule ts;
  ts.start.assign(static_cast<std::size_t>(inst.size()), 0);
  ts.completion.assign(static_cast<std::size_t>(inst.size()), 0);
  Time t = origin;
  auto put = [&](JobId j, Time s) {
    ts.start[static_cast<std::size_t>(j - 1)] = s;
    ts.completion[static_cast<std::size_t>(j - 1)] = s + 2 * p + inst.b(j);
  };
  for (const auto& e : seq) {
    put(e.first(), t);
    if (e.is_pair()) put(e.second(), t + p);
    t += element_span(e, inst);
  }
  ts.makespan = t;
  return ts;
}

TimedSchedule schedule_right_justified(const Sequence& seq, const Instance& inst, Time end) {
  return schedule_timeline(seq, inst, end - sequence_span(seq, inst));
}

TimedSchedule timed_from_starts(std::span<const Time> starts, const Instance& inst) {
  if (static_cast<int>(starts.size()) != inst.size()) {
    throw InvalidInput("start vector size does not match instance");
  }
  TimedSchedule ts;
  ts.start.assign(starts.begin(), starts.end());
  ts.completion.resize(starts.size());
  ts.makespan = 0;
  for (const auto& j : inst.jobs()) {
    const auto k = static_cast<std::size_t>(j.id - 1);
    ts.completion[k] = starts[k] + 2 * inst.p() + j.b;
    ts.makespan = std::max(ts.makespan, ts.completion[k]);
  }
  return ts;
}

std::vector<Violation> check_feasibility(const TimedSchedule& ts, const Instance& inst) {
  std::vector<Violation> out;
  const auto n = static_cast<std::size_t>(inst.size());
  if (ts.start.size() != n || ts.completion.size() != n) {
    out.push_back({Violation::Kind::Coverage, 0, 0, "schedule does not cover the instance's jobs"});
    return out;
  }
  const Time p = inst.p();
  struct Task {
    Time s, e;
    JobId job;
    int part;
  };
  std::vector<Task> tasks;
  tasks.reserve(2 * n);
  Time makespan = n == 0 ? 0 : ts.completion[0];
  for (const auto& j : inst.jobs()) {
    const auto k = static_cast<std::size_t>(j.id - 1);
    const Time s = ts.start[k];
    const Time c = ts.completion[k];
    makespan = std::max(makespan, c);
    if (c - j.b != s + 2 * p) {
      out.push_back({Violation::Kind::DelayNotExact, j.id, 0,
                     "job " + std::to_string(j.id) + ": second task starts at " +
                         std::to_string(c - j.b) + ", expected " + std::to_string(s + 2 * p)});
    }
    tasks.push_back({s, s + p, j.id, 1});
    tasks.push_back({c - j.b, c, j.id, 2});
  }
  for (std::size_t a = 0; a < tasks.size(); ++a) {
    for (std::size_t b = a + 1; b < tasks.size(); ++b) {
      const auto& x = tasks[a];
      const auto& y = tasks[b];
      if (x.job == y.job) continue;
      // Half-open intervals; a zero-length task conflicts only when strictly inside another.
      if (x.s < y.e && y.s < x.e) {
        std::ostringstream msg;
        msg << "task " << x.part << " of job " << x.job << " [" << x.s << "," << x.e
            << ") overlaps task " << y.part << " of job " << y.job << " [" << y.s << "," << y.e
            << ")";
        out.push_back({Violation::Kind::Overlap, x.job, y.job, msg.str()});
      }
    }
  }
  if (n > 0 && makespan != ts.makespan) {
    out.push_back({Violation::Kind::Makespan, 0, 0,
                   "makespan " + std::to_string(ts.makespan) + " differs from max completion " +
                       std::to_string(makespan)});
  }
  return out;
}

LatenessReport lateness_report(const TimedSchedule& ts, const Instance& inst) {
  LatenessReport r;
  r.lateness.resize(static_cast<std::size_t>(inst.size()));
  for (const auto& j : inst.jobs()) {
    const auto k = static_cast<std::size_t>(j.id - 1);
    r.lateness[k] = ts.completion.at(k) - j.d;
    if (r.argmax == 0 || r.lateness[k] > r.lmax) {
      r.lmax = r.lateness[k];
      r.argmax = j.id;
    }
  }
  return r;
}

Time sequence_lmax(const Sequence& seq, const Instance& inst) {
  return lateness_report(schedule_timeline(seq, inst), inst).lmax;
}

OrderComparison compare_orders(JobId i, JobId j, const Instance& inst) {
  const auto& a = inst.job(i);
  const auto& b = inst.job(j);
  return OrderComparison{a.d <=> b.d, (a.d - a.b) <=> (b.d - b.b)};
}

std::string to_string(InstanceClass c) {
  switch (c) {
    case InstanceClass::Agreeable: return "agreeable";
    case InstanceClass::Disagreeable: return "disagreeable";
    case InstanceClass::Both: return "both";
    case InstanceClass::General: return "general";
  }
  return "general";
}

std::optional<InstanceClass> parse_instance_class(const std::string& s) {
  if (s == "agreeable") return InstanceClass::Agreeable;
  if (s == "disagreeable") return InstanceClass::Disagreeable;
  if (s == "both") return InstanceClass::Both;
  if (s == "general") return InstanceClass::General;
  return std::nullopt;
}

InstanceClass classify(const Instance& inst) {
  bool agreeable = true;
  bool disagreeable = true;
  const auto jobs = inst.jobs();
  for (std::size_t a = 0; a < jobs.size(); ++a) {
    for (std::size_t c = 0; c < jobs.size(); ++c) {
      if (jobs[a].d < jobs[c].d) {
        if (jobs[a].b > jobs[c].b) agreeable = false;
        if (jobs[a].b < jobs[c].b) disagreeable = false;
      }
    }
  }
  if (agreeable && disagreeable) return InstanceClass::Both;
  if (agreeable) return InstanceClass::Agreeable;
  if (disagreeable) return InstanceClass::Disagreeable;
  return InstanceClass::General;
}

std::vector<JobId> long_job_set(const Instance& inst) {
  std::vector<JobId> out;
  for (const auto& j : inst.jobs()) {
    if (j.b > inst.p()) out.push_back(j.id);
  }
  return out;
}

Sequence edd_singletons(const Instance& inst) {
  Sequence seq;
  seq.reserve(static_cast<std::size_t>(inst.size()));
  for (const auto& j : inst.jobs()) seq.push_back(Element::singleton(j.id));
  return seq;
}

Time lmax_lower_bound(const Instance& inst) {
  Time lb = 0;
  bool first = true;
  for (const auto& j : inst.jobs()) {
    const Time v = 2 * inst.p() + j.b - j.d;
    if (first || v > lb) lb = v;
    first = false;
  }
  return lb;
}

Instance sub_instance(const Instance& inst, std::span<const JobId> ids, Time offset) {
  std::vector<JobId> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<RawJob> raw;
  raw.reserve(sorted.size());
  for (JobId j : sorted) raw.push_back(RawJob{j, inst.b(j), inst.d(j) - offset});
  return Instance(inst.p(), std::move(raw));
}

Sequence lift_sequence(const Sequence& seq, const Instance& sub) {
  Sequence out;
  out.reserve(seq.size());
  for (const auto& e : seq) {
    out.push_back(e.is_pair() ? Element::pair(sub.label(e.first()), sub.label(e.second()))
                              : Element::singleton(sub.label(e.first())));
  }
  return out;
}

Instance tie_normalized(const Instance& inst, bool b_ascending) {
  std::vector<RawJob> raw;
  raw.reserve(static_cast<std::size_t>(inst.size()));
  for (const auto& j : inst.jobs()) raw.push_back(RawJob{j.id, j.b, j.d});
  std::stable_sort(raw.begin(), raw.end(), [b_ascending](const RawJob& x, const RawJob& y) {
    if (x.d != y.d) return x.d < y.d;
    return b_ascending ? x.b < y.b : x.b > y.b;
  });
  return Instance(inst.p(), std::move(raw));
}

}  // namespace ctsched
