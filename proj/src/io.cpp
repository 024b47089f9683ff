#include "ctsched/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace ctsched::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Time get_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InvalidInput(where + ": missing \"" + key + "\"");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw InvalidInput(where + ": \"" + key + "\" is not an integer");
  return v.get<Time>();
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

int to_label(Time v, const std::string& where) {
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw InvalidInput(where + ": id out of range");
  }
  return static_cast<int>(v);
}

JobId job_of(const json& v, const Instance& inst, const std::string& where) {
  if (!v.is_number_integer()) throw InvalidInput(where + ": job id is not an integer");
  return inst.id_of_label(to_label(v.get<Time>(), where));
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json doc = parse_json(text, "instance");
  if (!doc.is_object()) throw InvalidInput("instance: top level is not an object");
  const Time p = get_int(doc, "p", "instance");
  if (!doc.contains("jobs") || !doc.at("jobs").is_array()) {
    throw InvalidInput("instance: \"jobs\" is not an array");
  }
  std::vector<RawJob> raw;
  std::size_t k = 0;
  for (const json& j : doc.at("jobs")) {
    const std::string where = "instance: jobs[" + std::to_string(k++) + "]";
    raw.push_back(RawJob{to_label(get_int(j, "id", where), where), get_int(j, "b", where),
                         get_int(j, "d", where)});
  }
  return Instance(p, std::move(raw));
}

Instance load_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

std::string instance_json(const Instance& inst) {
  ordered_json doc;
  doc["p"] = inst.p();
  doc["jobs"] = ordered_json::array();
  for (const Job& j : inst.jobs()) {
    ordered_json o;
    o["id"] = inst.label(j.id);
    o["b"] = j.b;
    o["d"] = j.d;
    doc["jobs"].push_back(std::move(o));
  }
  return doc.dump(2) + "\n";
}

std::string schedule_json(const Sequence& seq, const Instance& inst) {
  const TimedSchedule ts = schedule_timeline(seq, inst);
  ordered_json doc;
  doc["lmax"] = lateness_report(ts, inst).lmax;
  doc["makespan"] = ts.makespan;
  doc["elements"] = ordered_json::array();
  for (const Element& e : seq) {
    ordered_json o;
    if (e.is_pair()) {
      o["pair"] = ordered_json::array({inst.label(e.first()), inst.label(e.second())});
    } else {
      o["singleton"] = inst.label(e.first());
    }
    doc["elements"].push_back(std::move(o));
  }
  // Starts keyed by label, listed in numeric label order.
  std::map<int, Time> starts;
  for (JobId j = 1; j <= inst.size(); ++j) starts[inst.label(j)] = ts.start_of(j);
  ordered_json st = ordered_json::object();
  for (const auto& [label, t] : starts) st[std::to_string(label)] = t;
  doc["starts"] = std::move(st);
  return doc.dump(2) + "\n";
}

ScheduleFile parse_schedule(const std::string& text, const Instance& inst) {
  const json doc = parse_json(text, "schedule");
  if (!doc.is_object()) throw InvalidInput("schedule: top level is not an object");
  ScheduleFile out;
  if (doc.contains("lmax")) out.lmax = get_int(doc, "lmax", "schedule");
  if (doc.contains("makespan")) out.makespan = get_int(doc, "makespan", "schedule");
  if (!doc.contains("elements") || !doc.at("elements").is_array()) {
    throw InvalidInput("schedule: \"elements\" is not an array");
  }
  std::size_t k = 0;
  for (const json& e : doc.at("elements")) {
    const std::string where = "schedule: elements[" + std::to_string(k++) + "]";
    if (e.is_object() && e.size() == 1 && e.contains("singleton")) {
      out.elements.push_back(Element::singleton(job_of(e.at("singleton"), inst, where)));
    } else if (e.is_object() && e.size() == 1 && e.contains("pair") && e.at("pair").is_array() &&
               e.at("pair").size() == 2) {
      out.elements.push_back(
          Element::pair(job_of(e.at("pair")[0], inst, where), job_of(e.at("pair")[1], inst, where)));
    } else {
      throw InvalidInput(where + ": expected {\"singleton\": id} or {\"pair\": [id, id]}");
    }
  }
  if (doc.contains("starts")) {
    const json& st = doc.at("starts");
    if (!st.is_object()) throw InvalidInput("schedule: \"starts\" is not an object");
    std::vector<std::optional<Time>> starts(static_cast<std::size_t>(inst.size()));
    for (const auto& [key, value] : st.items()) {
      int label = 0;
      std::size_t used = 0;
      try {
        label = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || key.empty()) {
        throw InvalidInput("schedule: starts key \"" + key + "\" is not a job id");
      }
      if (!value.is_number_integer()) {
        throw InvalidInput("schedule: start of job " + key + " is not an integer");
      }
      starts[static_cast<std::size_t>(inst.id_of_label(label) - 1)] = value.get<Time>();
    }
    std::vector<Time> full;
    for (std::size_t j = 0; j < starts.size(); ++j) {
      if (!starts[j]) {
        throw InvalidInput("schedule: no start for job " +
                           std::to_string(inst.label(static_cast<JobId>(j) + 1)));
      }
      full.push_back(*starts[j]);
    }
    out.starts = std::move(full);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string gantt(const TimedSchedule& ts, const Instance& inst) {
  const Time p = inst.p();
  Time origin = 0;
  for (Time s : ts.start) origin = std::min(origin, s);
  const Time width = ts.makespan - origin;
  std::size_t label_w = 0;
  for (JobId j = 1; j <= inst.size(); ++j) {
    label_w = std::max(label_w, std::to_string(inst.label(j)).size());
  }
  std::string out;
  for (JobId j = 1; j <= inst.size(); ++j) {
    std::string label = std::to_string(inst.label(j));
    out += std::string(label_w - label.size(), ' ') + label + " |";
    const Time s = ts.start_of(j) - origin;
    for (Time t = 0; t < width; ++t) {
      if (t >= s && t < s + p) {
        out += '#';
      } else if (t >= s + 2 * p && t < s + 2 * p + inst.b(j)) {
        out += '=';
      } else {
        out += '.';
      }
    }
    out += "|\n";
  }
  return out;
}

}  // namespace ctsched::io
