#pragma once

// JSON instance/schedule files, atomic writes and the text Gantt chart.
// Files carry job labels; everything in memory uses EDD JobIds.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctsched/model.hpp"

namespace ctsched::io {

/// {"p": int, "jobs": [{"id": int, "b": int, "d": int}, ...]}. Throws
/// InvalidInput on malformed text or invalid values.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::filesystem::path& path);

/// Jobs in EDD order, ids as labels; parse_instance(instance_json(x)) == x.
std::string instance_json(const Instance& inst);

struct ScheduleFile {
  Sequence elements;                       // JobIds
  std::optional<std::vector<Time>> starts;  // by JobId - 1, when present
  std::optional<Time> lmax;
  std::optional<Time> makespan;
};

/// {"lmax", "makespan", "elements": [{"singleton": id} | {"pair": [f, s]}],
///  "starts": {"id": t}} for `seq` laid out from time 0.
std::string schedule_json(const Sequence& seq, const Instance& inst);

/// Throws InvalidInput on malformed text or labels unknown to `inst`.
ScheduleFile parse_schedule(const std::string& text, const Instance& inst);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// One row per job in EDD order; one column per time unit from the earliest
/// start to the makespan: '#' first task, '=' second task, '.' idle.
std::string gantt(const TimedSchedule& ts, const Instance& inst);

}  // namespace ctsched::io
