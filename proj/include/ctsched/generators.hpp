#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "ctsched/model.hpp"

namespace ctsched {

enum class GenClass : std::uint8_t { Agreeable, Disagreeable, General };

struct GenConfig {
  int n = 8;
  std::pair<Time, Time> p_range{1, 5};
  /// Defaults to [0, 2p]; always clamped to that interval.
  std::optional<std::pair<Time, Time>> b_range;
  /// Defaults to [2p, (3p + max b) * n].
  std::optional<std::pair<Time, Time>> d_range;
  GenClass cls = GenClass::General;
  double long_job_fraction = 0.0;
  std::uint64_t seed = 0;
};

std::optional<GenClass> parse_gen_class(const std::string& s);
std::string to_string(GenClass c);

/// Deterministic in cfg.seed. Throws InvalidInput for empty ranges or when
/// the requested long/short split cannot be drawn from b_range.
Instance generate(const GenConfig& cfg);

}  // namespace ctsched
