#include "ctsched/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ctsched {

std::optional<GenClass> parse_gen_class(const std::string& s) {
  if (s == "agreeable") return GenClass::Agreeable;
  if (s == "disagreeable") return GenClass::Disagreeable;
  if (s == "general") return GenClass::General;
  return std::nullopt;
}

std::string to_string(GenClass c) {
  switch (c) {
    case GenClass::Agreeable: return "agreeable";
    case GenClass::Disagreeable: return "disagreeable";
    case GenClass::General: return "general";
  }
  return "general";
}

namespace {

void require_range(std::pair<Time, Time> r, const char* what) {
  if (r.first > r.second) throw InvalidInput(std::string("generate: empty ") + what);
}

}  // namespace

Instance generate(const GenConfig& cfg) {
  if (cfg.n < 0) throw InvalidInput("generate: negative n");
  if (!(cfg.long_job_fraction >= 0.0 && cfg.long_job_fraction <= 1.0)) {
    throw InvalidInput("generate: long_job_fraction outside [0,1]");
  }
  require_range(cfg.p_range, "p_range");
  if (cfg.p_range.first < 1) throw InvalidInput("generate: p must be positive");

  std::mt19937_64 rng(cfg.seed);
  auto draw = [&rng](Time lo, Time hi) { return std::uniform_int_distribution<Time>(lo, hi)(rng); };

  const Time p = draw(cfg.p_range.first, cfg.p_range.second);
  auto b_range = cfg.b_range.value_or(std::pair<Time, Time>{0, 2 * p});
  b_range.first = std::max<Time>(b_range.first, 0);
  b_range.second = std::min<Time>(b_range.second, 2 * p);
  require_range(b_range, "b_range");

  const int n = cfg.n;
  const int n_long =
      static_cast<int>(std::lround(cfg.long_job_fraction * static_cast<double>(n)));
  const std::pair<Time, Time> long_range{std::max(b_range.first, p + 1), b_range.second};
  const std::pair<Time, Time> short_range{b_range.first, std::min(b_range.second, p)};
  if (n_long > 0 && long_range.first > long_range.second) {
    throw InvalidInput("generate: long jobs requested but b_range has no value above p");
  }
  if (n - n_long > 0 && short_range.first > short_range.second) {
    throw InvalidInput("generate: short jobs required but b_range has no value <= p");
  }

  std::vector<Time> b(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    b[static_cast<std::size_t>(k)] = k < n_long ? draw(long_range.first, long_range.second)
                                                : draw(short_range.first, short_range.second);
  }

  const Time max_b = n == 0 ? 0 : *std::max_element(b.begin(), b.end());
  const auto d_range =
      cfg.d_range.value_or(std::pair<Time, Time>{2 * p, std::max<Time>(2 * p, (3 * p + max_b) * n)});
  require_range(d_range, "d_range");
  std::vector<Time> d(static_cast<std::size_t>(n));
  for (auto& v : d) v = draw(d_range.first, d_range.second);
  std::sort(d.begin(), d.end());

  switch (cfg.cls) {
    case GenClass::Agreeable: std::sort(b.begin(), b.end()); break;
    case GenClass::Disagreeable: std::sort(b.begin(), b.end(), std::greater<>()); break;
    case GenClass::General: std::shuffle(b.begin(), b.end(), rng); break;
  }

  std::vector<RawJob> raw;
  raw.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    raw.push_back(RawJob{k + 1, b[static_cast<std::size_t>(k)], d[static_cast<std::size_t>(k)]});
  }
  return Instance(p, std::move(raw));
}

}  // namespace ctsched
