#include "ctsched/agreeable.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>

namespace ctsched::agreeable {

namespace {

constexpr Time kInf = std::numeric_limits<Time>::max() / 4;

}  // namespace

PairGraph::PairGraph(const Instance& inst) : caller_(inst), internal_(tie_normalized(inst, true)) {
  if (!is_agreeable(classify(inst))) throw NotApplicable("instance is not agreeable");
  const int nn = n();
  const auto dim = static_cast<std::size_t>(nn);
  index_.assign(dim * dim * (dim + 1), -1);
  layers_.assign(dim + 1, {});
  const Time p = internal_.p();
  tail_entry_ = nn;
  for (JobId x = nn; x >= 1 && internal_.is_long(x); --x) tail_entry_ = x;
  for (int c = nn; c >= 1; --c) {
    for (JobId x = 1; x <= nn; ++x) {
      if (c >= 2 && internal_.b(x) <= p) {
        for (JobId y = 1; y <= nn; ++y) {
          if (y != x) add_node(Element::pair(x, y), c);
        }
      }
      add_node(Element::singleton(x), c);
    }
  }
  for (std::size_t idx : layers_[dim]) {
    const auto& e = nodes_[idx].element;
    const bool tail_start = e.is_pair() && internal_.is_long(e.second()) && e.second() == tail_entry_;
    const bool short_start = e.contains(1) && !(e.is_pair() && internal_.is_long(e.second()));
    if (tail_start || short_start) initial_.push_back(idx);
  }
}

void PairGraph::add_node(const Element& e, int c) {
  const auto idx = nodes_.size();
  nodes_.push_back(GraphNode{e, c, element_lateness(e, 0, internal_)});
  span_.push_back(element_span(e, internal_));
  const auto dim = static_cast<std::size_t>(n());
  const auto y = e.is_pair() ? e.second() : e.first();
  index_[((static_cast<std::size_t>(e.first()) - 1) * dim + static_cast<std::size_t>(y) - 1) *
             (dim + 1) +
         static_cast<std::size_t>(c)] = static_cast<std::int32_t>(idx);
  layers_[static_cast<std::size_t>(c)].push_back(idx);
}

std::optional<std::size_t> PairGraph::find(JobId x, JobId y, int c) const {
  const int nn = n();
  if (x < 1 || y < 1 || x > nn || y > nn || c < 1 || c > nn) return std::nullopt;
  const auto dim = static_cast<std::size_t>(nn);
  const auto v = index_[((static_cast<std::size_t>(x) - 1) * dim + static_cast<std::size_t>(y) - 1) *
                            (dim + 1) +
                        static_cast<std::size_t>(c)];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

bool PairGraph::precedes(JobId a, JobId b) const {
  const Time ka = internal_.d(a) - internal_.b(a);
  const Time kb = internal_.d(b) - internal_.b(b);
  return ka != kb ? ka < kb : a < b;
}

bool PairGraph::is_final(std::size_t idx) const {
  const auto& u = nodes_[idx];
  return u.element.contains(n()) && u.c == u.element.job_count();
}

std::size_t PairGraph::arc_count() const {
  std::size_t arcs = initial_.size();
  for (std::size_t idx = 0; idx < nodes_.size(); ++idx) {
    for_each_successor(idx, [&](std::size_t) { ++arcs; });
  }
  return arcs;
}

void PairGraph::dump(std::ostream& os) const {
  auto label = [&](JobId x) { return caller_.label(internal_.label(x)); };
  for (std::size_t idx = 0; idx < nodes_.size(); ++idx) {
    const auto& u = nodes_[idx];
    os << "NODE " << idx << " kind=";
    if (u.element.is_pair()) {
      os << "pair:" << label(u.element.first()) << ',' << label(u.element.second());
    } else {
      os << "singleton:" << label(u.element.first());
    }
    os << " c=" << u.c << " rl=" << u.rel_lateness << '\n';
  }
  for (std::size_t idx : initial_) os << "ARC s " << idx << " len=0\n";
  for (std::size_t idx = 0; idx < nodes_.size(); ++idx) {
    for_each_successor(idx, [&](std::size_t v) {
      os << "ARC " << idx << ' ' << v << " len=" << span_[idx] << '\n';
    });
  }
}

Sequence PathCandidate::elements(const PairGraph& g) const {
  Sequence seq;
  seq.reserve(nodes.size());
  for (std::size_t idx : nodes) seq.push_back(g.node(idx).element);
  return seq;
}

PairGraph build_graph(const Instance& inst) { return PairGraph(inst); }

namespace {

struct Pruned {
  std::vector<Time> dist;          // shortest prefix from s; kInf if unreachable
  std::vector<std::size_t> pred;   // node_count() marks the source
  std::vector<char> alive;
};

// Arcs strictly decrease c, so descending layers is a topological order and
// every dist is final before its node is tested against lambda.
Pruned prune(const PairGraph& graph, Time lambda) {
  const auto count = graph.node_count();
  Pruned r{std::vector<Time>(count, kInf), std::vector<std::size_t>(count, count),
           std::vector<char>(count, 0)};
  for (std::size_t idx : graph.initial_nodes()) r.dist[idx] = 0;
  const auto& layers = graph.layers();
  for (std::size_t c = layers.size(); c-- > 1;) {
    for (std::size_t u : layers[c]) {
      const Time du = r.dist[u];
      if (du == kInf || du + graph.node(u).rel_lateness > lambda) continue;
      r.alive[u] = 1;
      const Time len = graph.arc_length(u);
      graph.for_each_successor(u, [&](std::size_t v) {
        if (du + len < r.dist[v]) {
          r.dist[v] = du + len;
          r.pred[v] = u;
        }
      });
    }
  }
  return r;
}

}  // namespace

std::optional<PathCandidate> feasibility_test(const PairGraph& graph, Time lambda) {
  const auto count = graph.node_count();
  const Pruned pr = prune(graph, lambda);
  std::size_t best = count;
  Time best_len = kInf;
  for (std::size_t u = 0; u < count; ++u) {
    if (!pr.alive[u] || !graph.is_final(u)) continue;
    const Time len = pr.dist[u] + graph.arc_length(u);
    if (len < best_len) {
      best_len = len;
      best = u;
    }
  }
  if (best == count) return std::nullopt;

  PathCandidate path;
  path.lambda = lambda;
  path.length = best_len;
  for (std::size_t v = best; v != count; v = pr.pred[v]) {
    path.nodes.push_back(v);
    path.prefix.push_back(pr.dist[v]);
  }
  std::reverse(path.nodes.begin(), path.nodes.end());
  std::reverse(path.prefix.begin(), path.prefix.end());
  return path;
}

namespace {

// Depth-first search for a path through surviving nodes that places every
// job exactly once. A failed (node, placed set) is remembered with the
// earliest start that failed; any later start fails as well.
class CoverSearch {
public:
  CoverSearch(const PairGraph& g, const Pruned& pr, Time lambda)
      : g_(g), pr_(pr), lambda_(lambda), words_((static_cast<std::size_t>(g.n()) + 64) / 64),
        used_(words_, 0) {
    const Instance& inst = g.internal();
    for (JobId z = 1; z <= g.n(); ++z) by_key_.push_back(z);
    std::stable_sort(by_key_.begin(), by_key_.end(), [&](JobId a, JobId b) {
      return inst.d(a) - inst.b(a) < inst.d(b) - inst.b(b);
    });
  }

  std::optional<Sequence> run() {
    std::vector<std::size_t> starts(g_.initial_nodes().begin(), g_.initial_nodes().end());
    order_by_dist(starts);
    for (std::size_t u : starts) {
      if (visit(u, 0)) return path_;
    }
    return std::nullopt;
  }

private:
  bool test(JobId j) const {
    const auto k = static_cast<std::size_t>(j);
    return (used_[k / 64] >> (k % 64) & 1U) != 0;
  }
  void flip(JobId j) {
    const auto k = static_cast<std::size_t>(j);
    used_[k / 64] ^= std::uint64_t{1} << (k % 64);
  }

  // Unplaced jobs start at distinct times at least p apart from t onwards,
  // and a job started at s meets lambda only if s <= lambda - 2p - b + d.
  bool remaining_can_start(Time t) const {
    const Instance& inst = g_.internal();
    Time s = t;
    for (JobId z : by_key_) {
      if (test(z)) continue;
      if (s > lambda_ - 2 * inst.p() - inst.b(z) + inst.d(z)) return false;
      s += inst.p();
    }
    return true;
  }

  void order_by_dist(std::vector<std::size_t>& v) const {
    std::sort(v.begin(), v.end(), [&](std::size_t a, std::size_t b) {
      return pr_.dist[a] != pr_.dist[b] ? pr_.dist[a] < pr_.dist[b] : a < b;
    });
  }

  bool visit(std::size_t u, Time t) {
    if (!pr_.alive[u]) return false;
    const auto& node = g_.node(u);
    const Element& e = node.element;
    if (test(e.first()) || (e.is_pair() && test(e.second()))) return false;
    if (t + node.rel_lateness > lambda_) return false;

    flip(e.first());
    if (e.is_pair()) flip(e.second());
    if (!remaining_can_start(t + g_.arc_length(u))) {
      flip(e.first());
      if (e.is_pair()) flip(e.second());
      return false;
    }
    bool found = false;
    auto key = std::make_pair(u, used_);
    auto it = failed_.find(key);
    if (it == failed_.end() || t < it->second) {
      path_.push_back(e);
      if (g_.is_final(u)) {
        found = true;
      } else {
        std::vector<std::size_t> next;
        g_.for_each_successor(u, [&](std::size_t v) { next.push_back(v); });
        order_by_dist(next);
        const Time t2 = t + g_.arc_length(u);
        for (std::size_t v : next) {
          if (visit(v, t2)) {
            found = true;
            break;
          }
        }
      }
      if (!found) {
        path_.pop_back();
        failed_[std::move(key)] = t;
      }
    }
    flip(e.first());
    if (e.is_pair()) flip(e.second());
    return found;
  }

  const PairGraph& g_;
  const Pruned& pr_;
  Time lambda_;
  std::size_t words_;
  std::vector<std::uint64_t> used_;
  Sequence path_;
  std::vector<JobId> by_key_;  // d - b ascending
  std::map<std::pair<std::size_t, std::vector<std::uint64_t>>, Time> failed_;
};

}  // namespace

std::optional<Sequence> covering_path(const PairGraph& graph, Time lambda) {
  const Pruned pr = prune(graph, lambda);
  auto seq = CoverSearch(graph, pr, lambda).run();
  if (!seq) return std::nullopt;
  return lift_sequence(*seq, graph.internal());
}

namespace {

struct Occurrence {
  std::size_t pos;
  bool as_first;
};

// Positions of each job in a sequence; index JobId.
std::vector<std::vector<Occurrence>> occurrences(const Sequence& seq, int n) {
  std::vector<std::vector<Occurrence>> occ(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    occ[static_cast<std::size_t>(seq[k].first())].push_back({k, true});
    if (seq[k].is_pair()) occ[static_cast<std::size_t>(seq[k].second())].push_back({k, false});
  }
  return occ;
}

bool within_lambda(const Sequence& seq, const std::vector<Time>& starts, const Instance& inst,
                   Time lambda) {
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (seq[k].is_pair() && inst.b(seq[k].first()) > inst.p()) return false;
    if (element_lateness(seq[k], starts[k], inst) > lambda) return false;
  }
  return true;
}

// One rewrite step of the double/miss exchange: the double x sits at position
// b as the larger-due-date member and at a > b as the smaller one; the miss
// replaces a first member and, when it lands before b, pushes the first
// members of the interlaced run one pair later. Returns false when the
// configuration falls outside that pattern or the result breaks lambda.
bool exchange_step(Sequence& seq, const std::vector<Time>& starts, const Instance& inst,
                   Time lambda) {
  const int n = inst.size();
  const auto occ = occurrences(seq, n);
  JobId dbl = 0;
  for (JobId x = 1; x <= n; ++x) {
    if (occ[static_cast<std::size_t>(x)].size() > 1) {
      dbl = x;
      break;
    }
  }
  if (dbl == 0) return true;
  std::vector<JobId> misses;
  for (JobId x = 1; x <= n; ++x) {
    if (occ[static_cast<std::size_t>(x)].empty()) misses.push_back(x);
  }
  if (misses.empty()) return false;

  const auto& o = occ[static_cast<std::size_t>(dbl)];
  if (o.size() != 2) return false;
  auto lo_member = [&](std::size_t k) {
    return seq[k].is_pair() ? std::min(seq[k].first(), seq[k].second()) : seq[k].first();
  };
  auto hi_member = [&](std::size_t k) {
    return seq[k].is_pair() ? std::max(seq[k].first(), seq[k].second()) : seq[k].first();
  };
  const std::size_t b = o[0].pos;
  const std::size_t a = o[1].pos;
  if (!(b < a) || hi_member(b) != dbl || lo_member(a) != dbl) return false;
  if (!seq[b].is_pair() || seq[b].first() != dbl) return false;

  // Largest position whose smaller member does not exceed some miss.
  std::size_t x = seq.size();
  JobId miss = 0;
  for (std::size_t k = seq.size(); k-- > 0;) {
    for (JobId m : misses) {
      if (m >= lo_member(k)) {
        x = k;
        miss = m;
        break;
      }
    }
    if (miss != 0) break;
  }
  if (miss == 0) return false;

  Sequence next = seq;
  if (x <= b) {
    for (std::size_t k = x; k <= b; ++k) {
      if (!seq[k].is_pair() || seq[k].first() != hi_member(k)) return false;
    }
    JobId carry = miss;
    for (std::size_t k = x; k <= b; ++k) {
      next[k] = Element::pair(carry, seq[k].second());
      carry = seq[k].first();
    }
  } else {
    next[b] = Element::pair(miss, seq[b].second());
  }
  if (!within_lambda(next, starts, inst, lambda)) return false;
  seq = std::move(next);
  return true;
}

// General form of the same exchange: keep every block's closing job and
// reassign first members of pairs. A job z fits a pair starting at t iff
// b_z <= p and t + 2p + b_z - d_z <= lambda; slots and jobs are matched
// greedily by deadline.
std::optional<Sequence> reassign_first_members(const Sequence& seq,
                                               const std::vector<Time>& starts,
                                               const Instance& inst, Time lambda) {
  const int n = inst.size();
  std::vector<char> spine(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::size_t> slots;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    auto& s = spine[static_cast<std::size_t>(seq[k].last())];
    if (s) return std::nullopt;
    s = 1;
    if (seq[k].is_pair()) slots.push_back(k);
  }
  std::vector<JobId> free_jobs;
  for (JobId z = 1; z <= n; ++z) {
    if (!spine[static_cast<std::size_t>(z)]) free_jobs.push_back(z);
  }
  if (free_jobs.size() != slots.size()) return std::nullopt;
  const Time p = inst.p();
  auto deadline = [&](JobId z) { return lambda - 2 * p - inst.b(z) + inst.d(z); };
  std::sort(free_jobs.begin(), free_jobs.end(), [&](JobId u, JobId v) {
    return deadline(u) != deadline(v) ? deadline(u) < deadline(v) : u < v;
  });
  // Slots are already in time order.
  Sequence out = seq;
  for (std::size_t r = 0; r < slots.size(); ++r) {
    const JobId z = free_jobs[r];
    const std::size_t k = slots[r];
    if (inst.b(z) > p || starts[k] > deadline(z)) return std::nullopt;
    out[k] = Element::pair(z, seq[k].second());
  }
  return out;
}

bool covers_once(const Sequence& seq, int n) {
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : seq) {
    if (++seen[static_cast<std::size_t>(e.first())] > 1) return false;
    if (e.is_pair() && ++seen[static_cast<std::size_t>(e.second())] > 1) return false;
  }
  return true;
}

}  // namespace

Sequence repair_semi_feasible(const PathCandidate& path, const PairGraph& graph) {
  const Instance& inst = graph.internal();
  Sequence seq = path.elements(graph);
  const int n = inst.size();

  for (int guard = 0; !covers_once(seq, n); ++guard) {
    if (guard > n || !exchange_step(seq, path.prefix, inst, path.lambda)) {
      auto general = reassign_first_members(path.elements(graph), path.prefix, inst, path.lambda);
      if (!general) {
        throw RepairFailure("no makespan-preserving repair for path " +
                            to_string(path.elements(graph)));
      }
      seq = std::move(*general);
      break;
    }
  }
  if (!covers_once(seq, n)) throw RepairFailure("repair left a double in " + to_string(seq));
  return lift_sequence(seq, inst);
}

std::optional<Sequence> schedule_within(const PairGraph& graph, Time lambda) {
  auto path = feasibility_test(graph, lambda);
  if (!path) return std::nullopt;
  try {
    return repair_semi_feasible(*path, graph);
  } catch (const RepairFailure&) {
    return covering_path(graph, lambda);
  }
}

namespace {

// Consecutive pairs have nondecreasing smaller and larger due dates.
bool pairs_ascend(const Sequence& seq, const Instance& inst) {
  auto lo = [&](const Element& e) { return std::min(inst.d(e.first()), inst.d(e.second())); };
  auto hi = [&](const Element& e) { return std::max(inst.d(e.first()), inst.d(e.second())); };
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    const Element& a = seq[k];
    const Element& c = seq[k + 1];
    if (a.is_pair() && c.is_pair() && (lo(a) > lo(c) || hi(a) > hi(c))) return false;
  }
  return true;
}

}  // namespace

Solution solve(const Instance& inst) {
  if (inst.empty()) throw InvalidInput("agreeable solver: empty instance");
  const PairGraph graph(inst);
  Time lo = lmax_lower_bound(inst);
  Time hi = sequence_lmax(edd_singletons(inst), inst);
  std::optional<Sequence> best;
  while (lo < hi) {
    const Time mid = lo + (hi - lo) / 2;
    if (auto seq = schedule_within(graph, mid)) {
      hi = mid;
      best = std::move(seq);
    } else {
      lo = mid + 1;
    }
  }
  if (!best) best = schedule_within(graph, lo);
  if (!best) throw std::logic_error("agreeable solver: upper bound not reachable in graph");
  // Repaired paths can leave the ascending pair order; without long jobs a
  // covering path of the pruned graph restores it at the same lambda.
  if (long_job_set(inst).empty() && !pairs_ascend(*best, inst)) {
    if (auto cover = covering_path(graph, lo)) {
      if (pairs_ascend(*cover, inst)) best = std::move(cover);
    }
  }
  Solution sol;
  sol.schedule = std::move(*best);
  sol.lmax = sequence_lmax(sol.schedule, inst);
  if (sol.lmax > lo) throw std::logic_error("agreeable solver: schedule exceeds lambda");
  return sol;
}

}  // namespace ctsched::agreeable
