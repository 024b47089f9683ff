#include "ctsched/disagreeable.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>

namespace ctsched::disagreeable {

namespace {

// The jobs still to be scheduled, in EDD order; positions are 1-based.
struct Rest {
  const Instance& inst;
  std::vector<JobId> ids;

  int n() const { return static_cast<int>(ids.size()); }
  JobId job(int pos) const { return ids[static_cast<std::size_t>(pos - 1)]; }
  Time b(int pos) const { return inst.b(job(pos)); }
  Time d(int pos) const { return inst.d(job(pos)); }

  void remove(const Sequence& seq) {
    std::erase_if(ids, [&](JobId j) {
      return std::any_of(seq.begin(), seq.end(), [j](const Element& e) { return e.contains(j); });
    });
  }
};

Rest whole(const Instance& inst) {
  Rest r{inst, {}};
  for (JobId j = 1; j <= inst.size(); ++j) r.ids.push_back(j);
  return r;
}

Time half_sum(const Rest& r, bool smallest) {
  std::vector<Time> b;
  for (int pos = 1; pos <= r.n(); ++pos) b.push_back(r.b(pos));
  std::sort(b.begin(), b.end());
  if (!smallest) std::reverse(b.begin(), b.end());
  const int m = r.n() / 2;
  Time s = 3 * r.inst.p() * m;
  for (int k = 0; k < m; ++k) s += b[static_cast<std::size_t>(k)];
  return s;
}

std::optional<int> pivotal_k_in(Time C, Time L, const Rest& r) {
  const int n = r.n();
  for (int k = n - 1; k >= 0; --k) {
    if (C - r.d(n - k) <= L) return k;
  }
  return std::nullopt;
}

std::optional<int> pivotal_i_in(Time C, Time L, int k_star, const Rest& r) {
  const int n = r.n();
  const Time p = r.inst.p();
  for (int i = n - 1; i > k_star; --i) {
    // Completion of n-i as first member of the pair that n-k* closes at C.
    const Time completion = C - (3 * p + r.b(n - k_star)) + 2 * p + r.b(n - i);
    if (completion - r.d(n - i) <= L) return i;
  }
  return std::nullopt;
}

void check_end(const Sequence& end, int beta, int k, int i, const Rest& r) {
  const int n = r.n();
  auto fail = [&](const std::string& what) {
    throw std::logic_error("trim end " + to_string(end) + " (k*=" + std::to_string(k) +
                           ", i*=" + std::to_string(i) + ", beta=" + std::to_string(beta) +
                           "): " + what);
  };
  if (static_cast<int>(end.size()) != beta + 1) fail("wrong length");
  std::vector<JobId> seconds;
  for (int t = 0; t <= beta; ++t) {
    if (end[static_cast<std::size_t>(t)].first() != r.job(n - i + t)) fail("first members");
    seconds.push_back(end[static_cast<std::size_t>(t)].second());
  }
  auto pos_of = [&](JobId j) {
    return static_cast<int>(std::find(r.ids.begin(), r.ids.end(), j) - r.ids.begin()) + 1;
  };
  std::vector<int> pos;
  for (JobId j : seconds) pos.push_back(pos_of(j));
  const bool regime_one = beta + 1 >= i - k;
  const std::size_t descending_upto = regime_one ? pos.size() : pos.size() - 1;
  for (std::size_t t = 1; t < descending_upto; ++t) {
    if (pos[t] >= pos[t - 1]) fail("seconds not descending");
  }
  if (!regime_one && pos.back() != n - k) fail("last second is not n-k*");
  std::vector<int> got = pos;
  std::vector<int> want;
  if (2 * beta + 1 >= i - k) {
    for (int v = n - i + beta + 1; v <= n - i + 2 * beta + 1; ++v) want.push_back(v);
  } else {
    got.pop_back();
    for (int v = n - i + beta + 1; v <= n - i + 2 * beta; ++v) want.push_back(v);
  }
  std::sort(got.begin(), got.end());
  if (got != want) fail("second-member set");
}

Trim build_trim_in(int alpha, int beta, int k, int i, const Rest& r) {
  const int n = r.n();
  if (alpha < 0 || beta < 0 || alpha + 2 * beta + 1 != i || i + alpha > n - 1 || i <= k) {
    throw std::invalid_argument("build_trim: parameters outside the trim range");
  }
  Trim t;
  t.alpha = alpha;
  t.beta = beta;
  if (beta + 1 >= i - k) {
    for (int s = 0; s < alpha; ++s) {
      t.pairs.push_back(Element::pair(r.job(n - i - alpha + s), r.job(n - s)));
    }
    for (int s = 0; s <= beta; ++s) {
      t.pairs.push_back(Element::pair(r.job(n - i + s), r.job(n - alpha - s)));
    }
  } else {
    std::vector<int> y;
    for (int v = n; v >= n - i + beta + 1; --v) {
      if (v != n - k) y.push_back(v);
    }
    y.push_back(n - k);
    for (int s = 0; s < alpha; ++s) {
      t.pairs.push_back(Element::pair(r.job(n - i - alpha + s), r.job(y[static_cast<std::size_t>(s)])));
    }
    for (int s = 0; s <= beta; ++s) {
      t.pairs.push_back(
          Element::pair(r.job(n - i + s), r.job(y[static_cast<std::size_t>(alpha + s)])));
    }
  }
  t.span = sequence_span(t.pairs, r.inst);
  check_end(t.end(), beta, k, i, r);
  return t;
}

std::optional<Trim> optimal_trim_in(Time C, Time L, int k, int i, const Rest& r) {
  const int top = std::min(i - 1, r.n() - 1 - i);
  for (int alpha = top; alpha >= 0; --alpha) {
    if ((i - alpha - 1) % 2 != 0) continue;
    Trim t = build_trim_in(alpha, (i - alpha - 1) / 2, k, i, r);
    if (lateness_ending_at(t.pairs, C, r.inst) <= L) return t;
  }
  return std::nullopt;
}

template <class T>
std::string opt_str(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string("none");
}

}  // namespace

Sequence Trim::end() const {
  return Sequence(pairs.end() - (beta + 1), pairs.end());
}

Time Trim::end_span(const Instance& inst) const { return sequence_span(end(), inst); }

std::optional<int> pivotal_k(Time C, Time L, const Instance& inst) {
  return pivotal_k_in(C, L, whole(inst));
}

std::optional<int> pivotal_i(Time C, Time L, int k_star, const Instance& inst) {
  return pivotal_i_in(C, L, k_star, whole(inst));
}

Trim build_trim(int alpha, int beta, int k_star, int i_star, const Instance& inst) {
  return build_trim_in(alpha, beta, k_star, i_star, whole(inst));
}

Time lateness_ending_at(const Sequence& pairs, Time C, const Instance& inst) {
  const Time p = inst.p();
  Time end = C;
  Time worst = std::numeric_limits<Time>::min();
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
    const JobId last = it->last();
    worst = std::max(worst, end - inst.d(last));
    const Time span = element_span(*it, inst);
    if (it->is_pair()) {
      const JobId f = it->first();
      worst = std::max(worst, end - span + 2 * p + inst.b(f) - inst.d(f));
    }
    end -= span;
  }
  return worst;
}

std::optional<Trim> optimal_trim(Time C, Time L, int k_star, int i_star, const Instance& inst) {
  return optimal_trim_in(C, L, k_star, i_star, whole(inst));
}

Time makespan_lower(const Instance& inst) { return half_sum(whole(inst), true); }
Time makespan_upper(const Instance& inst) { return half_sum(whole(inst), false); }

std::optional<Sequence> trim_test(Time C, Time L, const Instance& inst, std::ostream* trace) {
  if (inst.size() % 2 != 0) throw InvalidInput("trim_test: odd number of jobs");
  if (!long_job_set(inst).empty()) throw InvalidInput("trim_test: long jobs present");
  const Time p = inst.p();
  const Time c_max = C;
  Rest r = whole(inst);
  std::vector<Sequence> blocks;  // back to front

  auto log = [&](const std::optional<int>& k, const std::optional<int>& i,
                 const std::optional<int>& a, const std::optional<int>& b) {
    if (trace) {
      *trace << "C=" << C << " L=" << L << " k*=" << opt_str(k) << " i*=" << opt_str(i)
             << " alpha=" << opt_str(a) << " beta=" << opt_str(b) << '\n';
    }
  };

  while (r.n() > 0) {
    if (C < half_sum(r, true)) return std::nullopt;
    const int n = r.n();
    const auto k = pivotal_k_in(C, L, r);
    if (!k) {
      log(k, std::nullopt, std::nullopt, std::nullopt);
      return std::nullopt;
    }
    if (*k == n - 1) {
      // Every remaining job meets L as long as it completes by C; the
      // shortest arrangement closes each pair with one of the n/2 last jobs.
      log(k, std::nullopt, std::nullopt, std::nullopt);
      Sequence block;
      for (int t = 1; t <= n / 2; ++t) block.push_back(Element::pair(r.job(t), r.job(n + 1 - t)));
      blocks.push_back(std::move(block));
      break;
    }
    const auto i = pivotal_i_in(C, L, *k, r);
    if (!i) {
      log(k, i, std::nullopt, std::nullopt);
      if (*k == 0) return std::nullopt;
      Sequence block{Element::pair(r.job(n - *k), r.job(n - *k + 1))};
      C -= 3 * p + r.b(n - *k + 1);
      r.remove(block);
      blocks.push_back(std::move(block));
      continue;
    }
    const auto trim = optimal_trim_in(C, L, *k, *i, r);
    log(k, i, trim ? std::optional<int>(trim->alpha) : std::nullopt,
        trim ? std::optional<int>(trim->beta) : std::nullopt);
    if (!trim) return std::nullopt;
    Sequence block = trim->end();
    C -= sequence_span(block, inst);
    r.remove(block);
    blocks.push_back(std::move(block));
  }
  if (C < 0) return std::nullopt;

  Sequence seq;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) seq.insert(seq.end(), it->begin(), it->end());
  // The loop's lateness reasoning is checked on the assembled sequence.
  if (sequence_span(seq, inst) > c_max) return std::nullopt;
  if (lateness_report(schedule_right_justified(seq, inst, c_max), inst).lmax > L) {
    return std::nullopt;
  }
  return seq;
}

namespace {

// Long jobs open the schedule: singletons 1..h-x, then x pairs each closed
// by one of the last x long jobs. Prefixes that already exceed L are dropped.
struct Prefix {
  Sequence elements;  // internal ids
  Time end = 0;
  std::vector<JobId> rest;  // short jobs left, EDD order
};

std::vector<Prefix> long_prefixes(const Instance& internal, Time L) {
  const int n = internal.size();
  int h = 0;
  while (h < n && internal.is_long(h + 1)) ++h;
  std::vector<Prefix> out;
  for (int x = 0; x <= std::min(h, n - h); ++x) {
    Prefix pre;
    for (JobId j = 1; j <= h - x; ++j) pre.elements.push_back(Element::singleton(j));
    for (int k = 1; k <= x; ++k) pre.elements.push_back(Element::pair(h + k, h - x + k));
    bool ok = true;
    for (const auto& e : pre.elements) {
      if (element_lateness(e, pre.end, internal) > L) {
        ok = false;
        break;
      }
      pre.end += element_span(e, internal);
    }
    if (!ok) continue;
    for (JobId j = h + x + 1; j <= n; ++j) pre.rest.push_back(j);
    out.push_back(std::move(pre));
  }
  return out;
}

Sequence join(const Prefix& pre, const Sequence& tail, const Instance& internal) {
  Sequence all = pre.elements;
  all.insert(all.end(), tail.begin(), tail.end());
  return lift_sequence(all, internal);
}

// Depth-first search over the short remainder in time order. With EDD ids,
// b nonincreasing and ties broken by b, the first member of the next pair is
// always the smallest unplaced job, and among second members with equal b
// the smallest id dominates. At most one job, chosen when it becomes the
// smallest, is held back as the trailing singleton.
class ForwardSearch {
public:
  ForwardSearch(const Instance& inst, Time L, std::vector<JobId> jobs, std::int64_t& budget)
      : inst_(inst), L_(L), jobs_(std::move(jobs)), budget_(budget),
        used_(jobs_.size(), 0), left_(static_cast<int>(jobs_.size())) {}

  bool run(Time t) { return visit(t); }
  bool exhausted() const { return exhausted_; }

  Sequence tail() const {
    Sequence seq;
    for (auto [f, s] : path_) seq.push_back(Element::pair(jobs_[f], jobs_[s]));
    if (single_ >= 0) seq.push_back(Element::singleton(jobs_[static_cast<std::size_t>(single_)]));
    return seq;
  }

private:
  Time b(std::size_t k) const { return inst_.b(jobs_[k]); }
  Time due(std::size_t k) const { return inst_.d(jobs_[k]) + L_; }

  // Necessary conditions: the m earliest-due unplaced jobs cannot all be
  // done before 3p per two jobs (2p for an odd one out), and the held-back
  // singleton must still fit after the remaining pairs.
  bool hopeless(Time t) const {
    const Time p = inst_.p();
    int m = 0;
    Time tail_b = 0;
    int counted = 0;
    for (std::size_t k = 0; k < jobs_.size(); ++k) {
      if (used_[k]) continue;
      ++m;
      if (t + 3 * p * (m / 2) + (m % 2 ? 2 * p : 0) > due(k)) return true;
    }
    for (std::size_t k = jobs_.size(); k-- > 0 && counted < left_ / 2;) {
      if (used_[k]) continue;
      tail_b += b(k);
      ++counted;
    }
    const Time pairs_end = t + 3 * p * (left_ / 2) + tail_b;
    if (single_ >= 0) {
      const auto sk = static_cast<std::size_t>(single_);
      if (pairs_end + 2 * p + b(sk) > due(sk)) return true;
    }
    return false;
  }

  std::string key() const {
    std::string k(jobs_.size() / 8 + 1 + sizeof(int), '\0');
    for (std::size_t i = 0; i < jobs_.size(); ++i) {
      if (used_[i]) k[i / 8] = static_cast<char>(k[i / 8] | (1 << (i % 8)));
    }
    std::memcpy(k.data() + jobs_.size() / 8 + 1, &single_, sizeof(int));
    return k;
  }

  bool visit(Time t) {
    const Time p = inst_.p();
    if (left_ == 0) {
      if (single_ < 0) return true;
      const auto sk = static_cast<std::size_t>(single_);
      return t + 2 * p + b(sk) <= due(sk);
    }
    if (exhausted_ || budget_ <= 0) {
      exhausted_ = true;
      return false;
    }
    --budget_;
    if (hopeless(t)) return false;
    const std::string k = key();
    if (auto it = failed_.find(k); it != failed_.end() && t >= it->second) return false;

    std::size_t f = 0;
    while (used_[f]) ++f;
    bool ok = false;
    if (t + 2 * p + b(f) <= due(f)) {
      used_[f] = 1;
      --left_;
      std::optional<Time> tried_b;
      for (std::size_t s = f + 1; s < jobs_.size() && !ok; ++s) {
        if (used_[s]) continue;
        const Time end = t + 3 * p + b(s);
        if (end > due(s) || tried_b == b(s)) continue;
        tried_b = b(s);
        used_[s] = 1;
        --left_;
        path_.emplace_back(f, s);
        ok = visit(end);
        if (!ok) path_.pop_back();
        used_[s] = 0;
        ++left_;
      }
      used_[f] = 0;
      ++left_;
    }
    if (!ok && single_ < 0 && left_ % 2 == 1) {
      single_ = static_cast<int>(f);
      used_[f] = 1;
      --left_;
      ok = visit(t);
      used_[f] = 0;
      ++left_;
      if (!ok) single_ = -1;
    }
    if (!ok && !exhausted_) {
      auto [it, fresh] = failed_.try_emplace(k, t);
      if (!fresh) it->second = std::min(it->second, t);
    }
    return ok;
  }

  const Instance& inst_;
  Time L_;
  std::vector<JobId> jobs_;
  std::int64_t& budget_;
  std::vector<char> used_;
  int left_;
  int single_ = -1;
  bool exhausted_ = false;
  std::vector<std::pair<std::size_t, std::size_t>> path_;
  // Unplaced set -> earliest start already shown to fail.
  std::unordered_map<std::string, Time> failed_;
};

// Searches the makespan of an even short-job set for a sequence meeting L.
// `c_cap` bounds the makespan from above (a trailing singleton's deadline).
std::optional<Sequence> scan_makespan(const Instance& sub, Time L, Time c_cap, const Options& opt) {
  if (sub.empty()) return Sequence{};
  const Time lo = makespan_lower(sub);
  const Time hi = std::min(makespan_upper(sub), c_cap);
  if (lo > hi) return std::nullopt;
  if (!opt.fast_cmax_bisect) {
    for (Time c = lo; c <= hi; ++c) {
      if (auto s = trim_test(c, L, sub, opt.trace)) return s;
    }
    return std::nullopt;
  }
  auto best = trim_test(hi, L, sub, opt.trace);
  if (!best) return std::nullopt;
  Time a = lo;
  Time b = hi;
  while (a < b) {
    const Time mid = a + (b - a) / 2;
    if (auto s = trim_test(mid, L, sub, opt.trace)) {
      best = std::move(s);
      b = mid;
    } else {
      a = mid + 1;
    }
  }
  return best;
}

}  // namespace

std::optional<Sequence> feasible_within(const Instance& inst, Time L, const Options& opt) {
  const Instance internal = tie_normalized(inst, false);
  const Time p = internal.p();
  for (const Prefix& pre : long_prefixes(internal, L)) {
    if (pre.rest.size() % 2 == 0) {
      const Instance sub = sub_instance(internal, pre.rest, pre.end);
      if (auto s = scan_makespan(sub, L, std::numeric_limits<Time>::max(), opt)) {
        return join(pre, lift_sequence(*s, sub), internal);
      }
      continue;
    }
    for (JobId last : pre.rest) {
      std::vector<JobId> even;
      for (JobId j : pre.rest) {
        if (j != last) even.push_back(j);
      }
      // The singleton completes at end + C' + 2p + b_last.
      const Time cap = L + internal.d(last) - 2 * p - internal.b(last) - pre.end;
      if (cap < 0) continue;
      const Instance sub = sub_instance(internal, even, pre.end);
      if (auto s = scan_makespan(sub, L, cap, opt)) {
        Sequence tail = lift_sequence(*s, sub);
        tail.push_back(Element::singleton(last));
        return join(pre, tail, internal);
      }
    }
  }
  return std::nullopt;
}

SearchResult search_within(const Instance& inst, Time L, std::int64_t& budget) {
  const Instance internal = tie_normalized(inst, false);
  bool exhausted = false;
  for (const Prefix& pre : long_prefixes(internal, L)) {
    ForwardSearch search(internal, L, pre.rest, budget);
    if (search.run(pre.end)) return {SearchStatus::Found, join(pre, search.tail(), internal)};
    exhausted = exhausted || search.exhausted();
  }
  return {exhausted ? SearchStatus::OutOfBudget : SearchStatus::Infeasible, {}};
}

namespace {

// Short pairs ascend inside and by first member, and at most one short
// singleton closes the sequence. Job order is (d, b descending, id).
bool ascending_form(const Sequence& seq, const Instance& inst) {
  std::vector<JobId> ids;
  for (JobId j = 1; j <= inst.size(); ++j) ids.push_back(j);
  std::stable_sort(ids.begin(), ids.end(), [&](JobId a, JobId b) {
    return inst.d(a) != inst.d(b) ? inst.d(a) < inst.d(b) : inst.b(a) > inst.b(b);
  });
  std::vector<int> rank(ids.size() + 1);
  for (std::size_t k = 0; k < ids.size(); ++k) rank[static_cast<std::size_t>(ids[k])] = static_cast<int>(k);
  auto r = [&](JobId j) { return rank[static_cast<std::size_t>(j)]; };
  int prev = -1;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const Element& e = seq[k];
    if (e.is_singleton()) {
      if (!inst.is_long(e.first()) && k + 1 != seq.size()) return false;
      continue;
    }
    if (inst.is_long(e.second())) continue;
    if (r(e.first()) > r(e.second()) || r(e.first()) <= prev) return false;
    prev = r(e.first());
  }
  return true;
}

}  // namespace

Solution solve(const Instance& inst, const Options& opt) {
  if (inst.empty()) throw InvalidInput("disagreeable solver: empty instance");
  if (!is_disagreeable(classify(inst))) throw NotApplicable("instance is not disagreeable");
  const Time lower = lmax_lower_bound(inst);
  Sequence best = edd_singletons(inst);
  Time best_l = sequence_lmax(best, inst);

  // Upper bound from the trimming test.
  Time lo = lower;
  Time hi = best_l;
  while (lo < hi) {
    const Time mid = lo + (hi - lo) / 2;
    if (auto s = feasible_within(inst, mid, opt)) {
      const Time l = sequence_lmax(*s, inst);
      if (l < best_l) {
        best = std::move(*s);
        best_l = l;
      }
      hi = std::min(mid, best_l);
    } else {
      lo = mid + 1;
    }
  }

  // The trimming test can reject a feasible L, so the exact search decides
  // every value below the bound.
  Solution sol;
  std::int64_t budget = opt.search_budget;
  lo = lower;
  hi = best_l - 1;
  while (lo <= hi) {
    const Time mid = lo + (hi - lo) / 2;
    SearchResult r = search_within(inst, mid, budget);
    if (r.status == SearchStatus::Found) {
      best = std::move(r.schedule);
      best_l = sequence_lmax(best, inst);
      hi = std::min(mid, best_l) - 1;
    } else {
      if (r.status == SearchStatus::OutOfBudget) sol.proven_optimal = false;
      lo = mid + 1;
    }
  }
  // The trimming test and the baseline may return an optimum outside the
  // ascending pair form; the forward search builds that form directly.
  if (!ascending_form(best, inst)) {
    std::int64_t again = opt.search_budget;
    SearchResult r = search_within(inst, best_l, again);
    if (r.status == SearchStatus::Found && sequence_lmax(r.schedule, inst) <= best_l) {
      best = std::move(r.schedule);
    }
  }
  if (!check_feasibility(schedule_timeline(best, inst), inst).empty()) {
    throw std::logic_error("disagreeable solver: infeasible schedule " + to_string(best));
  }
  sol.schedule = std::move(best);
  sol.lmax = best_l;
  return sol;
}

}  // namespace ctsched::disagreeable
