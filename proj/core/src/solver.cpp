// SPDX-License-Identifier: Apache-2.0
#include "blockset/solver.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "blockset/error.hpp"

namespace blockset {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::exists:
      return "exists";
    case Verdict::not_exists:
      return "not-exists";
    case Verdict::vacuous:
      return "vacuous";
    case Verdict::timeout:
      return "timeout";
  }
  return "not-exists";
}

namespace {

using Clock = std::chrono::steady_clock;
using Local = std::uint32_t;

// Instance restated over local indices 0..U-1 (rank in the sorted universe).
struct Problem {
  std::size_t universe = 0;
  std::vector<std::vector<Local>> traces;
  std::vector<std::vector<Local>> forbidden;
  std::vector<std::vector<Local>> point_traces;
  std::vector<std::vector<Local>> point_forbidden;
};

std::vector<Local> to_local(const IndexSet& universe, const IndexSet& set) {
  std::vector<Local> out;
  out.reserve(set.size());
  for (auto p : set) {
    auto it = std::lower_bound(universe.begin(), universe.end(), p);
    out.push_back(static_cast<Local>(it - universe.begin()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Duplicate traces and traces containing another trace do not change the
// solution set; dropping them shrinks the branching and bound work.
std::vector<std::vector<Local>> reduce_family(std::vector<std::vector<Local>> traces) {
  std::sort(traces.begin(), traces.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
  if (traces.size() > 20000) return traces;
  std::vector<std::vector<Local>> kept;
  for (auto& t : traces) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const std::vector<Local>& k) {
      return k.size() < t.size() && std::includes(t.begin(), t.end(), k.begin(), k.end());
    });
    if (!dominated) kept.push_back(std::move(t));
  }
  return kept;
}

Problem localize(const BlockingInstance& inst, bool nontrivial) {
  Problem pb;
  pb.universe = inst.universe.size();
  std::vector<std::vector<Local>> traces;
  for (const auto& f : inst.family) traces.push_back(to_local(inst.universe, f));
  pb.traces = reduce_family(std::move(traces));
  if (nontrivial) {
    for (const auto& g : inst.forbidden) pb.forbidden.push_back(to_local(inst.universe, g));
  }
  pb.point_traces.resize(pb.universe);
  pb.point_forbidden.resize(pb.universe);
  for (std::size_t i = 0; i < pb.traces.size(); ++i) {
    for (auto p : pb.traces[i]) pb.point_traces[p].push_back(static_cast<Local>(i));
  }
  for (std::size_t i = 0; i < pb.forbidden.size(); ++i) {
    for (auto p : pb.forbidden[i]) pb.point_forbidden[p].push_back(static_cast<Local>(i));
  }
  return pb;
}

// Shared stop flag plus node and wall-clock budgets.
class Control {
 public:
  explicit Control(const SearchOptions& o) : node_budget_(o.node_budget) {
    if (o.time_budget) deadline_ = Clock::now() + *o.time_budget;
  }

  bool stopped() const noexcept { return stop_.load(std::memory_order_relaxed); }

  // Called once per node by each searcher with its local counter.
  bool tick(std::uint64_t& local) {
    if (++local % 1024 != 0) return stopped();
    const auto total = nodes_.fetch_add(1024, std::memory_order_relaxed) + 1024;
    if ((node_budget_ && total >= *node_budget_) || (deadline_ && Clock::now() >= *deadline_)) {
      stop_.store(true, std::memory_order_relaxed);
    }
    return stopped();
  }

  void flush(std::uint64_t local) { nodes_.fetch_add(local % 1024, std::memory_order_relaxed); }
  std::uint64_t nodes() const noexcept { return nodes_.load(); }

 private:
  std::optional<std::uint64_t> node_budget_;
  std::optional<Clock::time_point> deadline_;
  std::atomic<bool> stop_{false};
  std::atomic<std::uint64_t> nodes_{0};
};

class Searcher {
 public:
  enum State : std::uint8_t { undecided, chosen, excluded };

  Searcher(const Problem& pb, Control& control)
      : pb_(pb),
        control_(control),
        state_(pb.universe, undecided),
        hit_(pb.traces.size(), 0),
        avail_(pb.traces.size(), 0),
        forbidden_count_(pb.forbidden.size(), 0),
        uncovered_(pb.traces.size()),
        mark_(pb.universe, 0) {
    for (std::size_t i = 0; i < pb.traces.size(); ++i) avail_[i] = static_cast<std::uint32_t>(pb.traces[i].size());
  }

  ~Searcher() { control_.flush(nodes_); }

  const std::vector<Local>& chosen_points() const noexcept { return chosen_; }
  bool dead() const noexcept { return dead_ > 0; }

  // Choosing p must not complete a forbidden trace.
  bool can_choose(Local p) const {
    for (auto g : pb_.point_forbidden[p]) {
      if (forbidden_count_[g] + 1 == pb_.forbidden[g].size()) return false;
    }
    return true;
  }

  void choose(Local p) {
    state_[p] = chosen;
    chosen_.push_back(p);
    for (auto f : pb_.point_traces[p]) {
      if (hit_[f]++ == 0) --uncovered_;
      --avail_[f];
    }
    for (auto g : pb_.point_forbidden[p]) ++forbidden_count_[g];
  }

  void unchoose(Local p) {
    for (auto g : pb_.point_forbidden[p]) --forbidden_count_[g];
    for (auto f : pb_.point_traces[p]) {
      ++avail_[f];
      if (--hit_[f] == 0) ++uncovered_;
    }
    chosen_.pop_back();
    state_[p] = undecided;
  }

  void exclude(Local p) {
    state_[p] = excluded;
    for (auto f : pb_.point_traces[p]) {
      if (--avail_[f] == 0 && hit_[f] == 0) ++dead_;
    }
  }

  void unexclude(Local p) {
    for (auto f : pb_.point_traces[p]) {
      if (avail_[f]++ == 0 && hit_[f] == 0) --dead_;
    }
    state_[p] = undecided;
  }

  // max(disjoint packing, degree bound) on the points still needed.
  std::size_t lower_bound() {
    if (uncovered_ == 0) return 0;
    ++epoch_;
    std::size_t packing = 0;
    for (std::size_t f = 0; f < pb_.traces.size(); ++f) {
      if (hit_[f] != 0) continue;
      bool disjoint = true;
      for (auto p : pb_.traces[f]) {
        if (state_[p] == undecided && mark_[p] == epoch_) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      ++packing;
      for (auto p : pb_.traces[f]) {
        if (state_[p] == undecided) mark_[p] = epoch_;
      }
    }

    degrees_.clear();
    for (Local p = 0; p < pb_.universe; ++p) {
      if (state_[p] != undecided || !can_choose(p)) continue;
      std::uint32_t deg = 0;
      for (auto f : pb_.point_traces[p]) deg += hit_[f] == 0;
      if (deg) degrees_.push_back(deg);
    }
    std::sort(degrees_.begin(), degrees_.end(), std::greater<>());
    std::size_t covered = 0, count = 0;
    for (auto d : degrees_) {
      if (covered >= uncovered_) break;
      covered += d;
      ++count;
    }
    if (covered < uncovered_) return pb_.universe + 1;
    return std::max(packing, count);
  }

  // Uncovered trace with the fewest undecided points (lowest index on ties).
  std::optional<std::size_t> branching_trace() const {
    std::optional<std::size_t> best;
    for (std::size_t f = 0; f < pb_.traces.size(); ++f) {
      if (hit_[f] != 0) continue;
      if (!best || avail_[f] < avail_[*best]) best = f;
    }
    return best;
  }

  std::vector<Local> candidates(std::size_t f) const {
    std::vector<Local> out;
    for (auto p : pb_.traces[f]) {
      if (state_[p] == undecided) out.push_back(p);
    }
    return out;
  }

  struct Incumbent {
    std::atomic<std::size_t> size;
    std::mutex mutex;
    std::vector<Local> points;
    bool first_feasible = false;
  };

  void branch_and_bound(Incumbent& best) {
    if (control_.tick(nodes_)) return;
    if (dead_ > 0) return;
    const std::size_t bound = best.size.load(std::memory_order_relaxed);
    if (uncovered_ == 0) {
      if (chosen_.size() < bound) publish(best);
      return;
    }
    if (chosen_.size() + 1 >= bound) return;
    if (chosen_.size() + lower_bound() >= bound) return;
    const auto f = *branching_trace();
    const auto cands = candidates(f);
    std::size_t excluded_count = 0;
    for (auto p : cands) {
      if (can_choose(p)) {
        choose(p);
        branch_and_bound(best);
        unchoose(p);
      }
      exclude(p);
      ++excluded_count;
      if (dead_ > 0 || control_.stopped()) break;
      if (chosen_.size() + 1 >= best.size.load(std::memory_order_relaxed)) break;
    }
    for (std::size_t i = excluded_count; i-- > 0;) unexclude(cands[i]);
  }

  // Include-first sweep in index order: the first hit of size <= k is the
  // lexicographically least such set.
  bool lex_search(Local pos, std::size_t k) {
    if (control_.tick(nodes_)) return false;
    if (uncovered_ == 0) return true;
    if (dead_ > 0 || chosen_.size() >= k || pos >= pb_.universe) return false;
    if (chosen_.size() + lower_bound() > k) return false;
    const bool useful = std::any_of(pb_.point_traces[pos].begin(), pb_.point_traces[pos].end(),
                                    [&](Local f) { return hit_[f] == 0; });
    if (useful && can_choose(pos)) {
      choose(pos);
      if (lex_search(pos + 1, k)) return true;
      unchoose(pos);
    }
    exclude(pos);
    const bool found = dead_ == 0 && lex_search(pos + 1, k);
    if (!found) unexclude(pos);
    return found;
  }

 private:
  void publish(Incumbent& best) {
    std::lock_guard lock(best.mutex);
    if (chosen_.size() < best.size.load()) {
      best.size.store(chosen_.size());
      best.points = chosen_;
    }
  }

  const Problem& pb_;
  Control& control_;
  std::vector<State> state_;
  std::vector<std::uint32_t> hit_;
  std::vector<std::uint32_t> avail_;
  std::vector<std::uint32_t> forbidden_count_;
  std::size_t uncovered_;
  std::size_t dead_ = 0;
  std::vector<Local> chosen_;
  std::vector<std::uint64_t> mark_;
  std::uint64_t epoch_ = 0;
  std::vector<std::uint32_t> degrees_;
  std::uint64_t nodes_ = 0;
};

IndexSet to_global(const IndexSet& universe, std::vector<Local> local) {
  std::sort(local.begin(), local.end());
  IndexSet out;
  out.reserve(local.size());
  for (auto p : local) out.push_back(universe[p]);
  return out;
}

// Phase one: optimum size. The root branching trace is split into
// independent tasks (choose the i-th candidate, exclude the earlier ones)
// pulled by the workers; the incumbent size is shared.
void solve_optimum(const Problem& pb, Control& control, Searcher::Incumbent& best, unsigned workers) {
  std::vector<Local> root_cands;
  {
    Searcher root(pb, control);
    const auto f = root.branching_trace();
    if (!f) return;
    root_cands = root.candidates(*f);
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    Searcher s(pb, control);
    std::size_t prefix = 0;  // candidates currently excluded in s
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= root_cands.size() || control.stopped()) return;
      while (prefix < i) s.exclude(root_cands[prefix++]);
      if (s.dead()) return;
      if (s.can_choose(root_cands[i])) {
        s.choose(root_cands[i]);
        s.branch_and_bound(best);
        s.unchoose(root_cands[i]);
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(root_cands.size())));
  if (workers == 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

}  // namespace

SearchResult min_blocking_set(const BlockingInstance& inst, const SearchOptions& options) {
  const auto start = Clock::now();
  SearchResult result;
  auto finish = [&](SearchResult& r, std::uint64_t nodes) -> SearchResult& {
    r.nodes = nodes;
    r.elapsed = Clock::now() - start;
    return r;
  };
  if (inst.universe.size() > kSolverUniverseLimit) {
    throw Error(ErrorKind::UniverseTooLarge, "universe of " + std::to_string(inst.universe.size()) + " points exceeds 2^20");
  }
  if (inst.vacuous()) {
    result.verdict = Verdict::vacuous;
    result.witness = IndexSet{};
    result.size = 0;
    result.optimal = true;
    return finish(result, 0);
  }
  const std::size_t cap = std::min(options.size_cap.value_or(inst.universe.size()), inst.universe.size());
  const Problem pb = localize(inst, options.require_nontrivial);
  Control control(options);

  std::size_t target = cap;
  if (!options.first_feasible) {
    Searcher::Incumbent best;
    best.size.store(cap + 1);
    solve_optimum(pb, control, best, options.workers);
    if (control.stopped()) {
      result.verdict = Verdict::timeout;
      if (!best.points.empty()) {
        result.witness = to_global(inst.universe, best.points);
        result.size = best.points.size();
      }
      return finish(result, control.nodes());
    }
    if (best.size.load() > cap) {
      result.verdict = Verdict::not_exists;
      return finish(result, control.nodes());
    }
    target = best.size.load();
  }

  std::vector<Local> witness;
  bool found = false;
  {
    Searcher lex(pb, control);
    found = lex.lex_search(0, target);
    if (found) witness = lex.chosen_points();
  }
  if (control.stopped()) {
    result.verdict = Verdict::timeout;
    return finish(result, control.nodes());
  }
  if (!found) {
    if (!options.first_feasible) {
      throw Error(ErrorKind::PreconditionFailed, "lexicographic pass missed a solution of the proven optimum size");
    }
    result.verdict = Verdict::not_exists;
    return finish(result, control.nodes());
  }
  result.verdict = Verdict::exists;
  result.witness = to_global(inst.universe, std::move(witness));
  result.size = result.witness->size();
  result.optimal = !options.first_feasible;
  return finish(result, control.nodes());
}

SearchResult exhaustive_oracle(const BlockingInstance& inst, bool require_nontrivial, std::optional<std::size_t> max_size) {
  const auto start = Clock::now();
  const std::size_t n = inst.universe.size();
  if (n > kOracleFullLimit && !max_size) {
    throw Error(ErrorKind::UniverseTooLarge,
                "universe of " + std::to_string(n) + " points needs a max_size for the brute-force oracle");
  }
  SearchResult result;
  if (inst.family.empty()) {
    result.verdict = Verdict::vacuous;
    result.witness = IndexSet{};
    result.size = 0;
    result.optimal = true;
    result.elapsed = Clock::now() - start;
    return result;
  }
  // Multi-word bit masks over universe positions.
  const std::size_t words = (n + 63) / 64;
  auto mask_of = [&](const IndexSet& set) {
    std::vector<std::uint64_t> m(words, 0);
    for (auto p : set) {
      const auto pos = static_cast<std::size_t>(std::lower_bound(inst.universe.begin(), inst.universe.end(), p) -
                                                inst.universe.begin());
      m[pos / 64] |= std::uint64_t{1} << (pos % 64);
    }
    return m;
  };
  std::vector<std::vector<std::uint64_t>> family, forbidden;
  for (const auto& f : inst.family) family.push_back(mask_of(f));
  if (require_nontrivial) {
    for (const auto& g : inst.forbidden) forbidden.push_back(mask_of(g));
  }

  const std::size_t limit = std::min(n, max_size.value_or(n));
  std::vector<std::uint64_t> subset(words);
  std::uint64_t examined = 0;
  for (std::size_t k = 0; k <= limit; ++k) {
    std::vector<std::size_t> combo(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = i;
    for (;;) {
      ++examined;
      std::fill(subset.begin(), subset.end(), 0);
      for (auto c : combo) subset[c / 64] |= std::uint64_t{1} << (c % 64);
      const bool hits_all = std::all_of(family.begin(), family.end(), [&](const auto& f) {
        for (std::size_t w = 0; w < words; ++w) {
          if (f[w] & subset[w]) return true;
        }
        return false;
      });
      const bool contains_forbidden = hits_all && std::any_of(forbidden.begin(), forbidden.end(), [&](const auto& g) {
        for (std::size_t w = 0; w < words; ++w) {
          if ((g[w] & subset[w]) != g[w]) return false;
        }
        return true;
      });
      if (hits_all && !contains_forbidden) {
        IndexSet witness;
        for (auto c : combo) witness.push_back(inst.universe[c]);
        result.verdict = Verdict::exists;
        result.witness = std::move(witness);
        result.size = k;
        result.optimal = true;
        result.nodes = examined;
        result.elapsed = Clock::now() - start;
        return result;
      }
      // Next k-combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && combo[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  result.verdict = Verdict::not_exists;
  result.nodes = examined;
  result.elapsed = Clock::now() - start;
  return result;
}

}  // namespace blockset
