#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "gerry/objective.hpp"
#include "gerry/validity.hpp"

namespace gerry {

struct Anneal {
  Rational t0 = 1;
  Rational decay = Rational(99, 100);
};

struct SearchParams {
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_iters = 1000;
  std::optional<Anneal> anneal;  // none: hill climbing
  unsigned threads = 0;          // 0: hardware concurrency
  bool record_plans = false;     // keep each trace step's plan

  void validate() const {
    if (restarts < 1) fail(ErrorCode::InvalidArgument, "restarts must be at least 1");
    if (max_iters < 0) fail(ErrorCode::InvalidArgument, "max_iters must be non-negative");
    if (anneal && (anneal->decay <= 0 || anneal->decay >= 1))
      fail(ErrorCode::InvalidArgument, "decay must lie in (0,1)");
    if (anneal && anneal->t0 <= 0) fail(ErrorCode::InvalidArgument, "initial temperature must be positive");
  }
};

struct Move {
  int cell = 0;
  int from = 0;
  int to = 0;
  bool operator==(const Move&) const = default;
};

struct TraceEntry {
  int restart = 0;
  int iteration = 0;
  std::optional<ObjectiveValue> value;
  std::optional<Plan> plan;
};

struct OptimizeResult {
  Plan plan;
  std::optional<ObjectiveValue> value;
  int best_restart = 0;
  std::vector<TraceEntry> trace;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Small fixed generator so streams do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(splitmix64(seed)) {}
  std::uint64_t next() {
    s_ = splitmix64(s_);
    return s_;
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t s_;
};

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Labels plus per-district sums, updated in place by flips.
class FlipState {
 public:
  FlipState(const MapInstance& map, std::vector<int> labels)
      : map_(&map), labels_(std::move(labels)) {
    auto k = static_cast<std::size_t>(map.kappa());
    pops_.assign(k, 0);
    as_.assign(k, 0);
    sizes_.assign(k, 0);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == 0) continue;
      auto d = static_cast<std::size_t>(labels_[i] - 1);
      pops_[d] += map.cell(static_cast<int>(i)).pop;
      as_[d] += map.cell(static_cast<int>(i)).party_a;
      ++sizes_[d];
    }
    mark_.assign(labels_.size(), 0);
  }

  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::int64_t>& pops() const { return pops_; }
  const std::vector<std::int64_t>& as() const { return as_; }

  /// Donor district stays non-empty and connected without `cell`.
  bool donor_ok(int cell) {
    int d = labels_[static_cast<std::size_t>(cell)];
    std::size_t size = sizes_[static_cast<std::size_t>(d - 1)];
    if (size <= 1) return false;
    int start = -1;
    for (int v : map_->neighbors(cell))
      if (labels_[static_cast<std::size_t>(v)] == d) {
        start = v;
        break;
      }
    if (start < 0) return false;
    ++stamp_;
    mark_[static_cast<std::size_t>(cell)] = stamp_;
    mark_[static_cast<std::size_t>(start)] = stamp_;
    stack_.assign(1, start);
    std::size_t reached = 1;
    while (!stack_.empty()) {
      int u = stack_.back();
      stack_.pop_back();
      for (int v : map_->neighbors(u)) {
        auto vi = static_cast<std::size_t>(v);
        if (labels_[vi] == d && mark_[vi] != stamp_) {
          mark_[vi] = stamp_;
          ++reached;
          stack_.push_back(v);
        }
      }
    }
    return reached == size - 1;
  }

  /// Moves keeping every district non-empty and connected, sorted by (cell, to).
  std::vector<Move> structural_moves() {
    std::vector<Move> out;
    for (std::size_t c = 0; c < labels_.size(); ++c) {
      int d = labels_[c];
      std::vector<int> targets;
      for (int v : map_->neighbors(static_cast<int>(c))) {
        int e = labels_[static_cast<std::size_t>(v)];
        if (e != d && std::find(targets.begin(), targets.end(), e) == targets.end()) targets.push_back(e);
      }
      if (targets.empty() || !donor_ok(static_cast<int>(c))) continue;
      std::sort(targets.begin(), targets.end());
      for (int e : targets) out.push_back({static_cast<int>(c), d, e});
    }
    return out;
  }

  void apply(const Move& m) {
    const Cell& c = map_->cell(m.cell);
    auto f = static_cast<std::size_t>(m.from - 1), t = static_cast<std::size_t>(m.to - 1);
    pops_[f] -= c.pop;
    as_[f] -= c.party_a;
    --sizes_[f];
    pops_[t] += c.pop;
    as_[t] += c.party_a;
    ++sizes_[t];
    labels_[static_cast<std::size_t>(m.cell)] = m.to;
  }

  std::pair<std::int64_t, std::int64_t> extremes_after(const Move& m) const {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    std::int64_t p = map_->cell(m.cell).pop;
    for (std::size_t d = 0; d < pops_.size(); ++d) {
      std::int64_t v = pops_[d];
      if (static_cast<int>(d) + 1 == m.from) v -= p;
      if (static_cast<int>(d) + 1 == m.to) v += p;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return {lo, hi};
  }

  std::optional<ObjectiveValue> value_after(const Objective& obj, const Move& m) {
    scratch_p_ = pops_;
    scratch_a_ = as_;
    const Cell& c = map_->cell(m.cell);
    scratch_p_[static_cast<std::size_t>(m.from - 1)] -= c.pop;
    scratch_a_[static_cast<std::size_t>(m.from - 1)] -= c.party_a;
    scratch_p_[static_cast<std::size_t>(m.to - 1)] += c.pop;
    scratch_a_[static_cast<std::size_t>(m.to - 1)] += c.party_a;
    return evaluate_sums(obj, scratch_p_, scratch_a_, map_->total_pop(), map_->total_party_a());
  }

  std::optional<ObjectiveValue> value(const Objective& obj) const {
    return evaluate_sums(obj, pops_, as_, map_->total_pop(), map_->total_party_a());
  }

 private:
  const MapInstance* map_;
  std::vector<int> labels_;
  std::vector<std::int64_t> pops_, as_;
  std::vector<std::size_t> sizes_;
  std::vector<unsigned> mark_;
  unsigned stamp_ = 0;
  std::vector<int> stack_;
  std::vector<std::int64_t> scratch_p_, scratch_a_;
};

inline std::int64_t window_penalty(const std::vector<std::int64_t>& pops, const PopWindow& w) {
  std::int64_t s = 0;
  for (auto p : pops) s += p < w.lo ? w.lo - p : (p > w.hi ? p - w.hi : 0);
  return s;
}

inline bool balanced(const ResolvedBalance& rb, const std::vector<std::int64_t>& pops) {
  auto [lo, hi] = std::minmax_element(pops.begin(), pops.end());
  return rb.ok(*lo, *hi);
}

}  // namespace detail

/// Valid moves of a valid plan, sorted by (cell, to).
inline std::vector<Move> boundary_flip_moves(const MapInstance& map, const Plan& plan,
                                             const BalanceCriterion& criterion) {
  validate_plan(map, plan);
  ResolvedBalance rb = resolve(criterion, map);
  detail::FlipState st(map, plan.labels());
  std::vector<Move> out;
  for (const Move& m : st.structural_moves()) {
    auto [lo, hi] = st.extremes_after(m);
    if (rb.ok(lo, hi)) out.push_back(m);
  }
  return out;
}

/// Seeded region growing from kappa cells, then balance repair by flips.
inline Plan initial_plan(const MapInstance& map, const BalanceCriterion& criterion, std::uint64_t seed) {
  const auto n = map.size();
  const int kappa = map.kappa();
  if (static_cast<std::size_t>(kappa) >= n)
    fail(ErrorCode::InvalidKappa, "optimizer needs kappa < |cells|");
  detail::Rng rng(seed);

  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

  std::vector<int> labels(n, 0);
  std::vector<std::int64_t> pop(static_cast<std::size_t>(kappa), 0);
  for (int d = 1; d <= kappa; ++d) {
    labels[static_cast<std::size_t>(order[static_cast<std::size_t>(d - 1)])] = d;
    pop[static_cast<std::size_t>(d - 1)] = map.cell(order[static_cast<std::size_t>(d - 1)]).pop;
  }
  std::size_t assigned = static_cast<std::size_t>(kappa);
  while (assigned < n) {
    std::vector<int> dists(static_cast<std::size_t>(kappa));
    for (int d = 0; d < kappa; ++d) dists[static_cast<std::size_t>(d)] = d + 1;
    std::stable_sort(dists.begin(), dists.end(), [&](int a, int b) {
      return pop[static_cast<std::size_t>(a - 1)] < pop[static_cast<std::size_t>(b - 1)];
    });
    bool grew = false;
    for (int d : dists) {
      std::vector<int> frontier;
      for (std::size_t c = 0; c < n; ++c) {
        if (labels[c] != 0) continue;
        for (int v : map.neighbors(static_cast<int>(c)))
          if (labels[static_cast<std::size_t>(v)] == d) {
            frontier.push_back(static_cast<int>(c));
            break;
          }
      }
      if (frontier.empty()) continue;
      int c = frontier[rng.below(frontier.size())];
      labels[static_cast<std::size_t>(c)] = d;
      pop[static_cast<std::size_t>(d - 1)] += map.cell(c).pop;
      ++assigned;
      grew = true;
      break;
    }
    if (!grew) fail(ErrorCode::NoValidPlanFound, "region growing stalled");
  }

  ResolvedBalance rb = resolve(criterion, map);
  PopWindow target = rb.sufficient();
  detail::FlipState st(map, labels);
  const std::size_t budget = 200 * n + 1000;
  for (std::size_t it = 0; it < budget; ++it) {
    if (detail::balanced(rb, st.pops())) return Plan(st.labels());
    auto moves = st.structural_moves();
    if (moves.empty()) break;
    std::int64_t cur = detail::window_penalty(st.pops(), target);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      auto p = st.pops();
      std::int64_t w = map.cell(moves[i].cell).pop;
      p[static_cast<std::size_t>(moves[i].from - 1)] -= w;
      p[static_cast<std::size_t>(moves[i].to - 1)] += w;
      std::int64_t pen = detail::window_penalty(p, target);
      if (pen < best) {
        best = pen;
        ties.assign(1, i);
      } else if (pen == best) {
        ties.push_back(i);
      }
    }
    if (best < cur) st.apply(moves[ties[rng.below(ties.size())]]);
    else st.apply(moves[rng.below(moves.size())]);
  }
  if (detail::balanced(rb, st.pops())) return Plan(st.labels());
  fail(ErrorCode::NoValidPlanFound, "balance repair did not converge");
}

namespace detail {

struct RestartOutcome {
  bool ok = false;
  Plan plan;
  std::optional<ObjectiveValue> value;
  std::vector<TraceEntry> trace;
};

inline bool improves(const Objective& obj, const std::optional<ObjectiveValue>& cand,
                     const std::optional<ObjectiveValue>& cur) {
  if (!cand) return false;
  if (!cur) return true;
  return better(obj, *cand, *cur);
}

inline RestartOutcome run_restart(const MapInstance& map, const BalanceCriterion& criterion,
                                  const Objective& obj, const SearchParams& params, int r) {
  RestartOutcome out;
  std::uint64_t rs = derive_seed(params.seed, static_cast<std::uint64_t>(r));
  std::optional<Plan> start;
  for (std::uint64_t attempt = 0; attempt < 8 && !start; ++attempt) {
    try {
      start = initial_plan(map, criterion, derive_seed(rs, attempt));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoValidPlanFound) throw;
    }
  }
  if (!start) return out;
  ResolvedBalance rb = resolve(criterion, map);
  Rng rng(derive_seed(rs, 0xa11ea1ULL));
  FlipState st(map, start->labels());
  auto cur = st.value(obj);
  out.ok = true;
  out.plan = *start;
  out.value = cur;
  auto record = [&](int it) {
    TraceEntry e{r, it, cur, std::nullopt};
    if (params.record_plans) e.plan = Plan(st.labels());
    out.trace.push_back(std::move(e));
  };
  record(0);
  double temp = params.anneal ? to_double(params.anneal->t0) : 0.0;
  double decay = params.anneal ? to_double(params.anneal->decay) : 0.0;
  for (int it = 1; it <= params.max_iters; ++it) {
    std::vector<Move> moves;
    for (const Move& m : st.structural_moves()) {
      auto [lo, hi] = st.extremes_after(m);
      if (rb.ok(lo, hi)) moves.push_back(m);
    }
    if (moves.empty()) break;
    if (!params.anneal) {
      std::optional<ObjectiveValue> best;
      std::optional<Move> pick;
      for (const Move& m : moves) {
        auto v = st.value_after(obj, m);
        if (improves(obj, v, best)) {
          best = v;
          pick = m;
        }
      }
      if (!pick || !improves(obj, best, cur)) break;
      st.apply(*pick);
      cur = best;
    } else {
      const Move& m = moves[rng.below(moves.size())];
      auto v = st.value_after(obj, m);
      bool accept = false;
      if (v) {
        if (!cur) {
          accept = true;
        } else {
          double delta = minimised(obj, *v) - minimised(obj, *cur);
          accept = delta <= 0 || (std::isfinite(delta) && rng.unit() < std::exp(-delta / temp));
        }
      }
      if (accept) {
        st.apply(m);
        cur = v;
      }
      temp *= decay;
      if (temp < 1e-300) temp = 1e-300;
    }
    record(it);
    if (improves(obj, cur, out.value)) {
      out.value = cur;
      out.plan = Plan(st.labels());
    }
  }
  return out;
}

}  // namespace detail

/// Best plan over all restarts; ties go to the lowest restart index.
inline OptimizeResult optimize(const MapInstance& map, const BalanceCriterion& criterion,
                               const Objective& objective, const SearchParams& params) {
  params.validate();
  if (static_cast<std::size_t>(map.kappa()) >= map.size())
    fail(ErrorCode::InvalidKappa, "optimizer needs kappa < |cells|");
  auto nr = static_cast<std::size_t>(params.restarts);
  std::vector<detail::RestartOutcome> outs(nr);
  unsigned workers = params.threads ? params.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, nr));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&]() {
    for (std::size_t r; (r = next.fetch_add(1)) < nr;) {
      try {
        outs[r] = detail::run_restart(map, criterion, objective, params, static_cast<int>(r));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  OptimizeResult res;
  bool found = false;
  for (std::size_t r = 0; r < nr; ++r) {
    auto& o = outs[r];
    if (!o.ok) continue;
    if (!found || detail::improves(objective, o.value, res.value)) {
      res.plan = o.plan;
      res.value = o.value;
      res.best_restart = static_cast<int>(r);
      found = true;
    }
  }
  if (!found) fail(ErrorCode::NoValidPlanFound, "no restart produced a valid plan");
  for (auto& o : outs)
    for (auto& e : o.trace) res.trace.push_back(std::move(e));
  return res;
}

}  // namespace gerry
