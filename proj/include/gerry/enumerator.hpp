#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "gerry/objective.hpp"
#include "gerry/validity.hpp"

namespace gerry {

using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask{1} << i; }
inline int lowest(Mask m) { return std::countr_zero(m); }

/// Adjacency and weights of a map in bitmask form (at most 64 cells).
struct MaskGraph {
  std::vector<Mask> nbr;
  std::vector<std::int64_t> pop;
  std::vector<std::int64_t> party_a;
  Mask all = 0;

  MaskGraph() = default;
  explicit MaskGraph(const MapInstance& map) {
    if (map.size() > 64) fail(ErrorCode::InvalidArgument, "exhaustive search supports at most 64 cells");
    for (std::size_t i = 0; i < map.size(); ++i) {
      Mask m = 0;
      for (int v : map.neighbors(static_cast<int>(i))) m |= bit(v);
      nbr.push_back(m);
      pop.push_back(map.cell(static_cast<int>(i)).pop);
      party_a.push_back(map.cell(static_cast<int>(i)).party_a);
      all |= bit(static_cast<int>(i));
    }
  }

  std::int64_t weight(Mask m) const {
    std::int64_t s = 0;
    for (; m; m &= m - 1) s += pop[static_cast<std::size_t>(lowest(m))];
    return s;
  }

  /// Component of `start` inside `within`.
  Mask component(int start, Mask within) const {
    Mask seen = bit(start), frontier = bit(start);
    while (frontier) {
      int u = lowest(frontier);
      frontier &= frontier - 1;
      Mask next = nbr[static_cast<std::size_t>(u)] & within & ~seen;
      seen |= next;
      frontier |= next;
    }
    return seen;
  }

  bool connected(Mask m) const { return m != 0 && component(lowest(m), m) == m; }
};

namespace detail {

/// Visits every connected S with root in S and S inside `within`, weight(S) <= cap, once each.
/// `visit(S, weight)` returns false to abort the whole walk.
template <class Weights, class Visit>
bool grow_subsets(const MaskGraph& g, const Weights& w, std::int64_t cap, Mask S, std::int64_t ws,
                  Mask cand, Mask excl, Mask within, Visit& visit) {
  if (!visit(S, ws)) return false;
  Mask c = cand;
  while (c) {
    int u = lowest(c);
    c &= c - 1;
    std::int64_t wu = w[static_cast<std::size_t>(u)];
    if (ws + wu <= cap) {
      Mask S2 = S | bit(u);
      Mask cand2 = (c | (g.nbr[static_cast<std::size_t>(u)] & within)) & ~S2 & ~excl;
      if (!grow_subsets(g, w, cap, S2, ws + wu, cand2, excl, within, visit)) return false;
    }
    excl |= bit(u);
  }
  return true;
}

template <class Weights, class Visit>
bool for_each_connected_subset(const MaskGraph& g, const Weights& w, std::int64_t cap, int root,
                               Mask within, Visit&& visit) {
  std::int64_t w0 = w[static_cast<std::size_t>(root)];
  if (w0 > cap) return true;
  return grow_subsets(g, w, cap, bit(root), w0, g.nbr[static_cast<std::size_t>(root)] & within, 0,
                      within, visit);
}

}  // namespace detail

struct Budget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;
  std::size_t max_best_plans = 256;
};

struct EnumerationResult {
  std::uint64_t count = 0;
  std::optional<ObjectiveValue> best_value;
  std::vector<Plan> best_plans;
  bool best_plans_truncated = false;
  bool exhausted = true;
  std::uint64_t nodes = 0;
  std::uint64_t undefined_objective = 0;  // plans where the objective has no value
};

/// Calls visit(plan) for every valid plan, districts labelled by lowest cell index.
/// visit returns false to stop. Returns false when the budget cut the search short.
template <class Visit>
bool for_each_valid_plan(const MapInstance& map, const BalanceCriterion& criterion, Visit&& visit,
                         const Budget& budget = {}, std::uint64_t* node_count = nullptr) {
  MaskGraph g(map);
  ResolvedBalance rb = resolve(criterion, map);
  PopWindow win = rb.necessary();
  const int kappa = map.kappa();
  std::vector<int> labels(map.size(), 0);
  std::uint64_t nodes = 0;
  bool cut = false, stopped = false;
  auto start = std::chrono::steady_clock::now();

  auto tick = [&]() {
    ++nodes;
    if (budget.max_nodes && nodes > *budget.max_nodes) cut = true;
    if (budget.max_seconds && (nodes & 1023) == 0) {
      std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
      if (el.count() > *budget.max_seconds) cut = true;
    }
    return !cut;
  };

  // can `rem` still be split into k blocks inside the window?
  auto feasible = [&](Mask rem, int k) {
    int min_blocks = 0;
    std::int64_t max_blocks = 0;
    Mask left = rem;
    while (left) {
      Mask comp = g.component(lowest(left), left);
      left &= ~comp;
      std::int64_t p = g.weight(comp);
      if (p < win.lo) return false;
      std::int64_t cells = std::popcount(comp);
      std::int64_t lo_blocks = win.hi > 0 ? (p + win.hi - 1) / win.hi : 1;
      min_blocks += static_cast<int>(std::max<std::int64_t>(lo_blocks, 1));
      std::int64_t hi_blocks = win.lo > 0 ? std::min(cells, p / win.lo) : cells;
      max_blocks += hi_blocks;
      if (min_blocks > k) return false;
    }
    return min_blocks <= k && k <= max_blocks;
  };

  auto leaf = [&]() {
    if (!visit(Plan(labels))) stopped = true;
    return !stopped;
  };

  auto assign = [&](Mask m, int label) {
    for (; m; m &= m - 1) labels[static_cast<std::size_t>(lowest(m))] = label;
  };

  auto rec = [&](auto& self, Mask rem, std::int64_t rem_pop, int k, std::int64_t cur_min,
                 std::int64_t cur_max) -> bool {
    if (!tick()) return false;
    int label = kappa - k + 1;
    if (k == 1) {
      if (!win.contains(rem_pop) || !g.connected(rem)) return true;
      if (!rb.ok(std::min(cur_min, rem_pop), std::max(cur_max, rem_pop))) return true;
      assign(rem, label);
      return leaf();
    }
    int v = lowest(rem);
    auto visit_block = [&](Mask S, std::int64_t p) -> bool {
      if (!tick()) return false;
      if (p < win.lo || S == rem) return true;
      std::int64_t nm = std::min(cur_min, p), nx = std::max(cur_max, p);
      if (!rb.ok(nm, nx)) return true;
      Mask r2 = rem & ~S;
      if (!feasible(r2, k - 1)) return true;
      assign(S, label);
      return self(self, r2, rem_pop - p, k - 1, nm, nx);
    };
    return detail::for_each_connected_subset(g, g.pop, win.hi, v, rem, visit_block);
  };

  std::int64_t total = map.total_pop();
  if (feasible(g.all, kappa))
    rec(rec, g.all, total, kappa, std::numeric_limits<std::int64_t>::max(),
        std::numeric_limits<std::int64_t>::min());
  if (node_count) *node_count = nodes;
  return !cut;
}

inline EnumerationResult enumerate_plans(const MapInstance& map, const BalanceCriterion& criterion,
                                         const std::optional<Objective>& objective = std::nullopt,
                                         const Budget& budget = {}) {
  EnumerationResult res;
  const auto k = static_cast<std::size_t>(map.kappa());
  std::vector<std::int64_t> pops(k), as(k);
  auto visit = [&](const Plan& plan) {
    ++res.count;
    if (!objective) return true;
    std::fill(pops.begin(), pops.end(), 0);
    std::fill(as.begin(), as.end(), 0);
    for (std::size_t i = 0; i < plan.size(); ++i) {
      auto d = static_cast<std::size_t>(plan[i] - 1);
      pops[d] += map.cell(static_cast<int>(i)).pop;
      as[d] += map.cell(static_cast<int>(i)).party_a;
    }
    auto v = evaluate_sums(*objective, pops, as, map.total_pop(), map.total_party_a());
    if (!v) {
      ++res.undefined_objective;
      return true;
    }
    if (!res.best_value || better(*objective, *v, *res.best_value)) {
      res.best_value = *v;
      res.best_plans.clear();
      res.best_plans_truncated = false;
    }
    if (*v == *res.best_value) {
      if (res.best_plans.size() < budget.max_best_plans) res.best_plans.push_back(plan);
      else res.best_plans_truncated = true;
    }
    return true;
  };
  res.exhausted = for_each_valid_plan(map, criterion, visit, budget, &res.nodes);
  return res;
}

/// Number of connected cell subsets with at most max_size cells.
inline std::uint64_t count_connected_subsets(const MapInstance& map, std::size_t max_size) {
  MaskGraph g(map);
  std::vector<std::int64_t> ones(map.size(), 1);
  std::uint64_t count = 0;
  for (std::size_t v = 0; v < map.size(); ++v) {
    Mask within = g.all & ~(bit(static_cast<int>(v)) - 1);
    detail::for_each_connected_subset(g, ones, static_cast<std::int64_t>(max_size),
                                      static_cast<int>(v), within, [&](Mask, std::int64_t) {
                                        ++count;
                                        return true;
                                      });
  }
  return count;
}

}  // namespace gerry
