#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gerry/enumerator.hpp"
#include "gerry/gadgets/verdict.hpp"
#include "gerry/metrics.hpp"
#include "gerry/validity.hpp"

namespace gerry {

/// Simple undirected graph on vertices 0..n-1.
struct CubicGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [u, v] : edges) {
      adj[static_cast<std::size_t>(u)].push_back(v);
      adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }
  bool operator==(const CubicGraph&) const = default;
};

inline void check_cubic_planar(const CubicGraph& g) {
  if (g.n < 4) fail(ErrorCode::NotCubic, "a simple cubic graph needs at least 4 vertices");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (u == v) fail(ErrorCode::SelfLoop, "self-loop on vertex " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second) fail(ErrorCode::DuplicateEdge, "parallel edge");
  }
  auto adj = g.adjacency();
  for (int v = 0; v < g.n; ++v)
    if (adj[static_cast<std::size_t>(v)].size() != 3)
      fail(ErrorCode::NotCubic, "vertex " + std::to_string(v) + " has degree " +
                                    std::to_string(adj[static_cast<std::size_t>(v)].size()));
  if (!detail::connected_all(adj)) fail(ErrorCode::NotConnected, "graph is not connected");
  if (g.edges.size() > static_cast<std::size_t>(3 * g.n - 6))
    fail(ErrorCode::EulerBoundViolated, "edge count exceeds 3|V|-6");
}

inline Rational mis_delta(int n) { return Rational(1, 100 * static_cast<std::int64_t>(n) * n * n); }

inline Rational xi(const Rational& eps, const Rational& delta) { return 34 * delta - eps / 2; }
inline Rational zeta(const Rational& eps, const Rational& delta) {
  return 34 * delta - eps - Rational(3, 2);
}
inline Rational eta(const Rational& eps, const Rational& delta) {
  return delta - eps / 3 - Rational(1, 2);
}

/// Closed-form wasted-vote difference of the canonical plan for an independent set of size mu.
inline Rational upsilon(const Rational& mu, const Rational& n, const Rational& eps, const Rational& delta) {
  return (3 + 3 * eps / 2 - 3 * delta) * mu + (71 * delta / 2 - 3 * eps / 2 - Rational(9, 4)) * n;
}

enum class MisRole { Core0, Core1, Core2, Core3, Core4, Terminal, EdgeNode };

struct MisNodeParams {
  Rational pop;
  Rational party_a;
  bool operator==(const MisNodeParams&) const = default;
};

struct MisNodeInfo {
  MisRole role = MisRole::Core0;
  int vertex = -1;  // owning source vertex, or the lower endpoint for edge-nodes
  int other = -1;   // neighbour for terminals, upper endpoint for edge-nodes
};

/// Node parameters (before scaling) as functions of eps and delta. Core path
/// is v^3 - v^2 - v^1 - v^0 - v^4; the three terminals hang off v^3.
inline std::array<MisNodeParams, 7> mis_node_params(const Rational& eps, const Rational& d) {
  auto node = [](const Rational& pop, const Rational& surplus) { return MisNodeParams{pop, pop / 2 + surplus}; };
  std::array<MisNodeParams, 7> p;
  p[static_cast<std::size_t>(MisRole::Core3)] = node(1 - eps / 2 - 3 * d, -11 * d / 4);
  p[static_cast<std::size_t>(MisRole::Core2)] = node(3 * eps / 2 + 3 * d, 5 * d / 2);
  p[static_cast<std::size_t>(MisRole::Core1)] = node(1 - eps / 2 - 3 * d, -2 * d);
  p[static_cast<std::size_t>(MisRole::Core0)] = node(eps, 3 * d / 2);
  p[static_cast<std::size_t>(MisRole::Core4)] = node(Rational(1), -d);
  p[static_cast<std::size_t>(MisRole::Terminal)] = node(eps / 5, eps / 120 + 6 * d);
  p[static_cast<std::size_t>(MisRole::EdgeNode)] = node(1 + 2 * eps / 3, d / 2);
  return p;
}

struct MisGadget {
  MapInstance map;
  CubicGraph source;
  Rational epsilon;
  Rational delta;
  std::int64_t denom = 1;
  std::array<MisNodeParams, 7> node_params;
  std::vector<MisNodeInfo> info;

  int n() const { return source.n; }
  int core(int v, int k) const { return 8 * v + k; }
  int terminal(int v, int toward) const {
    auto adj = source.adjacency()[static_cast<std::size_t>(v)];
    auto it = std::find(adj.begin(), adj.end(), toward);
    if (it == adj.end()) fail(ErrorCode::InvalidArgument, "vertices are not adjacent");
    return 8 * v + 5 + static_cast<int>(it - adj.begin());
  }
  int edge_node(int u, int v) const {
    auto key = std::minmax(u, v);
    auto es = sorted_edges();
    auto it = std::lower_bound(es.begin(), es.end(), std::pair<int, int>(key.first, key.second));
    if (it == es.end() || *it != std::pair<int, int>(key.first, key.second))
      fail(ErrorCode::InvalidArgument, "no such edge");
    return 8 * n() + static_cast<int>(it - es.begin());
  }
  std::vector<std::pair<int, int>> sorted_edges() const {
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : source.edges) es.push_back(std::minmax(u, v));
    std::sort(es.begin(), es.end());
    return es;
  }
  std::int64_t window_lo() const { return denom; }
  std::int64_t window_hi() const { return to_int64(num(denom * (1 + epsilon))); }
};

namespace detail {

/// District contribution in unscaled units, A winning on strict majority.
inline Rational contribution(const Rational& pop, const Rational& a) {
  if (2 * a > pop) return 2 * a - 3 * pop / 2;
  return 2 * a - pop / 2;
}

/// Checks the canonical districts: balance window and per-tiling totals.
inline void check_mis_params(const std::array<MisNodeParams, 7>& p, const Rational& eps, const Rational& d) {
  auto P = [&](MisRole r) { return p[static_cast<std::size_t>(r)]; };
  using R = MisRole;
  std::vector<std::vector<R>> unselected = {{R::Core3, R::Terminal, R::Terminal, R::Terminal},
                                            {R::Core2, R::Core1},
                                            {R::Core0, R::Core4}};
  std::vector<std::vector<R>> selected = {{R::Core3, R::Core2}, {R::Core1, R::Core0}, {R::Core4},
                                          {R::Terminal, R::EdgeNode}, {R::Terminal, R::EdgeNode},
                                          {R::Terminal, R::EdgeNode}};
  std::vector<std::vector<R>> lone = {{R::EdgeNode}};
  auto total = [&](const std::vector<std::vector<R>>& blocks) {
    Rational sum = 0;
    for (const auto& b : blocks) {
      Rational pop = 0, a = 0;
      for (R r : b) {
        pop += P(r).pop;
        a += P(r).party_a;
      }
      if (pop < 1 || pop > 1 + eps)
        fail(ErrorCode::ParamSolveFailed, "canonical district outside the balance window");
      sum += contribution(pop, a);
    }
    return sum;
  };
  for (const auto& np : p)
    if (np.pop <= 0 || np.party_a < 0 || np.party_a > np.pop)
      fail(ErrorCode::ParamSolveFailed, "node parameters out of range");
  if (total(unselected) != zeta(eps, d) || total(selected) != xi(eps, d) || total(lone) != eta(eps, d))
    fail(ErrorCode::ParamSolveFailed, "tiling totals differ from the closed forms");
  if (P(R::Core4).pop != 1) fail(ErrorCode::ParamSolveFailed, "minimum district population 1 not attained");
}

}  // namespace detail

inline MisGadget gen_mis_gadget(const CubicGraph& G, const Rational& eps) {
  if (eps <= 0 || eps >= Rational(1, 2)) fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1/2)");
  check_cubic_planar(G);
  const int n = G.n;
  Rational d = mis_delta(n);
  auto params = mis_node_params(eps, d);
  detail::check_mis_params(params, eps, d);

  BigInt L = 1;
  for (const auto& np : params) L = lcm(lcm(L, den(np.pop)), den(np.party_a));
  L = lcm(L, den(eps));
  std::int64_t D = to_int64(2 * L);

  auto adj = G.adjacency();
  std::vector<PlanarCellSpec> cells;
  std::vector<MisNodeInfo> info;
  auto add = [&](std::string id, MisRole role, int v, int other) {
    const auto& np = params[static_cast<std::size_t>(role)];
    cells.push_back({std::move(id), to_int64(num(np.pop * D)), to_int64(num(np.party_a * D))});
    info.push_back({role, v, other});
  };
  for (int v = 0; v < n; ++v) {
    std::string vs = std::to_string(v);
    for (int k = 0; k < 5; ++k) add("v" + vs + "^" + std::to_string(k), static_cast<MisRole>(k), v, -1);
    for (int p : adj[static_cast<std::size_t>(v)]) add("v" + vs + "," + std::to_string(p), MisRole::Terminal, v, p);
  }
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : G.edges) es.push_back(std::minmax(u, v));
  std::sort(es.begin(), es.end());
  for (auto [u, v] : es) add("u" + std::to_string(u) + "," + std::to_string(v), MisRole::EdgeNode, u, v);

  std::vector<std::pair<std::string, std::string>> edges;
  for (int v = 0; v < n; ++v) {
    std::string vs = "v" + std::to_string(v);
    for (auto [a, b] : {std::pair{3, 2}, std::pair{2, 1}, std::pair{1, 0}, std::pair{0, 4}})
      edges.emplace_back(vs + "^" + std::to_string(a), vs + "^" + std::to_string(b));
    for (int p : adj[static_cast<std::size_t>(v)]) edges.emplace_back(vs + "^3", vs + "," + std::to_string(p));
  }
  for (auto [u, v] : es) {
    std::string e = "u" + std::to_string(u) + "," + std::to_string(v);
    edges.emplace_back(e, "v" + std::to_string(u) + "," + std::to_string(v));
    edges.emplace_back(e, "v" + std::to_string(v) + "," + std::to_string(u));
  }
  MapInstance map = build_planar_map(cells, edges, 9 * n / 2).with_scale(D);
  return MisGadget{map, G, eps, d, D, params, info};
}

/// Canonical plan for a maximal independent set of source vertices.
inline Plan plan_from_independent_set(const MisGadget& g, const std::vector<int>& ind_set) {
  const int n = g.n();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int v : ind_set) {
    if (v < 0 || v >= n) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
    in[static_cast<std::size_t>(v)] = 1;
  }
  auto adj = g.source.adjacency();
  for (auto [u, v] : g.source.edges)
    if (in[static_cast<std::size_t>(u)] && in[static_cast<std::size_t>(v)])
      fail(ErrorCode::NotIndependent, "vertices " + std::to_string(u) + " and " + std::to_string(v) + " are adjacent");
  for (int v = 0; v < n; ++v) {
    if (in[static_cast<std::size_t>(v)]) continue;
    bool covered = false;
    for (int p : adj[static_cast<std::size_t>(v)]) covered = covered || in[static_cast<std::size_t>(p)];
    if (!covered) fail(ErrorCode::NotMaximal, "vertex " + std::to_string(v) + " could be added");
  }
  std::vector<int> labels(g.map.size(), 0);
  int next = 1;
  auto put = [&](std::initializer_list<int> cells) {
    for (int c : cells) labels[static_cast<std::size_t>(c)] = next;
    ++next;
  };
  for (int v = 0; v < n; ++v) {
    const auto& nb = adj[static_cast<std::size_t>(v)];
    if (in[static_cast<std::size_t>(v)]) {
      put({g.core(v, 3), g.core(v, 2)});
      put({g.core(v, 1), g.core(v, 0)});
      put({g.core(v, 4)});
      for (int p : nb) put({g.terminal(v, p), g.edge_node(v, p)});
    } else {
      put({g.core(v, 3), g.terminal(v, nb[0]), g.terminal(v, nb[1]), g.terminal(v, nb[2])});
      put({g.core(v, 2), g.core(v, 1)});
      put({g.core(v, 0), g.core(v, 4)});
    }
  }
  for (auto [u, v] : g.sorted_edges())
    if (!in[static_cast<std::size_t>(u)] && !in[static_cast<std::size_t>(v)]) put({g.edge_node(u, v)});
  if (next - 1 != g.map.kappa())
    fail(ErrorCode::InvalidPlan, "canonical plan has " + std::to_string(next - 1) + " districts");
  return Plan(labels).canonical();
}

/// Local partitions of the gadgets of `vertices` plus their incident edge-nodes.
struct LocalTilings {
  std::vector<std::vector<std::vector<std::string>>> patterns;  // blocks of cell ids
  bool edge_nodes_ok = true;  // every edge-node block is {u} or {u, one terminal}
};

inline LocalTilings local_tilings(const MisGadget& g, const std::vector<int>& vertices) {
  std::set<int> nodes;
  const auto adj = g.source.adjacency();
  for (int v : vertices) {
    for (int k = 0; k < 8; ++k) nodes.insert(8 * v + k);
    for (int p : adj[static_cast<std::size_t>(v)]) nodes.insert(g.edge_node(v, p));
  }
  std::vector<int> idx(nodes.begin(), nodes.end());
  std::map<int, int> local;
  for (std::size_t i = 0; i < idx.size(); ++i) local[idx[i]] = static_cast<int>(i);
  if (idx.size() > 64) fail(ErrorCode::InvalidArgument, "local region too large");

  MaskGraph mg;
  std::vector<Mask> nbr(idx.size(), 0);
  std::vector<std::int64_t> pop(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    pop[i] = g.map.cell(idx[i]).pop;
    for (int v : g.map.neighbors(idx[i]))
      if (auto it = local.find(v); it != local.end()) nbr[i] |= bit(it->second);
  }
  mg.nbr = nbr;
  mg.pop = pop;
  mg.all = idx.size() == 64 ? ~Mask{0} : (bit(static_cast<int>(idx.size())) - 1);

  const std::int64_t lo = g.window_lo(), hi = g.window_hi();
  LocalTilings out;
  std::vector<Mask> blocks;
  auto emit = [&]() {
    std::vector<std::vector<std::string>> pat;
    for (Mask b : blocks) {
      std::vector<std::string> ids;
      int edge_nodes = 0, terminals = 0, others = 0;
      for (Mask m = b; m; m &= m - 1) {
        int c = idx[static_cast<std::size_t>(lowest(m))];
        ids.push_back(g.map.cell(c).id);
        MisRole role = g.info[static_cast<std::size_t>(c)].role;
        if (role == MisRole::EdgeNode) ++edge_nodes;
        else if (role == MisRole::Terminal) ++terminals;
        else ++others;
      }
      if (edge_nodes > 0 && !(edge_nodes == 1 && others == 0 && terminals <= 1)) out.edge_nodes_ok = false;
      std::sort(ids.begin(), ids.end());
      pat.push_back(std::move(ids));
    }
    std::sort(pat.begin(), pat.end());
    out.patterns.push_back(std::move(pat));
  };
  auto rec = [&](auto& self, Mask rem) -> void {
    if (rem == 0) {
      emit();
      return;
    }
    detail::for_each_connected_subset(mg, mg.pop, hi, lowest(rem), rem, [&](Mask S, std::int64_t p) {
      if (p >= lo) {
        blocks.push_back(S);
        self(self, rem & ~S);
        blocks.pop_back();
      }
      return true;
    });
  };
  rec(rec, mg.all);
  std::sort(out.patterns.begin(), out.patterns.end());
  return out;
}

inline GadgetVerdict verify_mis_gadget(const MisGadget& g, const std::vector<int>& ind_set) {
  Plan plan = plan_from_independent_set(g, ind_set);
  GadgetVerdict v;
  auto report = check_plan(g.map, plan, BalanceCriterion::mult(g.epsilon));
  v.trivial_plan_valid = report.valid();
  auto ds = district_stats(g.map, plan);
  std::int64_t sum_x2 = signed_wasted_x2(ds);
  Rational ups = upsilon(static_cast<std::int64_t>(ind_set.size()), g.n(), g.epsilon, g.delta);
  Rational scaled = 2 * g.denom * ups;
  v.completeness_holds = Rational(sum_x2) == scaled;

  LocalTilings lt = local_tilings(g, {0});
  if (lt.patterns.size() != 2)
    fail(ErrorCode::TilingMismatch, "local enumeration found " + std::to_string(lt.patterns.size()) + " patterns");
  v.soundness_holds = lt.edge_nodes_ok;

  v.details["mu"] = ind_set.size();
  v.details["upsilon"] = to_string(ups);
  v.details["denom"] = g.denom;
  v.details["signed_wasted_x2"] = sum_x2;
  v.details["expected_signed_wasted_x2"] = to_string(scaled);
  v.details["min_pop"] = report.min_pop;
  v.details["max_pop"] = report.max_pop;
  v.details["local_patterns"] = lt.patterns.size();
  v.details["edge_nodes_ok"] = lt.edge_nodes_ok;
  return v;
}

}  // namespace gerry
