#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gerry/error.hpp"
#include "gerry/rational.hpp"

namespace gerry {

enum class Party { A, B };

inline char party_char(Party p) { return p == Party::A ? 'A' : 'B'; }

enum class Topology { Grid, Planar };

/// One atomic population unit. row/col are -1 on planar maps.
struct Cell {
  std::string id;
  std::int64_t pop = 0;
  std::int64_t party_a = 0;
  int row = -1;
  int col = -1;

  std::int64_t party_b() const { return pop - party_a; }
  bool operator==(const Cell&) const = default;
};

struct GridCellSpec {
  int row = 0;
  int col = 0;
  std::int64_t pop = 0;
  std::int64_t party_a = 0;
};

struct PlanarCellSpec {
  std::string id;
  std::int64_t pop = 0;
  std::int64_t party_a = 0;
};

struct BuildOptions {
  // zero-population cells are only legal as a transient state before removal
  bool allow_zero_pop = false;
};

inline std::string grid_id(int row, int col) {
  return std::to_string(row) + "," + std::to_string(col);
}

class MapInstance;
MapInstance build_grid_map(int rows, int cols, std::vector<GridCellSpec> cells, int kappa,
                           BuildOptions opts = {});
MapInstance build_planar_map(std::vector<PlanarCellSpec> cells,
                             const std::vector<std::pair<std::string, std::string>>& edges,
                             int kappa, BuildOptions opts = {});

/// Immutable map: cells, adjacency, kappa and the scale multiplier.
class MapInstance {
 public:
  Topology topology() const { return topo_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int kappa() const { return kappa_; }
  const Rational& scale() const { return scale_; }
  std::size_t size() const { return cells_.size(); }
  const Cell& cell(int i) const { return cells_.at(static_cast<std::size_t>(i)); }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<int>& neighbors(int i) const { return adj_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::int64_t total_pop() const { return total_pop_; }
  std::int64_t total_party_a() const { return total_a_; }
  std::int64_t total_party_b() const { return total_pop_ - total_a_; }

  std::size_t edge_count() const {
    std::size_t d = 0;
    for (const auto& n : adj_) d += n.size();
    return d / 2;
  }

  /// Undirected edges as index pairs (u < v), sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t u = 0; u < adj_.size(); ++u)
      for (int v : adj_[u])
        if (static_cast<int>(u) < v) out.emplace_back(static_cast<int>(u), v);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<int> index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<int> at(int row, int col) const {
    if (topo_ != Topology::Grid) return std::nullopt;
    return index_of(grid_id(row, col));
  }

  bool adjacent(int u, int v) const {
    const auto& n = neighbors(u);
    return std::find(n.begin(), n.end(), v) != n.end();
  }

  MapInstance with_kappa(int kappa) const {
    MapInstance m = *this;
    m.set_kappa(kappa);
    return m;
  }

  MapInstance with_scale(const Rational& s) const {
    if (s <= 0) fail(ErrorCode::InvalidArgument, "scale must be positive");
    MapInstance m = *this;
    m.scale_ = s;
    return m;
  }

  bool operator==(const MapInstance& o) const {
    return topo_ == o.topo_ && rows_ == o.rows_ && cols_ == o.cols_ && kappa_ == o.kappa_ &&
           scale_ == o.scale_ && cells_ == o.cells_ && adj_ == o.adj_;
  }

 private:
  friend MapInstance build_grid_map(int, int, std::vector<GridCellSpec>, int, BuildOptions);
  friend MapInstance build_planar_map(std::vector<PlanarCellSpec>,
                                      const std::vector<std::pair<std::string, std::string>>&,
                                      int, BuildOptions);

  MapInstance() = default;

  void set_kappa(int k) {
    if (k < 2 || static_cast<std::size_t>(k) > cells_.size())
      fail(ErrorCode::InvalidKappa, "kappa " + std::to_string(k) + " outside [2, " +
                                        std::to_string(cells_.size()) + "]");
    kappa_ = k;
  }

  void finish(const BuildOptions& opts);

  Topology topo_ = Topology::Grid;
  int rows_ = 0;
  int cols_ = 0;
  int kappa_ = 2;
  Rational scale_ = 1;
  std::vector<Cell> cells_;
  std::vector<std::vector<int>> adj_;
  std::map<std::string, int> index_;
  std::vector<std::string> warnings_;
  std::int64_t total_pop_ = 0;
  std::int64_t total_a_ = 0;
};

namespace detail {

inline void check_counts(const std::string& id, std::int64_t pop, std::int64_t a, bool allow_zero) {
  if (pop < 0 || (pop == 0 && !allow_zero))
    fail(ErrorCode::InvalidCounts, "cell " + id + ": population must be positive");
  if (a < 0 || a > pop)
    fail(ErrorCode::InvalidCounts, "cell " + id + ": party_a must lie in [0, pop]");
}

inline bool connected_all(const std::vector<std::vector<int>>& adj) {
  if (adj.empty()) return false;
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<std::size_t>(u)])
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == adj.size();
}

}  // namespace detail

inline void MapInstance::finish(const BuildOptions& opts) {
  if (cells_.empty()) fail(ErrorCode::InvalidArgument, "map has no cells");
  total_pop_ = 0;
  total_a_ = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    detail::check_counts(c.id, c.pop, c.party_a, opts.allow_zero_pop);
    if (__builtin_add_overflow(total_pop_, c.pop, &total_pop_))
      fail(ErrorCode::Overflow, "total population overflows");
    total_a_ += c.party_a;
    index_[c.id] = static_cast<int>(i);
  }
  for (auto& n : adj_) std::sort(n.begin(), n.end());
  if (!detail::connected_all(adj_)) fail(ErrorCode::DisconnectedMap, "map is not connected");
}

inline MapInstance build_grid_map(int rows, int cols, std::vector<GridCellSpec> specs, int kappa,
                                  BuildOptions opts) {
  if (rows < 1 || cols < 1) fail(ErrorCode::InvalidArgument, "grid dimensions must be positive");
  std::set<std::pair<int, int>> seen;
  for (const auto& s : specs) {
    if (s.row < 0 || s.row >= rows || s.col < 0 || s.col >= cols)
      fail(ErrorCode::OutOfBounds, "cell " + grid_id(s.row, s.col) + " outside " +
                                       std::to_string(rows) + "x" + std::to_string(cols));
    if (!seen.insert({s.row, s.col}).second)
      fail(ErrorCode::DuplicateCell, "duplicate cell " + grid_id(s.row, s.col));
  }
  std::sort(specs.begin(), specs.end(), [](const GridCellSpec& a, const GridCellSpec& b) {
    return std::pair(a.row, a.col) < std::pair(b.row, b.col);
  });
  MapInstance m;
  m.topo_ = Topology::Grid;
  m.rows_ = rows;
  m.cols_ = cols;
  std::map<std::pair<int, int>, int> where;
  for (const auto& s : specs) {
    where[{s.row, s.col}] = static_cast<int>(m.cells_.size());
    m.cells_.push_back(Cell{grid_id(s.row, s.col), s.pop, s.party_a, s.row, s.col});
  }
  m.adj_.assign(m.cells_.size(), {});
  for (const auto& [rc, i] : where) {
    for (auto [dr, dc] : {std::pair{0, 1}, std::pair{1, 0}}) {
      auto it = where.find({rc.first + dr, rc.second + dc});
      if (it == where.end()) continue;
      m.adj_[static_cast<std::size_t>(i)].push_back(it->second);
      m.adj_[static_cast<std::size_t>(it->second)].push_back(i);
    }
  }
  m.finish(opts);
  m.set_kappa(kappa);
  return m;
}

inline MapInstance build_planar_map(std::vector<PlanarCellSpec> specs,
                                    const std::vector<std::pair<std::string, std::string>>& edges,
                                    int kappa, BuildOptions opts) {
  MapInstance m;
  m.topo_ = Topology::Planar;
  std::map<std::string, int> where;
  for (const auto& s : specs) {
    if (!where.emplace(s.id, static_cast<int>(m.cells_.size())).second)
      fail(ErrorCode::DuplicateCell, "duplicate cell id '" + s.id + "'");
    m.cells_.push_back(Cell{s.id, s.pop, s.party_a, -1, -1});
  }
  m.adj_.assign(m.cells_.size(), {});
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    auto ia = where.find(a), ib = where.find(b);
    if (ia == where.end()) fail(ErrorCode::UnknownCell, "edge references unknown cell '" + a + "'");
    if (ib == where.end()) fail(ErrorCode::UnknownCell, "edge references unknown cell '" + b + "'");
    if (ia->second == ib->second) fail(ErrorCode::SelfLoop, "self-loop on '" + a + "'");
    auto key = std::minmax(ia->second, ib->second);
    if (!seen.insert(key).second)
      fail(ErrorCode::DuplicateEdge, "duplicate edge '" + a + "'-'" + b + "'");
    m.adj_[static_cast<std::size_t>(ia->second)].push_back(ib->second);
    m.adj_[static_cast<std::size_t>(ib->second)].push_back(ia->second);
  }
  m.finish(opts);
  std::size_t v = m.cells_.size(), e = edges.size();
  if (v >= 3 && e > 3 * v - 6)
    m.warnings_.push_back("edge count " + std::to_string(e) + " exceeds planar bound 3|V|-6 = " +
                          std::to_string(3 * v - 6));
  m.set_kappa(kappa);
  return m;
}

/// Assignment of every cell to a district label in 1..kappa.
class Plan {
 public:
  Plan() = default;
  explicit Plan(std::vector<int> labels) : labels_(std::move(labels)) {}

  std::size_t size() const { return labels_.size(); }
  int operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  void set(std::size_t i, int d) { labels_[i] = d; }

  /// Relabels districts in order of first appearance.
  Plan canonical() const {
    std::map<int, int> relabel;
    std::vector<int> out(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      auto [it, fresh] = relabel.emplace(labels_[i], static_cast<int>(relabel.size()) + 1);
      out[i] = it->second;
    }
    return Plan(std::move(out));
  }

  bool operator==(const Plan&) const = default;
  bool operator<(const Plan& o) const { return labels_ < o.labels_; }

 private:
  std::vector<int> labels_;
};

/// Totality, label range and non-empty districts.
inline void validate_plan(const MapInstance& map, const Plan& plan) {
  if (plan.size() != map.size())
    fail(ErrorCode::PartialPlan, "plan covers " + std::to_string(plan.size()) + " of " +
                                     std::to_string(map.size()) + " cells");
  std::vector<char> used(static_cast<std::size_t>(map.kappa()) + 1, 0);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    int d = plan[i];
    if (d == 0) fail(ErrorCode::PartialPlan, "cell " + map.cell(static_cast<int>(i)).id + " unassigned");
    if (d < 0 || d > map.kappa())
      fail(ErrorCode::InvalidPlan, "district label " + std::to_string(d) + " outside 1.." +
                                       std::to_string(map.kappa()));
    used[static_cast<std::size_t>(d)] = 1;
  }
  for (int d = 1; d <= map.kappa(); ++d)
    if (!used[static_cast<std::size_t>(d)])
      fail(ErrorCode::EmptyDistrict, "district " + std::to_string(d) + " is empty");
}

/// Cell indices per district; entry j holds district j+1.
inline std::vector<std::vector<int>> district_cells(const MapInstance& map, const Plan& plan) {
  validate_plan(map, plan);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(map.kappa()));
  for (std::size_t i = 0; i < plan.size(); ++i)
    out[static_cast<std::size_t>(plan[i] - 1)].push_back(static_cast<int>(i));
  return out;
}

struct DistrictStats {
  std::int64_t pop = 0;
  std::int64_t party_a = 0;
  std::int64_t party_b = 0;
  Party winner = Party::A;
  std::int64_t wasted_a_x2 = 0;  // doubled units keep half-votes integral
  std::int64_t wasted_b_x2 = 0;

  bool tied() const { return 2 * party_a == pop; }
  bool operator==(const DistrictStats&) const = default;
};

inline DistrictStats stats_from_sums(std::int64_t pop, std::int64_t a, Party tie_pref) {
  DistrictStats s;
  s.pop = pop;
  s.party_a = a;
  s.party_b = pop - a;
  if (2 * a > pop) s.winner = Party::A;
  else if (2 * s.party_b > pop) s.winner = Party::B;
  else s.winner = tie_pref;
  if (s.winner == Party::A) {
    s.wasted_a_x2 = 2 * a - pop;
    s.wasted_b_x2 = 2 * s.party_b;
  } else {
    s.wasted_a_x2 = 2 * a;
    s.wasted_b_x2 = 2 * s.party_b - pop;
  }
  return s;
}

inline std::vector<DistrictStats> district_stats(const MapInstance& map, const Plan& plan,
                                                 Party tie_pref = Party::A) {
  validate_plan(map, plan);
  std::vector<std::int64_t> pop(static_cast<std::size_t>(map.kappa()), 0), a(pop.size(), 0);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    auto d = static_cast<std::size_t>(plan[i] - 1);
    pop[d] += map.cell(static_cast<int>(i)).pop;
    a[d] += map.cell(static_cast<int>(i)).party_a;
  }
  std::vector<DistrictStats> out;
  out.reserve(pop.size());
  for (std::size_t d = 0; d < pop.size(); ++d) out.push_back(stats_from_sums(pop[d], a[d], tie_pref));
  return out;
}

}  // namespace gerry
