#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gerry/model.hpp"

namespace gerry {

namespace detail {

/// Rebuilds a map from (possibly edited) cells, keeping those with keep[i].
inline MapInstance rebuild(const MapInstance& map, const std::vector<Cell>& cells,
                           const std::vector<char>& keep, const Rational& scale, BuildOptions opts) {
  if (map.topology() == Topology::Grid) {
    std::vector<GridCellSpec> specs;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (keep[i]) specs.push_back({cells[i].row, cells[i].col, cells[i].pop, cells[i].party_a});
    return build_grid_map(map.rows(), map.cols(), specs, map.kappa(), opts).with_scale(scale);
  }
  std::vector<PlanarCellSpec> specs;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (keep[i]) specs.push_back({cells[i].id, cells[i].pop, cells[i].party_a});
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [u, v] : map.edges())
    if (keep[static_cast<std::size_t>(u)] && keep[static_cast<std::size_t>(v)])
      edges.emplace_back(map.cell(u).id, map.cell(v).id);
  return build_planar_map(specs, edges, map.kappa(), opts).with_scale(scale);
}

}  // namespace detail

/// Multiplies every pop and party_a count by factor; results must be integers.
inline MapInstance scale_populations(const MapInstance& map, const Rational& factor) {
  if (factor <= 0) fail(ErrorCode::InvalidArgument, "scale factor must be positive");
  std::vector<Cell> cells = map.cells();
  for (auto& c : cells) {
    Rational p = factor * c.pop, a = factor * c.party_a;
    if (!is_integer(p) || !is_integer(a))
      fail(ErrorCode::NonIntegralResult, "cell " + c.id + " does not scale to an integer");
    c.pop = to_int64(num(p));
    c.party_a = to_int64(num(a));
  }
  bool has_zero = false;
  for (const auto& c : map.cells()) has_zero = has_zero || c.pop == 0;
  return detail::rebuild(map, cells, std::vector<char>(cells.size(), 1), map.scale() * factor,
                         BuildOptions{has_zero});
}

inline MapInstance remove_zero_pop_cells(const MapInstance& map) {
  std::vector<char> keep(map.size(), 1);
  bool any = false;
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map.cell(static_cast<int>(i)).pop == 0) {
      keep[i] = 0;
      any = true;
    }
  if (!any) return map;
  try {
    return detail::rebuild(map, map.cells(), keep, map.scale(), {});
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DisconnectedMap || e.code() == ErrorCode::InvalidArgument)
      fail(ErrorCode::DisconnectedAfterRemoval, "removing zero-population cells disconnects the map");
    throw;
  }
}

}  // namespace gerry
