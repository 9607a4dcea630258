#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gerry/enumerator.hpp"
#include "gerry/gadgets/mis.hpp"
#include "gerry/gadgets/seatvote.hpp"
#include "gerry/metrics.hpp"
#include "gerry/model.hpp"
#include "gerry/optimizer.hpp"

namespace gerry {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Integer when integral and small, "P/Q" string otherwise.
inline json rational_to_json(const Rational& r) {
  if (is_integer(r) && num(r) <= std::numeric_limits<std::int64_t>::max() &&
      num(r) >= std::numeric_limits<std::int64_t>::min())
    return static_cast<std::int64_t>(num(r));
  return to_string(r);
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(ErrorCode::ParseError, "expected an integer or \"P/Q\" string");
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::int64_t int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) fail(ErrorCode::ParseError, std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

inline std::string id_from_json(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  fail(ErrorCode::ParseError, "cell id must be a string or integer");
}

inline void check_version(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "document must be a JSON object");
  if (int_field(j, "format_version") != kFormatVersion)
    fail(ErrorCode::UnsupportedFormat, "unsupported format_version");
}

}  // namespace detail

/// Map plus optional gadget metadata (null when absent).
struct MapFile {
  MapInstance map;
  json gadget;

  bool operator==(const MapFile& o) const { return map == o.map && gadget == o.gadget; }
};

inline json map_to_json(const MapInstance& map, const json& gadget = nullptr) {
  json j;
  j["format_version"] = kFormatVersion;
  j["kappa"] = map.kappa();
  j["scale"] = rational_to_json(map.scale());
  if (map.topology() == Topology::Grid) {
    j["type"] = "grid";
    json cells = json::array();
    for (const auto& c : map.cells())
      cells.push_back({{"row", c.row}, {"col", c.col}, {"pop", c.pop}, {"party_a", c.party_a}});
    j["grid"] = {{"rows", map.rows()}, {"cols", map.cols()}, {"cells", cells}};
  } else {
    j["type"] = "planar";
    json cells = json::array(), edges = json::array();
    for (const auto& c : map.cells()) cells.push_back({{"id", c.id}, {"pop", c.pop}, {"party_a", c.party_a}});
    for (auto [u, v] : map.edges()) edges.push_back({map.cell(u).id, map.cell(v).id});
    j["planar"] = {{"cells", cells}, {"edges", edges}};
  }
  if (!gadget.is_null()) j["gadget"] = gadget;
  return j;
}

inline MapFile map_from_json(const json& j) {
  try {
    detail::check_version(j);
    const std::string type = detail::field(j, "type").get<std::string>();
    int kappa = static_cast<int>(detail::int_field(j, "kappa"));
    Rational scale = j.contains("scale") ? rational_from_json(j.at("scale")) : Rational(1);
    json gadget = j.contains("gadget") ? j.at("gadget") : json(nullptr);
    if (type == "grid") {
      const json& g = detail::field(j, "grid");
      std::vector<GridCellSpec> cells;
      for (const auto& c : detail::field(g, "cells"))
        cells.push_back({static_cast<int>(detail::int_field(c, "row")), static_cast<int>(detail::int_field(c, "col")),
                         detail::int_field(c, "pop"), detail::int_field(c, "party_a")});
      auto m = build_grid_map(static_cast<int>(detail::int_field(g, "rows")),
                              static_cast<int>(detail::int_field(g, "cols")), cells, kappa);
      return {m.with_scale(scale), gadget};
    }
    if (type == "planar") {
      const json& p = detail::field(j, "planar");
      std::vector<PlanarCellSpec> cells;
      for (const auto& c : detail::field(p, "cells"))
        cells.push_back({detail::id_from_json(detail::field(c, "id")), detail::int_field(c, "pop"),
                         detail::int_field(c, "party_a")});
      std::vector<std::pair<std::string, std::string>> edges;
      for (const auto& e : detail::field(p, "edges")) {
        if (!e.is_array() || e.size() != 2) fail(ErrorCode::ParseError, "edge must be a pair of ids");
        edges.emplace_back(detail::id_from_json(e[0]), detail::id_from_json(e[1]));
      }
      auto m = build_planar_map(cells, edges, kappa);
      return {m.with_scale(scale), gadget};
    }
    fail(ErrorCode::ParseError, "type must be \"grid\" or \"planar\"");
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

/// Cell id to district label.
struct PlanFile {
  std::map<std::string, int> assignment;
  bool operator==(const PlanFile&) const = default;
};

inline json plan_file_to_json(const PlanFile& p) {
  json a = json::object();
  for (const auto& [id, d] : p.assignment) a[id] = d;
  return {{"format_version", kFormatVersion}, {"assignment", a}};
}

inline PlanFile plan_file_from_json(const json& j) {
  try {
    detail::check_version(j);
    const json& a = detail::field(j, "assignment");
    if (!a.is_object()) fail(ErrorCode::ParseError, "assignment must be an object");
    PlanFile p;
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!it.value().is_number_integer()) fail(ErrorCode::ParseError, "district index must be an integer");
      p.assignment[it.key()] = it.value().get<int>();
    }
    return p;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

inline PlanFile to_plan_file(const MapInstance& map, const Plan& plan) {
  if (plan.size() != map.size()) fail(ErrorCode::PartialPlan, "plan size differs from map");
  PlanFile p;
  for (std::size_t i = 0; i < plan.size(); ++i) p.assignment[map.cell(static_cast<int>(i)).id] = plan[i];
  return p;
}

inline Plan to_plan(const MapInstance& map, const PlanFile& p) {
  std::vector<int> labels(map.size(), 0);
  for (const auto& [id, d] : p.assignment) {
    auto i = map.index_of(id);
    if (!i) fail(ErrorCode::UnknownCell, "plan names unknown cell '" + id + "'");
    labels[static_cast<std::size_t>(*i)] = d;
  }
  Plan plan(labels);
  validate_plan(map, plan);
  return plan;
}

inline json graph_to_json(const CubicGraph& g) {
  json e = json::array();
  for (auto [u, v] : g.edges) e.push_back({u, v});
  return {{"nodes", g.n}, {"edges", e}};
}

inline CubicGraph graph_from_json(const json& j) {
  try {
    CubicGraph g;
    g.n = static_cast<int>(detail::int_field(j, "nodes"));
    for (const auto& e : detail::field(j, "edges")) {
      if (!e.is_array() || e.size() != 2) fail(ErrorCode::ParseError, "edge must be a pair");
      g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return g;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

inline json gadget_metadata(const SeatVoteGadget& g) {
  return {{"kind", "seatvote"},
          {"values", g.source.values},
          {"kappa", g.kappa},
          {"variant", g.variant == Variant::A ? "a" : "b"},
          {"c", rational_to_json(g.c)},
          {"illustration", !g.scale_applied}};
}

inline json gadget_metadata(const MisGadget& g) {
  return {{"kind", "mis"},
          {"epsilon", rational_to_json(g.epsilon)},
          {"delta", rational_to_json(g.delta)},
          {"denom", g.denom},
          {"graph", graph_to_json(g.source)}};
}

/// Regenerates the gadget named by a map file and checks it matches the stored map.
inline SeatVoteGadget seatvote_from_file(const MapFile& f) {
  try {
    const json& m = f.gadget;
    if (m.is_null() || m.value("kind", "") != "seatvote")
      fail(ErrorCode::InvalidArgument, "map carries no seat-vote gadget metadata");
    PartitionInstance inst{m.at("values").get<std::vector<std::int64_t>>()};
    std::string var = m.at("variant").get<std::string>();
    if (var != "a" && var != "b") fail(ErrorCode::ParseError, "variant must be a or b");
    auto g = gen_seatvote_grid(inst, m.at("kappa").get<int>(), var == "a" ? Variant::A : Variant::B,
                               rational_from_json(m.at("c")), m.at("illustration").get<bool>());
    if (!(g.map == f.map)) fail(ErrorCode::InvalidArgument, "map does not match its gadget metadata");
    return g;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

inline MisGadget mis_from_file(const MapFile& f) {
  try {
    const json& m = f.gadget;
    if (m.is_null() || m.value("kind", "") != "mis")
      fail(ErrorCode::InvalidArgument, "map carries no MIS gadget metadata");
    auto g = gen_mis_gadget(graph_from_json(m.at("graph")), rational_from_json(m.at("epsilon")));
    if (!(g.map == f.map)) fail(ErrorCode::InvalidArgument, "map does not match its gadget metadata");
    return g;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

inline json validity_to_json(const ValidityReport& r) {
  json off = json::array();
  for (const auto& o : r.offending) off.push_back({{"district", o.district}, {"reason", o.reason}});
  return {{"valid", r.valid()},
          {"connected_ok", r.connected_ok},
          {"balance_ok", r.balance_ok},
          {"max_pop", r.max_pop},
          {"min_pop", r.min_pop},
          {"offending", off}};
}

inline json metrics_to_json(const MetricsReport& r) {
  return {{"n_seat_c_a", to_string(r.n_seat_c_a)},
          {"n_seat_m_a", to_string(r.n_seat_m_a)},
          {"n_vote_c_a", to_string(r.n_vote_c_a)},
          {"n_vote_m_a", to_string(r.n_vote_m_a)},
          {"effgap_x2", r.effgap_x2},
          {"effgap", to_string(Rational(r.effgap_x2, 2))},
          {"effgap_normalized", to_string(r.effgap_normalized)},
          {"raw_seats_a", r.raw_seats_a}};
}

inline json verdict_to_json(const GadgetVerdict& v) {
  json j{{"trivial_plan_valid", v.trivial_plan_valid},
         {"completeness_holds", nullptr},
         {"soundness_holds", nullptr},
         {"details", v.details}};
  if (v.completeness_holds) j["completeness_holds"] = *v.completeness_holds;
  if (v.soundness_holds) j["soundness_holds"] = *v.soundness_holds;
  return j;
}

inline json objective_value_to_json(const std::optional<ObjectiveValue>& v) {
  if (!v) return nullptr;
  return v->to_string();
}

/// restart,iteration,objective,objective_exact
inline void write_trace_csv(std::ostream& os, const std::vector<TraceEntry>& trace) {
  os << "restart,iteration,objective,objective_exact\n";
  for (const auto& e : trace) {
    os << e.restart << ',' << e.iteration << ',';
    if (e.value) os << e.value->to_double() << ',' << e.value->to_string();
    else os << ',';
    os << '\n';
  }
}

/// district,pop,party_a,party_b,winner,wasted_a_x2,wasted_b_x2
inline void write_districts_csv(std::ostream& os, const std::vector<DistrictStats>& ds) {
  os << "district,pop,party_a,party_b,winner,wasted_a_x2,wasted_b_x2\n";
  for (std::size_t d = 0; d < ds.size(); ++d)
    os << d + 1 << ',' << ds[d].pop << ',' << ds[d].party_a << ',' << ds[d].party_b << ','
       << party_char(ds[d].winner) << ',' << ds[d].wasted_a_x2 << ',' << ds[d].wasted_b_x2 << '\n';
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace gerry
