#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gerry/enumerator.hpp"
#include "gerry/gadgets/partition.hpp"
#include "gerry/gadgets/verdict.hpp"
#include "gerry/metrics.hpp"
#include "gerry/validity.hpp"

namespace gerry {

enum class Variant { A, B };

/// Grid built from a PARTITION instance. Copies sit left to right in a
/// three-row strip; connectors are single middle-row cells between them.
struct SeatVoteGadget {
  MapInstance map;
  Variant variant = Variant::A;
  int kappa = 2;
  int alpha = 1;
  int r = -1;
  int beta = 0;
  Rational c = Rational(11, 10);
  bool scale_applied = false;
  std::int64_t q = 0;
  PartitionInstance source;  // as given
  PartitionInstance values;  // after preprocessing
  std::vector<int> copy_col;       // leftmost column of each copy
  std::vector<int> connector_col;  // column of each connector, row 1

  int n() const { return static_cast<int>(values.n()); }
  std::int64_t W() const { return values.W(); }

  /// Cell index of p_{i,j} inside copy `copy`.
  int cell(int copy, int i, int j) const {
    return *map.at(j, copy_col.at(static_cast<std::size_t>(copy)) + i);
  }
  int connector(int k) const { return *map.at(1, connector_col.at(static_cast<std::size_t>(k))); }
  bool heavy(int idx) const { return map.cell(idx).pop * 2 == W() && map.cell(idx).row != 1; }
  bool is_connector(int idx) const {
    for (int k = 0; k < beta; ++k)
      if (connector(k) == idx) return true;
    return false;
  }

  /// Raw Party A seats the completeness plan must reach.
  int completeness_seats() const { return alpha + (variant == Variant::B ? 1 : 0); }
  /// Raw Party A seats every valid plan has when PARTITION has no solution.
  int soundness_seats() const { return variant == Variant::B ? 1 : 0; }

  /// Closed forms that follow from the cell values.
  std::int64_t expected_pop() const {
    std::int64_t N = n();
    return alpha * (2 * W() + 4 * N + 2) + beta * W();
  }
  std::int64_t expected_party_a() const {
    std::int64_t N = n(), a = alpha;
    std::int64_t v = a * (W() - 49 * N + 1) + beta * (W() / 2 - 50 * N);
    if (variant == Variant::B) v += 100 * N + q * a * a * N * N;
    return v;
  }
};

/// Smallest q >= 1 with q a^2 n^2 + 100n - 51an - 50nb >= 0.
/// q = 0 would leave the modified district short by the subset size in the completeness plan.
inline std::int64_t variant_b_q(std::int64_t alpha, std::int64_t beta, std::int64_t n) {
  std::int64_t need = 51 * alpha * n + 50 * n * beta - 100 * n;
  if (need <= 0) return 1;
  std::int64_t step = alpha * alpha * n * n;
  return std::max<std::int64_t>(1, (need + step - 1) / step);
}

inline SeatVoteGadget gen_seatvote_grid(const PartitionInstance& inst, int kappa, Variant variant,
                                        const Rational& c = Rational(11, 10),
                                        bool illustration_mode = false) {
  if (kappa < 2) fail(ErrorCode::InvalidKappa, "kappa must be at least 2");
  if (c <= 1) fail(ErrorCode::InvalidArgument, "c must exceed 1");
  check_partition_instance(inst);
  PartitionInstance values = illustration_mode ? inst : preprocess_partition(inst, c, kappa);
  const int alpha = (kappa + 1) / 3;
  const int r = kappa - 3 * alpha;
  const int beta = alpha + r;

  const std::int64_t n = static_cast<std::int64_t>(values.n()), W = values.W();
  for (auto a : values.values)
    if (a % 2 != 0) fail(ErrorCode::OddValue, "value " + std::to_string(a) + " is odd");
  if (W % 4 != 0) fail(ErrorCode::OddValue, "W/4 is not integral");
  if (W / 4 < 100 * n) fail(ErrorCode::InvalidCounts, "W/4 - 100n is negative; W too small");
  const std::int64_t q = variant == Variant::B ? variant_b_q(alpha, beta, n) : 0;

  std::vector<int> copy_col, connector_col;
  int col = 0;
  if (r == 1) connector_col.push_back(col++);
  for (int j = 0; j < alpha; ++j) {
    copy_col.push_back(col);
    col += static_cast<int>(n) + 1;
    if (j + 1 < alpha) connector_col.push_back(col++);
  }
  if (r >= 0) connector_col.push_back(col++);

  std::vector<GridCellSpec> cells;
  for (int j = 0; j < alpha; ++j) {
    int o = copy_col[static_cast<std::size_t>(j)];
    for (int i = 0; i <= n; ++i)
      for (int row = 0; row < 3; ++row) {
        GridCellSpec s{row, o + i, 2, 1};
        if (row == 1 && i < n) {
          std::int64_t a = values.values[static_cast<std::size_t>(i)];
          s.pop = a;
          s.party_a = a / 2 - 1;
        } else if (i == n && row == 0) {
          s.pop = W / 2;
          s.party_a = W / 4 + 50 * n;
        } else if (i == n && row == 2) {
          s.pop = W / 2;
          s.party_a = W / 4 - 100 * n;
          if (variant == Variant::B && j == 0) s.party_a = W / 4 + q * alpha * alpha * n * n;
        }
        cells.push_back(s);
      }
  }
  for (int cc : connector_col) cells.push_back({1, cc, W, W / 2 - 50 * n});

  SeatVoteGadget g{build_grid_map(3, col, cells, kappa),
                   variant,
                   kappa,
                   alpha,
                   r,
                   beta,
                   c,
                   !illustration_mode,
                   q,
                   inst,
                   values,
                   copy_col,
                   connector_col};

  if (g.map.total_pop() != g.expected_pop() || g.map.total_party_a() != g.expected_party_a())
    fail(ErrorCode::AggregateMismatch, "aggregate closed forms disagree with the generated cells");
  bool a_majority = 2 * g.map.total_party_a() >= g.map.total_pop();
  if ((variant == Variant::A) == a_majority)
    fail(ErrorCode::AggregateMismatch, "N-Vote-C(A) on the wrong side of 1/2");
  return g;
}

struct ReferencePlans {
  Plan trivial;
  std::optional<Plan> completeness;
};

/// Trivial plan, and the completeness plan when `subset` (indices) sums to W/2.
inline ReferencePlans seatvote_reference_plans(const SeatVoteGadget& g,
                                               const std::optional<std::vector<int>>& subset = std::nullopt) {
  const int n = g.n();
  std::vector<int> labels(g.map.size(), 0);
  int next = 1;
  for (int j = 0; j < g.alpha; ++j) {
    int mid = next++, rest = next++;
    for (int i = 0; i <= n; ++i)
      for (int row = 0; row < 3; ++row)
        labels[static_cast<std::size_t>(g.cell(j, i, row))] = (row == 1 && i < n) ? mid : rest;
  }
  for (int k = 0; k < g.beta; ++k) labels[static_cast<std::size_t>(g.connector(k))] = next++;
  ReferencePlans out{Plan(labels).canonical(), std::nullopt};
  if (!subset) return out;

  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  std::int64_t sum = 0;
  for (int i : *subset) {
    if (i < 0 || i >= n) fail(ErrorCode::InvalidArgument, "subset index " + std::to_string(i) + " out of range");
    if (chosen[static_cast<std::size_t>(i)]) fail(ErrorCode::InvalidArgument, "subset index repeated");
    chosen[static_cast<std::size_t>(i)] = 1;
    sum += g.values.values[static_cast<std::size_t>(i)];
  }
  if (2 * sum != g.W()) fail(ErrorCode::NotASolution, "subset sums to " + std::to_string(sum) + ", not W/2");
  next = 1;
  for (int j = 0; j < g.alpha; ++j) {
    int top = next++, bottom = next++;
    for (int i = 0; i <= n; ++i) {
      labels[static_cast<std::size_t>(g.cell(j, i, 0))] = top;
      labels[static_cast<std::size_t>(g.cell(j, i, 2))] = bottom;
      bool up = i == n || chosen[static_cast<std::size_t>(i)];
      labels[static_cast<std::size_t>(g.cell(j, i, 1))] = up ? top : bottom;
    }
  }
  for (int k = 0; k < g.beta; ++k) labels[static_cast<std::size_t>(g.connector(k))] = next++;
  out.completeness = Plan(labels).canonical();
  return out;
}

struct SeatVoteMode {
  enum class Kind { Completeness, Soundness };
  Kind kind = Kind::Soundness;
  std::vector<int> subset;  // completeness only

  static SeatVoteMode completeness(std::vector<int> s) { return {Kind::Completeness, std::move(s)}; }
  static SeatVoteMode soundness() { return {Kind::Soundness, {}}; }
};

namespace detail {
inline nlohmann::json plan_evidence(const MapInstance& map, const Plan& plan) {
  nlohmann::json pops = nlohmann::json::array(), winners = nlohmann::json::array();
  for (const auto& d : district_stats(map, plan)) {
    pops.push_back(d.pop);
    winners.push_back(std::string(1, party_char(d.winner)));
  }
  return {{"district_pops", pops}, {"winners", winners}};
}

inline int seats_a(const MapInstance& map, const Plan& plan) {
  int s = 0;
  for (const auto& d : district_stats(map, plan)) s += d.winner == Party::A ? 1 : 0;
  return s;
}
}  // namespace detail

inline GadgetVerdict verify_seatvote_gadget(const SeatVoteGadget& g, const SeatVoteMode& mode,
                                            const Budget& budget = {}) {
  GadgetVerdict v;
  BalanceCriterion crit = BalanceCriterion::polynomial(g.c);
  auto ref = seatvote_reference_plans(g);
  v.trivial_plan_valid = check_plan(g.map, ref.trivial, crit).valid();
  v.details["trivial"] = detail::plan_evidence(g.map, ref.trivial);
  v.details["slack"] = resolve(crit, g.map).delta();

  if (mode.kind == SeatVoteMode::Kind::Completeness) {
    auto plans = seatvote_reference_plans(g, mode.subset);
    const Plan& p = *plans.completeness;
    bool valid = check_plan(g.map, p, crit).valid();
    int seats = detail::seats_a(g.map, p);
    v.completeness_holds = valid && seats == g.completeness_seats();
    v.details["completeness"] = detail::plan_evidence(g.map, p);
    v.details["completeness"]["valid"] = valid;
    v.details["completeness"]["seats_a"] = seats;
    v.details["completeness"]["expected_seats_a"] = g.completeness_seats();
    return v;
  }

  if (!g.scale_applied)
    fail(ErrorCode::IllustrationMode, "soundness needs the preprocessing scale; gadget is in illustration mode");
  std::uint64_t plans = 0, bad = 0, claim1_bad = 0;
  std::vector<int> histogram(static_cast<std::size_t>(g.kappa) + 1, 0);
  std::vector<char> heavy(g.map.size(), 0), conn(g.map.size(), 0);
  for (std::size_t i = 0; i < g.map.size(); ++i) {
    heavy[i] = g.heavy(static_cast<int>(i));
    conn[i] = g.is_connector(static_cast<int>(i));
  }
  auto visit = [&](const Plan& plan) {
    ++plans;
    int s = detail::seats_a(g.map, plan);
    ++histogram[static_cast<std::size_t>(s)];
    if (s != g.soundness_seats()) ++bad;
    std::vector<char> has_heavy(static_cast<std::size_t>(g.kappa) + 1, 0),
        has_conn(static_cast<std::size_t>(g.kappa) + 1, 0);
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (heavy[i]) has_heavy[static_cast<std::size_t>(plan[i])] = 1;
      if (conn[i]) has_conn[static_cast<std::size_t>(plan[i])] = 1;
    }
    for (int d = 1; d <= g.kappa; ++d)
      if (has_heavy[static_cast<std::size_t>(d)] && has_conn[static_cast<std::size_t>(d)]) {
        ++claim1_bad;
        break;
      }
    return true;
  };
  std::uint64_t nodes = 0;
  bool done = for_each_valid_plan(g.map, crit, visit, budget, &nodes);
  if (!done) fail(ErrorCode::BudgetExceeded, "soundness enumeration hit its budget");
  v.soundness_holds = bad == 0;
  v.details["soundness"] = {{"valid_plans", plans},
                            {"violating_plans", bad},
                            {"expected_seats_a", g.soundness_seats()},
                            {"seats_a_histogram", histogram},
                            {"connector_with_heavy_plans", claim1_bad},
                            {"search_nodes", nodes}};
  return v;
}

}  // namespace gerry
