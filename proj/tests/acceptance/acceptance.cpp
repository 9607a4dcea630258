// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace gerry;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string cat(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
  return s;
}

std::string frac(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

const CubicGraph kK4{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
const CubicGraph kQ3{8, {{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3}, {2, 6}, {3, 7}, {4, 5}, {4, 6}, {5, 7}, {6, 7}}};

/// Maximal independent sets by brute force over vertex subsets.
std::vector<std::vector<int>> maximal_independent_sets(const CubicGraph& g) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t s = 0; s < (1u << g.n); ++s) {
    bool indep = true;
    for (auto [u, v] : g.edges) indep = indep && !((s >> u & 1u) && (s >> v & 1u));
    if (!indep) continue;
    bool maximal = true;
    for (int v = 0; v < g.n && maximal; ++v) {
      if (s >> v & 1u) continue;
      bool blocked = false;
      for (auto [a, b] : g.edges) blocked = blocked || (a == v && (s >> b & 1u)) || (b == v && (s >> a & 1u));
      maximal = blocked;
    }
    if (!maximal) continue;
    std::vector<int> set;
    for (int v = 0; v < g.n; ++v)
      if (s >> v & 1u) set.push_back(v);
    out.push_back(set);
  }
  return out;
}

/// Sum over districts of (wasted A - wasted B), in the map's scaled units.
Rational signed_wasted(const MapInstance& m, const Plan& p) {
  std::vector<Rational> pop(static_cast<std::size_t>(m.kappa()), 0), a(pop.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    pop[static_cast<std::size_t>(p[i] - 1)] += m.cell(static_cast<int>(i)).pop;
    a[static_cast<std::size_t>(p[i] - 1)] += m.cell(static_cast<int>(i)).party_a;
  }
  Rational s = 0;
  for (std::size_t j = 0; j < pop.size(); ++j) {
    Rational b = pop[j] - a[j];
    bool a_wins = a[j] >= b;
    s += (a_wins ? a[j] - pop[j] / 2 : a[j]) - (a_wins ? b : b - pop[j] / 2);
  }
  return s;
}

std::vector<int> partition_subset(const std::vector<std::int64_t>& v) {
  std::int64_t total = 0;
  for (auto x : v) total += x;
  for (std::uint32_t mask = 0; mask < (1u << v.size()); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask >> i & 1u) s += v[i];
    if (2 * s == total) {
      std::vector<int> idx;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (mask >> i & 1u) idx.push_back(static_cast<int>(i));
      return idx;
    }
  }
  return {};
}

std::vector<std::int64_t> district_pops(const MapInstance& m, const Plan& p) {
  std::vector<std::int64_t> pops(static_cast<std::size_t>(m.kappa()), 0);
  for (std::size_t i = 0; i < p.size(); ++i) pops[static_cast<std::size_t>(p[i] - 1)] += m.cell(static_cast<int>(i)).pop;
  return pops;
}

bool oracle_valid(const MapInstance& m, const Plan& p, const BalanceCriterion& c) {
  return oracle::districts_connected(m, p.labels(), m.kappa()) && oracle::balanced(district_pops(m, p), c, m.size());
}

// 1
Outcome effgap_identity() {
  std::mt19937_64 rng(101);
  std::size_t maps = 0, plans = 0, tied = 0, bad = 0;
  while (maps < 5) {
    std::uniform_int_distribution<std::int64_t> pd(1, 6);
    std::vector<GridCellSpec> cells;
    std::int64_t total = 0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        std::int64_t p = pd(rng);
        cells.push_back({r, c, p, std::uniform_int_distribution<std::int64_t>(0, p)(rng)});
        total += p;
      }
    if (total % 4 != 0) continue;
    std::size_t here = 0;
    for (int kappa : {2, 4}) {
      auto m = build_grid_map(4, 4, cells, kappa);
      for_each_valid_plan(m, BalanceCriterion::strict(), [&](const Plan& p) {
        for (const auto& d : district_stats(m, p))
          if (2 * d.party_a == d.pop) {
            ++tied;
            return true;
          }
        ++plans;
        ++here;
        if (effgap_identity_residual(m, p) != 0) ++bad;
        // independent check: effgap / Pop == |2 (A/Pop - 1/2) - (seats/kappa - 1/2)| with both normalised
        Rational vm = Rational(m.total_party_a(), m.total_pop()) - Rational(1, 2);
        Rational sm = Rational(oracle::seats_a(m, p), kappa) - Rational(1, 2);
        Rational rhs = 2 * vm - sm;
        if (oracle::effgap(m, p) / m.total_pop() != (rhs < 0 ? Rational(-rhs) : rhs)) ++bad;
        return true;
      });
    }
    if (here > 0) ++maps;
  }
  return {bad == 0, "5 maps x kappa {2,4}: " + std::to_string(plans) + " untied plans, " + std::to_string(tied) +
                        " tied skipped, " + std::to_string(bad) + " nonzero residuals"};
}

// 2
Outcome enumerator_oracle() {
  std::vector<std::pair<std::string, MapInstance>> corpus;
  for (const char* f : {"grid2x2.json", "two_district.json"})
    corpus.emplace_back(f, map_from_json(read_json_file(std::string(GERRY_DATA_DIR) + "/" + f)).map);
  std::mt19937_64 rng(202);
  const std::vector<std::pair<int, int>> shapes{{1, 3}, {1, 5}, {2, 2}, {2, 3}, {2, 4}, {3, 3}, {1, 9}};
  for (int i = 0; i < 28; ++i) {
    auto [r, c] = shapes[static_cast<std::size_t>(i) % shapes.size()];
    int kappa = 2 + i % std::min(3, r * c - 1);
    corpus.emplace_back("random#" + std::to_string(i), oracle::random_grid(rng, r, c, kappa, 9));
  }
  std::vector<BalanceCriterion> crits{BalanceCriterion::strict(), BalanceCriterion::mult(Rational(1, 5)),
                                      BalanceCriterion::additive(4), BalanceCriterion::polynomial(Rational(11, 10))};
  std::size_t checks = 0, mismatches = 0;
  std::vector<std::string> notes;
  for (const auto& [name, m] : corpus) {
    for (const auto& c : crits) {
      auto naive = oracle::naive_plans(m, c);
      auto res = enumerate_plans(m, c, Objective::effgap_min());
      std::optional<Rational> best;
      for (const auto& p : naive) {
        Rational e = oracle::effgap(m, p);
        if (!best || e < *best) best = e;
      }
      bool same_opt = best ? (res.best_value && res.best_value->value == *best) : !res.best_value;
      ++checks;
      if (res.count != naive.size() || !same_opt) {
        ++mismatches;
        if (notes.size() < 3) notes.push_back(name + ": " + std::to_string(res.count) + " vs " + std::to_string(naive.size()));
      }
    }
  }
  notes.insert(notes.begin(), std::to_string(corpus.size()) + " maps x " + std::to_string(crits.size()) +
                                  " criteria, " + std::to_string(mismatches) + "/" + std::to_string(checks) +
                                  " mismatches in count or effgap optimum");
  return {mismatches == 0, cat(notes)};
}

// 3
Outcome completeness() {
  auto g = gen_seatvote_grid({{2, 4, 6, 8}}, 2, Variant::A);
  auto subset = partition_subset(g.values.values);
  auto ref = seatvote_reference_plans(g, subset);
  const Plan& p = *ref.completeness;
  auto crit = BalanceCriterion::polynomial(Rational(11, 10));
  bool valid = oracle_valid(g.map, p, crit);
  int seats = oracle::seats_a(g.map, p);
  auto pops = district_pops(g.map, p);
  std::sort(pops.begin(), pops.end());
  std::int64_t W = g.W(), n = g.n();
  std::vector<std::int64_t> want{W + 2 * n - 2, W + 2 * n + 2};
  std::ostringstream os;
  os << "valid=" << (valid ? "yes" : "no") << "; A seats " << seats << "/2; pops (" << pops[0] << ", " << pops[1]
     << ") expected (" << want[0] << ", " << want[1] << ")";
  return {valid && seats == 1 && pops == want, os.str()};
}

// 4
Outcome soundness() {
  std::vector<std::int64_t> src{2, 4, 6, 10};
  auto g = gen_seatvote_grid({src}, 2, Variant::A);
  auto crit = BalanceCriterion::polynomial(Rational(11, 10));
  bool no_solution = !oracle::has_partition(g.values.values);
  std::size_t count = 0, a_wins = 0, invalid = 0;
  bool exhausted = for_each_valid_plan(g.map, crit, [&](const Plan& p) {
    ++count;
    if (!oracle_valid(g.map, p, crit)) ++invalid;
    if (oracle::seats_a(g.map, p) != 0) ++a_wins;
    return true;
  });
  auto naive = oracle::naive_plans(g.map, crit);
  std::size_t naive_wins = 0;
  for (const auto& p : naive) naive_wins += oracle::seats_a(g.map, p) != 0 ? 1 : 0;
  std::ostringstream os;
  os << g.map.size() << " cells; no partition=" << (no_solution ? "yes" : "no") << "; " << count
     << " valid plans (naive filter " << naive.size() << "); plans with an A seat " << a_wins << " (naive "
     << naive_wins << ")";
  return {g.map.size() == 15 && no_solution && exhausted && invalid == 0 && count == naive.size() && count > 0 &&
              a_wins == 0 && naive_wins == 0,
          os.str()};
}

// 5
Outcome aggregates() {
  std::size_t total = 0, pop_ok = 0, a_ok = 0, vote_ok = 0;
  std::vector<std::string> misses;
  for (const auto& src : std::vector<std::vector<std::int64_t>>{{2, 4, 6, 8}, {4, 8, 12, 16, 20}})
    for (int kappa : {2, 3, 5})
      for (Variant v : {Variant::A, Variant::B}) {
        auto g = gen_seatvote_grid({src}, kappa, v);
        ++total;
        std::int64_t W = g.W(), n = g.n(), al = g.alpha, be = g.beta;
        Rational pop = 0, a = 0;
        for (std::size_t i = 0; i < g.map.size(); ++i) {
          pop += g.map.cell(static_cast<int>(i)).pop;
          a += g.map.cell(static_cast<int>(i)).party_a;
        }
        std::int64_t want_pop = al * (2 * W + 4 * n) + be * W;
        std::int64_t want_a = al * (W - 47 * n - 1) + be * (W / 2 - 50 * n);
        if (v == Variant::B) want_a += 100 * n + g.q * al * al * n * n;
        pop_ok += pop == want_pop ? 1 : 0;
        a_ok += a == want_a ? 1 : 0;
        Rational share = a / pop;
        vote_ok += (v == Variant::A ? share < Rational(1, 2) : share >= Rational(1, 2)) ? 1 : 0;
        if (misses.size() < 2 && (pop != want_pop || a != want_a)) {
          std::ostringstream os;
          os << "n=" << n << " kappa=" << kappa << (v == Variant::A ? " A" : " B") << ": Pop " << pop << " vs "
             << want_pop << ", PartyA " << a << " vs " << want_a;
          misses.push_back(os.str());
        }
      }
  std::vector<std::string> parts{"Pop closed form " + frac(pop_ok, total), "PartyA closed form " + frac(a_ok, total),
                                 "N-Vote-C side " + frac(vote_ok, total)};
  parts.insert(parts.end(), misses.begin(), misses.end());
  return {pop_ok == total && a_ok == total && vote_ok == total, cat(parts)};
}

// 6
Outcome mis_structure() {
  std::vector<std::string> parts;
  bool ok = true;
  for (const auto& [name, G] : {std::pair{"K4", kK4}, std::pair{"Q3", kQ3}}) {
    auto g = gen_mis_gadget(G, Rational(1, 4));
    std::size_t n = static_cast<std::size_t>(G.n);
    bool here = g.map.size() == 19 * n / 2 && g.map.edge_count() == 10 * n && g.map.kappa() == static_cast<int>(9 * n / 2);
    ok = ok && here;
    parts.push_back(std::string(name) + " " + std::to_string(g.map.size()) + "/" + std::to_string(g.map.edge_count()) +
                    "/" + std::to_string(g.map.kappa()));
  }
  return {ok, cat(parts)};
}

// 7
Outcome upsilon_check() {
  const Rational eps(1, 4);
  std::size_t sets = 0, equal = 0;
  for (const auto& G : {kK4, kQ3}) {
    auto g = gen_mis_gadget(G, eps);
    Rational delta = Rational(1, 100) / (Rational(G.n) * G.n * G.n);
    for (const auto& s : maximal_independent_sets(G)) {
      if (s.size() > 4) continue;
      ++sets;
      Plan p = plan_from_independent_set(g, s);
      Rational got = signed_wasted(g.map, p) / g.denom;
      equal += got == upsilon(Rational(static_cast<std::int64_t>(s.size())), Rational(G.n), eps, delta) ? 1 : 0;
    }
  }
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<std::int64_t> small(1, 50), big(1, 1000);
  std::size_t ident = 0;
  for (int i = 0; i < 100; ++i) {
    Rational mu(small(rng)), n(small(rng)), e(big(rng), 2001), d(small(rng), big(rng) * 100);
    if (upsilon(mu - 1, n, e, d) - upsilon(mu, n, e, d) == -3 - 3 * e / 2 + 3 * d) ++ident;
  }
  return {sets > 0 && equal == sets && ident == 100,
          "canonical plans matching upsilon " + frac(equal, sets) + " (K4 and Q3 maximal independent sets); "
          "difference identity " + frac(ident, 100)};
}

// 8
Outcome node_tiling() {
  std::vector<std::string> parts;
  bool ok = true;
  for (const auto& [name, G] : {std::pair{"K4", kK4}, std::pair{"Q3", kQ3}}) {
    auto g = gen_mis_gadget(G, Rational(1, 4));
    auto lt = local_tilings(g, {0});
    std::size_t edge_blocks = 0, bad_blocks = 0;
    for (const auto& pat : lt.patterns)
      for (const auto& block : pat) {
        std::size_t edges = 0, terminals = 0;
        for (const auto& id : block) {
          if (id[0] == 'u') ++edges;
          else if (id.find(',') != std::string::npos) ++terminals;
        }
        if (edges == 0) continue;
        ++edge_blocks;
        bool fine = edges == 1 && (block.size() == 1 || (block.size() == 2 && terminals == 1));
        bad_blocks += fine ? 0 : 1;
      }
    ok = ok && lt.patterns.size() == 2 && bad_blocks == 0 && edge_blocks > 0;
    parts.push_back(std::string(name) + ": " + std::to_string(lt.patterns.size()) + " patterns, " +
                    std::to_string(bad_blocks) + "/" + std::to_string(edge_blocks) + " edge-node blocks off-shape");
  }
  return {ok, cat(parts)};
}

// 9
Outcome bias() {
  std::mt19937_64 rng(909);
  std::size_t zero = 0, tried = 0;
  while (tried < 20) {
    int rows = 2 + static_cast<int>(rng() % 3), cols = 2 + static_cast<int>(rng() % 3);
    std::vector<GridCellSpec> cells;
    std::int64_t total = 0;
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        std::int64_t p = 1 + static_cast<std::int64_t>(rng() % 9);
        cells.push_back({r, c, p, 0});
        total += p;
      }
    if (total % 2) continue;
    std::int64_t need = total / 2;
    for (auto& c : cells) {
      std::int64_t take = std::min(c.pop, need);
      if (take > 0) take = std::uniform_int_distribution<std::int64_t>(take / 2, take)(rng);
      c.party_a = take;
      need -= take;
    }
    for (auto& c : cells) {
      std::int64_t add = std::min(c.pop - c.party_a, need);
      c.party_a += add;
      need -= add;
    }
    auto m = build_grid_map(rows, cols, cells, 2);
    if (2 * m.total_party_a() != m.total_pop()) continue;
    ++tried;
    Plan p = initial_plan(m, BalanceCriterion::additive(total), tried);
    zero += partisan_bias(m, p, ShiftModel::uniform()) == 0 ? 1 : 0;
  }
  bool rejected = false;
  try {
    resolve_shift(ShiftModel::explicit_betas({Rational(1, 10), Rational(1, 10)}), Rational(1, 10), 2);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::InvalidShift;
  }
  std::size_t sums = 0;
  for (int i = 0; i < 50; ++i) {
    Rational alpha(static_cast<std::int64_t>(rng() % 100), 1 + static_cast<std::int64_t>(rng() % 97));
    int kappa = 2 + static_cast<int>(rng() % 9);
    Rational s = 0;
    for (const auto& b : resolve_shift(ShiftModel::uniform(), alpha, kappa)) s += b;
    sums += s == alpha ? 1 : 0;
  }
  return {zero == 20 && rejected && sums == 50, "bias 0 on " + frac(zero, 20) + " balanced maps; bad explicit shift " +
                                                    (rejected ? "rejected" : "accepted") + "; uniform sums " + frac(sums, 50)};
}

// 10
Outcome compactness() {
  std::vector<GridCellSpec> cells;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) cells.push_back({r, c, 1, 0});
  auto m = build_grid_map(6, 6, cells, 2);
  auto block = [&](int rows, int cols) {
    std::vector<int> ids;
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) ids.push_back(*m.at(r, c));
    return polsby_popper(m, ids);
  };
  std::size_t squares = 0;
  PiScaled smallest_square{Rational(1), true};
  for (int k = 1; k <= 6; ++k) {
    auto s = block(k, k);
    // 4 pi k^2 / (4k)^2
    squares += s == PiScaled::pi_times(Rational(4 * k * k, 16 * k * k)) ? 1 : 0;
    if (s.coeff < smallest_square.coeff) smallest_square = s;
  }
  auto strip = block(1, 4);
  bool strip_ok = strip == PiScaled::pi_times(Rational(16, 100));
  bool ordered = strip.coeff < smallest_square.coeff;
  return {squares == 6 && strip_ok && ordered, "squares at pi/4 " + frac(squares, 6) + "; strip " + strip.to_string() +
                                                   "; square > strip " + (ordered ? "yes" : "no")};
}

// 11
Outcome optimizer() {
  std::size_t hit = 0, trace_plans = 0, bad_trace = 0;
  const auto crit = BalanceCriterion::mult(Rational(1, 2));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(1100 + seed);
    auto m = oracle::random_grid(rng, 4, 4, 3, 9);
    auto ex = enumerate_plans(m, crit, Objective::effgap_min());
    if (!ex.best_value) return {false, "instance " + std::to_string(seed) + " has no valid plan"};
    SearchParams sp;
    sp.seed = seed;
    sp.restarts = 20;
    sp.max_iters = 400;
    sp.anneal = Anneal{Rational(2), Rational(99, 100)};
    sp.record_plans = true;
    auto res = optimize(m, crit, Objective::effgap_min(), sp);
    hit += res.value && *res.value == *ex.best_value ? 1 : 0;
    for (const auto& t : res.trace) {
      if (!t.plan) continue;
      ++trace_plans;
      bad_trace += oracle_valid(m, *t.plan, crit) ? 0 : 1;
    }
  }
  return {hit >= 9 && bad_trace == 0 && trace_plans > 0,
          "annealing, 20 restarts x 400 iterations: optimum reached on " + frac(hit, 10) + " instances; invalid trace plans " + frac(bad_trace, trace_plans)};
}

// 12
Outcome round_trip() {
  std::mt19937_64 rng(1212);
  std::size_t same = 0, with_pq = 0;
  for (int i = 0; i < 50; ++i) {
    auto make = [&]() {
      if (i % 2 == 0) return oracle::random_grid(rng, 1 + static_cast<int>(rng() % 4), 2 + static_cast<int>(rng() % 4), 2, 1000);
      std::vector<PlanarCellSpec> cells;
      std::vector<std::pair<std::string, std::string>> edges;
      int n = 3 + static_cast<int>(rng() % 6);
      for (int v = 0; v < n; ++v) {
        std::int64_t p = 1 + static_cast<std::int64_t>(rng() % 50);
        cells.push_back({"c" + std::to_string(v), p, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p + 1))});
        if (v > 0) edges.emplace_back("c" + std::to_string(rng() % static_cast<std::uint64_t>(v)), "c" + std::to_string(v));
      }
      return build_planar_map(cells, edges, 2);
    };
    MapInstance m = make();
    json gadget = nullptr;
    if (rng() % 2) {
      m = m.with_scale(Rational(1 + static_cast<std::int64_t>(rng() % 20), 2 + static_cast<std::int64_t>(rng() % 20)));
      gadget = json{{"kind", "note"}, {"epsilon", rational_to_json(Rational(1, 3 + static_cast<std::int64_t>(rng() % 9)))}};
    }
    std::string text = map_to_json(m, gadget).dump();
    with_pq += text.find("/") != std::string::npos ? 1 : 0;
    auto back = map_from_json(json::parse(text));
    std::vector<int> labels(m.size());
    for (auto& l : labels) l = 1 + static_cast<int>(rng() % 2);
    labels[0] = 1;
    labels[1] = 2;
    auto pf = to_plan_file(m, Plan(labels));
    std::string ptext = plan_file_to_json(pf).dump();
    auto pback = plan_file_from_json(json::parse(ptext));
    bool ok = back.map == m && back.gadget == gadget && map_to_json(back.map, back.gadget).dump() == text &&
              pback == pf && plan_file_to_json(pback).dump() == ptext && to_plan(back.map, pback) == Plan(labels);
    same += ok ? 1 : 0;
  }
  return {same == 50 && with_pq > 0, "identical after parse(serialize) " + frac(same, 50) + "; documents with P/Q fields " +
                                         std::to_string(with_pq)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "efficiency-gap identity", 60, effgap_identity},
      {2, "enumerator vs naive filter", 120, enumerator_oracle},
      {3, "seat-vote completeness plan", 1, completeness},
      {4, "seat-vote soundness", 600, soundness},
      {5, "seat-vote aggregates", 1, aggregates},
      {6, "MIS gadget structure", 1, mis_structure},
      {7, "upsilon cross-check", 60, upsilon_check},
      {8, "node-gadget tiling", 60, node_tiling},
      {9, "partisan bias", 1, bias},
      {10, "compactness", 1, compactness},
      {11, "optimizer vs enumerator", 120, optimizer},
      {12, "file round-trip", 1, round_trip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < c.limit_s;
    bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs, limit %gs%s", secs, c.limit_s, in_time ? "" : " EXCEEDED");
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " (" << timing << ")"
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
