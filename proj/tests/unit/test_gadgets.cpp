#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace gerry;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

const PartitionInstance kIllustration{{100, 7100, 5000, 2900, 4900}};

// Sums of the per-cell rules, written out cell by cell.
std::pair<std::int64_t, std::int64_t> cell_rule_totals(const std::vector<std::int64_t>& a, int kappa) {
  std::int64_t W = 0;
  for (auto v : a) W += v;
  const auto n = static_cast<std::int64_t>(a.size());
  int alpha = (kappa + 1) / 3, beta = alpha + kappa - 3 * alpha;
  std::int64_t pop = 0, pa = 0;
  for (int j = 0; j < alpha; ++j) {
    for (auto v : a) {
      pop += v;
      pa += v / 2 - 1;
    }
    pop += W / 2 + W / 2;
    pa += (W / 4 + 50 * n) + (W / 4 - 100 * n);
    std::int64_t light = 3 * (n + 1) - n - 2;
    pop += 2 * light;
    pa += light;
  }
  pop += beta * W;
  pa += beta * (W / 2 - 50 * n);
  return {pop, pa};
}

CubicGraph k4() { return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}}; }
CubicGraph q3() {
  CubicGraph g{8, {}};
  for (int v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b)
      if (v < (v ^ (1 << b))) g.edges.emplace_back(v, v ^ (1 << b));
  return g;
}

std::vector<std::vector<int>> maximal_independent_sets(const CubicGraph& g) {
  std::vector<std::vector<int>> out;
  auto adj = g.adjacency();
  for (int mask = 1; mask < (1 << g.n); ++mask) {
    bool indep = true, maximal = true;
    for (auto [u, v] : g.edges) indep = indep && !((mask >> u & 1) && (mask >> v & 1));
    if (!indep) continue;
    for (int v = 0; v < g.n; ++v) {
      if (mask >> v & 1) continue;
      bool blocked = false;
      for (int u : adj[static_cast<std::size_t>(v)]) blocked = blocked || (mask >> u & 1);
      maximal = maximal && blocked;
    }
    if (!maximal) continue;
    std::vector<int> s;
    for (int v = 0; v < g.n; ++v)
      if (mask >> v & 1) s.push_back(v);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(Partition, Multiplier) {
  // smallest m with m^10 >= 4^42
  BigInt target = boost::multiprecision::pow(BigInt(4), 42), m = 300;
  while (boost::multiprecision::pow(m, 10) < target) ++m;
  EXPECT_EQ(m, 338);
  EXPECT_EQ(std::ceil(std::pow(4.0, 4.2)), 338.0);
  EXPECT_EQ(partition_multiplier(4, Rational(11, 10), 2), m);
  auto rep = preprocess_partition_report({{2, 4, 6, 8}}, Rational(11, 10), 2);
  EXPECT_EQ(rep.instance.multiplier, 338);
  EXPECT_EQ(rep.instance.values, (std::vector<std::int64_t>{676, 1352, 2028, 2704}));
  EXPECT_TRUE(rep.gap_bound_ok);
  EXPECT_FALSE(rep.w_bound_ok);
}

TEST(Partition, IntegralityFactor) {
  auto rep = preprocess_partition_report({{2, 4, 6, 10}}, Rational(11, 10), 3);
  EXPECT_EQ(rep.instance.W() % 4, 0);
  for (auto v : rep.instance.values) EXPECT_EQ(v % 2, 0);
  EXPECT_EQ(rep.instance.multiplier % partition_multiplier(4, Rational(11, 10), 3), 0);
}

TEST(Partition, Assumptions) {
  EXPECT_EQ(code_of([] { check_partition_instance({{2, 2, 4}}); }), ErrorCode::AssumptionViolated);
  EXPECT_EQ(code_of([] { check_partition_instance({{1, 2, 4}}); }), ErrorCode::AssumptionViolated);
  EXPECT_EQ(code_of([] { check_partition_instance({{2, 4, 10}}); }), ErrorCode::AssumptionViolated);
  EXPECT_NO_THROW(check_partition_instance(kIllustration));
}

TEST(SeatVote, IllustrationInstance) {
  auto g = gen_seatvote_grid(kIllustration, 2, Variant::A, Rational(11, 10), true);
  EXPECT_EQ(g.W(), 20000);
  EXPECT_EQ(g.values.values, kIllustration.values);
  EXPECT_EQ(g.map.size(), 18u);
  EXPECT_EQ(g.map.edge_count(), 27u);
  auto [pop, pa] = cell_rule_totals(kIllustration.values, 2);
  EXPECT_EQ(g.map.total_pop(), pop);
  EXPECT_EQ(g.map.total_party_a(), pa);
  EXPECT_EQ(pop, 40022);
  EXPECT_EQ(pa, 19756);
}

TEST(SeatVote, MultiCopyShapes) {
  auto g = gen_seatvote_grid(kIllustration, 5, Variant::A, Rational(11, 10), true);
  EXPECT_EQ(g.alpha, 2);
  EXPECT_EQ(g.r, -1);
  EXPECT_EQ(g.beta, 1);
  EXPECT_EQ(g.map.size(), 37u);
  for (int k : {2, 3, 4, 5, 6, 7}) {
    auto h = gen_seatvote_grid(kIllustration, k, Variant::A, Rational(11, 10), true);
    EXPECT_EQ(3 * h.alpha + h.r, k);
    EXPECT_EQ(h.map.size(), static_cast<std::size_t>(18 * h.alpha + h.beta));
    auto [pop, pa] = cell_rule_totals(kIllustration.values, k);
    EXPECT_EQ(h.map.total_pop(), pop);
    EXPECT_EQ(h.map.total_party_a(), pa);
    EXPECT_LT(2 * h.map.total_party_a(), h.map.total_pop());
  }
}

TEST(SeatVote, VariantB) {
  for (int k : {2, 3, 4, 5}) {
    auto g = gen_seatvote_grid({{2, 4, 6, 8}}, k, Variant::B);
    EXPECT_GE(g.q, 1);
    EXPECT_GE(2 * g.map.total_party_a(), g.map.total_pop());
    // q is minimal: q - 1 would break the vote majority unless q = 1
    if (g.q > 1) {
      std::int64_t n = g.n(), a = g.alpha;
      EXPECT_LT((g.q - 1) * a * a * n * n + 100 * n - 51 * a * n - 50 * n * g.beta, 0);
    }
  }
}

TEST(SeatVote, InputErrors) {
  EXPECT_EQ(code_of([] { gen_seatvote_grid({{100, 7100, 5000, 2900, 4901, 3}}, 2, Variant::A, Rational(11, 10), true); }),
            ErrorCode::OddValue);
  EXPECT_EQ(code_of([] { gen_seatvote_grid(kIllustration, 1, Variant::A); }), ErrorCode::InvalidKappa);
}

TEST(SeatVote, ReferencePlans) {
  auto g = gen_seatvote_grid(kIllustration, 2, Variant::A, Rational(11, 10), true);
  const std::int64_t W = 20000, n = 5;
  auto ref = seatvote_reference_plans(g, std::vector<int>{1, 3});
  auto t = district_stats(g.map, ref.trivial);
  std::vector<std::int64_t> tp{t[0].pop, t[1].pop};
  std::sort(tp.begin(), tp.end());
  EXPECT_EQ(tp, (std::vector<std::int64_t>{W, W + 4 * n + 2}));
  auto c = district_stats(g.map, *ref.completeness);
  std::vector<std::int64_t> cp{c[0].pop, c[1].pop};
  std::sort(cp.begin(), cp.end());
  EXPECT_EQ(cp, (std::vector<std::int64_t>{W + 2 * n, W + 2 * n + 2}));
  auto crit = BalanceCriterion::polynomial(Rational(11, 10));
  EXPECT_TRUE(check_plan(g.map, ref.trivial, crit).valid());
  EXPECT_TRUE(check_plan(g.map, *ref.completeness, crit).valid());
  EXPECT_EQ(code_of([&] { seatvote_reference_plans(g, std::vector<int>{0, 1}); }), ErrorCode::NotASolution);
}

TEST(SeatVote, CompletenessAndSoundness) {
  for (Variant var : {Variant::A, Variant::B})
    for (int k : {2, 3}) {
      auto yes = gen_seatvote_grid({{2, 4, 6, 8}}, k, var);
      auto vc = verify_seatvote_gadget(yes, SeatVoteMode::completeness({0, 3}));
      EXPECT_TRUE(vc.trivial_plan_valid);
      EXPECT_TRUE(vc.completeness_holds.value_or(false)) << vc.details.dump();

      ASSERT_FALSE(oracle::has_partition({2, 4, 6, 10}));
      auto no = gen_seatvote_grid({{2, 4, 6, 10}}, k, var);
      auto vs = verify_seatvote_gadget(no, SeatVoteMode::soundness());
      EXPECT_TRUE(vs.soundness_holds.value_or(false)) << vs.details.dump();
      EXPECT_EQ(vs.details["soundness"]["connector_with_heavy_plans"], 0);
    }
}

TEST(SeatVote, SoundnessRefusesIllustration) {
  auto g = gen_seatvote_grid(kIllustration, 2, Variant::A, Rational(11, 10), true);
  EXPECT_EQ(code_of([&] { verify_seatvote_gadget(g, SeatVoteMode::soundness()); }), ErrorCode::IllustrationMode);
}

TEST(SeatVote, SoundnessBudget) {
  auto g = gen_seatvote_grid({{2, 4, 6, 10}}, 2, Variant::A);
  Budget b;
  b.max_nodes = 10;
  EXPECT_EQ(code_of([&] { verify_seatvote_gadget(g, SeatVoteMode::soundness(), b); }), ErrorCode::BudgetExceeded);
}

TEST(Mis, Structure) {
  auto a = gen_mis_gadget(k4(), Rational(1, 4));
  EXPECT_EQ(a.map.size(), 38u);
  EXPECT_EQ(a.map.edge_count(), 40u);
  EXPECT_EQ(a.map.kappa(), 18);
  auto b = gen_mis_gadget(q3(), Rational(1, 4));
  EXPECT_EQ(b.map.size(), 76u);
  EXPECT_EQ(b.map.edge_count(), 80u);
  EXPECT_EQ(b.map.kappa(), 36);
  EXPECT_EQ(b.delta, Rational(1, 51200));
  EXPECT_EQ(b.map.scale(), Rational(b.denom));
}

TEST(Mis, GraphErrors) {
  CubicGraph k5{5, {}};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5.edges.emplace_back(i, j);
  EXPECT_EQ(code_of([&] { gen_mis_gadget(k5, Rational(1, 4)); }), ErrorCode::NotCubic);
  CubicGraph two{8, {}};
  for (auto [u, v] : k4().edges) {
    two.edges.emplace_back(u, v);
    two.edges.emplace_back(u + 4, v + 4);
  }
  EXPECT_EQ(code_of([&] { gen_mis_gadget(two, Rational(1, 4)); }), ErrorCode::NotConnected);
  EXPECT_EQ(code_of([&] { gen_mis_gadget(k4(), Rational(1, 2)); }), ErrorCode::InvalidArgument);
}

TEST(Mis, NodePopulationRange) {
  for (Rational eps : {Rational(1, 4), Rational(1, 10), Rational(2, 5)}) {
    auto g = gen_mis_gadget(q3(), eps);
    Rational lo = eps / 5, hi = 1 + 2 * eps / 3;
    for (const auto& c : g.map.cells()) {
      Rational p(c.pop, g.denom);
      EXPECT_GE(p, lo);
      EXPECT_LE(p, hi);
    }
  }
}

TEST(Mis, CanonicalPlans) {
  auto g = gen_mis_gadget(q3(), Rational(1, 4));
  auto sets = maximal_independent_sets(q3());
  ASSERT_FALSE(sets.empty());
  for (const auto& s : sets) {
    Plan p = plan_from_independent_set(g, s);
    auto cells = district_cells(g.map, p);
    EXPECT_EQ(static_cast<int>(cells.size()), 36);
    EXPECT_TRUE(check_plan(g.map, p, BalanceCriterion::mult(g.epsilon)).valid());
  }
  EXPECT_EQ(code_of([&] { plan_from_independent_set(g, {0, 1}); }), ErrorCode::NotIndependent);
  EXPECT_EQ(code_of([&] { plan_from_independent_set(g, {0}); }), ErrorCode::NotMaximal);
}

TEST(Mis, UpsilonMatchesCanonicalPlans) {
  for (const auto& G : {k4(), q3()}) {
    auto g = gen_mis_gadget(G, Rational(1, 4));
    for (const auto& s : maximal_independent_sets(G)) {
      Plan p = plan_from_independent_set(g, s);
      std::int64_t sum = 0;
      for (const auto& d : district_stats(g.map, p)) sum += d.wasted_a_x2 - d.wasted_b_x2;
      Rational ups = upsilon(Rational(static_cast<std::int64_t>(s.size())), Rational(G.n), g.epsilon, g.delta);
      EXPECT_EQ(Rational(sum), 2 * g.denom * ups);
      auto v = verify_mis_gadget(g, s);
      EXPECT_TRUE(v.all_hold()) << v.details.dump();
    }
  }
}

TEST(Mis, UpsilonClosedFormAndDifference) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    Rational mu(static_cast<std::int64_t>(rng() % 50)), n(static_cast<std::int64_t>(2 + rng() % 50));
    Rational eps(static_cast<std::int64_t>(1 + rng() % 49), 100), delta(1, static_cast<std::int64_t>(1 + rng() % 100000));
    Rational closed = 3 * mu + (3 * eps / 2 - 3 * delta) * mu + (71 * delta / 2 - 3 * eps / 2 - Rational(9, 4)) * n;
    EXPECT_EQ(upsilon(mu, n, eps, delta), closed);
    EXPECT_EQ(upsilon(mu - 1, n, eps, delta) - upsilon(mu, n, eps, delta), -3 - 3 * eps / 2 + 3 * delta);
  }
  EXPECT_EQ(upsilon(3, 8, Rational(1, 4), Rational(1, 51200)) - upsilon(4, 8, Rational(1, 4), Rational(1, 51200)),
            -3 - Rational(3, 8) + Rational(3, 51200));
}

TEST(Mis, UpsilonNegativeInRange) {
  for (std::int64_t n = 4; n <= 40; n += 2)
    for (std::int64_t mu = n / 4 + 1; 2 * mu <= n; ++mu)
      for (Rational eps : {Rational(1, 20), Rational(1, 4), Rational(49, 100)})
        EXPECT_LT(upsilon(mu, n, eps, mis_delta(static_cast<int>(n))), 0) << n << " " << mu;
}

TEST(Mis, LocalTilings) {
  auto g = gen_mis_gadget(k4(), Rational(1, 4));
  for (int v = 0; v < 4; ++v) {
    auto t = local_tilings(g, {v});
    EXPECT_EQ(t.patterns.size(), 2u);
    EXPECT_TRUE(t.edge_nodes_ok);
  }
}

TEST(Transforms, Scale) {
  auto m = build_grid_map(1, 3, {{0, 0, 3, 1}, {0, 1, 5, 4}, {0, 2, 7, 0}}, 2);
  auto t = scale_populations(m, 3);
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(t.cell(static_cast<int>(i)).pop, 3 * m.cell(static_cast<int>(i)).pop);
    EXPECT_EQ(t.cell(static_cast<int>(i)).party_a, 3 * m.cell(static_cast<int>(i)).party_a);
  }
  EXPECT_EQ(t.scale(), 3);
  EXPECT_EQ(scale_populations(m, 1), m);
  EXPECT_EQ(code_of([&] { scale_populations(m, Rational(3, 2)); }), ErrorCode::NonIntegralResult);
  Plan p({1, 1, 2});
  auto a = district_stats(m, p), b = district_stats(t, p);
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a[j].winner, b[j].winner);
}

TEST(Transforms, RemoveZeroPop) {
  auto m = build_grid_map(1, 3, {{0, 0, 3, 1}, {0, 1, 5, 4}, {0, 2, 7, 0}}, 2);
  EXPECT_EQ(remove_zero_pop_cells(m), m);
  BuildOptions z{true};
  auto mid = build_grid_map(1, 3, {{0, 0, 3, 1}, {0, 1, 0, 0}, {0, 2, 7, 0}}, 2, z);
  EXPECT_EQ(code_of([&] { remove_zero_pop_cells(mid); }), ErrorCode::DisconnectedAfterRemoval);
  auto l = build_grid_map(2, 2, {{0, 0, 1, 0}, {0, 1, 1, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}}, 2, z);
  auto r = remove_zero_pop_cells(l);
  EXPECT_EQ(r.size(), 3u);
  EXPECT_EQ(r.edge_count(), 2u);
}
