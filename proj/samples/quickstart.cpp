// Enumerate a small map, pick the fairest plan, and score it.

#include <iostream>

#include "gerry/gerry.hpp"

using namespace gerry;

int main() {
  // 3x3 grid, 3 districts; party_a counts skew toward the left column
  std::vector<GridCellSpec> cells;
  const std::int64_t a[3][3] = {{8, 6, 3}, {7, 5, 3}, {9, 6, 2}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) cells.push_back({r, c, 10, a[r][c]});
  MapInstance map = build_grid_map(3, 3, cells, 3);

  auto crit = BalanceCriterion::strict();
  auto res = enumerate_plans(map, crit, Objective::effgap_min());
  std::cout << res.count << " valid plans, best effgap " << res.best_value->to_string() << "\n";

  const Plan& best = res.best_plans.front();
  auto m = metrics_report(map, best);
  std::cout << "seats A " << m.raw_seats_a << " of " << map.kappa() << ", effgap/Pop " << to_string(m.effgap_normalized) << "\n";
  std::cout << "bias (uniform shift) " << to_string(partisan_bias(map, best, ShiftModel::uniform())) << "\n";
  std::cout << plan_file_to_json(to_plan_file(map, best)).dump(2) << "\n";
}
