#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gerry/model.hpp"
#include "gerry/validity.hpp"

namespace gerry {

struct MetricsReport {
  Rational n_seat_c_a;
  Rational n_seat_m_a;
  Rational n_vote_c_a;
  Rational n_vote_m_a;
  std::int64_t effgap_x2 = 0;
  Rational effgap_normalized;
  std::int64_t raw_seats_a = 0;

  Rational n_seat_c_b() const { return 1 - n_seat_c_a; }
  Rational n_vote_c_b() const { return 1 - n_vote_c_a; }
};

/// Signed sum of (wasted_a_x2 - wasted_b_x2) over districts.
inline std::int64_t signed_wasted_x2(const std::vector<DistrictStats>& ds) {
  std::int64_t s = 0;
  for (const auto& d : ds) s += d.wasted_a_x2 - d.wasted_b_x2;
  return s;
}

inline MetricsReport report_from_stats(const std::vector<DistrictStats>& ds, std::int64_t total_pop,
                                       std::int64_t total_a) {
  MetricsReport r;
  auto kappa = static_cast<std::int64_t>(ds.size());
  for (const auto& d : ds) r.raw_seats_a += d.winner == Party::A ? 1 : 0;
  r.n_seat_c_a = Rational(r.raw_seats_a, kappa);
  r.n_seat_m_a = r.n_seat_c_a - Rational(1, 2);
  r.n_vote_c_a = Rational(total_a, total_pop);
  r.n_vote_m_a = r.n_vote_c_a - Rational(1, 2);
  std::int64_t s = signed_wasted_x2(ds);
  r.effgap_x2 = s < 0 ? -s : s;
  r.effgap_normalized = Rational(r.effgap_x2, 2 * total_pop);
  return r;
}

inline MetricsReport metrics_report(const MapInstance& map, const Plan& plan,
                                    Party tie_pref = Party::A) {
  return report_from_stats(district_stats(map, plan, tie_pref), map.total_pop(),
                           map.total_party_a());
}

inline Rational effgap_identity_residual(const MapInstance& map, const Plan& plan,
                                         Party tie_pref = Party::A) {
  auto ds = district_stats(map, plan, tie_pref);
  for (const auto& d : ds)
    if (d.pop != ds.front().pop)
      fail(ErrorCode::PreconditionUnequalDistricts, "district populations differ");
  MetricsReport r = report_from_stats(ds, map.total_pop(), map.total_party_a());
  return abs(r.effgap_normalized - abs(2 * r.n_vote_m_a - r.n_seat_m_a));
}

/// Population-shift model for the bias metric.
struct ShiftModel {
  enum class Kind { Uniform, Explicit };
  Kind kind = Kind::Uniform;
  std::vector<Rational> betas;

  static ShiftModel uniform() { return {}; }
  static ShiftModel explicit_betas(std::vector<Rational> b) { return {Kind::Explicit, std::move(b)}; }
};

/// Per-district betas; Explicit ones must be kappa values in [0,1] summing to alpha.
inline std::vector<Rational> resolve_shift(const ShiftModel& shift, const Rational& alpha, int kappa) {
  if (shift.kind == ShiftModel::Kind::Uniform)
    return std::vector<Rational>(static_cast<std::size_t>(kappa), alpha / kappa);
  if (shift.betas.size() != static_cast<std::size_t>(kappa))
    fail(ErrorCode::InvalidShift, "explicit shift needs exactly kappa betas");
  Rational sum = 0;
  for (const auto& b : shift.betas) {
    if (b < 0 || b > 1) fail(ErrorCode::InvalidShift, "beta outside [0,1]");
    sum += b;
  }
  if (sum != alpha)
    fail(ErrorCode::InvalidShift, "betas sum to " + to_string(sum) + ", alpha is " + to_string(alpha));
  return shift.betas;
}

/// Works on district (pop, party_a) sums so search code can reuse it.
inline Rational partisan_bias_from_sums(std::span<const std::int64_t> pops,
                                        std::span<const std::int64_t> as, std::int64_t total_pop,
                                        std::int64_t total_a, const ShiftModel& shift,
                                        Party tie_pref) {
  std::int64_t total_b = total_pop - total_a;
  if (total_a < total_b) fail(ErrorCode::AssumptionViolated, "PartyA(S) < PartyB(S)");
  int kappa = static_cast<int>(pops.size());
  Rational alpha(total_a - total_b, total_pop);
  auto betas = resolve_shift(shift, alpha, kappa);
  std::int64_t seats = 0, shifted_seats = 0;
  for (std::size_t j = 0; j < pops.size(); ++j) {
    Party w = stats_from_sums(pops[j], as[j], tie_pref).winner;
    seats += w == Party::A ? 1 : 0;
    Rational a = Rational(as[j]) - betas[j] * total_pop;
    if (a < 0 || a > pops[j])
      fail(ErrorCode::ShiftInfeasible, "district " + std::to_string(j + 1) +
                                           ": shifted party A count " + to_string(a) +
                                           " leaves [0, " + std::to_string(pops[j]) + "]");
    Rational twice = 2 * a;
    Party sw = twice > pops[j] ? Party::A : (twice < pops[j] ? Party::B : tie_pref);
    shifted_seats += sw == Party::A ? 1 : 0;
  }
  return abs(Rational(shifted_seats - seats, kappa));
}

inline Rational partisan_bias(const MapInstance& map, const Plan& plan, const ShiftModel& shift,
                              Party tie_pref = Party::A) {
  auto ds = district_stats(map, plan, tie_pref);
  std::vector<std::int64_t> pops, as;
  for (const auto& d : ds) {
    pops.push_back(d.pop);
    as.push_back(d.party_a);
  }
  return partisan_bias_from_sums(pops, as, map.total_pop(), map.total_party_a(), shift, tie_pref);
}

struct SeatVoteConfig {
  Rational rho = 1;
  Party tie_pref = Party::A;
};

/// factor = power^(1/root). Exact comparisons go through the q-th power.
struct SeatVoteFactor {
  Rational power;
  unsigned root = 1;
  bool infinite = false;
  bool from_eq2_prime = false;

  double value() const {
    if (infinite) return std::numeric_limits<double>::infinity();
    return std::pow(to_double(power), 1.0 / root);
  }

  std::optional<Rational> exact() const {
    if (infinite) return std::nullopt;
    if (root == 1) return power;
    BigInt n = iroot_floor(num(power), root), d = iroot_floor(den(power), root);
    if (boost::multiprecision::pow(n, root) == num(power) &&
        boost::multiprecision::pow(d, root) == den(power))
      return Rational(n, d);
    return std::nullopt;
  }

  /// factor <= bound, exactly.
  bool at_most(const Rational& bound) const {
    if (infinite) return false;
    return power <= pow(bound, root);
  }

  /// Exact ordering across possibly different roots.
  bool operator<(const SeatVoteFactor& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return pow(power, o.root) < pow(o.power, root);
  }
  bool operator==(const SeatVoteFactor& o) const {
    if (infinite || o.infinite) return infinite == o.infinite;
    return pow(power, o.root) == pow(o.power, root);
  }
};

inline SeatVoteFactor seat_vote_factor_from_counts(std::int64_t seats_a, std::int64_t seats_b,
                                                   std::int64_t total_pop, std::int64_t total_a,
                                                   const Rational& rho) {
  if (rho <= 0) fail(ErrorCode::InvalidArgument, "rho must be positive");
  std::int64_t total_b = total_pop - total_a;
  if (total_b == 0) fail(ErrorCode::PartyBEmpty, "PartyB(S) = 0");
  SeatVoteFactor f;
  if (seats_b == 0) {
    f.from_eq2_prime = true;
    if (total_a == 0) f.infinite = true;
    else f.power = Rational(total_pop, total_a);
    return f;
  }
  if (seats_a == 0) {
    f.infinite = true;
    return f;
  }
  auto p = static_cast<unsigned>(num(rho));
  auto q = static_cast<unsigned>(den(rho));
  Rational rq = pow(Rational(seats_a, seats_b), q);
  Rational tq = total_a == 0 ? Rational(0) : pow(Rational(total_a, total_b), p);
  if (tq == 0) {
    f.infinite = true;
    return f;
  }
  f.root = q;
  f.power = rq > tq ? rq / tq : tq / rq;
  if (f.root != 1 && f.power == 1) f.root = 1;
  return f;
}

/// Finite-instance surrogate of the asymptotic seat-vote approximation factor.
inline SeatVoteFactor seat_vote_factor(const MapInstance& map, const Plan& plan,
                                       const SeatVoteConfig& cfg) {
  if (map.total_party_b() == 0) fail(ErrorCode::PartyBEmpty, "PartyB(S) = 0");
  auto ds = district_stats(map, plan, cfg.tie_pref);
  std::int64_t sa = 0;
  for (const auto& d : ds) sa += d.winner == Party::A ? 1 : 0;
  return seat_vote_factor_from_counts(sa, static_cast<std::int64_t>(ds.size()) - sa,
                                      map.total_pop(), map.total_party_a(), cfg.rho);
}

/// coeff, times pi when has_pi.
struct PiScaled {
  Rational coeff;
  bool has_pi = false;

  static PiScaled pi_times(const Rational& r) { return {r, true}; }
  double value() const { return to_double(coeff) * (has_pi ? std::numbers::pi : 1.0); }
  std::string to_string() const {
    return has_pi ? gerry::to_string(coeff) + "*pi" : gerry::to_string(coeff);
  }
  bool operator==(const PiScaled&) const = default;
};

inline bool operator<=(const PiScaled& a, const PiScaled& b) {
  if (a.has_pi != b.has_pi)
    fail(ErrorCode::InvalidArgument, "cannot compare a pi multiple with a plain rational exactly");
  return a.coeff <= b.coeff;
}

/// c * A / B^2 with A = cells and B = unit boundary edges.
inline PiScaled polsby_popper(const MapInstance& map, std::span<const int> cells,
                              const PiScaled& c = PiScaled::pi_times(4)) {
  if (map.topology() != Topology::Grid)
    fail(ErrorCode::PlanarTopologyUnsupported, "perimeter is undefined without grid geometry");
  if (!is_connected(map, cells)) fail(ErrorCode::DisconnectedDistrict, "district is not connected");
  std::vector<char> in(map.size(), 0);
  for (int x : cells) in[static_cast<std::size_t>(x)] = 1;
  std::int64_t area = 0, boundary = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!in[i]) continue;
    ++area;
    int shared = 0;
    for (int v : map.neighbors(static_cast<int>(i))) shared += in[static_cast<std::size_t>(v)] ? 1 : 0;
    boundary += 4 - shared;
  }
  return {c.coeff * Rational(area, boundary * boundary), c.has_pi};
}

inline std::vector<bool> compactness_check(const MapInstance& map, const Plan& plan, const PiScaled& l1,
                                           const PiScaled& l2,
                                           const PiScaled& c = PiScaled::pi_times(4)) {
  if (l1.has_pi != l2.has_pi || l1.has_pi != c.has_pi)
    fail(ErrorCode::InvalidArgument, "bounds and constant must agree on the pi factor");
  if (l2.coeff < l1.coeff) fail(ErrorCode::InvalidArgument, "empty bound: L1 > L2");
  std::vector<bool> out;
  for (const auto& cells : district_cells(map, plan)) {
    PiScaled s = polsby_popper(map, cells, c);
    out.push_back(l1 <= s && s <= l2);
  }
  return out;
}

}  // namespace gerry
