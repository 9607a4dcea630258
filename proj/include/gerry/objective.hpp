#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gerry/metrics.hpp"

namespace gerry {

/// What enumerate_plans and optimize rank plans by.
struct Objective {
  enum class Kind { EffGapMin, EffGapMax, SeatsAMax, SeatsAMin, SeatVoteFactorMin, BiasMin };

  Kind kind = Kind::EffGapMin;
  Rational rho = 1;  // SeatVoteFactorMin
  ShiftModel shift;  // BiasMin
  Party tie_pref = Party::A;

  static Objective effgap_min() { return {Kind::EffGapMin, 1, {}}; }
  static Objective effgap_max() { return {Kind::EffGapMax, 1, {}}; }
  static Objective seats_a_max() { return {Kind::SeatsAMax, 1, {}}; }
  static Objective seats_a_min() { return {Kind::SeatsAMin, 1, {}}; }
  static Objective seat_vote_min(const Rational& rho) {
    if (rho <= 0) fail(ErrorCode::InvalidArgument, "rho must be positive");
    return {Kind::SeatVoteFactorMin, rho, {}};
  }
  static Objective bias_min(ShiftModel s = ShiftModel::uniform()) {
    return {Kind::BiasMin, 1, std::move(s)};
  }

  bool maximize() const { return kind == Kind::EffGapMax || kind == Kind::SeatsAMax; }

  /// effgap-min | effgap-max | seats-a-max | seats-a-min | seatvote-min:RHO | bias-min
  std::string to_string() const {
    switch (kind) {
      case Kind::EffGapMin: return "effgap-min";
      case Kind::EffGapMax: return "effgap-max";
      case Kind::SeatsAMax: return "seats-a-max";
      case Kind::SeatsAMin: return "seats-a-min";
      case Kind::SeatVoteFactorMin: return "seatvote-min:" + gerry::to_string(rho);
      case Kind::BiasMin: return "bias-min";
    }
    return "";
  }

  static Objective parse(const std::string& s) {
    if (s == "effgap-min") return effgap_min();
    if (s == "effgap-max") return effgap_max();
    if (s == "seats-a-max") return seats_a_max();
    if (s == "seats-a-min") return seats_a_min();
    if (s == "bias-min") return bias_min();
    if (s.rfind("seatvote-min:", 0) == 0) return seat_vote_min(parse_rational(s.substr(13)));
    fail(ErrorCode::ParseError, "unknown objective '" + s + "'");
  }
};

/// Effgap in votes, seats, bias, or factor^q for the seat-vote objective.
struct ObjectiveValue {
  Rational value;
  bool infinite = false;

  std::string to_string() const { return infinite ? "inf" : gerry::to_string(value); }
  double to_double() const {
    return infinite ? std::numeric_limits<double>::infinity() : gerry::to_double(value);
  }
  bool operator==(const ObjectiveValue&) const = default;
};

/// Strictly better under the objective's direction.
inline bool better(const Objective& obj, const ObjectiveValue& a, const ObjectiveValue& b) {
  if (a.infinite || b.infinite) return !a.infinite && b.infinite;
  return obj.maximize() ? a.value > b.value : a.value < b.value;
}

/// Value as a quantity to minimise (negated for max objectives).
inline double minimised(const Objective& obj, const ObjectiveValue& v) {
  double d = v.to_double();
  return obj.maximize() ? -d : d;
}

/// nullopt when the objective is undefined for the plan (e.g. an infeasible shift).
inline std::optional<ObjectiveValue> evaluate_sums(const Objective& obj,
                                                   std::span<const std::int64_t> pops,
                                                   std::span<const std::int64_t> as,
                                                   std::int64_t total_pop, std::int64_t total_a) {
  switch (obj.kind) {
    case Objective::Kind::EffGapMin:
    case Objective::Kind::EffGapMax: {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < pops.size(); ++j) {
        auto d = stats_from_sums(pops[j], as[j], obj.tie_pref);
        s += d.wasted_a_x2 - d.wasted_b_x2;
      }
      return ObjectiveValue{Rational(s < 0 ? -s : s, 2)};
    }
    case Objective::Kind::SeatsAMax:
    case Objective::Kind::SeatsAMin: {
      std::int64_t seats = 0;
      for (std::size_t j = 0; j < pops.size(); ++j)
        seats += stats_from_sums(pops[j], as[j], obj.tie_pref).winner == Party::A ? 1 : 0;
      return ObjectiveValue{Rational(seats)};
    }
    case Objective::Kind::SeatVoteFactorMin: {
      std::int64_t seats = 0;
      for (std::size_t j = 0; j < pops.size(); ++j)
        seats += stats_from_sums(pops[j], as[j], obj.tie_pref).winner == Party::A ? 1 : 0;
      SeatVoteFactor f = seat_vote_factor_from_counts(
          seats, static_cast<std::int64_t>(pops.size()) - seats, total_pop, total_a, obj.rho);
      if (f.infinite) return ObjectiveValue{0, true};
      // put every plan on the common root den(rho) so values compare directly
      unsigned q = static_cast<unsigned>(den(obj.rho));
      Rational v = f.root == q ? f.power : pow(f.power, q / f.root);
      return ObjectiveValue{v};
    }
    case Objective::Kind::BiasMin:
      try {
        return ObjectiveValue{
            partisan_bias_from_sums(pops, as, total_pop, total_a, obj.shift, obj.tie_pref)};
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ShiftInfeasible) return std::nullopt;
        throw;
      }
  }
  return std::nullopt;
}

inline std::optional<ObjectiveValue> evaluate(const Objective& obj, const MapInstance& map,
                                              const Plan& plan) {
  auto ds = district_stats(map, plan, obj.tie_pref);
  std::vector<std::int64_t> pops, as;
  for (const auto& d : ds) {
    pops.push_back(d.pop);
    as.push_back(d.party_a);
  }
  return evaluate_sums(obj, pops, as, map.total_pop(), map.total_party_a());
}

}  // namespace gerry
