#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gerry/model.hpp"

namespace gerry {

/// Population balance rule for a plan.
struct BalanceCriterion {
  enum class Kind { Strict, MultiplicativeRatio, AdditiveSlack, AdditivePolynomial };

  Kind kind = Kind::Strict;
  Rational param = 0;  // epsilon, delta or c depending on kind

  static BalanceCriterion strict() { return {Kind::Strict, 0}; }
  static BalanceCriterion mult(const Rational& eps) {
    if (eps < 0) fail(ErrorCode::InvalidArgument, "epsilon must be non-negative");
    return {Kind::MultiplicativeRatio, eps};
  }
  static BalanceCriterion additive(std::int64_t delta) {
    if (delta < 0) fail(ErrorCode::InvalidArgument, "delta must be non-negative");
    return {Kind::AdditiveSlack, delta};
  }
  static BalanceCriterion polynomial(const Rational& c) {
    if (c <= 1) fail(ErrorCode::InvalidArgument, "polynomial exponent must exceed 1");
    return {Kind::AdditivePolynomial, c};
  }

  /// strict | mult:EPS | add:DELTA | poly:C
  std::string to_string() const {
    switch (kind) {
      case Kind::Strict: return "strict";
      case Kind::MultiplicativeRatio: return "mult:" + gerry::to_string(param);
      case Kind::AdditiveSlack: return "add:" + gerry::to_string(param);
      case Kind::AdditivePolynomial: return "poly:" + gerry::to_string(param);
    }
    return "strict";
  }

  static BalanceCriterion parse(const std::string& s) {
    if (s == "strict") return strict();
    auto colon = s.find(':');
    if (colon == std::string::npos) fail(ErrorCode::ParseError, "bad balance criterion '" + s + "'");
    std::string kind = s.substr(0, colon);
    Rational v = parse_rational(s.substr(colon + 1));
    if (kind == "mult") return mult(v);
    if (kind == "add") {
      if (!is_integer(v)) fail(ErrorCode::InvalidArgument, "additive slack must be an integer");
      return additive(to_int64(num(v)));
    }
    if (kind == "poly") return polynomial(v);
    fail(ErrorCode::ParseError, "bad balance criterion '" + s + "'");
  }

  bool operator==(const BalanceCriterion&) const = default;
};

struct PopWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool contains(std::int64_t p) const { return p >= lo && p <= hi; }
};

/// A criterion bound to a concrete map: total population, kappa and |cells|.
class ResolvedBalance {
 public:
  ResolvedBalance(const BalanceCriterion& c, std::int64_t total, int kappa, std::size_t ncells)
      : kind_(c.kind), total_(total), kappa_(kappa) {
    floor_q_ = total / kappa;
    ceil_q_ = floor_q_ + (total % kappa != 0 ? 1 : 0);
    switch (c.kind) {
      case BalanceCriterion::Kind::Strict:
        break;
      case BalanceCriterion::Kind::MultiplicativeRatio:
        eps_num_ = to_int64(num(c.param));
        eps_den_ = to_int64(den(c.param));
        break;
      case BalanceCriterion::Kind::AdditiveSlack:
        delta_ = to_int64(num(c.param));
        break;
      case BalanceCriterion::Kind::AdditivePolynomial: {
        BigInt d = floor_pow(BigInt(ncells), c.param);
        delta_ = d > std::numeric_limits<std::int64_t>::max() / 4
                     ? std::numeric_limits<std::int64_t>::max() / 4
                     : static_cast<std::int64_t>(d);
        break;
      }
    }
  }

  /// Slack for the additive kinds (floor(|S|^c) for the polynomial one).
  std::int64_t delta() const { return delta_; }

  /// Exact test on the extreme district populations of a plan.
  bool ok(std::int64_t min_pop, std::int64_t max_pop) const {
    switch (kind_) {
      case BalanceCriterion::Kind::Strict:
        return min_pop >= floor_q_ && max_pop <= ceil_q_;
      case BalanceCriterion::Kind::MultiplicativeRatio:
        return static_cast<__int128>(max_pop) * eps_den_ <=
               static_cast<__int128>(min_pop) * (eps_den_ + eps_num_);
      case BalanceCriterion::Kind::AdditiveSlack:
      case BalanceCriterion::Kind::AdditivePolynomial:
        return static_cast<__int128>(max_pop) - min_pop <= delta_;
    }
    return false;
  }

  /// Per-district bounds every valid plan must respect.
  PopWindow necessary() const {
    using I = __int128;
    I P = total_, k = kappa_;
    I lo = 0, hi = P;
    switch (kind_) {
      case BalanceCriterion::Kind::Strict:
        lo = floor_q_;
        hi = ceil_q_;
        break;
      case BalanceCriterion::Kind::MultiplicativeRatio: {
        I a = eps_num_, b = eps_den_;
        hi = (b + a) * P / (b * k);
        I n = b * P, d = k * (a + b);
        lo = (n + d - 1) / d;
        break;
      }
      case BalanceCriterion::Kind::AdditiveSlack:
      case BalanceCriterion::Kind::AdditivePolynomial: {
        I n = P - k * delta_;
        lo = n <= 0 ? 0 : (n + k - 1) / k;
        hi = (P + k * delta_) / k;
        break;
      }
    }
    lo = std::max<I>(lo, 0);
    hi = std::min<I>(hi, P);
    return {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
  }

  /// A window around Pop/kappa inside which any plan is balanced.
  PopWindow sufficient() const {
    std::int64_t lo = floor_q_, hi = ceil_q_;
    switch (kind_) {
      case BalanceCriterion::Kind::Strict:
        break;
      case BalanceCriterion::Kind::MultiplicativeRatio: {
        using I = __int128;
        I a = eps_num_, b = eps_den_;
        I w = ((a + b) * floor_q_ - b * ceil_q_) / (a + 2 * b);
        if (w > 0) {
          lo -= static_cast<std::int64_t>(w);
          hi += static_cast<std::int64_t>(w);
        }
        break;
      }
      case BalanceCriterion::Kind::AdditiveSlack:
      case BalanceCriterion::Kind::AdditivePolynomial: {
        std::int64_t s = delta_ - (ceil_q_ - floor_q_);
        if (s > 0) {
          s = std::min<std::int64_t>(s, 2 * total_);
          lo -= s / 2;
          hi += s - s / 2;
        }
        break;
      }
    }
    return {std::max<std::int64_t>(lo, 0), hi};
  }

 private:
  BalanceCriterion::Kind kind_;
  std::int64_t total_;
  int kappa_;
  std::int64_t floor_q_ = 0;
  std::int64_t ceil_q_ = 0;
  std::int64_t eps_num_ = 0;
  std::int64_t eps_den_ = 1;
  std::int64_t delta_ = 0;
};

inline ResolvedBalance resolve(const BalanceCriterion& c, const MapInstance& map) {
  return ResolvedBalance(c, map.total_pop(), map.kappa(), map.size());
}

/// True when the cells induce a connected subgraph.
inline bool is_connected(const MapInstance& map, std::span<const int> cells) {
  if (cells.empty()) fail(ErrorCode::InvalidArgument, "empty cell set");
  std::vector<char> in(map.size(), 0), seen(map.size(), 0);
  for (int c : cells) {
    if (c < 0 || static_cast<std::size_t>(c) >= map.size())
      fail(ErrorCode::UnknownCell, "cell index " + std::to_string(c) + " not in map");
    in[static_cast<std::size_t>(c)] = 1;
  }
  std::vector<int> stack{cells[0]};
  seen[static_cast<std::size_t>(cells[0])] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : map.neighbors(u)) {
      auto vi = static_cast<std::size_t>(v);
      if (in[vi] && !seen[vi]) {
        seen[vi] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  std::size_t distinct = 0;
  for (char f : in) distinct += f ? 1 : 0;
  return reached == distinct;
}

struct Offense {
  int district = 0;
  std::string reason;
  bool operator==(const Offense&) const = default;
};

struct ValidityReport {
  bool connected_ok = true;
  bool balance_ok = true;
  std::int64_t max_pop = 0;
  std::int64_t min_pop = 0;
  std::vector<Offense> offending;

  bool valid() const { return connected_ok && balance_ok; }
};

inline ValidityReport check_plan(const MapInstance& map, const Plan& plan,
                                 const BalanceCriterion& criterion) {
  auto groups = district_cells(map, plan);
  ResolvedBalance rb = resolve(criterion, map);
  ValidityReport r;
  std::vector<std::int64_t> pops;
  for (std::size_t d = 0; d < groups.size(); ++d) {
    std::int64_t p = 0;
    for (int c : groups[d]) p += map.cell(c).pop;
    pops.push_back(p);
    if (!is_connected(map, groups[d])) {
      r.connected_ok = false;
      r.offending.push_back({static_cast<int>(d) + 1, "disconnected"});
    }
  }
  r.min_pop = *std::min_element(pops.begin(), pops.end());
  r.max_pop = *std::max_element(pops.begin(), pops.end());
  r.balance_ok = rb.ok(r.min_pop, r.max_pop);
  if (!r.balance_ok) {
    if (criterion.kind == BalanceCriterion::Kind::Strict) {
      PopWindow w = rb.necessary();
      for (std::size_t d = 0; d < pops.size(); ++d)
        if (!w.contains(pops[d])) r.offending.push_back({static_cast<int>(d) + 1, "population"});
    } else {
      for (std::size_t d = 0; d < pops.size(); ++d)
        if (pops[d] == r.min_pop || pops[d] == r.max_pop)
          r.offending.push_back({static_cast<int>(d) + 1, "population"});
    }
  }
  return r;
}

}  // namespace gerry
