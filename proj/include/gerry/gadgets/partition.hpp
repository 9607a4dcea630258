#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "gerry/rational.hpp"

namespace gerry {

/// PARTITION source instance. multiplier records any scaling applied.
struct PartitionInstance {
  std::vector<std::int64_t> values;
  std::int64_t multiplier = 1;

  std::size_t n() const { return values.size(); }
  std::int64_t W() const {
    std::int64_t s = 0;
    for (auto v : values)
      if (__builtin_add_overflow(s, v, &s)) fail(ErrorCode::Overflow, "W overflows");
    return s;
  }
  bool operator==(const PartitionInstance&) const = default;
};

/// Distinct positive values, even W, every value below W/2.
inline void check_partition_instance(const PartitionInstance& inst) {
  if (inst.values.size() < 2) fail(ErrorCode::AssumptionViolated, "need at least two values");
  std::set<std::int64_t> seen;
  for (auto v : inst.values) {
    if (v <= 0) fail(ErrorCode::AssumptionViolated, "values must be positive");
    if (!seen.insert(v).second) fail(ErrorCode::AssumptionViolated, "duplicate value " + std::to_string(v));
  }
  std::int64_t W = inst.W();
  if (W % 2 != 0) fail(ErrorCode::AssumptionViolated, "W is odd");
  if (2 * *std::max_element(inst.values.begin(), inst.values.end()) >= W)
    fail(ErrorCode::AssumptionViolated, "largest value is not below W/2");
}

/// ceil(n^(2+2c)) for kappa=2, ceil(n^(3+2c) kappa^2) otherwise.
inline BigInt partition_multiplier(std::size_t n, const Rational& c, int kappa) {
  Rational e = kappa == 2 ? Rational(2) + 2 * c : Rational(3) + 2 * c;
  auto p = static_cast<unsigned>(num(e));
  auto q = static_cast<unsigned>(den(e));
  BigInt x = boost::multiprecision::pow(BigInt(n), p);
  if (kappa != 2) x *= boost::multiprecision::pow(BigInt(kappa), 2 * q);
  return iroot_ceil(x, q);
}

struct PreprocessReport {
  PartitionInstance instance;
  bool gap_bound_ok = false;  // min pairwise gap >= n^(2+2c)
  bool w_bound_ok = false;    // W > n^(2+4c), or n^(3+4c) kappa^2 when kappa > 2
  std::int64_t integrality_factor = 1;  // extra 2 or 4 so every a_i is even and 4 | W
};

/// Smallest f in {1, 2, 4} with every value even and 4 | W after multiplying by f.
inline std::int64_t integrality_factor(const std::vector<std::int64_t>& values) {
  for (std::int64_t f : {1, 2, 4}) {
    std::int64_t w = 0;
    bool even = true;
    for (auto v : values) {
      even = even && (f * v) % 2 == 0;
      w += f * v;
    }
    if (even && w % 4 == 0) return f;
  }
  return 4;
}

inline PreprocessReport preprocess_partition_report(const PartitionInstance& inst, const Rational& c,
                                                    int kappa = 2) {
  check_partition_instance(inst);
  if (c <= 1) fail(ErrorCode::InvalidArgument, "c must exceed 1");
  if (kappa < 2) fail(ErrorCode::InvalidKappa, "kappa must be at least 2");
  PreprocessReport rep;
  BigInt m = partition_multiplier(inst.n(), c, kappa);
  std::vector<std::int64_t> scaled;
  for (auto v : inst.values) scaled.push_back(to_int64(m * v));
  rep.integrality_factor = integrality_factor(scaled);
  m *= rep.integrality_factor;
  rep.instance.multiplier = to_int64(m * inst.multiplier);
  for (auto v : inst.values) rep.instance.values.push_back(to_int64(m * v));
  rep.instance.W();

  auto sorted = rep.instance.values;
  std::sort(sorted.begin(), sorted.end());
  std::int64_t gap = sorted[1] - sorted[0];
  for (std::size_t i = 2; i < sorted.size(); ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
  // compare x >= n^(p/q) as x^q >= n^p
  auto at_least_pow = [&](const BigInt& x, const Rational& e, const BigInt& extra_q, bool strict) {
    auto p = static_cast<unsigned>(num(e));
    auto q = static_cast<unsigned>(den(e));
    BigInt lhs = boost::multiprecision::pow(x, q);
    BigInt rhs = boost::multiprecision::pow(BigInt(inst.n()), p) * extra_q;
    return strict ? lhs > rhs : lhs >= rhs;
  };
  Rational ge = Rational(2) + 2 * c;
  rep.gap_bound_ok = at_least_pow(BigInt(gap), ge, 1, false);
  if (!rep.gap_bound_ok) fail(ErrorCode::AssumptionViolated, "scaled gap below n^(2+2c)");
  if (kappa == 2) {
    rep.w_bound_ok = at_least_pow(BigInt(rep.instance.W()), Rational(2) + 4 * c, 1, true);
  } else {
    Rational we = Rational(3) + 4 * c;
    BigInt k2q = boost::multiprecision::pow(BigInt(kappa), 2 * static_cast<unsigned>(den(we)));
    rep.w_bound_ok = at_least_pow(BigInt(rep.instance.W()), we, k2q, true);
  }
  return rep;
}

inline PartitionInstance preprocess_partition(const PartitionInstance& inst, const Rational& c,
                                              int kappa = 2) {
  return preprocess_partition_report(inst, c, kappa).instance;
}

}  // namespace gerry
