#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fracparts/alpha.hpp"
#include "fracparts/phi.hpp"

namespace fracparts {

// Integer box |q_i| <= floor(radii[i]); radii may differ per axis.
struct BoxSpec {
  std::vector<mpq_class> radii;

  static BoxSpec cube(int n, const mpq_class& Q);
  int dim() const { return static_cast<int>(radii.size()); }
  std::vector<long> int_radii() const;
  double geo_mean_d() const;
};

// Rigorous enclosure of S = sum over nonzero q in the box of ||alpha.q||^-1.
// lower and upper are exact rationals: every term contributes a directed
// dyadic enclosure, accumulated without rounding, so the result does not
// depend on how the box was chunked.
struct SumResult {
  BoxSpec box;
  mpq_class lower;
  mpq_class upper;
  unsigned long long terms = 0;
  Scalar min_dist;
  std::vector<long> min_witness;
};

SumResult sum_reciprocals(const AlphaVector& alpha, const BoxSpec& box,
                          const PrecisionBudget& budget, unsigned chunks = 1);

// Shell occupancies: shell k >= 1 holds the q with 2^-(k+1) < ||alpha.q|| <=
// 2^-k (upper end closed; exact hits set shell_ties).
struct DyadicProfile {
  mpq_class Q;
  int n = 0;
  std::map<long, unsigned long long> shell_counts;
  long k_max = 0;
  bool shell_ties = false;
};

// With a phi table, checks the deepest occupied shell obeys
// 2^-k_max >= phi(Q) / Q^N.
DyadicProfile dyadic_profile(const AlphaVector& alpha, const mpq_class& Q,
                             const PrecisionBudget& budget, const PhiTable* phi = nullptr,
                             unsigned chunks = 1);

// sum_k 2^k c_k <= S <= sum_k 2^(k+1) c_k, checked exactly against the sum's
// enclosure (both intervals contain the true S, so they must overlap).
struct SandwichResult {
  mpq_class lower_sum;
  mpq_class upper_sum;
  bool holds = false;
};
SandwichResult sandwich_check(const DyadicProfile& profile, const SumResult& sum);

// Distinct representatives q != +-q' with |q|_inf <= Q satisfy
// | ||alpha.q|| - ||alpha.q'|| | >= phi(2Q) / (2Q)^N, and each single value
// ||alpha.q|| clears the same floor: sorting the values and checking
// adjacent differences exactly verifies every pair.
struct GapReport {
  bool holds = true;
  unsigned long long values = 0;
  double min_gap = 0;    // smallest adjacent difference; +inf when values < 2
  double min_value = 0;  // smallest single ||alpha.q||
  double floor_value = 0;  // phi(2Q) / (2Q)^N
  std::vector<long> violation_a;  // empty when holds
  std::vector<long> violation_b;  // equals violation_a for a single-value violation
};
GapReport verify_gap_principle(const AlphaVector& alpha, const mpq_class& Q,
                               const PrecisionBudget& budget, size_t pair_cap = 200000,
                               unsigned chunks = 1);

}  // namespace fracparts
