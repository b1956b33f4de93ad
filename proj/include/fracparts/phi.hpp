#pragma once

#include <optional>
#include <vector>

#include "fracparts/alpha.hpp"

namespace fracparts {

// One drop of the running minimum of |q|_inf^N * ||alpha.q||.
struct PhiBreakpoint {
  long x = 0;                 // integer height where the minimum drops
  Scalar value;               // the new minimum, carried exactly
  std::vector<long> witness;  // first minimizing q in enumeration order
};

// Empirical maximal step function phi(x) = min over 1 <= |q|_inf <= x of
// |q|_inf^N * ||alpha.q||, recorded through its breakpoints.
struct PhiTable {
  std::string alpha_text;
  int n = 0;
  mpq_class q_max;
  std::vector<PhiBreakpoint> breakpoints;  // x increasing, values strictly decreasing
};

PhiTable compute_phi_table(const AlphaVector& alpha, const mpq_class& q_max,
                           const PrecisionBudget& budget, unsigned chunks = 1);

// phi(x) for 0 < x <= q_max; equals 1 below the first lattice height.
Scalar phi_at(const PhiTable& table, const mpq_class& x);

// The breakpoint witnesses realize ||alpha.q||^-1 = x^N / phi(x); x^N/phi(x)
// is the sequence showing the reciprocal-sum bound is attained.
struct SharpnessEntry {
  long x = 0;
  std::vector<long> witness;
  double value = 0;  // x^N / phi(x)
};
std::vector<SharpnessEntry> sharpness_sequence(const PhiTable& table);

// Non-increasing candidate lower bound for phi, values in (0, 1].
class StepFunction {
 public:
  static StepFunction constant(const mpq_class& v);
  static StepFunction from_steps(std::vector<std::pair<mpq_class, mpq_class>> steps);
  // Value at x: the step at the last height <= x, or 1 before the first.
  mpq_class at(const mpq_class& x) const;
  const std::vector<std::pair<mpq_class, mpq_class>>& steps() const { return steps_; }

 private:
  std::vector<std::pair<mpq_class, mpq_class>> steps_;  // (height, value)
};

struct PhiVerifyResult {
  bool holds = true;
  std::vector<long> violation_q;  // empty when holds
  double violation_value = 0;     // |q|_inf^N * ||alpha.q|| at the violation
  double candidate_value = 0;
};

// Checks |q|_inf^N * ||alpha.q|| >= candidate(|q|_inf) for every nonzero q
// with |q|_inf <= q_max; reports the first violation in enumeration order.
PhiVerifyResult verify_phi_badly_approximable(const AlphaVector& alpha,
                                              const StepFunction& candidate,
                                              const mpq_class& q_max,
                                              const PrecisionBudget& budget,
                                              unsigned chunks = 1);

}  // namespace fracparts
