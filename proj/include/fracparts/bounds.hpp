#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracparts/lattice.hpp"
#include "fracparts/sums.hpp"

namespace fracparts {

// Closed-form reference values for the reciprocal sum over the cube of
// radius Q (natural log unless noted):
//   lv_lower      Q^N ln Q
//   thm_upper     Q^N ln Q + Q^N / phi(Q)
//   thm_lower     max(Q^N ln(Q phi(Q)), 0), nontrivial only when the log >= 1
//   gap_upper     Q^N ln Q / phi(2Q)
//   lang_1d       Q ln Q + Q / phi(Q), N = 1 only
//   trivial_floor 2 ((2 floor(Q) + 1)^N - 1)
struct BoundCatalogEntry {
  std::string name;
  double value = 0;
  int n = 0;
  double q = 0;
  double phi_q = 0;
  bool nontrivial = true;  // false when a log argument fell below e (thm_lower)
};

std::vector<BoundCatalogEntry> evaluate_bounds(int n, const mpq_class& Q, double phi_q,
                                               std::optional<double> phi_2q = std::nullopt);

// Single entry by name; throws MissingPhi2Q when gap_upper is requested
// without phi(2Q).
BoundCatalogEntry evaluate_bound(const std::string& name, int n, const mpq_class& Q,
                                 double phi_q, std::optional<double> phi_2q = std::nullopt);

struct FitRow {
  mpq_class Q;
  double sum_mid = 0;
  double thm_upper = 0;
  double thm_lower = 0;
  double r = 0;  // S / thm_upper
  double l = 0;  // S / max(thm_lower, Q^N)
};

// Empirical constants for S between its closed-form bounds over a Q grid.
struct FitReport {
  std::vector<FitRow> rows;
  double fitted_constant_low = 0;   // min l
  double fitted_constant_high = 0;  // max r
  double stability = 0;             // max r / min r
  double slope = 0;                 // regression of ln S on ln thm_upper
  double residual = 0;              // rms residual of that regression
};

FitReport fit_theorem_constants(const AlphaVector& alpha, const std::vector<mpq_class>& Q_grid,
                                const PrecisionBudget& budget, unsigned chunks = 1);

struct ShellDiffRow {
  long k = 0;
  unsigned long long count_k = 0;    // |M(alpha, 2^-k, Q)|
  unsigned long long count_k1 = 0;   // |M(alpha, 2^-(k+1), Q)|
  double threshold = 0;              // 2^-k Q^N
  double margin = 0;                 // difference - threshold
  bool ok = false;
};

// K = log2(Q^N phi(Q)^N / c^(N+1)); for k = 1 .. floor(K - 1) checks
// |M(alpha, 2^-k, Q)| - |M(alpha, 2^-(k+1), Q)| >= 2^-k Q^N and reports the
// implied lower bound floor(K - 1) * Q^N.
struct ShellDiffReport {
  double K = 0;
  long k_lo = 1;
  long k_hi = 0;  // floor(K - 1); range empty when < 1
  bool holds = true;
  double min_margin = 0;
  double derived_lower = 0;
  std::vector<ShellDiffRow> rows;
};

ShellDiffReport shell_difference_check(const AlphaVector& alpha, const mpq_class& Q, double c_n,
                                       const PrecisionBudget& budget, unsigned chunks = 1);

}  // namespace fracparts
