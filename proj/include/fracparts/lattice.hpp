#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fracparts/alpha.hpp"
#include "fracparts/phi.hpp"

namespace fracparts {

// One evaluation of |M(alpha, eps, Q)| = #{(p,q) != 0 : |alpha.q + p| <= eps,
// |q|_inf <= Q} against its main term 2^(N+1) eps Q^N.
struct CountRecord {
  int n = 0;
  mpq_class q_radius;
  mpq_class eps;
  unsigned long long count = 0;
  double main_term = 0;
  double error = 0;
  double prop_bound_base = 0;  // (eps Q^N / phi(Q))^(N/(N+1)); NaN without a table
  bool ties = false;           // some |alpha.q + p| hit eps exactly
};

CountRecord count_M(const AlphaVector& alpha, const mpq_class& eps, const mpq_class& Q,
                    const PrecisionBudget& budget, const PhiTable* phi = nullptr,
                    unsigned chunks = 1);

struct PQPair {
  mpz_class p;
  std::vector<long> q;
};

// Explicit elements of M, sorted lexicographically by (q, p).
std::vector<PQPair> enumerate_M(const AlphaVector& alpha, const mpq_class& eps,
                                const mpq_class& Q, const PrecisionBudget& budget,
                                size_t cap = 200000, unsigned chunks = 1);

// Counts lattice vectors (alpha.q + p, q) inside [-eps, eps] x [-Q, Q]^N by an
// independent route (integer-window counting over the full box, origin
// included) and checks it exceeds count_M by exactly one.
struct BridgeCounts {
  unsigned long long lattice_box_count = 0;
  unsigned long long m_count = 0;
};
BridgeCounts cardinality_bridge(const AlphaVector& alpha, const mpq_class& eps,
                                const mpq_class& Q, const PrecisionBudget& budget,
                                unsigned chunks = 1);

// Naive reference count: double loop over p and q with interval screening and
// exact fallback.  Deliberately structure-free; exists to cross-check count_M.
unsigned long long naive_count_M(const AlphaVector& alpha, const mpq_class& eps,
                                 const mpq_class& Q, const PrecisionBudget& budget);

// The block-structured lattice built from alpha: points (alpha.q + p, q),
// blocks of dimensions (1, N) with matching weights, total dimension t = N+1,
// distinguished subspace = the q = 0 line.
struct LatticeInstance {
  AlphaVector alpha;
  std::array<long, 2> m;
  std::array<long, 2> beta;
  int t = 0;

  explicit LatticeInstance(AlphaVector a)
      : alpha(std::move(a)),
        m{1, alpha.dim()},
        beta{1, alpha.dim()},
        t(alpha.dim() + 1) {}
};

// Shortest nonzero vector on the q = 0 line, found by search; always 1.
double lambda1_in_C(const LatticeInstance& inst);

struct LatticeWitness {
  mpz_class p;
  std::vector<long> q;
  double first_coord = 0;  // alpha.q + p
};

// nu = min over lattice vectors v = (alpha.q + p, q), q != 0, |v|_2 < rho of
// (|alpha.q + p| * |q|_2^N)^(1/(N+1)); infinite when no such vector exists.
struct NuResult {
  bool infinite = true;
  Scalar nm_min;                        // the minimal product, carried exactly
  IntervalValue value;                  // nm_min^(1/(N+1))
  std::optional<LatticeWitness> witness;
};
NuResult nu(const LatticeInstance& inst, const mpq_class& rho, const PrecisionBudget& budget,
            const PhiTable* phi = nullptr);

struct AdmissibilityReport {
  mpq_class rho;
  bool nu_infinite = true;
  double nu_value = 0;     // meaningful when !nu_infinite
  double mu_value = 0;
  double lambda1_C = 0;
  double phi_floor = 0;    // phi(rho)^(1/(N+1))
  std::optional<LatticeWitness> witness;
};
AdmissibilityReport mu(const LatticeInstance& inst, const mpq_class& rho,
                       const PrecisionBudget& budget, const PhiTable* phi = nullptr);

// Error-term audit for the box count: the two-parameter bound
// (qbar / mu(B) + Q / B)^N evaluated over a grid of B, against the actual
// counting error.  Reported, never asserted (its constant is unknown).
struct WidmerRow {
  mpq_class B;
  double mu_value = 0;
  double term = 0;
};
struct WidmerReport {
  mpq_class eps;
  mpq_class Q;
  double qbar = 0;          // (eps * Q^N)^(1/(N+1))
  std::vector<WidmerRow> rows;
  double min_term = 0;
  unsigned long long count = 0;
  double main_term = 0;
  double actual_error = 0;
  double ratio = 0;         // actual_error / min_term
};
WidmerReport widmer_instance_check(const LatticeInstance& inst, const mpq_class& eps,
                                   const mpq_class& Q, std::vector<mpq_class> B_grid,
                                   const PrecisionBudget& budget, unsigned chunks = 1);

// Counting error against (eps Q^N / phi(Q))^(N/(N+1)) over a grid, with the
// max ratio and the log-log regression slope as sharpness diagnostics.
struct PropBoundReport {
  std::vector<CountRecord> records;
  std::vector<double> ratios;
  double max_ratio = 0;
  double slope = 0;
  double intercept = 0;
};
PropBoundReport verify_prop_bound(const AlphaVector& alpha,
                                  const std::vector<std::pair<mpq_class, mpq_class>>& grid,
                                  const PrecisionBudget& budget, unsigned chunks = 1);

}  // namespace fracparts
