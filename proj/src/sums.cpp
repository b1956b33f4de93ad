#include "fracparts/sums.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "fracparts/enumerate.hpp"

namespace fracparts {

using detail::chunk_range;
using detail::for_half_slot_range;
using detail::half_slot_count;
using detail::run_chunked;

BoxSpec BoxSpec::cube(int n, const mpq_class& Q) {
  if (n < 1) throw std::invalid_argument("box dimension must be >= 1");
  BoxSpec b;
  b.radii.assign(static_cast<size_t>(n), Q);
  return b;
}

std::vector<long> BoxSpec::int_radii() const {
  std::vector<long> out;
  out.reserve(radii.size());
  for (const auto& r : radii) {
    if (r <= 0) throw std::invalid_argument("box radii must be positive");
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!fl.fits_slong_p()) throw OutOfRange("box radius too large to enumerate");
    out.push_back(fl.get_si());
  }
  return out;
}

double BoxSpec::geo_mean_d() const {
  if (radii.empty()) return 0;
  mpq_class prod = 1;
  for (const auto& r : radii) prod *= r;
  return Interval::from_q(prod, 64).rootn(radii.size()).mid_d();
}

namespace {

// Enclosure of ||alpha.q|| tight enough to take a reciprocal: clamped into
// [0, 1/2], strictly positive, refined until its relative width meets the
// starting precision or the declared uncertainty dominates.
Interval dist_enclosure(const Scalar& d, const std::vector<long>& q,
                        const PrecisionBudget& budget) {
  if (d.is_exact_zero()) throw ResonanceError(q);
  unsigned bits = budget.start_bits;
  for (;;) {
    Interval iv = d.eval(static_cast<Prec>(bits)).clamp(0, mpq_class(1, 2));
    if (iv.strictly_positive()) {
      if (iv.meets_rel_width(static_cast<Prec>(budget.start_bits))) return iv;
      if (d.unc() > 0 && iv.width_q() <= 4 * d.unc()) return iv;
      if (bits >= budget.max_bits) return iv;
    } else if (bits >= budget.max_bits) {
      throw PrecisionExhausted(
          "||alpha.q|| not separated from zero within the precision budget at q = " +
          ResonanceError::vec_str(q));
    }
    bits = std::min(budget.max_bits, bits * budget.escalation_factor);
  }
}

struct MinTrack {
  bool have = false;
  Scalar dist;
  std::vector<long> witness;

  void offer(const Scalar& d, const std::vector<long>& q) {
    if (!have) {
      have = true;
      dist = d;
      witness = q;
      return;
    }
    std::optional<int> c = d.cmp_soft(dist);
    if (!c) throw PrecisionExhausted("minimum distance comparison undecidable");
    if (*c < 0) {
      dist = d;
      witness = q;
    }
  }
};

}  // namespace

SumResult sum_reciprocals(const AlphaVector& alpha, const BoxSpec& box,
                          const PrecisionBudget& budget, unsigned chunks) {
  budget.validate();
  if (box.dim() != alpha.dim()) throw DimensionMismatch("box dimension != alpha dimension");
  const std::vector<long> radii = box.int_radii();
  const size_t slots = half_slot_count(radii);

  struct Partial {
    mpq_class lo, hi;
    unsigned long long terms = 0;
    MinTrack min;
  };
  std::vector<Partial> parts(chunks);
  run_chunked(chunks, [&](unsigned c) {
    auto [lo, hi] = chunk_range(slots, c, chunks);
    Partial& p = parts[c];
    for_half_slot_range(radii, lo, hi, [&](const std::vector<long>& q) {
      Scalar d = dist_to_nearest(alpha.dot(q)).dist;
      Interval iv = dist_enclosure(d, q, budget);
      Interval r = iv.recip();
      p.lo += r.lo_q();
      p.hi += r.hi_q();
      ++p.terms;
      p.min.offer(d, q);
    });
  });

  SumResult out;
  out.box = box;
  MinTrack global;
  for (auto& p : parts) {
    out.lower += p.lo;
    out.upper += p.hi;
    out.terms += p.terms;
    if (p.min.have) global.offer(p.min.dist, p.min.witness);
  }
  out.lower *= 2;
  out.upper *= 2;
  out.terms *= 2;
  if (global.have) {
    out.min_dist = global.dist;
    out.min_witness = global.witness;
  }
  return out;
}

namespace {

mpq_class pow2_neg(long k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return mpq_class(1, den);
}

// Shell index: the k >= 1 with 2^-(k+1) < d <= 2^-k; boundary hits d = 2^-k
// set tie.
long shell_index(const Scalar& d, const std::vector<long>& q, const PrecisionBudget& budget,
                 bool* tie) {
  Interval iv = dist_enclosure(d, q, budget);
  long k = std::max(1L, -floor_log2_q(iv.hi_q()));
  for (;;) {
    std::optional<int> up = d.cmp_q_soft(pow2_neg(k));
    if (!up) throw PrecisionExhausted("shell boundary comparison undecidable");
    if (*up > 0) {
      --k;
      if (k < 1) throw InvariantViolation("||alpha.q|| above 1/2");
      continue;
    }
    if (*up == 0) {
      *tie = true;
      return k;
    }
    std::optional<int> down = d.cmp_q_soft(pow2_neg(k + 1));
    if (!down) throw PrecisionExhausted("shell boundary comparison undecidable");
    if (*down <= 0) {
      ++k;
      continue;
    }
    return k;
  }
}

}  // namespace

DyadicProfile dyadic_profile(const AlphaVector& alpha, const mpq_class& Q,
                             const PrecisionBudget& budget, const PhiTable* phi,
                             unsigned chunks) {
  budget.validate();
  BoxSpec box = BoxSpec::cube(alpha.dim(), Q);
  const std::vector<long> radii = box.int_radii();
  const size_t slots = half_slot_count(radii);

  struct Partial {
    std::map<long, unsigned long long> counts;
    bool tie = false;
  };
  std::vector<Partial> parts(chunks);
  run_chunked(chunks, [&](unsigned c) {
    auto [lo, hi] = chunk_range(slots, c, chunks);
    Partial& p = parts[c];
    for_half_slot_range(radii, lo, hi, [&](const std::vector<long>& q) {
      Scalar d = dist_to_nearest(alpha.dot(q)).dist;
      if (d.is_exact_zero()) throw ResonanceError(q);
      bool tie = false;
      long k = shell_index(d, q, budget, &tie);
      p.counts[k] += 2;
      p.tie |= tie;
    });
  });

  DyadicProfile out;
  out.Q = Q;
  out.n = alpha.dim();
  for (auto& p : parts) {
    for (auto& [k, c] : p.counts) out.shell_counts[k] += c;
    out.shell_ties |= p.tie;
  }
  for (auto& [k, c] : out.shell_counts) out.k_max = std::max(out.k_max, k);

  if (phi && !out.shell_counts.empty()) {
    // occupied shell k holds some d >= phi(Q)/Q^N, so 2^-k >= phi(Q)/Q^N
    mpq_class qn = 1;
    for (int i = 0; i < out.n; ++i) qn *= Q;
    Scalar ph = phi_at(*phi, Q);
    std::optional<int> c = ph.cmp_q_soft(qn * pow2_neg(out.k_max));
    if (!c) throw PrecisionExhausted("shell truncation comparison undecidable");
    if (*c > 0)
      throw InvariantViolation("occupied shell deeper than the phi truncation depth");
  }
  return out;
}

SandwichResult sandwich_check(const DyadicProfile& profile, const SumResult& sum) {
  SandwichResult out;
  for (const auto& [k, c] : profile.shell_counts) {
    mpz_class w;
    mpz_ui_pow_ui(w.get_mpz_t(), 2, static_cast<unsigned long>(k));
    mpz_class wc = w * mpz_class(static_cast<unsigned long>(c));
    out.lower_sum += mpq_class(wc);
    out.upper_sum += mpq_class(2 * wc);
  }
  out.holds = out.lower_sum <= sum.upper && sum.lower <= out.upper_sum;
  return out;
}

GapReport verify_gap_principle(const AlphaVector& alpha, const mpq_class& Q,
                               const PrecisionBudget& budget, size_t pair_cap,
                               unsigned chunks) {
  budget.validate();
  BoxSpec box = BoxSpec::cube(alpha.dim(), Q);
  const std::vector<long> radii = box.int_radii();
  const size_t slots = half_slot_count(radii);

  size_t reps = 0;
  {
    mpz_class total = 1;
    for (long r : radii) total *= 2 * mpz_class(r) + 1;
    total = (total - 1) / 2;
    if (total > static_cast<unsigned long>(pair_cap))
      throw PairCapExceeded("too many representatives to sort: " + total.get_str());
    reps = total.get_ui();
  }

  struct Entry {
    Scalar dist;
    std::vector<long> q;
  };
  std::vector<std::vector<Entry>> parts(chunks);
  run_chunked(chunks, [&](unsigned c) {
    auto [lo, hi] = chunk_range(slots, c, chunks);
    auto& out = parts[c];
    for_half_slot_range(radii, lo, hi, [&](const std::vector<long>& q) {
      out.push_back({dist_to_nearest(alpha.dot(q)).dist, q});
    });
  });
  std::vector<Entry> entries;
  entries.reserve(reps);
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(entries));

  GapReport rep;
  rep.values = entries.size();
  rep.min_gap = std::numeric_limits<double>::infinity();

  // floor phi(2Q)/(2Q)^N from a table over the doubled box
  mpq_class twoQ = 2 * Q;
  PhiTable table = compute_phi_table(alpha, twoQ, budget, chunks);
  Scalar phi2q = phi_at(table, twoQ);
  mpq_class twoQ_n = 1;
  for (int i = 0; i < alpha.dim(); ++i) twoQ_n *= twoQ;
  rep.floor_value = phi2q.eval(96).mul(Interval::from_q(twoQ_n, 96).recip()).mid_d();
  if (entries.empty()) return rep;

  auto clears_floor = [&](const Scalar& v) {
    std::optional<int> c = v.scale_q(twoQ_n).cmp_soft(phi2q);
    if (!c) throw PrecisionExhausted("gap comparison undecidable");
    return *c >= 0;
  };

  std::vector<size_t> order(entries.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    std::optional<int> c = entries[a].dist.cmp_soft(entries[b].dist);
    if (!c) throw PrecisionExhausted("gap sort comparison undecidable");
    return *c < 0;
  });

  rep.min_value = entries[order[0]].dist.to_double();
  if (!clears_floor(entries[order[0]].dist)) {
    rep.holds = false;
    rep.violation_a = entries[order[0]].q;
    rep.violation_b = entries[order[0]].q;
  }

  bool have_min = false;
  Scalar min_gap;
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    const Entry& a = entries[order[i]];
    const Entry& b = entries[order[i + 1]];
    Scalar gap = b.dist.sub(a.dist);
    if (rep.holds && !clears_floor(gap)) {
      rep.holds = false;
      rep.violation_a = a.q;
      rep.violation_b = b.q;
    }
    if (!have_min) {
      have_min = true;
      min_gap = gap;
    } else {
      std::optional<int> m = gap.cmp_soft(min_gap);
      if (!m) throw PrecisionExhausted("gap comparison undecidable");
      if (*m < 0) min_gap = gap;
    }
  }
  if (have_min) rep.min_gap = min_gap.to_double();
  return rep;
}

}  // namespace fracparts
