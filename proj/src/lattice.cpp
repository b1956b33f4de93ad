#include "fracparts/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracparts/enumerate.hpp"

namespace fracparts {

using detail::chunk_range;
using detail::for_each_box;
using detail::for_half_slot_range;
using detail::half_slot_count;
using detail::run_chunked;

namespace {

long box_radius(const mpq_class& Q) {
  if (Q < 1) throw std::invalid_argument("Q must be >= 1");
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), Q.get_num().get_mpz_t(), Q.get_den().get_mpz_t());
  if (!fl.fits_slong_p()) throw OutOfRange("Q too large to enumerate");
  return fl.get_si();
}

void check_eps(const mpq_class& eps) {
  if (eps <= 0 || eps > mpq_class(1, 2))
    throw std::invalid_argument("eps must lie in (0, 1/2]");
}

mpq_class pow_q(const mpq_class& x, unsigned long e) {
  mpq_class r;
  mpz_pow_ui(r.get_num().get_mpz_t(), x.get_num().get_mpz_t(), e);
  mpz_pow_ui(r.get_den().get_mpz_t(), x.get_den().get_mpz_t(), e);
  r.canonicalize();
  return r;
}

double prop_base(const mpq_class& eps, const mpq_class& Q, int n, const PhiTable* phi) {
  if (!phi) return std::numeric_limits<double>::quiet_NaN();
  Scalar ph = phi_at(*phi, Q);
  Interval phi_iv = ph.eval(96);
  if (!phi_iv.strictly_positive())
    throw PrecisionExhausted("phi(Q) not separated from zero");
  mpq_class volume = eps * pow_q(Q, static_cast<unsigned long>(n));
  Interval x = Interval::from_q(volume, 96).mul(phi_iv.recip());
  // x^(n/(n+1)) = (x^n)^(1/(n+1)); x >= 0 here
  Interval xn = Interval::from_q(1, 96);
  for (int i = 0; i < n; ++i) xn = xn.mul(x);
  return xn.rootn(static_cast<unsigned long>(n) + 1).mid_d();
}

// Membership screen for one canonical q: 0, 1, or 2 admissible p (2 only at
// the eps = 1/2 half-integer tie); boundary hits raise the tie flag.
struct QCount {
  int in = 0;
  bool tie = false;
};

QCount count_for_q(const AlphaVector& alpha, const std::vector<long>& q,
                   const mpq_class& eps) {
  QCount r;
  DistResult d = dist_to_nearest(alpha.dot(q));
  std::optional<int> c = d.dist.cmp_q_soft(eps);
  if (!c)
    throw PrecisionExhausted("|alpha.q + p| vs eps undecidable within declared uncertainty");
  if (*c <= 0) {
    r.in = 1;
    if (*c == 0) {
      r.tie = true;
      // both neighbours qualify iff the distance is exactly 1/2 = eps
      if (eps == mpq_class(1, 2) && d.tie) r.in = 2;
    }
  }
  return r;
}

}  // namespace

CountRecord count_M(const AlphaVector& alpha, const mpq_class& eps, const mpq_class& Q,
                    const PrecisionBudget& budget, const PhiTable* phi, unsigned chunks) {
  budget.validate();
  check_eps(eps);
  long R = box_radius(Q);
  const std::vector<long> radii(static_cast<size_t>(alpha.dim()), R);
  const size_t slots = half_slot_count(radii);

  std::vector<unsigned long long> counts(chunks, 0);
  std::vector<char> ties(chunks, 0);
  run_chunked(chunks, [&](unsigned c) {
    auto [lo, hi] = chunk_range(slots, c, chunks);
    unsigned long long local = 0;
    bool local_tie = false;
    for_half_slot_range(radii, lo, hi, [&](const std::vector<long>& q) {
      QCount qc = count_for_q(alpha, q, eps);
      local += static_cast<unsigned long long>(qc.in);
      local_tie |= qc.tie;
    });
    counts[c] = local;
    ties[c] = local_tie ? 1 : 0;
  });

  unsigned long long half = 0;
  bool tie = false;
  for (unsigned c = 0; c < chunks; ++c) {
    half += counts[c];
    tie |= ties[c] != 0;
  }

  CountRecord rec;
  rec.n = alpha.dim();
  rec.q_radius = Q;
  rec.eps = eps;
  rec.count = 2 * half;
  rec.ties = tie;
  mpq_class main_q = eps * pow_q(Q, static_cast<unsigned long>(alpha.dim()));
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(alpha.dim()) + 1);
  main_q *= two_pow;
  rec.main_term = main_q.get_d();
  mpq_class err_q = abs(mpq_class(static_cast<unsigned long>(rec.count)) - main_q);
  rec.error = err_q.get_d();
  rec.prop_bound_base = prop_base(eps, Q, alpha.dim(), phi);
  return rec;
}

std::vector<PQPair> enumerate_M(const AlphaVector& alpha, const mpq_class& eps,
                                const mpq_class& Q, const PrecisionBudget& budget,
                                size_t cap, unsigned chunks) {
  budget.validate();
  check_eps(eps);
  long R = box_radius(Q);
  const std::vector<long> radii(static_cast<size_t>(alpha.dim()), R);
  const size_t slots = half_slot_count(radii);

  std::vector<std::vector<PQPair>> partial(chunks);
  run_chunked(chunks, [&](unsigned c) {
    auto [lo, hi] = chunk_range(slots, c, chunks);
    auto& out = partial[c];
    for_half_slot_range(radii, lo, hi, [&](const std::vector<long>& q) {
      Scalar s = alpha.dot(q);
      DistResult d = dist_to_nearest(s);
      // scan the three integer candidates around -alpha.q
      for (int off = -1; off <= 1; ++off) {
        mpz_class p = -d.nearest + off;
        Scalar t = s.add_z(p);
        std::optional<int> chi = t.cmp_q_soft(eps);
        std::optional<int> clo = t.cmp_q_soft(-eps);
        if (!chi || !clo)
          throw PrecisionExhausted(
              "|alpha.q + p| vs eps undecidable within declared uncertainty");
        if (*chi <= 0 && *clo >= 0) {
          if (out.size() + 2 > cap) throw OutputCapExceeded("enumeration cap exceeded");
          PQPair e;
          e.p = p;
          e.q = q;
          out.push_back(e);
          PQPair m;
          m.p = -p;
          m.q = q;
          for (auto& v : m.q) v = -v;
          out.push_back(std::move(m));
        }
      }
    });
  });

  std::vector<PQPair> all;
  for (auto& part : partial) {
    if (all.size() + part.size() > cap) throw OutputCapExceeded("enumeration cap exceeded");
    std::move(part.begin(), part.end(), std::back_inserter(all));
  }
  std::sort(all.begin(), all.end(), [](const PQPair& a, const PQPair& b) {
    if (a.q != b.q) return a.q < b.q;
    return a.p < b.p;
  });
  return all;
}

namespace {

// floor of an exactly carried value; PrecisionExhausted when the uncertainty
// band straddles an integer.
mpz_class exact_floor(const Scalar& x) {
  const ExactForm& f = x.mid();
  if (f.is_rational() && x.is_exact()) {
    const mpq_class& r = f.rational_part();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return fl;
  }
  bool tie = false;
  mpz_class n = f.nearest_int(&tie);
  // candidate floor is n or n-1: decide x >= n
  Scalar shifted = x.add_z(-n);
  std::optional<int> s = shifted.sign_soft();
  if (!s) throw PrecisionExhausted("floor undecidable within declared uncertainty");
  return *s >= 0 ? n : n - 1;
}

}  // namespace

BridgeCounts cardinality_bridge(const AlphaVector& alpha, const mpq_class& eps,
                                const mpq_class& Q, const PrecisionBudget& budget,
                                unsigned chunks) {
  budget.validate();
  check_eps(eps);
  long R = box_radius(Q);
  const int n = alpha.dim();
  const std::vector<long> radii(static_cast<size_t>(n), R);

  // Independent route: full box including q = 0, integer-window count
  // floor(eps - s) + floor(eps + s) + 1 per q.
  const size_t first_axis = static_cast<size_t>(2 * R + 1);
  std::vector<unsigned long long> counts(chunks, 0);
  run_chunked(chunks, [&](unsigned c) {
    auto [lo, hi] = chunk_range(first_axis, c, chunks);
    unsigned long long local = 0;
    std::vector<long> q(static_cast<size_t>(n));
    for (size_t slot = lo; slot < hi; ++slot) {
      q[0] = static_cast<long>(slot) - R;
      std::vector<long> rest(radii.begin() + 1, radii.end());
      auto body = [&](const std::vector<long>& tail) {
        std::copy(tail.begin(), tail.end(), q.begin() + 1);
        Scalar s = alpha.dot(q);
        mpz_class a = exact_floor(s.neg().add_q(eps));   // floor(eps - s)
        mpz_class b = exact_floor(s.add_q(eps));         // floor(eps + s)
        mpz_class window = a + b + 1;
        if (window < 0) window = 0;
        local += window.get_ui();
      };
      for_each_box(rest, false, body);
    }
    counts[c] = local;
  });

  BridgeCounts out;
  for (unsigned long long c : counts) out.lattice_box_count += c;
  out.m_count = count_M(alpha, eps, Q, budget, nullptr, chunks).count;
  if (out.lattice_box_count != out.m_count + 1)
    throw InvariantViolation("lattice box count does not exceed the pair count by one");
  return out;
}

unsigned long long naive_count_M(const AlphaVector& alpha, const mpq_class& eps,
                                 const mpq_class& Q, const PrecisionBudget& budget) {
  budget.validate();
  check_eps(eps);
  long R = box_radius(Q);
  const std::vector<long> radii(static_cast<size_t>(alpha.dim()), R);

  // p range covers |alpha.q| + eps for every q in the box.
  mpq_class pb = alpha.abs_sum_upper() * R + eps;
  mpz_class pz;
  mpz_cdiv_q(pz.get_mpz_t(), pb.get_num().get_mpz_t(), pb.get_den().get_mpz_t());
  pz += 1;
  if (!pz.fits_slong_p()) throw OutOfRange("p range too large for the naive loop");
  const long P = pz.get_si();

  const double eps_d_lo = Interval::from_q(eps, 53).lo_d();
  const double eps_d_hi = Interval::from_q(eps, 53).hi_d();

  unsigned long long count = 0;
  for_each_box(radii, true, [&](const std::vector<long>& q) {
    Scalar s = alpha.dot(q);
    Interval si = s.eval(64);
    const double slo = si.lo_d(), shi = si.hi_d();
    for (long p = -P; p <= P; ++p) {
      const double pd = static_cast<double>(p);
      const double tlo = std::nextafter(slo + pd, -1e300);
      const double thi = std::nextafter(shi + pd, 1e300);
      if (thi < -eps_d_hi || tlo > eps_d_hi) continue;          // certainly out
      if (tlo >= -eps_d_lo && thi <= eps_d_lo) {                // certainly in
        ++count;
        continue;
      }
      Scalar t = s.add_z(mpz_class(p));
      std::optional<int> chi = t.cmp_q_soft(eps);
      std::optional<int> clo = t.cmp_q_soft(-eps);
      if (!chi || !clo)
        throw PrecisionExhausted(
            "naive count undecidable within declared uncertainty");
      if (*chi <= 0 && *clo >= 0) ++count;
    }
  });
  return count;
}

double lambda1_in_C(const LatticeInstance& inst) {
  // Vectors on the q = 0 line are (p, 0, ..., 0); search |p| <= 3 and verify
  // the minimum norm is exactly 1.
  mpz_class best_sq = -1;
  for (long p = -3; p <= 3; ++p) {
    if (p == 0) continue;
    mpz_class nsq = mpz_class(p) * p;
    if (best_sq < 0 || nsq < best_sq) best_sq = nsq;
  }
  if (best_sq != 1)
    throw InvariantViolation("shortest vector on the q = 0 line is not length 1");
  (void)inst;
  return 1.0;
}

NuResult nu(const LatticeInstance& inst, const mpq_class& rho, const PrecisionBudget& budget,
            const PhiTable* phi) {
  budget.validate();
  (void)phi;
  if (rho <= 0) throw std::invalid_argument("rho must be positive");
  const AlphaVector& alpha = inst.alpha;
  const int n = alpha.dim();
  const mpq_class rho_sq = rho * rho;

  // |q|_2 < rho forces |q_i| <= ceil(rho) - 1 <= floor(rho) when rho is not
  // integer; use ceil(rho) - 1 in all cases since |q_i| < rho.
  mpz_class cz;
  mpz_cdiv_q(cz.get_mpz_t(), rho.get_num().get_mpz_t(), rho.get_den().get_mpz_t());
  cz -= 1;
  long R = cz.fits_slong_p() ? cz.get_si() : throw OutOfRange("rho too large");
  NuResult out;
  if (R < 0) return out;

  const std::vector<long> radii(static_cast<size_t>(n), R);
  bool have = false;
  Scalar best;
  LatticeWitness best_w;
  detail::for_each_half(radii, [&](const std::vector<long>& q) {
    mpz_class qq = 0;
    for (long qi : q) qq += mpz_class(qi) * qi;
    if (mpq_class(qq) >= rho_sq) return;
    Scalar s = alpha.dot(q);
    // |s + p| < sqrt(rho^2 - qq); scan integers near -s and test exactly
    DistResult d = dist_to_nearest(s);
    mpq_class w2 = rho_sq - mpq_class(qq);
    double wd = Interval::from_q(w2, 53).rootn(2).hi_d();
    long span = static_cast<long>(std::ceil(wd)) + 1;
    for (long off = -span; off <= span; ++off) {
      mpz_class p = -d.nearest + off;
      Scalar t = s.add_z(p);
      Scalar norm_sq = t.mul(t).add_q(mpq_class(qq));
      std::optional<int> inside = norm_sq.cmp_q_soft(rho_sq);
      if (!inside)
        throw PrecisionExhausted("|v|_2 < rho undecidable within declared uncertainty");
      if (*inside >= 0) continue;  // strict inequality required
      Scalar at = t.abs();
      // Nm = |t| * |q|_2^n = |t| * qq^(n/2)
      Scalar nm = at;
      mpz_class half_pow;
      mpz_pow_ui(half_pow.get_mpz_t(), qq.get_mpz_t(),
                 static_cast<unsigned long>(n / 2));
      nm = nm.scale_z(half_pow);
      if (n % 2 == 1) nm = nm.mul_sqrt_z(qq);
      bool better = !have;
      if (have) {
        std::optional<int> c = nm.cmp_soft(best);
        if (!c)
          throw PrecisionExhausted("Nm comparison undecidable within declared uncertainty");
        better = *c < 0;
      }
      if (better) {
        have = true;
        best = nm;
        best_w.p = p;
        best_w.q = q;
        best_w.first_coord = t.to_double();
      }
    }
  });

  if (!have) return out;
  out.infinite = false;
  out.nm_min = best;
  Interval nm_iv = best.eval(budget.start_bits);
  Interval root = nm_iv.clamp(0, nm_iv.hi_q()).rootn(static_cast<unsigned long>(n) + 1);
  out.value = IntervalValue::from_interval(root, budget.start_bits);
  out.witness = best_w;
  return out;
}

AdmissibilityReport mu(const LatticeInstance& inst, const mpq_class& rho,
                       const PrecisionBudget& budget, const PhiTable* phi) {
  budget.validate();
  AdmissibilityReport rep;
  rep.rho = rho;
  rep.lambda1_C = lambda1_in_C(inst);

  NuResult nv = nu(inst, rho, budget);
  rep.nu_infinite = nv.infinite;

  PhiTable local;
  const PhiTable* table = phi;
  if (!table && rho >= 1) {
    local = compute_phi_table(inst.alpha, rho, budget);
    table = &local;
  }
  Scalar phi_rho = table && rho >= 1 ? phi_at(*table, rho) : Scalar::exact_q(1);
  const int t = inst.t;
  Interval phi_iv = phi_rho.eval(96).clamp(0, 1);
  rep.phi_floor = phi_iv.rootn(static_cast<unsigned long>(t)).mid_d();

  if (nv.infinite) {
    rep.mu_value = rep.lambda1_C;  // min(1, infinity)
  } else {
    rep.nu_value = nv.value.midpoint_d();
    rep.witness = nv.witness;
    // mu = min(1, nu); nu <= 1 iff nm_min <= 1
    std::optional<int> c = nv.nm_min.cmp_q_soft(1);
    if (!c) throw PrecisionExhausted("mu comparison undecidable");
    rep.mu_value = *c <= 0 ? rep.nu_value : 1.0;
    // weak admissibility floor: nm_min >= phi(rho), exactly
    std::optional<int> fl = nv.nm_min.cmp_soft(phi_rho);
    if (!fl) throw PrecisionExhausted("phi floor comparison undecidable");
    if (*fl < 0)
      throw InvariantViolation("nu^(N+1) fell below the empirical phi floor");
  }
  return rep;
}

WidmerReport widmer_instance_check(const LatticeInstance& inst, const mpq_class& eps,
                                   const mpq_class& Q, std::vector<mpq_class> B_grid,
                                   const PrecisionBudget& budget, unsigned chunks) {
  budget.validate();
  check_eps(eps);
  const int n = inst.alpha.dim();
  if (B_grid.empty()) B_grid.push_back(Q);
  for (const auto& B : B_grid)
    if (B <= 0 || B > Q) throw std::invalid_argument("each B must lie in (0, Q]");

  WidmerReport rep;
  rep.eps = eps;
  rep.Q = Q;
  mpq_class volume = eps * pow_q(Q, static_cast<unsigned long>(n));
  rep.qbar = Interval::from_q(volume, 96).rootn(static_cast<unsigned long>(n) + 1).mid_d();

  PhiTable table;
  const PhiTable* tp = nullptr;
  if (Q >= 1) {
    table = compute_phi_table(inst.alpha, Q, budget, chunks);
    tp = &table;
  }

  rep.min_term = std::numeric_limits<double>::infinity();
  for (const auto& B : B_grid) {
    AdmissibilityReport ar = mu(inst, B, budget, B >= 1 ? tp : nullptr);
    WidmerRow row;
    row.B = B;
    row.mu_value = ar.mu_value;
    double bq = B.get_d();
    row.term = std::pow(rep.qbar / ar.mu_value + Q.get_d() / bq, n);
    rep.rows.push_back(row);
    rep.min_term = std::min(rep.min_term, row.term);
  }

  CountRecord rec = count_M(inst.alpha, eps, Q, budget, tp, chunks);
  rep.count = rec.count;
  rep.main_term = rec.main_term;
  rep.actual_error = rec.error;
  rep.ratio = rep.min_term > 0 ? rep.actual_error / rep.min_term : 0;
  return rep;
}

PropBoundReport verify_prop_bound(const AlphaVector& alpha,
                                  const std::vector<std::pair<mpq_class, mpq_class>>& grid,
                                  const PrecisionBudget& budget, unsigned chunks) {
  budget.validate();
  if (grid.empty()) throw std::invalid_argument("grid must be nonempty");
  mpq_class max_Q = 1;
  for (const auto& [eps, Q] : grid) max_Q = std::max(max_Q, Q);
  PhiTable table = compute_phi_table(alpha, max_Q, budget, chunks);

  PropBoundReport rep;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t m = 0;
  for (const auto& [eps, Q] : grid) {
    CountRecord rec = count_M(alpha, eps, Q, budget, &table, chunks);
    double ratio = rec.error == 0 ? 0 : rec.error / rec.prop_bound_base;
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    // regression of log(error + 1) on log(eps Q^N / phi(Q))
    Scalar ph = phi_at(table, Q);
    mpq_class volume = eps * pow_q(Q, static_cast<unsigned long>(alpha.dim()));
    double x = std::log(volume.get_d() / ph.to_double());
    double y = std::log(rec.error + 1.0);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
    rep.records.push_back(std::move(rec));
  }
  double denom = m * sxx - sx * sx;
  if (m >= 2 && denom != 0) {
    rep.slope = (m * sxy - sx * sy) / denom;
    rep.intercept = (sy - rep.slope * sx) / m;
  }
  return rep;
}

}  // namespace fracparts
