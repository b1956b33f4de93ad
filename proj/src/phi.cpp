#include "fracparts/phi.hpp"

#include <algorithm>

#include "fracparts/enumerate.hpp"

namespace fracparts {

using detail::chunk_range;
using detail::for_each_half_shell;
using detail::run_chunked;

namespace {

long shell_count(const mpq_class& q_max) {
  if (q_max < 1) throw std::invalid_argument("q_max must be >= 1");
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q_max.get_num().get_mpz_t(), q_max.get_den().get_mpz_t());
  if (!fl.fits_slong_p()) throw OutOfRange("q_max too large to enumerate");
  return fl.get_si();
}

struct ShellMin {
  bool set = false;
  Scalar dist;  // min ||alpha.q|| within the shell
  std::vector<long> witness;
};

// Per-shell minimum of ||alpha.q|| over canonical representatives.
ShellMin shell_minimum(const AlphaVector& alpha, long s) {
  ShellMin m;
  for_each_half_shell(alpha.dim(), s, [&](const std::vector<long>& q) {
    DistResult d = dist_to_nearest(alpha.dot(q));
    if (d.dist.is_exact_zero()) throw ResonanceError(q);
    if (!m.set) {
      m.set = true;
      m.dist = d.dist;
      m.witness = q;
      return;
    }
    std::optional<int> c = d.dist.cmp_soft(m.dist);
    if (!c)
      throw PrecisionExhausted("shell minimum undecidable within declared uncertainty");
    if (*c < 0) {
      m.dist = d.dist;
      m.witness = q;
    }
  });
  return m;
}

}  // namespace

PhiTable compute_phi_table(const AlphaVector& alpha, const mpq_class& q_max,
                           const PrecisionBudget& budget, unsigned chunks) {
  budget.validate();
  long S = shell_count(q_max);
  PhiTable table;
  table.alpha_text = render_alpha(alpha);
  table.n = alpha.dim();
  table.q_max = q_max;

  std::vector<ShellMin> mins(static_cast<size_t>(S));
  run_chunked(chunks, [&](unsigned c) {
    auto [lo, hi] = chunk_range(static_cast<size_t>(S), c, chunks);
    for (size_t i = lo; i < hi; ++i)
      mins[i] = shell_minimum(alpha, static_cast<long>(i) + 1);
  });

  // Fold shell minima in height order; a breakpoint appears whenever the
  // value s^N * min_dist drops below the running minimum.
  Scalar running;
  bool have_running = false;
  for (long s = 1; s <= S; ++s) {
    const ShellMin& m = mins[static_cast<size_t>(s - 1)];
    if (!m.set) throw InvariantViolation("empty shell in phi enumeration");
    mpz_class sn;
    mpz_ui_pow_ui(sn.get_mpz_t(), static_cast<unsigned long>(s),
                  static_cast<unsigned long>(alpha.dim()));
    Scalar value = m.dist.scale_z(sn);
    bool drop = !have_running;
    if (have_running) {
      std::optional<int> c = value.cmp_soft(running);
      if (!c)
        throw PrecisionExhausted("phi breakpoint undecidable within declared uncertainty");
      drop = *c < 0;
    }
    if (drop) {
      running = value;
      have_running = true;
      table.breakpoints.push_back(PhiBreakpoint{s, value, m.witness});
    }
  }
  return table;
}

Scalar phi_at(const PhiTable& table, const mpq_class& x) {
  if (x <= 0) throw OutOfRange("phi is defined for x > 0");
  if (x > table.q_max) throw OutOfRange("x beyond the computed table");
  if (table.breakpoints.empty() || x < table.breakpoints.front().x)
    return Scalar::exact_q(1);
  // last breakpoint with height <= x
  auto it = std::upper_bound(table.breakpoints.begin(), table.breakpoints.end(), x,
                             [](const mpq_class& v, const PhiBreakpoint& b) {
                               return v < mpq_class(b.x);
                             });
  return std::prev(it)->value;
}

std::vector<SharpnessEntry> sharpness_sequence(const PhiTable& table) {
  std::vector<SharpnessEntry> out;
  out.reserve(table.breakpoints.size());
  for (const auto& b : table.breakpoints) {
    mpz_class xn;
    mpz_ui_pow_ui(xn.get_mpz_t(), static_cast<unsigned long>(b.x),
                  static_cast<unsigned long>(table.n));
    // x^N / phi(x) = 1 / ||alpha.q|| at the witness; phi is positive here.
    Interval v = b.value.eval(96);
    if (!v.strictly_positive())
      throw PrecisionExhausted("sharpness value not separated from zero");
    Interval ratio = v.recip().mul_z(xn);
    SharpnessEntry e;
    e.x = b.x;
    e.witness = b.witness;
    e.value = ratio.mid_d();
    out.push_back(std::move(e));
  }
  return out;
}

StepFunction StepFunction::constant(const mpq_class& v) {
  return from_steps({{mpq_class(1), v}});
}

StepFunction StepFunction::from_steps(std::vector<std::pair<mpq_class, mpq_class>> steps) {
  if (steps.empty()) throw std::invalid_argument("step function needs at least one step");
  for (size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].second <= 0 || steps[i].second > 1)
      throw std::invalid_argument("step values must lie in (0, 1]");
    if (i > 0) {
      if (steps[i].first <= steps[i - 1].first)
        throw std::invalid_argument("step heights must increase");
      if (steps[i].second > steps[i - 1].second)
        throw std::invalid_argument("step function must be non-increasing");
    }
  }
  StepFunction f;
  f.steps_ = std::move(steps);
  return f;
}

mpq_class StepFunction::at(const mpq_class& x) const {
  if (x < steps_.front().first) return 1;
  auto it = std::upper_bound(
      steps_.begin(), steps_.end(), x,
      [](const mpq_class& v, const std::pair<mpq_class, mpq_class>& s) { return v < s.first; });
  return std::prev(it)->second;
}

PhiVerifyResult verify_phi_badly_approximable(const AlphaVector& alpha,
                                              const StepFunction& candidate,
                                              const mpq_class& q_max,
                                              const PrecisionBudget& budget,
                                              unsigned chunks) {
  budget.validate();
  long S = shell_count(q_max);
  struct Violation {
    long s;
    std::vector<long> q;
    Scalar value;
    mpq_class bound;
  };
  std::vector<std::optional<Violation>> found(chunks);
  run_chunked(chunks, [&](unsigned c) {
    auto [lo, hi] = chunk_range(static_cast<size_t>(S), c, chunks);
    for (size_t i = lo; i < hi && !found[c]; ++i) {
      long s = static_cast<long>(i) + 1;
      mpq_class bound = candidate.at(mpq_class(s));
      mpz_class sn;
      mpz_ui_pow_ui(sn.get_mpz_t(), static_cast<unsigned long>(s),
                    static_cast<unsigned long>(alpha.dim()));
      mpq_class dist_bound = bound / mpq_class(sn);
      for_each_half_shell(alpha.dim(), s, [&](const std::vector<long>& q) {
        if (found[c]) return;
        DistResult d = dist_to_nearest(alpha.dot(q));
        if (d.dist.is_exact_zero()) throw ResonanceError(q);
        std::optional<int> cm = d.dist.cmp_q_soft(dist_bound);
        if (!cm)
          throw PrecisionExhausted(
              "badly-approximable check undecidable within declared uncertainty");
        if (*cm < 0)
          found[c] = Violation{s, q, d.dist.scale_z(sn), bound};
      });
    }
  });
  PhiVerifyResult r;
  for (const auto& v : found) {
    if (v) {
      r.holds = false;
      r.violation_q = v->q;
      r.violation_value = v->value.to_double();
      r.candidate_value = mpq_class(v->bound).get_d();
      break;  // chunks cover increasing shells; first hit is the earliest
    }
  }
  return r;
}

}  // namespace fracparts
