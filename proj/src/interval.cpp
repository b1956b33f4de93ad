#include "fracparts/interval.hpp"

#include <algorithm>
#include <cmath>

namespace fracparts {

Interval::Interval(Prec prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, o.prec_);
  mpfr_init2(hi_, o.prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, 2);
  mpfr_init2(hi_, 2);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.prec_);
    mpfr_set_prec(hi_, o.prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    prec_ = o.prec_;
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::raw(Prec p) const {
  Interval r(p);
  return r;
}

Interval Interval::from_q(const mpq_class& q, Prec prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_z(const mpz_class& z, Prec prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::zero(Prec prec) { return Interval(prec); }

Interval Interval::sqrt_z(const mpz_class& d, Prec prec) {
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec + 8);
  mpfr_set_z(t, d.get_mpz_t(), MPFR_RNDD);
  mpfr_sqrt(r.lo_, t, MPFR_RNDD);
  mpfr_set_z(t, d.get_mpz_t(), MPFR_RNDU);
  mpfr_sqrt(r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::add(const Interval& o) const {
  Interval r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sub(const Interval& o) const {
  Interval r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::mul(const Interval& o) const {
  Interval r(std::max(prec_, o.prec_));
  mpfr_t p;
  mpfr_init2(p, r.prec_);
  // lo: min of the four products rounded down.
  bool first = true;
  auto step = [&](mpfr_srcptr a, mpfr_srcptr b, mpfr_rnd_t rnd, mpfr_ptr acc) {
    mpfr_mul(p, a, b, rnd);
    if (first) {
      mpfr_set(acc, p, rnd);
    } else if (rnd == MPFR_RNDD ? mpfr_less_p(p, acc) : mpfr_greater_p(p, acc)) {
      mpfr_set(acc, p, rnd);
    }
  };
  for (int pass = 0; pass < 2; ++pass) {
    mpfr_rnd_t rnd = pass == 0 ? MPFR_RNDD : MPFR_RNDU;
    mpfr_ptr acc = pass == 0 ? r.lo_ : r.hi_;
    first = true;
    step(lo_, o.lo_, rnd, acc);
    first = false;
    step(lo_, o.hi_, rnd, acc);
    step(hi_, o.lo_, rnd, acc);
    step(hi_, o.hi_, rnd, acc);
  }
  mpfr_clear(p);
  return r;
}

Interval Interval::neg() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  if (strictly_negative()) return neg();
  if (contains_zero()) {
    Interval r(prec_);
    mpfr_set_zero(r.lo_, 1);
    mpfr_t a, b;
    mpfr_init2(a, prec_);
    mpfr_init2(b, prec_);
    mpfr_abs(a, lo_, MPFR_RNDU);
    mpfr_abs(b, hi_, MPFR_RNDU);
    mpfr_max(r.hi_, a, b, MPFR_RNDU);
    mpfr_clear(a);
    mpfr_clear(b);
    return r;
  }
  return *this;
}

Interval Interval::add_z(const mpz_class& z) const {
  Interval r(prec_);
  mpfr_add_z(r.lo_, lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_add_z(r.hi_, hi_, z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::sub_z(const mpz_class& z) const {
  Interval r(prec_);
  mpfr_sub_z(r.lo_, lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_sub_z(r.hi_, hi_, z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::mul_z(const mpz_class& z) const {
  Interval r(prec_);
  if (mpz_sgn(z.get_mpz_t()) >= 0) {
    mpfr_mul_z(r.lo_, lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_, hi_, z.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(r.lo_, hi_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_, lo_, z.get_mpz_t(), MPFR_RNDU);
  }
  return r;
}

Interval Interval::add_q(const mpq_class& q) const {
  Interval r(prec_);
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDD);
  mpfr_add(r.lo_, lo_, t, MPFR_RNDD);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDU);
  mpfr_add(r.hi_, hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

Interval Interval::sub_q(const mpq_class& q) const {
  mpq_class n(-q);
  return add_q(n);
}

Interval Interval::recip() const {
  if (contains_zero()) throw InvariantViolation("recip of interval containing zero");
  Interval r(prec_);
  if (strictly_positive()) {
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
  } else {
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
  }
  return r;
}

Interval Interval::rootn(unsigned long n) const {
  if (mpfr_sgn(lo_) < 0) throw InvariantViolation("rootn of interval with negative lo");
  Interval r(prec_);
  mpfr_rootn_ui(r.lo_, lo_, n, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_, hi_, n, MPFR_RNDU);
  return r;
}

Interval Interval::widen_q(const mpq_class& r) const {
  Interval out(prec_);
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_set_q(t, r.get_mpq_t(), MPFR_RNDU);
  mpfr_sub(out.lo_, lo_, t, MPFR_RNDD);
  mpfr_add(out.hi_, hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return out;
}

Interval Interval::clamp(const mpq_class& a, const mpq_class& b) const {
  Interval out(*this);
  if (mpfr_cmp_q(out.lo_, a.get_mpq_t()) < 0) mpfr_set_q(out.lo_, a.get_mpq_t(), MPFR_RNDD);
  if (mpfr_cmp_q(out.hi_, b.get_mpq_t()) > 0) mpfr_set_q(out.hi_, b.get_mpq_t(), MPFR_RNDU);
  if (mpfr_greater_p(out.lo_, out.hi_))
    throw InvariantViolation("clamp produced an empty interval");
  return out;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::strictly_positive() const { return mpfr_sgn(lo_) > 0; }

bool Interval::strictly_negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_); }

int Interval::cmp_q(const mpq_class& q) const {
  if (mpfr_cmp_q(hi_, q.get_mpq_t()) < 0) return -1;
  if (mpfr_cmp_q(lo_, q.get_mpq_t()) > 0) return 1;
  return 0;
}

int Interval::cmp(const Interval& o) const {
  if (mpfr_less_p(hi_, o.lo_)) return -1;
  if (mpfr_greater_p(lo_, o.hi_)) return 1;
  return 0;
}

mpq_class Interval::lo_q() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

mpq_class Interval::hi_q() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

mpq_class Interval::width_q() const { return hi_q() - lo_q(); }

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }

double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_d() const {
  mpq_class m = (lo_q() + hi_q()) / 2;
  return m.get_d();
}

mpz_class Interval::mid_round_z() const {
  mpq_class m = (lo_q() + hi_q()) / 2;
  // round half away handled via floor(m + 1/2); ties irrelevant to callers,
  // which re-verify exactly.
  mpq_class shifted = m + mpq_class(1, 2);
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
  return n;
}

bool Interval::meets_rel_width(Prec bits) const {
  mpq_class lo = lo_q(), hi = hi_q();
  mpq_class rad = (hi - lo) / 2;
  mpq_class mid = (hi + lo) / 2;
  mpq_class amid = ::abs(mid);
  mpq_class scale = amid > 1 ? amid : mpq_class(1);
  // rad <= 2^(1-bits) * scale
  mpq_class target = scale;
  if (bits >= 1) {
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(bits - 1));
    target /= pow2;
  } else {
    target *= 2;
  }
  return rad <= target;
}

std::string Interval::str() const {
  char* a = nullptr;
  char* b = nullptr;
  mpfr_asprintf(&a, "%.20Rg", lo_);
  mpfr_asprintf(&b, "%.20Rg", hi_);
  std::string s = std::string("[") + a + ", " + b + "]";
  mpfr_free_str(a);
  mpfr_free_str(b);
  return s;
}

long floor_log2_q(const mpq_class& q) {
  if (sgn(q) <= 0) throw InvariantViolation("floor_log2_q needs a positive argument");
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  long bn = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  long bd = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  long e = bn - bd;  // 2^e <= q < 2^(e+2), narrow by direct checks
  mpq_class p;
  auto pow2q = [](long k) {
    mpq_class r;
    mpz_class z;
    if (k >= 0) {
      mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(k));
      r = mpq_class(z);
    } else {
      mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(-k));
      r = mpq_class(1) / mpq_class(z);
    }
    return r;
  };
  while (q < pow2q(e)) --e;
  while (q >= pow2q(e + 1)) ++e;
  return e;
}

}  // namespace fracparts
