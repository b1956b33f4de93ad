#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "fracparts/errors.hpp"

namespace fracparts {

using Prec = mpfr_prec_t;

// Closed interval [lo, hi] with dyadic endpoints.  Every operation rounds
// outward (lo down, hi up), so intervals always enclose the exact result.
class Interval {
 public:
  Interval() : Interval(64) {}
  explicit Interval(Prec prec);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval from_q(const mpq_class& q, Prec prec);
  static Interval from_z(const mpz_class& z, Prec prec);
  static Interval zero(Prec prec);
  // Enclosure of sqrt(d), d >= 0 exact integer.
  static Interval sqrt_z(const mpz_class& d, Prec prec);
  static Interval hull(const Interval& a, const Interval& b);

  Prec prec() const { return prec_; }

  Interval add(const Interval& o) const;
  Interval sub(const Interval& o) const;
  Interval mul(const Interval& o) const;
  Interval neg() const;
  Interval abs() const;
  Interval add_z(const mpz_class& z) const;
  Interval sub_z(const mpz_class& z) const;
  Interval mul_z(const mpz_class& z) const;
  Interval add_q(const mpq_class& q) const;
  Interval sub_q(const mpq_class& q) const;
  // Requires the interval to exclude zero.
  Interval recip() const;
  // n-th root; requires lo >= 0.
  Interval rootn(unsigned long n) const;
  // Pad both endpoints by r >= 0.
  Interval widen_q(const mpq_class& r) const;
  // Intersect with [a, b] given as exact rationals (used to clamp to known
  // ranges like [0, 1/2]); result endpoints stay dyadic via outward rounding.
  Interval clamp(const mpq_class& a, const mpq_class& b) const;

  bool contains_zero() const;
  bool strictly_positive() const;
  bool strictly_negative() const;
  bool is_point() const;
  // -1 if hi < q, +1 if lo > q, 0 if q is inside (or touches).
  int cmp_q(const mpq_class& q) const;
  // -1 if hi < o.lo, +1 if lo > o.hi, 0 if the intervals overlap.
  int cmp(const Interval& o) const;

  mpq_class lo_q() const;
  mpq_class hi_q() const;
  mpq_class width_q() const;
  double lo_d() const;  // rounded down
  double hi_d() const;  // rounded up
  double mid_d() const;
  // Nearest integer to the midpoint.
  mpz_class mid_round_z() const;

  // width/2 <= 2^(1-bits) * max(1, |mid|), checked exactly.
  bool meets_rel_width(Prec bits) const;

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  std::string str() const;

 private:
  mpfr_t lo_, hi_;
  Prec prec_;
  Interval raw(Prec p) const;  // uninitialized-value helper for results
};

// floor(log2(q)) for q > 0, exact.
long floor_log2_q(const mpq_class& q);

}  // namespace fracparts
