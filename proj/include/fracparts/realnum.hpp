#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracparts/exactform.hpp"
#include "fracparts/interval.hpp"

namespace fracparts {

// Controls interval evaluation: start at start_bits, multiply by
// escalation_factor until a comparison separates or max_bits is hit.
struct PrecisionBudget {
  unsigned start_bits = 128;
  unsigned max_bits = 4096;
  unsigned escalation_factor = 2;
  void validate() const;
};

struct RationalSpec {
  mpz_class num;
  mpz_class den;  // > 0, gcd(num, den) = 1
};

// (a + b*sqrt(d)) / c, c > 0, gcd(a, b, c) = 1, d > 0 and not a perfect
// square.
struct QuadraticSurdSpec {
  mpz_class a, b, d, c;
};

// Decimal literal with declared uncertainty of half an ulp of the last
// fractional digit.  precision_bits is the requested evaluation precision.
struct DecimalSpec {
  std::string digits;
  unsigned precision_bits = 64;
  mpq_class midpoint;     // exact value of the digit string
  mpq_class uncertainty;  // 0.5 * 10^-(fraction digits)
};

using RealSpec = std::variant<RationalSpec, QuadraticSurdSpec, DecimalSpec>;

RealSpec make_rational(const mpz_class& num, const mpz_class& den);
RealSpec make_surd(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                   const mpz_class& c);
RealSpec make_decimal(const std::string& digits, unsigned precision_bits);

// Outward-rounded midpoint/radius view of an enclosure.  midpoint and radius
// are exact dyadic rationals; precision_bits is the relative precision
// actually achieved (radius <= 2^(1-precision_bits) * max(1, |midpoint|)).
struct IntervalValue {
  mpq_class midpoint;
  mpq_class radius;
  unsigned precision_bits = 0;

  static IntervalValue from_interval(const Interval& iv, unsigned requested_bits);
  double midpoint_d() const;
  double radius_d() const;
  Interval to_interval(Prec prec) const;
};

// A real number carried exactly (an ExactForm) together with a declared
// uncertainty band.  Exact inputs have unc = 0 and every comparison on them
// is decidable; decimal inputs carry unc > 0 and comparisons that fall
// inside the band raise PrecisionExhausted.
class Scalar {
 public:
  Scalar() = default;
  static Scalar exact(ExactForm f);
  static Scalar exact_q(const mpq_class& q);
  static Scalar uncertain(ExactForm mid, const mpq_class& unc);
  static Scalar from_spec(const RealSpec& spec);

  const ExactForm& mid() const { return mid_; }
  const mpq_class& unc() const { return unc_; }
  bool is_exact() const { return unc_ == 0; }
  bool is_exact_zero() const { return unc_ == 0 && mid_.is_zero(); }

  Scalar add(const Scalar& o) const;
  Scalar sub(const Scalar& o) const;
  Scalar neg() const;
  Scalar add_z(const mpz_class& z) const;
  Scalar add_q(const mpq_class& q) const;
  Scalar scale_z(const mpz_class& f) const;
  Scalar scale_q(const mpq_class& f) const;
  Scalar mul(const Scalar& o) const;
  Scalar mul_sqrt_z(const mpz_class& m) const;
  // Throws PrecisionExhausted when the sign is inside the uncertainty band.
  Scalar abs() const;

  // nullopt when the uncertainty band straddles the threshold.
  std::optional<int> sign_soft() const;
  std::optional<int> cmp_q_soft(const mpq_class& q) const;
  std::optional<int> cmp_soft(const Scalar& o) const;
  // Throwing flavours; 0 means exact equality.
  int sign() const;
  int cmp_q(const mpq_class& q) const;
  int cmp(const Scalar& o) const;

  Interval eval(Prec bits) const;
  IntervalValue eval_value(unsigned bits) const;
  double to_double() const;

 private:
  ExactForm mid_;
  mpq_class unc_ = 0;
};

enum class Rel { LT, LE, GT, GE, EQ, NE };

// Decide value <rel> threshold.  Always terminates for exact values; raises
// PrecisionExhausted when a declared uncertainty band straddles the
// threshold and the relation cannot be settled either way.
bool decide(const Scalar& value, Rel rel, const mpq_class& threshold,
            const PrecisionBudget& budget);

// Enclosure of the spec's value at the requested relative precision.  For
// decimal specs the radius never shrinks below the declared uncertainty and
// precision_bits reports what was actually achieved.
IntervalValue eval_real(const RealSpec& spec, unsigned bits);

// Distance to the nearest integer of an exactly carried value, folded into
// [0, 1/2].  tie is set when the value sits exactly half-way between two
// integers or when the uncertainty band makes the nearest integer ambiguous;
// dist is still valid (|| . || is 1-Lipschitz, so the band carries over).
struct DistResult {
  Scalar dist;
  mpz_class nearest;
  bool tie = false;
};
DistResult dist_to_nearest(const Scalar& x);

// Interval flavour of the same fold, operating on an enclosure alone.
struct DistIntervalResult {
  IntervalValue dist;
  mpz_class nearest;
  bool tie = false;
};
DistIntervalResult dist_nearest_int(const IntervalValue& x);

std::string render(const RealSpec& spec);

}  // namespace fracparts
