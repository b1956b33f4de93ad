#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "fracparts/interval.hpp"

namespace fracparts {

// Exact element of Q(sqrt(d1), sqrt(d2), ...): a rational plus a finite sum
// of rational multiples of square roots of distinct squarefree-reduced
// integers.  Closed under +, -, * and supports exact zero tests: sqrt(d) and
// sqrt(e) are Q-linearly dependent iff d*e is a perfect square, so the
// canonical form (no two classes with square product, no zero coefficients)
// is zero iff all parts vanish.  Signs of nonzero values are decided by
// interval refinement, which terminates because the value is nonzero.
class ExactForm {
 public:
  struct Term {
    mpz_class d;   // > 1, not a perfect square, pairwise square-free products
    mpq_class c;   // != 0
  };

  ExactForm() = default;
  static ExactForm from_q(const mpq_class& q);
  static ExactForm from_z(const mpz_class& z);
  // (a + b*sqrt(d)) / c with c > 0; d may contain square factors.
  static ExactForm surd(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                        const mpz_class& c);
  // sqrt(m) for m >= 0 (perfect squares collapse to rationals).
  static ExactForm sqrt_z(const mpz_class& m);

  ExactForm add(const ExactForm& o) const;
  ExactForm sub(const ExactForm& o) const;
  ExactForm neg() const;
  ExactForm scale_q(const mpq_class& f) const;
  ExactForm scale_z(const mpz_class& f) const;
  ExactForm add_q(const mpq_class& q) const;
  ExactForm add_z(const mpz_class& z) const;
  ExactForm mul(const ExactForm& o) const;
  ExactForm mul_sqrt_z(const mpz_class& m) const;

  bool is_zero() const { return terms_.empty() && rat_ == 0; }
  bool is_rational() const { return terms_.empty(); }
  const mpq_class& rational_part() const { return rat_; }
  const std::vector<Term>& terms() const { return terms_; }

  // Exact sign in {-1, 0, +1}; never wrong, always terminates.
  int sign() const;
  int cmp_q(const mpq_class& q) const;
  int cmp(const ExactForm& o) const;
  ExactForm abs() const;

  // Rigorous enclosure; width shrinks as bits grows.
  Interval eval(Prec bits) const;
  // Cached medium-precision enclosure (shared across copies).
  const Interval& approx() const;
  double to_double() const;

  // Exact nearest integer; *tie set when the value is exactly half-way
  // (the even neighbour is returned).
  mpz_class nearest_int(bool* tie) const;

  std::string str() const;

 private:
  mpq_class rat_;
  std::vector<Term> terms_;
  mutable std::shared_ptr<const Interval> approx_;

  void insert_surd(const mpz_class& d, const mpq_class& c);
  static void reduce_square(const mpz_class& d, mpz_class& s, mpz_class& d0);
};

}  // namespace fracparts
