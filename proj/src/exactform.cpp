#include "fracparts/exactform.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace fracparts {

namespace {

constexpr Prec kApproxBits = 96;
constexpr Prec kSignCapBits = 1 << 20;

// sqrt(d) enclosures are requested over and over for the same handful of d;
// cache per (d, prec) per thread.
const Interval& cached_sqrt(const mpz_class& d, Prec prec) {
  thread_local std::map<std::pair<mpz_class, Prec>, Interval> cache;
  auto key = std::make_pair(d, prec);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, Interval::sqrt_z(d, prec)).first;
  return it->second;
}

}  // namespace

void ExactForm::reduce_square(const mpz_class& d, mpz_class& s, mpz_class& d0) {
  s = 1;
  d0 = d;
  if (mpz_perfect_square_p(d0.get_mpz_t())) {
    mpz_sqrt(s.get_mpz_t(), d0.get_mpz_t());
    d0 = 1;
    return;
  }
  // Strip small square factors; large square factors are caught by the
  // perfect-square retest below, and residual ones only cost canonicality
  // across inputs the grammar cannot express anyway.
  static const unsigned long primes[] = {
      2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
      59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131,
      137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223,
      227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311,
      313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409,
      419, 421, 431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503,
      509, 521, 523, 541, 547, 557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613,
      617, 619, 631, 641, 643, 647, 653, 659, 661, 673, 677, 683, 691, 701, 709, 719,
      727, 733, 739, 743, 751, 757, 761, 769, 773, 787, 797, 809, 811, 821, 823, 827,
      829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919, 929, 937, 941,
      947, 953, 967, 971, 977, 983, 991, 997};
  for (unsigned long p : primes) {
    mpz_class p2 = mpz_class(p) * p;
    if (p2 > d0) break;
    while (mpz_divisible_p(d0.get_mpz_t(), p2.get_mpz_t())) {
      d0 /= p2;
      s *= p;
    }
  }
  if (mpz_perfect_square_p(d0.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), d0.get_mpz_t());
    s *= r;
    d0 = 1;
  }
}

void ExactForm::insert_surd(const mpz_class& d, const mpq_class& c) {
  if (c == 0) return;
  mpz_class s, d0;
  reduce_square(d, s, d0);
  mpq_class coef = c * mpq_class(s);
  if (d0 == 1) {
    rat_ += coef;
    return;
  }
  for (auto& t : terms_) {
    if (t.d == d0) {
      t.c += coef;
      if (t.c == 0)
        terms_.erase(terms_.begin() + (&t - terms_.data()));
      return;
    }
    // sqrt(d0) = (r / t.d) * sqrt(t.d) when d0 * t.d = r^2.
    mpz_class prod = t.d * d0;
    if (mpz_perfect_square_p(prod.get_mpz_t())) {
      mpz_class r;
      mpz_sqrt(r.get_mpz_t(), prod.get_mpz_t());
      t.c += coef * mpq_class(r) / mpq_class(t.d);
      if (t.c == 0)
        terms_.erase(terms_.begin() + (&t - terms_.data()));
      return;
    }
  }
  Term nt{d0, coef};
  auto pos = std::lower_bound(terms_.begin(), terms_.end(), nt,
                              [](const Term& a, const Term& b) { return a.d < b.d; });
  terms_.insert(pos, std::move(nt));
}

ExactForm ExactForm::from_q(const mpq_class& q) {
  ExactForm f;
  f.rat_ = q;
  f.rat_.canonicalize();
  return f;
}

ExactForm ExactForm::from_z(const mpz_class& z) { return from_q(mpq_class(z)); }

ExactForm ExactForm::surd(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                          const mpz_class& c) {
  if (c == 0) throw ZeroDenominator();
  ExactForm f;
  f.rat_ = mpq_class(a) / mpq_class(c);
  f.rat_.canonicalize();
  f.insert_surd(d, mpq_class(b) / mpq_class(c));
  return f;
}

ExactForm ExactForm::sqrt_z(const mpz_class& m) {
  if (m < 0) throw NonsquareViolation(m.get_str());
  ExactForm f;
  f.insert_surd(m, 1);
  return f;
}

ExactForm ExactForm::add(const ExactForm& o) const {
  ExactForm f(*this);
  f.approx_.reset();
  f.rat_ += o.rat_;
  for (const auto& t : o.terms_) f.insert_surd(t.d, t.c);
  return f;
}

ExactForm ExactForm::sub(const ExactForm& o) const { return add(o.neg()); }

ExactForm ExactForm::neg() const {
  ExactForm f;
  f.rat_ = -rat_;
  f.terms_ = terms_;
  for (auto& t : f.terms_) t.c = -t.c;
  return f;
}

ExactForm ExactForm::scale_q(const mpq_class& fac) const {
  if (fac == 0) return ExactForm();
  ExactForm f;
  f.rat_ = rat_ * fac;
  f.terms_ = terms_;
  for (auto& t : f.terms_) t.c *= fac;
  return f;
}

ExactForm ExactForm::scale_z(const mpz_class& fac) const { return scale_q(mpq_class(fac)); }

ExactForm ExactForm::add_q(const mpq_class& q) const {
  ExactForm f(*this);
  f.approx_.reset();
  f.rat_ += q;
  return f;
}

ExactForm ExactForm::add_z(const mpz_class& z) const { return add_q(mpq_class(z)); }

ExactForm ExactForm::mul(const ExactForm& o) const {
  ExactForm f;
  f.rat_ = rat_ * o.rat_;
  for (const auto& t : o.terms_) f.insert_surd(t.d, t.c * rat_);
  for (const auto& t : terms_) f.insert_surd(t.d, t.c * o.rat_);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      // sqrt(da)*sqrt(db) = sqrt(da*db)
      f.insert_surd(a.d * b.d, a.c * b.c);
    }
  return f;
}

ExactForm ExactForm::mul_sqrt_z(const mpz_class& m) const {
  ExactForm f;
  if (m == 0) return f;
  f.insert_surd(m, rat_);
  for (const auto& t : terms_) f.insert_surd(t.d * m, t.c);
  return f;
}

int ExactForm::sign() const {
  if (is_zero()) return 0;
  if (terms_.empty()) return sgn(rat_);
  {
    const Interval& a = approx();
    if (a.strictly_positive()) return 1;
    if (a.strictly_negative()) return -1;
  }
  for (Prec bits = 2 * kApproxBits; bits <= kSignCapBits; bits *= 2) {
    Interval v = eval(bits);
    if (v.strictly_positive()) return 1;
    if (v.strictly_negative()) return -1;
  }
  throw InvariantViolation("sign refinement exceeded hard cap on a nonzero value");
}

int ExactForm::cmp_q(const mpq_class& q) const {
  ExactForm d(*this);
  d.approx_.reset();
  d.rat_ -= q;
  return d.sign();
}

int ExactForm::cmp(const ExactForm& o) const { return sub(o).sign(); }

ExactForm ExactForm::abs() const { return sign() < 0 ? neg() : *this; }

Interval ExactForm::eval(Prec bits) const {
  Prec wp = bits + 16;
  Interval acc = Interval::from_q(rat_, wp);
  for (const auto& t : terms_) {
    Interval c = Interval::from_q(t.c, wp);
    acc = acc.add(c.mul(cached_sqrt(t.d, wp)));
  }
  return acc;
}

const Interval& ExactForm::approx() const {
  if (!approx_) approx_ = std::make_shared<const Interval>(eval(kApproxBits));
  return *approx_;
}

double ExactForm::to_double() const { return approx().mid_d(); }

mpz_class ExactForm::nearest_int(bool* tie) const {
  if (tie) *tie = false;
  if (terms_.empty()) {
    // floor(x + 1/2); exact half-way goes to the even neighbour.
    mpq_class shifted = rat_ + mpq_class(1, 2);
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    mpq_class rem = rat_ - mpq_class(n);
    if (rem == mpq_class(-1, 2)) {
      // exactly half-way between n-1 and n
      if (tie) *tie = true;
      if (mpz_odd_p(n.get_mpz_t()) != 0) --n;
    }
    return n;
  }
  for (Prec bits = kApproxBits; bits <= kSignCapBits; bits *= 2) {
    Interval v = bits == kApproxBits ? approx() : eval(bits);
    mpz_class n = v.mid_round_z();
    mpq_class lo_b = mpq_class(n) - mpq_class(1, 2);
    mpq_class hi_b = mpq_class(n) + mpq_class(1, 2);
    Interval cent = v.sub_z(n);
    if (cent.cmp_q(mpq_class(-1, 2)) > 0 && cent.cmp_q(mpq_class(1, 2)) < 0) return n;
    // Straddles a half-integer boundary; settle exactly.
    int ch = cmp_q(hi_b);
    if (ch == 0) {
      if (tie) *tie = true;
      mpz_class n1 = n + 1;
      return mpz_even_p(n.get_mpz_t()) != 0 ? n : n1;
    }
    if (ch > 0) {
      int ch2 = cmp_q(hi_b + 1);
      if (ch2 < 0) return n + 1;
      if (ch2 == 0) {
        if (tie) *tie = true;
        mpz_class n1 = n + 1, n2 = n + 2;
        return mpz_even_p(n1.get_mpz_t()) != 0 ? n1 : n2;
      }
      continue;  // approximation was badly off; refine
    }
    int cl = cmp_q(lo_b);
    if (cl == 0) {
      if (tie) *tie = true;
      mpz_class n1 = n - 1;
      return mpz_even_p(n.get_mpz_t()) != 0 ? n : n1;
    }
    if (cl > 0) return n;
    int cl2 = cmp_q(lo_b - 1);
    if (cl2 > 0) return n - 1;
    if (cl2 == 0) {
      if (tie) *tie = true;
      mpz_class n1 = n - 1, n2 = n - 2;
      return mpz_even_p(n1.get_mpz_t()) != 0 ? n1 : n2;
    }
  }
  throw InvariantViolation("nearest_int refinement exceeded hard cap");
}

std::string ExactForm::str() const {
  std::ostringstream os;
  os << rat_.get_str();
  for (const auto& t : terms_) os << " + (" << t.c.get_str() << ")*sqrt(" << t.d.get_str() << ")";
  return os.str();
}

}  // namespace fracparts
