#include "fracparts/realnum.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fracparts {

void PrecisionBudget::validate() const {
  if (start_bits < 8 || max_bits < start_bits || escalation_factor < 2)
    throw std::invalid_argument("invalid precision budget");
}

RealSpec make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ZeroDenominator();
  RationalSpec r{num, den};
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r.num.get_mpz_t(), r.den.get_mpz_t());
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

RealSpec make_surd(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                   const mpz_class& c) {
  if (c == 0) throw ZeroDenominator();
  if (d <= 0 || mpz_perfect_square_p(d.get_mpz_t())) throw NonsquareViolation(d.get_str());
  QuadraticSurdSpec s{a, b, d, c};
  if (s.c < 0) {
    s.a = -s.a;
    s.b = -s.b;
    s.c = -s.c;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), s.a.get_mpz_t(), s.b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.c.get_mpz_t());
  if (g > 1) {
    s.a /= g;
    s.b /= g;
    s.c /= g;
  }
  return s;
}

RealSpec make_decimal(const std::string& digits, unsigned precision_bits) {
  if (precision_bits < 8) throw std::invalid_argument("decimal precision_bits must be >= 8");
  size_t i = 0;
  bool negative = false;
  if (i < digits.size() && (digits[i] == '+' || digits[i] == '-')) {
    negative = digits[i] == '-';
    ++i;
  }
  size_t int_start = i;
  while (i < digits.size() && std::isdigit(static_cast<unsigned char>(digits[i]))) ++i;
  if (i == int_start) throw ParseError("decimal literal needs digits", i);
  size_t frac_digits = 0;
  std::string mantissa = digits.substr(int_start, i - int_start);
  if (i < digits.size() && digits[i] == '.') {
    ++i;
    size_t frac_start = i;
    while (i < digits.size() && std::isdigit(static_cast<unsigned char>(digits[i]))) ++i;
    frac_digits = i - frac_start;
    if (frac_digits == 0) throw ParseError("decimal fraction needs digits", i);
    mantissa += digits.substr(frac_start, frac_digits);
  }
  if (i != digits.size()) throw ParseError("trailing characters in decimal literal", i);

  DecimalSpec spec;
  spec.digits = digits;
  spec.precision_bits = precision_bits;
  mpz_class m(mantissa, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
  spec.midpoint = mpq_class(m) / mpq_class(den);
  if (negative) spec.midpoint = -spec.midpoint;
  spec.midpoint.canonicalize();
  spec.uncertainty = mpq_class(1) / (mpq_class(2) * mpq_class(den));
  return spec;
}

IntervalValue IntervalValue::from_interval(const Interval& iv, unsigned requested_bits) {
  IntervalValue v;
  mpq_class lo = iv.lo_q(), hi = iv.hi_q();
  v.midpoint = (lo + hi) / 2;
  v.radius = (hi - lo) / 2;
  if (v.radius == 0) {
    v.precision_bits = requested_bits;
    return v;
  }
  mpq_class amid = abs(v.midpoint);
  mpq_class scale = amid > 1 ? amid : mpq_class(1);
  // largest b with radius <= 2^(1-b) * scale, verified exactly
  long b = 1 - floor_log2_q(v.radius / scale);
  auto ok = [&](long bb) {
    mpq_class target = scale;
    mpz_class pow2;
    if (bb >= 1) {
      mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(bb - 1));
      target /= pow2;
    } else {
      mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(1 - bb));
      target *= pow2;
    }
    return v.radius <= target;
  };
  while (!ok(b)) --b;
  if (b < 1) b = 1;  // emitted enclosures are never this wide in practice
  v.precision_bits = std::min<unsigned long>(static_cast<unsigned long>(b), requested_bits);
  return v;
}

double IntervalValue::midpoint_d() const { return midpoint.get_d(); }

double IntervalValue::radius_d() const {
  Interval r = Interval::from_q(radius, 53);
  return r.hi_d();
}

Interval IntervalValue::to_interval(Prec prec) const {
  return Interval::from_q(midpoint, prec).widen_q(radius);
}

Scalar Scalar::exact(ExactForm f) {
  Scalar s;
  s.mid_ = std::move(f);
  return s;
}

Scalar Scalar::exact_q(const mpq_class& q) { return exact(ExactForm::from_q(q)); }

Scalar Scalar::uncertain(ExactForm mid, const mpq_class& unc) {
  if (unc < 0) throw std::invalid_argument("negative uncertainty");
  Scalar s;
  s.mid_ = std::move(mid);
  s.unc_ = unc;
  return s;
}

Scalar Scalar::from_spec(const RealSpec& spec) {
  if (const auto* r = std::get_if<RationalSpec>(&spec))
    return exact_q(mpq_class(r->num) / mpq_class(r->den));
  if (const auto* s = std::get_if<QuadraticSurdSpec>(&spec))
    return exact(ExactForm::surd(s->a, s->b, s->d, s->c));
  const auto& d = std::get<DecimalSpec>(spec);
  return uncertain(ExactForm::from_q(d.midpoint), d.uncertainty);
}

Scalar Scalar::add(const Scalar& o) const {
  return uncertain(mid_.add(o.mid_), unc_ + o.unc_);
}

Scalar Scalar::sub(const Scalar& o) const {
  return uncertain(mid_.sub(o.mid_), unc_ + o.unc_);
}

Scalar Scalar::neg() const { return uncertain(mid_.neg(), unc_); }

Scalar Scalar::add_z(const mpz_class& z) const { return uncertain(mid_.add_z(z), unc_); }

Scalar Scalar::add_q(const mpq_class& q) const { return uncertain(mid_.add_q(q), unc_); }

Scalar Scalar::scale_z(const mpz_class& f) const {
  return uncertain(mid_.scale_z(f), unc_ * ::abs(mpq_class(f)));
}

Scalar Scalar::scale_q(const mpq_class& f) const {
  return uncertain(mid_.scale_q(f), unc_ * ::abs(f));
}

namespace {

// Rational upper bound on |f| from its cached enclosure.
mpq_class abs_upper_q(const ExactForm& f) {
  Interval a = f.approx().abs();
  return a.hi_q();
}

}  // namespace

Scalar Scalar::mul(const Scalar& o) const {
  mpq_class u = 0;
  if (unc_ != 0 || o.unc_ != 0)
    u = abs_upper_q(mid_) * o.unc_ + abs_upper_q(o.mid_) * unc_ + unc_ * o.unc_;
  return uncertain(mid_.mul(o.mid_), u);
}

Scalar Scalar::mul_sqrt_z(const mpz_class& m) const {
  mpq_class u = unc_;
  if (u != 0) {
    Interval s = Interval::sqrt_z(m, 64);
    u *= s.hi_q();
  }
  return uncertain(mid_.mul_sqrt_z(m), u);
}

Scalar Scalar::abs() const {
  std::optional<int> s = sign_soft();
  if (!s) throw PrecisionExhausted("abs: sign inside the uncertainty band");
  return *s < 0 ? neg() : *this;
}

std::optional<int> Scalar::sign_soft() const {
  if (unc_ == 0) return mid_.sign();
  if (mid_.is_zero()) return std::nullopt;
  int s = mid_.sign();
  // decided iff |mid| > unc
  ExactForm a = s < 0 ? mid_.neg() : mid_;
  return a.cmp_q(unc_) > 0 ? std::optional<int>(s) : std::nullopt;
}

std::optional<int> Scalar::cmp_q_soft(const mpq_class& q) const {
  Scalar d = add_q(-q);
  return d.sign_soft();
}

std::optional<int> Scalar::cmp_soft(const Scalar& o) const { return sub(o).sign_soft(); }

int Scalar::sign() const {
  std::optional<int> s = sign_soft();
  if (!s) throw PrecisionExhausted("sign undecidable within declared uncertainty");
  return *s;
}

int Scalar::cmp_q(const mpq_class& q) const {
  std::optional<int> s = cmp_q_soft(q);
  if (!s) throw PrecisionExhausted("comparison undecidable within declared uncertainty");
  return *s;
}

int Scalar::cmp(const Scalar& o) const {
  std::optional<int> s = cmp_soft(o);
  if (!s) throw PrecisionExhausted("comparison undecidable within declared uncertainty");
  return *s;
}

Interval Scalar::eval(Prec bits) const {
  Interval v = mid_.eval(bits);
  if (unc_ != 0) v = v.widen_q(unc_);
  return v;
}

IntervalValue Scalar::eval_value(unsigned bits) const {
  // Refine the midpoint evaluation until the requested relative width is met
  // or the declared uncertainty dominates whatever precision can add.
  Prec wp = bits;
  for (int rounds = 0; rounds < 8; ++rounds) {
    Interval v = eval(wp);
    if (v.meets_rel_width(bits)) break;
    if (unc_ != 0) {
      Interval m = mid_.eval(wp);
      if (m.width_q() * 64 <= unc_) break;
    }
    wp *= 2;
  }
  return IntervalValue::from_interval(eval(wp), bits);
}

double Scalar::to_double() const { return mid_.to_double(); }

bool decide(const Scalar& value, Rel rel, const mpq_class& threshold,
            const PrecisionBudget& budget) {
  budget.validate();
  const ExactForm diff = value.mid().sub(ExactForm::from_q(threshold));
  const mpq_class& u = value.unc();
  // value - threshold lies in [diff - u, diff + u]; both endpoint signs are
  // exact, so every decidable case is settled symbolically.
  const int band_hi = diff.add_q(u).sign();
  const int band_lo = diff.add_q(-u).sign();
  switch (rel) {
    case Rel::LT:
      if (band_hi < 0) return true;
      if (band_lo >= 0) return false;
      break;
    case Rel::LE:
      if (band_hi <= 0) return true;
      if (band_lo > 0) return false;
      break;
    case Rel::GT:
      if (band_lo > 0) return true;
      if (band_hi <= 0) return false;
      break;
    case Rel::GE:
      if (band_lo >= 0) return true;
      if (band_hi < 0) return false;
      break;
    case Rel::EQ:
      if (band_lo == 0 && band_hi == 0) return true;
      if (band_lo > 0 || band_hi < 0) return false;
      break;
    case Rel::NE:
      if (band_lo > 0 || band_hi < 0) return true;
      if (band_lo == 0 && band_hi == 0) return false;
      break;
  }
  throw PrecisionExhausted("relation undecidable within declared uncertainty");
}

IntervalValue eval_real(const RealSpec& spec, unsigned bits) {
  if (bits < 8) throw std::invalid_argument("eval_real needs bits >= 8");
  return Scalar::from_spec(spec).eval_value(bits);
}

DistResult dist_to_nearest(const Scalar& x) {
  DistResult r;
  bool tie_mid = false;
  r.nearest = x.mid().nearest_int(&tie_mid);
  ExactForm y = x.mid().add_z(-r.nearest);
  int ys = tie_mid ? 0 : y.sign();
  ExactForm d;
  if (tie_mid) {
    d = ExactForm::from_q(mpq_class(1, 2));
  } else {
    d = ys < 0 ? y.neg() : y;
  }
  r.tie = tie_mid;
  if (!r.tie && x.unc() != 0) {
    // The band blurs the fold when d is within unc of 1/2 (and the nearest
    // integer itself when d is within unc of 1/2 from either side).
    ExactForm gap = ExactForm::from_q(mpq_class(1, 2)).sub(d);
    if (gap.cmp_q(x.unc()) <= 0) r.tie = true;
  }
  r.dist = Scalar::uncertain(std::move(d), x.unc());
  return r;
}

DistIntervalResult dist_nearest_int(const IntervalValue& x) {
  DistIntervalResult r;
  Prec prec = std::max<Prec>(64, static_cast<Prec>(x.precision_bits) + 8);
  Interval iv = x.to_interval(prec);
  mpq_class lo = iv.lo_q(), hi = iv.hi_q();
  if (hi - lo >= 1) {
    // Enclosure spans a full period; the fold is the whole range.
    r.dist = IntervalValue{mpq_class(1, 4), mpq_class(1, 4), 0};
    r.nearest = iv.mid_round_z();
    r.tie = true;
    return r;
  }
  r.nearest = iv.mid_round_z();
  mpq_class ylo = lo - r.nearest;
  mpq_class yhi = hi - r.nearest;
  // f(y) = min(|y|, 1 - |y|) on [ylo, yhi], ylo > -1, yhi < 1.
  auto f = [](const mpq_class& y) {
    mpq_class a = abs(y);
    mpq_class b = 1 - a;
    return a < b ? a : b;
  };
  mpq_class flo, fhi;
  mpq_class half(1, 2);
  // lower bound: 0 if 0 inside, else min at the endpoint nearer an integer
  if (ylo <= 0 && yhi >= 0)
    flo = 0;
  else
    flo = std::min(f(ylo), f(yhi));
  // upper bound: 1/2 if +-1/2 inside, else max over endpoints
  if ((ylo <= half && yhi >= half) || (ylo <= -half && yhi >= -half))
    fhi = half;
  else
    fhi = std::max(f(ylo), f(yhi));
  r.tie = yhi >= half || ylo <= -half;
  Interval folded =
      Interval::hull(Interval::from_q(flo, prec), Interval::from_q(fhi, prec));
  r.dist = IntervalValue::from_interval(folded, x.precision_bits);
  return r;
}

std::string render(const RealSpec& spec) {
  std::ostringstream os;
  if (const auto* r = std::get_if<RationalSpec>(&spec)) {
    os << "rat:" << r->num.get_str() << "/" << r->den.get_str();
  } else if (const auto* s = std::get_if<QuadraticSurdSpec>(&spec)) {
    os << "quad:(" << s->a.get_str() << "+" << s->b.get_str() << "*sqrt(" << s->d.get_str()
       << "))/" << s->c.get_str();
  } else {
    const auto& d = std::get<DecimalSpec>(spec);
    os << "dec:" << d.digits << "@" << d.precision_bits;
  }
  return os.str();
}

}  // namespace fracparts
