#include "fracparts/alpha.hpp"

#include <cctype>

namespace fracparts {

AlphaVector::AlphaVector(std::vector<RealSpec> components) : specs_(std::move(components)) {
  if (specs_.empty()) throw std::invalid_argument("alpha needs at least one component");
  scalars_.reserve(specs_.size());
  resonant_ = true;
  all_exact_ = true;
  for (const auto& s : specs_) {
    scalars_.push_back(Scalar::from_spec(s));
    if (!std::holds_alternative<RationalSpec>(s)) resonant_ = false;
    if (std::holds_alternative<DecimalSpec>(s)) all_exact_ = false;
  }
}

Scalar AlphaVector::dot(std::span<const long> q) const {
  if (q.size() != specs_.size())
    throw DimensionMismatch("inner product dimension mismatch");
  Scalar acc;
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) continue;
    acc = acc.add(scalars_[i].scale_z(mpz_class(q[i])));
  }
  return acc;
}

mpq_class AlphaVector::abs_sum_upper() const {
  mpq_class s = 0;
  for (const auto& sc : scalars_) {
    Interval a = sc.eval(64).abs();
    s += a.hi_q();
  }
  return s;
}

IntervalValue inner_product(const AlphaVector& alpha, std::span<const long> q, unsigned bits) {
  return alpha.dot(q).eval_value(bits);
}

namespace {

struct Cursor {
  std::string_view s;
  size_t pos = 0;

  bool eof() const { return pos >= s.size(); }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
  }
  void expect_str(std::string_view lit) {
    if (s.substr(pos, lit.size()) != lit)
      throw ParseError("expected '" + std::string(lit) + "'", pos);
    pos += lit.size();
  }
  mpz_class integer() {
    size_t start = pos;
    if (peek() == '+' || peek() == '-') ++pos;
    size_t dstart = pos;
    while (!eof() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == dstart) throw ParseError("expected an integer", pos);
    return mpz_class(std::string(s.substr(start, pos - start)), 10);
  }
  unsigned long uinteger() {
    mpz_class z = integer();
    if (z < 0) throw ParseError("expected a nonnegative integer", pos);
    if (!z.fits_ulong_p()) throw ParseError("integer out of range", pos);
    return z.get_ui();
  }
};

RealSpec parse_component_at(Cursor& c) {
  if (c.s.substr(c.pos, 4) == "rat:") {
    c.pos += 4;
    mpz_class num = c.integer();
    c.expect('/');
    mpz_class den = c.integer();
    return make_rational(num, den);
  }
  if (c.s.substr(c.pos, 5) == "quad:") {
    c.pos += 5;
    c.expect('(');
    mpz_class a = c.integer();
    c.expect('+');
    mpz_class b = c.integer();
    c.expect_str("*sqrt(");
    mpz_class d = c.integer();
    c.expect_str("))");
    c.expect('/');
    mpz_class cc = c.integer();
    return make_surd(a, b, d, cc);
  }
  if (c.s.substr(c.pos, 4) == "dec:") {
    c.pos += 4;
    size_t start = c.pos;
    while (!c.eof() && c.peek() != '@' && c.peek() != ',') ++c.pos;
    if (c.eof() || c.peek() != '@') throw ParseError("decimal literal needs @bits", c.pos);
    std::string digits(c.s.substr(start, c.pos - start));
    c.expect('@');
    unsigned long bits = c.uinteger();
    try {
      return make_decimal(digits, static_cast<unsigned>(bits));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), start);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), c.pos);
    }
  }
  throw ParseError("expected rat:, quad: or dec:", c.pos);
}

}  // namespace

RealSpec parse_component(std::string_view text) {
  Cursor c{text};
  RealSpec spec = parse_component_at(c);
  if (!c.eof()) throw ParseError("trailing characters after component", c.pos);
  return spec;
}

AlphaVector parse_alpha(std::string_view text) {
  Cursor c{text};
  std::vector<RealSpec> comps;
  comps.push_back(parse_component_at(c));
  while (c.eat(',')) comps.push_back(parse_component_at(c));
  if (!c.eof()) throw ParseError("trailing characters after alpha vector", c.pos);
  return AlphaVector(std::move(comps));
}

std::string render_alpha(const AlphaVector& alpha) {
  std::string out;
  for (int i = 0; i < alpha.dim(); ++i) {
    if (i) out += ',';
    out += render(alpha.spec(i));
  }
  return out;
}

}  // namespace fracparts
