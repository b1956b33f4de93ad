#include <doctest.h>
#include <gmpxx.h>

#include "fracparts/interval.hpp"

using fracparts::Interval;
using fracparts::floor_log2_q;

namespace {

bool contains(const Interval& iv, const mpq_class& q) { return iv.cmp_q(q) == 0; }

}  // namespace

TEST_CASE("from_q encloses the rational") {
  mpq_class third(1, 3);
  Interval iv = Interval::from_q(third, 64);
  CHECK(contains(iv, third));
  CHECK(iv.lo_q() < third);
  CHECK(iv.hi_q() > third);
  CHECK(iv.width_q() < mpq_class(1, mpz_class(1) << 60));

  // dyadic rationals are represented exactly
  Interval half = Interval::from_q(mpq_class(1, 2), 64);
  CHECK(half.is_point());
  CHECK(half.lo_q() == mpq_class(1, 2));
}

TEST_CASE("arithmetic keeps exact results inside") {
  mpq_class samples[] = {mpq_class(7, 3),    mpq_class(-22, 7), mpq_class(1, 1000003),
                         mpq_class(0, 1),    mpq_class(355, 113), mpq_class(-1, 2)};
  for (const auto& a : samples)
    for (const auto& b : samples) {
      Interval ia = Interval::from_q(a, 96);
      Interval ib = Interval::from_q(b, 96);
      CHECK(contains(ia.add(ib), a + b));
      CHECK(contains(ia.sub(ib), a - b));
      CHECK(contains(ia.mul(ib), a * b));
      CHECK(contains(ia.neg(), -a));
      CHECK(contains(ia.abs(), abs(a)));
      CHECK(contains(ia.add_q(b), a + b));
      CHECK(contains(ia.sub_q(b), a - b));
    }
  Interval i7 = Interval::from_q(mpq_class(7, 3), 96);
  CHECK(contains(i7.add_z(5), mpq_class(7, 3) + 5));
  CHECK(contains(i7.mul_z(-4), mpq_class(-28, 3)));
}

TEST_CASE("sqrt_z enclosure") {
  Interval r2 = Interval::sqrt_z(2, 128);
  mpq_class lo = r2.lo_q(), hi = r2.hi_q();
  CHECK(lo > 0);
  CHECK(lo * lo < 2);
  CHECK(hi * hi > 2);
  CHECK(r2.width_q() < mpq_class(1, mpz_class(1) << 120));

  Interval r4 = Interval::sqrt_z(4, 64);
  CHECK(contains(r4, mpq_class(2)));

  Interval r0 = Interval::sqrt_z(0, 64);
  CHECK(contains(r0, mpq_class(0)));
}

TEST_CASE("recip and rootn") {
  Interval third = Interval::from_q(mpq_class(1, 3), 96);
  CHECK(contains(third.recip(), mpq_class(3)));

  Interval m5 = Interval::from_q(mpq_class(-1, 5), 96);
  CHECK(contains(m5.recip(), mpq_class(-5)));

  Interval straddle = Interval::hull(Interval::from_q(mpq_class(-1), 64),
                                     Interval::from_q(mpq_class(1), 64));
  CHECK_THROWS(straddle.recip());

  Interval eight = Interval::from_z(8, 96);
  CHECK(contains(eight.rootn(3), mpq_class(2)));
  Interval x = Interval::from_q(mpq_class(32), 96);
  CHECK(contains(x.rootn(5), mpq_class(2)));
}

TEST_CASE("floor_log2_q is exact") {
  CHECK(floor_log2_q(mpq_class(1)) == 0);
  CHECK(floor_log2_q(mpq_class(2)) == 1);
  CHECK(floor_log2_q(mpq_class(3)) == 1);
  CHECK(floor_log2_q(mpq_class(4)) == 2);
  CHECK(floor_log2_q(mpq_class(1, 2)) == -1);
  CHECK(floor_log2_q(mpq_class(1, 3)) == -2);
  CHECK(floor_log2_q(mpq_class(3, 4)) == -1);
  CHECK(floor_log2_q(mpq_class(5, 4)) == 0);
  mpz_class big = mpz_class(1) << 100;
  CHECK(floor_log2_q(mpq_class(big)) == 100);
  CHECK(floor_log2_q(mpq_class(big + 1)) == 100);
  CHECK(floor_log2_q(mpq_class(big - 1)) == 99);
  CHECK(floor_log2_q(mpq_class(1, big)) == -100);
  // 1/(2^100 - 1) is a hair above 2^-100, so the floor stays at -100
  CHECK(floor_log2_q(mpq_class(1, big - 1)) == -100);
  CHECK(floor_log2_q(mpq_class(1, big / 2 + 1)) == -100);
}

TEST_CASE("clamp intersects with exact bounds") {
  Interval wide = Interval::hull(Interval::from_q(mpq_class(-1, 4), 64),
                                 Interval::from_q(mpq_class(3, 4), 64));
  Interval c = wide.clamp(0, mpq_class(1, 2));
  CHECK(c.lo_q() >= 0);
  CHECK(c.hi_q() <= mpq_class(1, 2));
  CHECK(contains(c, mpq_class(1, 4)));

  // clamping an interval already inside the range is a no-op
  Interval inside = Interval::from_q(mpq_class(1, 5), 64);
  Interval c2 = inside.clamp(0, mpq_class(1, 2));
  CHECK(contains(c2, mpq_class(1, 5)));
}

TEST_CASE("sign and comparison predicates") {
  Interval pos = Interval::from_q(mpq_class(1, 7), 64);
  CHECK(pos.strictly_positive());
  CHECK_FALSE(pos.contains_zero());
  CHECK(pos.cmp_q(0) == 1);
  CHECK(pos.cmp_q(1) == -1);
  CHECK(pos.cmp_q(mpq_class(1, 7)) == 0);

  Interval neg = pos.neg();
  CHECK(neg.strictly_negative());

  Interval z = Interval::zero(64);
  CHECK(z.contains_zero());
  CHECK_FALSE(z.strictly_positive());

  Interval lo = Interval::from_q(mpq_class(1), 64);
  Interval hi = Interval::from_q(mpq_class(2), 64);
  CHECK(lo.cmp(hi) == -1);
  CHECK(hi.cmp(lo) == 1);
  CHECK(lo.cmp(lo) == 0);
}

TEST_CASE("widen_q pads both sides") {
  Interval iv = Interval::from_q(mpq_class(1, 3), 64).widen_q(mpq_class(1, 100));
  CHECK(iv.lo_q() <= mpq_class(1, 3) - mpq_class(1, 100));
  CHECK(iv.hi_q() >= mpq_class(1, 3) + mpq_class(1, 100));
}

TEST_CASE("meets_rel_width and midpoint rounding") {
  Interval tight = Interval::from_q(mpq_class(5, 3), 128);
  CHECK(tight.meets_rel_width(100));
  Interval loose = Interval::hull(Interval::from_z(1, 64), Interval::from_z(2, 64));
  CHECK_FALSE(loose.meets_rel_width(10));

  CHECK(Interval::from_q(mpq_class(13, 5), 64).mid_round_z() == 3);
  CHECK(Interval::from_q(mpq_class(-13, 5), 64).mid_round_z() == -3);
  CHECK(Interval::from_q(mpq_class(12, 5), 64).mid_round_z() == 2);
}

TEST_CASE("double projections round outward") {
  Interval iv = Interval::from_q(mpq_class(1, 3), 128);
  CHECK(mpq_class(iv.lo_d()) <= mpq_class(1, 3));
  CHECK(mpq_class(iv.hi_d()) >= mpq_class(1, 3));
  CHECK(iv.mid_d() == doctest::Approx(1.0 / 3.0));
}
