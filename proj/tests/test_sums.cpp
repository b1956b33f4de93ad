#include <doctest.h>
#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <vector>

#include "fracparts/errors.hpp"
#include "fracparts/lattice.hpp"
#include "fracparts/sums.hpp"

using namespace fracparts;

namespace {

const PrecisionBudget kBudget;

AlphaVector golden() { return parse_alpha("quad:(1+1*sqrt(5))/2"); }
AlphaVector root2() { return parse_alpha("quad:(0+1*sqrt(2))/1"); }
AlphaVector root23() {
  return parse_alpha("quad:(0+1*sqrt(2))/1,quad:(0+1*sqrt(3))/1");
}

}  // namespace

TEST_CASE("box radii floor to integer extents") {
  CHECK(BoxSpec::cube(2, mpq_class(7, 2)).int_radii() == std::vector<long>{3, 3});
  CHECK(BoxSpec::cube(1, mpq_class(1, 2)).int_radii() == std::vector<long>{0});
  CHECK_THROWS(BoxSpec::cube(1, 0).int_radii());
  CHECK_THROWS(BoxSpec::cube(0, 1));
  BoxSpec uneven{{mpq_class(2), mpq_class(5, 2)}};
  CHECK(uneven.int_radii() == std::vector<long>{2, 2});
  CHECK(uneven.geo_mean_d() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("golden sum at Q = 3 against the closed forms") {
  SumResult s = sum_reciprocals(golden(), BoxSpec::cube(1, 3), kBudget);
  CHECK(s.terms == 6);
  CHECK(s.upper >= s.lower);
  CHECK(s.upper - s.lower < mpq_class(1, mpz_class(1) << 40));
  // S = 2 (1/||a|| + 1/||2a|| + 1/||3a||), all three distances exact surds:
  // (3-sqrt(5))/2, sqrt(5)-2, (7-3 sqrt(5))/2 -> S = 27.4164078...
  double mid = mpq_class((s.lower + s.upper) / 2).get_d();
  CHECK(mid == doctest::Approx(27.416407864998737).epsilon(1e-12));
  // minimal distance over the box is ||3a|| = (7-3 sqrt(5))/2
  CHECK(s.min_dist.cmp(Scalar::exact(ExactForm::surd(7, -3, 5, 2))) == 0);

  // empty box: no terms, zero sum
  SumResult empty = sum_reciprocals(golden(), BoxSpec::cube(1, mpq_class(1, 2)), kBudget);
  CHECK(empty.terms == 0);
  CHECK(empty.lower == 0);
  CHECK(empty.upper == 0);
}

TEST_CASE("reciprocal sums respect the trivial floor exactly") {
  for (const auto& alpha : {golden(), root2()})
    for (int Q : {1, 2, 5, 9}) {
      SumResult s = sum_reciprocals(alpha, BoxSpec::cube(1, Q), kBudget);
      mpq_class floor_v = 2 * ((2 * Q + 1) - 1);
      CHECK(s.lower >= floor_v);
    }
  SumResult s2 = sum_reciprocals(root23(), BoxSpec::cube(2, 3), kBudget);
  CHECK(s2.lower >= 2 * (49 - 1));
  CHECK(s2.terms == 48);
}

TEST_CASE("resonant directions are rejected with the witness attached") {
  AlphaVector half = parse_alpha("rat:1/2");
  CHECK_THROWS_AS(sum_reciprocals(half, BoxSpec::cube(1, 2), kBudget), ResonanceError);
  try {
    sum_reciprocals(half, BoxSpec::cube(1, 2), kBudget);
  } catch (const ResonanceError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("sums are identical across chunk counts and under negation") {
  BoxSpec box = BoxSpec::cube(2, 5);
  SumResult s1 = sum_reciprocals(root23(), box, kBudget, 1);
  SumResult s2 = sum_reciprocals(root23(), box, kBudget, 2);
  SumResult s8 = sum_reciprocals(root23(), box, kBudget, 8);
  CHECK(s1.lower == s2.lower);
  CHECK(s1.upper == s2.upper);
  CHECK(s1.lower == s8.lower);
  CHECK(s1.upper == s8.upper);
  CHECK(s1.terms == s8.terms);
  CHECK(s1.min_witness == s8.min_witness);

  AlphaVector neg = parse_alpha("quad:(0+-1*sqrt(2))/1,quad:(0+-1*sqrt(3))/1");
  SumResult sn = sum_reciprocals(neg, box, kBudget);
  CHECK(sn.lower == s1.lower);
  CHECK(sn.upper == s1.upper);
}

TEST_CASE("dyadic profile of the golden ratio at Q = 5") {
  PhiTable t = compute_phi_table(golden(), 5, kBudget);
  DyadicProfile p = dyadic_profile(golden(), 5, kBudget, &t);
  REQUIRE(p.shell_counts.size() == 3);
  CHECK(p.shell_counts.at(1) == 4);
  CHECK(p.shell_counts.at(2) == 4);
  CHECK(p.shell_counts.at(3) == 2);
  CHECK(p.k_max == 3);
  CHECK_FALSE(p.shell_ties);
  // every q lands in exactly one shell
  unsigned long long total = 0;
  for (auto& [k, c] : p.shell_counts) total += c;
  CHECK(total == 10);
}

TEST_CASE("shell tails reproduce the lattice counts") {
  // sum of shells j >= k equals |M(alpha, 2^-k, Q)| when no tie sits on the cut
  for (const auto& alpha : {golden(), root2()}) {
    DyadicProfile p = dyadic_profile(alpha, 7, kBudget);
    REQUIRE_FALSE(p.shell_ties);
    for (long k = 1; k <= p.k_max; ++k) {
      unsigned long long tail = 0;
      for (auto& [j, c] : p.shell_counts)
        if (j >= k) tail += c;
      CountRecord r = count_M(alpha, mpq_class(1, mpz_class(1) << k), 7, kBudget);
      CHECK(tail == r.count);
    }
  }
}

TEST_CASE("profiles merge identically across chunks") {
  PhiTable t = compute_phi_table(root23(), 6, kBudget);
  DyadicProfile p1 = dyadic_profile(root23(), 6, kBudget, &t, 1);
  DyadicProfile p8 = dyadic_profile(root23(), 6, kBudget, &t, 8);
  CHECK(p1.shell_counts == p8.shell_counts);
  CHECK(p1.k_max == p8.k_max);
  CHECK(p1.shell_ties == p8.shell_ties);
}

TEST_CASE("sandwich brackets the reciprocal sum") {
  for (const auto& alpha : {golden(), root2()}) {
    for (int Q : {2, 5, 11}) {
      DyadicProfile p = dyadic_profile(alpha, Q, kBudget);
      SumResult s = sum_reciprocals(alpha, BoxSpec::cube(1, Q), kBudget);
      SandwichResult w = sandwich_check(p, s);
      CHECK(w.holds);
      CHECK(w.lower_sum <= s.upper);
      CHECK(w.upper_sum >= s.lower);
      CHECK(w.upper_sum == 2 * w.lower_sum);
    }
  }
  // golden at Q = 5: shells {1:4, 2:4, 3:2} give 2*4 + 4*4 + 8*2 = 40
  DyadicProfile p5 = dyadic_profile(golden(), 5, kBudget);
  SumResult s5 = sum_reciprocals(golden(), BoxSpec::cube(1, 5), kBudget);
  SandwichResult w5 = sandwich_check(p5, s5);
  CHECK(w5.lower_sum == 40);
  CHECK(w5.upper_sum == 80);
  double mid5 = mpq_class((s5.lower + s5.upper) / 2).get_d();
  CHECK(mid5 == doctest::Approx(53.832816).epsilon(1e-6));

  // empty profile and empty sum still agree
  DyadicProfile pe = dyadic_profile(golden(), mpq_class(1, 2), kBudget);
  SumResult se = sum_reciprocals(golden(), BoxSpec::cube(1, mpq_class(1, 2)), kBudget);
  CHECK(pe.shell_counts.empty());
  SandwichResult we = sandwich_check(pe, se);
  CHECK(we.holds);
  CHECK(we.lower_sum == 0);
  CHECK(we.upper_sum == 0);
}

TEST_CASE("gap principle at small heights") {
  GapReport g = verify_gap_principle(golden(), 5, kBudget);
  CHECK(g.holds);
  CHECK(g.values == 5);
  CHECK(g.min_gap == doctest::Approx(0.05572809000084121).epsilon(1e-12));
  CHECK(g.min_value == doctest::Approx(0.09016994374947424).epsilon(1e-12));
  CHECK(g.floor_value == doctest::Approx(0.03819660112501051).epsilon(1e-12));
  CHECK(g.violation_a.empty());

  // a single representative: no pairs, min_gap infinite, floor still checked
  GapReport g1 = verify_gap_principle(golden(), 1, kBudget);
  CHECK(g1.holds);
  CHECK(g1.values == 1);
  CHECK(std::isinf(g1.min_gap));
  CHECK(g1.min_value == doctest::Approx(0.3819660112501051).epsilon(1e-12));
  // floor = phi(2)/2 = (3-sqrt(5))/4
  CHECK(g1.floor_value == doctest::Approx(0.1909830056250526).epsilon(1e-12));

  GapReport g23 = verify_gap_principle(root23(), 3, kBudget);
  CHECK(g23.holds);
  CHECK(g23.values == 24);
}

TEST_CASE("gap verification rejects oversized pair sets") {
  CHECK_THROWS_AS(verify_gap_principle(golden(), 1000, kBudget, 100),
                  PairCapExceeded);
}

TEST_CASE("gap reports are chunk independent") {
  GapReport a = verify_gap_principle(root23(), 3, kBudget, 200000, 1);
  GapReport b = verify_gap_principle(root23(), 3, kBudget, 200000, 8);
  CHECK(a.holds == b.holds);
  CHECK(a.values == b.values);
  CHECK(a.min_gap == b.min_gap);
  CHECK(a.min_value == b.min_value);
}
