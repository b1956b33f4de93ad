#include <doctest.h>
#include <gmpxx.h>

#include <cmath>
#include <vector>

#include "fracparts/errors.hpp"
#include "fracparts/lattice.hpp"

using namespace fracparts;

namespace {

const PrecisionBudget kBudget;

AlphaVector golden() { return parse_alpha("quad:(1+1*sqrt(5))/2"); }
AlphaVector root2() { return parse_alpha("quad:(0+1*sqrt(2))/1"); }
AlphaVector root23() {
  return parse_alpha("quad:(0+1*sqrt(2))/1,quad:(0+1*sqrt(3))/1");
}

}  // namespace

TEST_CASE("count matches hand-checked values") {
  CountRecord r = count_M(golden(), mpq_class(1, 4), 5, kBudget);
  CHECK(r.count == 6);
  CHECK_FALSE(r.ties);
  CHECK(r.n == 1);
  CHECK(r.main_term == doctest::Approx(5.0));
  CHECK(r.error == doctest::Approx(1.0));
  CHECK(std::isnan(r.prop_bound_base));

  // rational alpha = 1/2, eps = 1/2, Q = 1: q = 1 gives |p + 1/2| <= 1/2
  // for p in {-1, 0}, both ties; doubling covers q = -1
  CountRecord rr = count_M(parse_alpha("rat:1/2"), mpq_class(1, 2), 1, kBudget);
  CHECK(rr.count == 4);
  CHECK(rr.ties);
}

TEST_CASE("prop bound base uses the phi table") {
  PhiTable t = compute_phi_table(golden(), 5, kBudget);
  CountRecord r = count_M(golden(), mpq_class(1, 4), 5, kBudget, &t);
  // (eps Q / phi(5))^(1/2) = (1.25 / 0.381966)^(1/2)
  CHECK(r.prop_bound_base == doctest::Approx(std::sqrt(1.25 / 0.3819660113)).epsilon(1e-9));
}

TEST_CASE("enumeration lists the exact solution set") {
  auto pts = enumerate_M(golden(), mpq_class(1, 4), 5, kBudget);
  REQUIRE(pts.size() == 6);
  // sorted lexicographically by (q, p); alpha = 1.618..., so q = -5 wants
  // p near 8.09, and |5 alpha - 8| = 0.0902 <= 1/4
  CHECK(pts[0].q == std::vector<long>{-5});
  CHECK(pts[0].p == 8);
  CHECK(pts[1].q == std::vector<long>{-3});
  CHECK(pts[1].p == 5);
  CHECK(pts[2].q == std::vector<long>{-2});
  CHECK(pts[2].p == 3);
  CHECK(pts[3].q == std::vector<long>{2});
  CHECK(pts[3].p == -3);
  CHECK(pts[4].q == std::vector<long>{3});
  CHECK(pts[4].p == -5);
  CHECK(pts[5].q == std::vector<long>{5});
  CHECK(pts[5].p == -8);

  CHECK_THROWS_AS(enumerate_M(golden(), mpq_class(1, 4), 5, kBudget, 4),
                  OutputCapExceeded);
}

TEST_CASE("count agrees with the naive reference on a small sweep") {
  for (const auto& alpha : {golden(), root2()})
    for (int Q : {1, 2, 3, 6})
      for (mpq_class eps : {mpq_class(1, 2), mpq_class(1, 3), mpq_class(1, 16)}) {
        CountRecord r = count_M(alpha, eps, Q, kBudget);
        CHECK(r.count == naive_count_M(alpha, eps, Q, kBudget));
      }
  for (int Q : {1, 3}) {
    CountRecord r = count_M(root23(), mpq_class(1, 4), Q, kBudget);
    CHECK(r.count == naive_count_M(root23(), mpq_class(1, 4), Q, kBudget));
  }
}

TEST_CASE("count is even, monotone and empty below the phi threshold") {
  // parity: members come in (p,q) / (-p,-q) pairs
  unsigned long long prev = 0;
  for (int k = 6; k >= 1; --k) {
    CountRecord r = count_M(root2(), mpq_class(1, 1 << k), 9, kBudget);
    CHECK(r.count % 2 == 0);
    CHECK(r.count >= prev);  // monotone in eps
    prev = r.count;
  }
  unsigned long long at_q9 = prev;
  CountRecord r10 = count_M(root2(), mpq_class(1, 2), 10, kBudget);
  CHECK(r10.count >= at_q9);  // monotone in Q

  // emptiness: eps Q^N < phi(Q) forces M to be empty
  PhiTable t = compute_phi_table(root2(), 50, kBudget);
  for (int Q : {2, 7, 50}) {
    mpq_class phi_lo = phi_at(t, Q).eval(64).lo_q();
    mpq_class eps = phi_lo / (2 * Q);
    REQUIRE(eps * Q < phi_lo);
    CHECK(count_M(root2(), eps, Q, kBudget).count == 0);
  }
}

TEST_CASE("box count exceeds the origin-free count by one") {
  for (const auto& alpha : {golden(), root2()}) {
    for (int Q : {1, 4, 9}) {
      BridgeCounts b = cardinality_bridge(alpha, mpq_class(1, 3), Q, kBudget);
      CHECK(b.lattice_box_count == b.m_count + 1);
      CHECK(b.m_count == count_M(alpha, mpq_class(1, 3), Q, kBudget).count);
    }
  }
  BridgeCounts b2 = cardinality_bridge(root23(), mpq_class(1, 5), 3, kBudget);
  CHECK(b2.lattice_box_count == b2.m_count + 1);
}

TEST_CASE("shortest vector on the distinguished line") {
  LatticeInstance one(golden());
  CHECK(lambda1_in_C(one) == 1.0);
  LatticeInstance two(root23());
  CHECK(lambda1_in_C(two) == 1.0);
}

TEST_CASE("nu finds the minimal product with its witness") {
  LatticeInstance inst(root23());
  NuResult r = nu(inst, 2, kBudget);
  REQUIRE_FALSE(r.infinite);
  REQUIRE(r.witness.has_value());
  // q = (0,1), p = -2: |sqrt(3) - 2| * 1 = 2 - sqrt(3)
  CHECK(r.witness->q == std::vector<long>{0, 1});
  CHECK(r.witness->p == -2);
  Scalar expect = Scalar::exact(ExactForm::surd(2, -1, 3, 1));
  CHECK(r.nm_min.cmp(expect) == 0);
  CHECK(r.value.midpoint_d() ==
        doctest::Approx(std::cbrt(2.0 - std::sqrt(3.0))).epsilon(1e-9));

  // golden: nu = sqrt((3-sqrt(5))/2) = (sqrt(5)-1)/2 at every radius
  LatticeInstance g(golden());
  for (int rho : {2, 5, 10}) {
    NuResult rg = nu(g, rho, kBudget);
    REQUIRE_FALSE(rg.infinite);
    CHECK(rg.nm_min.cmp(Scalar::exact(ExactForm::surd(3, -1, 5, 2))) == 0);
    CHECK(rg.value.midpoint_d() ==
          doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-9));
  }

  // tiny radius: the ball is empty off the q = 0 line
  NuResult empty = nu(inst, mpq_class(1, 2), kBudget);
  CHECK(empty.infinite);
}

TEST_CASE("admissibility floor holds at the probed radii") {
  for (const auto& alpha : {golden(), root23()}) {
    LatticeInstance inst(alpha);
    for (int rho : {2, 5, 10}) {
      AdmissibilityReport rep = mu(inst, rho, kBudget);
      CHECK(rep.lambda1_C == 1.0);
      if (!rep.nu_infinite) {
        // nu >= phi(rho)^(1/(N+1)), allowing double rounding at the boundary
        CHECK(rep.nu_value >= rep.phi_floor - 1e-9);
        CHECK(rep.mu_value <= rep.nu_value + 1e-15);
        CHECK(rep.mu_value <= rep.lambda1_C);
      }
    }
  }
}

TEST_CASE("two parameter error audit stays finite and coherent") {
  LatticeInstance inst(golden());
  WidmerReport w = widmer_instance_check(
      inst, mpq_class(1, 4), 12, {mpq_class(2), mpq_class(4), mpq_class(12)}, kBudget);
  REQUIRE(w.rows.size() == 3);
  CHECK(w.qbar == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  for (const auto& row : w.rows) {
    CHECK(row.term > 0);
    CHECK(row.mu_value > 0);
    CHECK(row.mu_value <= 1.0);
  }
  CHECK(w.min_term <= w.rows[0].term);
  CHECK(w.count == count_M(golden(), mpq_class(1, 4), 12, kBudget).count);
  CHECK(w.ratio == doctest::Approx(w.actual_error / w.min_term));

  CHECK_THROWS_AS(
      widmer_instance_check(inst, mpq_class(1, 4), 12, {mpq_class(13)}, kBudget),
      std::invalid_argument);
}

TEST_CASE("scaling report carries ratios and a finite slope") {
  std::vector<std::pair<mpq_class, mpq_class>> grid;
  for (int k = 1; k <= 3; ++k)
    for (int Q : {4, 8, 16}) grid.push_back({mpq_class(1, 1 << k), Q});
  PropBoundReport rep = verify_prop_bound(golden(), grid, kBudget);
  REQUIRE(rep.records.size() == 9);
  REQUIRE(rep.ratios.size() == 9);
  for (size_t i = 0; i < rep.records.size(); ++i) {
    CHECK(rep.records[i].count % 2 == 0);
    CHECK(rep.ratios[i] >= 0);
    CHECK(rep.max_ratio >= rep.ratios[i]);
  }
  CHECK(std::isfinite(rep.slope));
  CHECK(std::isfinite(rep.intercept));
}
