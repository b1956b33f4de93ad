// Acceptance suite: seven numbered checks, one PASS/FAIL line each, exit 0
// only when every check passes.  Tolerances are pinned here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "fracparts/bounds.hpp"
#include "fracparts/lattice.hpp"
#include "fracparts/serialize.hpp"
#include "fracparts/sums.hpp"

using namespace fracparts;

namespace {

const PrecisionBudget kBudget;

AlphaVector golden() { return parse_alpha("quad:(1+1*sqrt(5))/2"); }
AlphaVector root2() { return parse_alpha("quad:(0+1*sqrt(2))/1"); }
AlphaVector root23() {
  return parse_alpha("quad:(0+1*sqrt(2))/1,quad:(0+1*sqrt(3))/1");
}
AlphaVector root235() {
  return parse_alpha(
      "quad:(0+1*sqrt(2))/1,quad:(0+1*sqrt(3))/1,quad:(0+1*sqrt(5))/1");
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail, double secs) {
  std::printf("criterion %d (%s): %s — %s [%.1fs]\n", idx, name, ok ? "PASS" : "FAIL",
              detail.c_str(), secs);
  if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// 1. count_M equals the structure-free double loop on the full grid.
void criterion1() {
  Timer t;
  bool ok = true;
  std::string first_bad;
  std::vector<AlphaVector> alphas = {golden(), root2(), root23(), root235()};
  long checked = 0;
  for (const auto& alpha : alphas)
    for (int Q : {3, 7, 20})
      for (mpq_class eps : {mpq_class(1, 2), mpq_class(1, 4), mpq_class(1, 16)}) {
        unsigned long long fast = count_M(alpha, eps, Q, kBudget).count;
        unsigned long long slow = naive_count_M(alpha, eps, Q, kBudget);
        ++checked;
        if (fast != slow && ok) {
          ok = false;
          first_bad = fmt("first mismatch n=%d q=%d: %llu vs %llu", alpha.dim(), Q, fast, slow);
        }
      }
  std::string detail = ok ? fmt("%ld grid points, all equal", checked) : first_bad;
  bool in_time = t.seconds() < 60.0;
  if (!in_time) detail += fmt("; over the 60s budget");
  report(1, "oracle equivalence", ok && in_time, detail, t.seconds());
}

// 2. Inequalities that must hold exactly, no tolerance.
void criterion2() {
  Timer t;
  bool ok = true;
  std::string bad;
  auto require = [&](bool cond, const char* what) {
    if (!cond && ok) {
      ok = false;
      bad = what;
    }
  };

  // sandwich between shell counts and the sum enclosure
  for (int Q : {5, 9}) {
    DyadicProfile p = dyadic_profile(golden(), Q, kBudget);
    SumResult s = sum_reciprocals(golden(), BoxSpec::cube(1, Q), kBudget);
    require(sandwich_check(p, s).holds, "sandwich (golden)");
  }
  {
    DyadicProfile p = dyadic_profile(root2(), 7, kBudget);
    SumResult s = sum_reciprocals(root2(), BoxSpec::cube(1, 7), kBudget);
    require(sandwich_check(p, s).holds, "sandwich (sqrt2)");
    DyadicProfile p2 = dyadic_profile(root23(), 3, kBudget);
    SumResult s2 = sum_reciprocals(root23(), BoxSpec::cube(2, 3), kBudget);
    require(sandwich_check(p2, s2).holds, "sandwich (sqrt2,sqrt3)");
  }

  // box count = origin-free count + 1
  {
    BridgeCounts b1 = cardinality_bridge(golden(), mpq_class(1, 3), 7, kBudget);
    require(b1.lattice_box_count == b1.m_count + 1, "bridge (golden)");
    BridgeCounts b2 = cardinality_bridge(root2(), mpq_class(1, 4), 6, kBudget);
    require(b2.lattice_box_count == b2.m_count + 1, "bridge (sqrt2)");
    BridgeCounts b3 = cardinality_bridge(root23(), mpq_class(1, 5), 3, kBudget);
    require(b3.lattice_box_count == b3.m_count + 1, "bridge (sqrt2,sqrt3)");
  }

  // pairwise gaps and single values clear phi(2Q)/(2Q)^N
  for (const auto& alpha : {golden(), root2()})
    for (int Q : {5, 20, 50})
      require(verify_gap_principle(alpha, Q, kBudget).holds, "gap floor");

  // below the phi threshold the solution set is empty
  for (const auto& alpha : {golden(), root2()}) {
    PhiTable table = compute_phi_table(alpha, 20, kBudget);
    for (int Q : {5, 20}) {
      Scalar phi = phi_at(table, Q);
      mpq_class eps = phi.eval(64).lo_q() / (2 * Q);
      require(phi.cmp_q(eps * Q) == 1, "emptiness premise");
      require(count_M(alpha, eps, Q, kBudget).count == 0, "emptiness");
    }
  }

  // nu^(N+1) >= empirical phi at the probed radii, compared exactly
  for (const auto& alpha : {golden(), root23()}) {
    LatticeInstance inst(alpha);
    PhiTable table = compute_phi_table(alpha, 10, kBudget);
    for (int rho : {2, 5, 10}) {
      NuResult nv = nu(inst, rho, kBudget);
      if (!nv.infinite)
        require(nv.nm_min.cmp(phi_at(table, rho)) >= 0, "nu floor");
      AdmissibilityReport rep = mu(inst, rho, kBudget, &table);
      require(rep.lambda1_C == 1.0, "lambda1");
    }
  }

  // count parity and monotonicity in both arguments
  {
    unsigned long long prev = 0;
    for (int k = 8; k >= 1; --k) {
      CountRecord r = count_M(golden(), mpq_class(1, 1 << k), 9, kBudget);
      require(r.count % 2 == 0, "parity");
      require(r.count >= prev, "monotone in eps");
      prev = r.count;
    }
    unsigned long long prev_q = 0;
    for (int Q : {2, 4, 8, 16}) {
      CountRecord r = count_M(root23(), mpq_class(1, 8), Q, kBudget);
      require(r.count % 2 == 0, "parity");
      require(r.count >= prev_q, "monotone in Q");
      prev_q = r.count;
    }
  }

  // every reciprocal is >= 2, so S >= 2((2 floor(Q) + 1)^N - 1), exactly
  for (int Q : {1, 5, 12}) {
    SumResult s = sum_reciprocals(golden(), BoxSpec::cube(1, Q), kBudget);
    require(s.lower >= 2 * ((2 * Q + 1) - 1), "trivial floor (n=1)");
  }
  {
    SumResult s = sum_reciprocals(root23(), BoxSpec::cube(2, 4), kBudget);
    require(s.lower >= 2 * (81 - 1), "trivial floor (n=2)");
  }

  report(2, "exact inequalities", ok, ok ? "all exact checks hold" : "failed: " + bad,
         t.seconds());
}

// 3. Frozen ground-truth values, tolerance 1e-6.
void criterion3() {
  Timer t;
  bool ok = true;
  std::string bad;
  auto require = [&](bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      bad = what;
    }
  };
  const double tol = 1e-6;

  PhiTable tg = compute_phi_table(golden(), 10000, kBudget);
  require(tg.breakpoints.size() == 1, fmt("golden table has %zu breakpoints", tg.breakpoints.size()));
  if (!tg.breakpoints.empty()) {
    require(tg.breakpoints[0].x == 1, "golden breakpoint height");
    require(std::fabs(tg.breakpoints[0].value.to_double() - 0.381966) <= tol,
            "golden phi value");
  }

  PhiTable t2 = compute_phi_table(root2(), 1000, kBudget);
  require(t2.breakpoints.size() == 2, fmt("sqrt2 table has %zu breakpoints", t2.breakpoints.size()));
  if (t2.breakpoints.size() == 2) {
    require(t2.breakpoints[0].x == 1 &&
                std::fabs(t2.breakpoints[0].value.to_double() - 0.414214) <= tol,
            "sqrt2 first breakpoint");
    require(t2.breakpoints[1].x == 2 &&
                std::fabs(t2.breakpoints[1].value.to_double() - 0.343146) <= tol,
            "sqrt2 second breakpoint");
  }

  SumResult s3 = sum_reciprocals(golden(), BoxSpec::cube(1, 3), kBudget);
  double mid = mpq_class((s3.lower + s3.upper) / 2).get_d();
  require(std::fabs(mid - 27.416408) <= tol, fmt("golden sum at 3: %.8f", mid));

  require(count_M(golden(), mpq_class(1, 4), 5, kBudget).count == 6, "golden count at (1/4, 5)");

  DyadicProfile p = dyadic_profile(golden(), 5, kBudget);
  bool profile_ok = p.shell_counts.size() == 3 && p.shell_counts.count(1) &&
                    p.shell_counts.count(2) && p.shell_counts.count(3) &&
                    p.shell_counts.at(1) == 4 && p.shell_counts.at(2) == 4 &&
                    p.shell_counts.at(3) == 2;
  require(profile_ok, "golden profile at 5");

  PhiTable t23 = compute_phi_table(root23(), 1, kBudget);
  require(!t23.breakpoints.empty() &&
              std::fabs(phi_at(t23, 1).to_double() - 0.146264) <= tol,
          "sqrt2,sqrt3 phi at 1");

  report(3, "ground truths", ok, ok ? "six frozen values reproduced" : "failed: " + bad,
         t.seconds());
}

double g_c1 = 0;  // twice the golden max ratio, consumed by criterion 6

// 4. Counting error scaling against (eps Q^N / phi(Q))^(N/(N+1)).
void criterion4() {
  Timer t;
  std::vector<std::pair<mpq_class, mpq_class>> grid1;
  for (int k = 1; k <= 8; ++k)
    for (int e = 4; e <= 10; ++e)
      grid1.push_back({mpq_class(1, 1 << k), mpq_class(1 << e)});
  PropBoundReport r1 = verify_prop_bound(golden(), grid1, kBudget);
  g_c1 = 2 * r1.max_ratio;

  std::vector<std::pair<mpq_class, mpq_class>> grid2;
  for (int k = 1; k <= 8; ++k)
    for (int e = 4; e <= 8; ++e)
      grid2.push_back({mpq_class(1, 1 << k), mpq_class(1 << e)});
  PropBoundReport r2 = verify_prop_bound(root23(), grid2, kBudget);

  bool ok = std::isfinite(r1.max_ratio) && std::isfinite(r2.max_ratio) &&
            r1.slope <= 0.6 && r2.slope <= 2.0 / 3.0 + 0.1;
  bool in_time = t.seconds() < 600.0;
  std::string detail =
      fmt("n=1 max ratio %.4f slope %.4f (<= 0.6); n=2 max ratio %.4f slope %.4f (<= %.4f)",
          r1.max_ratio, r1.slope, r2.max_ratio, r2.slope, 2.0 / 3.0 + 0.1);
  report(4, "error scaling", ok && in_time, detail, t.seconds());
}

// 5. The reciprocal sum against its closed-form two-sided bounds.
void criterion5() {
  Timer t;
  std::vector<mpq_class> grid1;
  for (long Q = 16; Q <= 4096; Q *= 2) grid1.push_back(Q);
  FitReport f1 = fit_theorem_constants(golden(), grid1, kBudget);

  bool lower_ok = true;
  for (const auto& row : f1.rows) {
    double qn = row.Q.get_d();
    if (row.thm_lower >= qn && row.sum_mid < 0.05 * row.thm_lower) lower_ok = false;
  }

  std::vector<mpq_class> grid2;
  for (long Q = 16; Q <= 512; Q *= 2) grid2.push_back(Q);
  FitReport f2 = fit_theorem_constants(root23(), grid2, kBudget);

  bool ok = f1.stability < 10.0 && lower_ok && f2.stability < 20.0;
  bool in_time = t.seconds() < 900.0;
  std::string detail = fmt(
      "n=1 ratio band [%.3f, %.3f] spread %.3f (< 10), lower constant >= 0.05: %s; "
      "n=2 band [%.3f, %.3f] spread %.3f (< 20)",
      f1.fitted_constant_high / f1.stability, f1.fitted_constant_high, f1.stability,
      lower_ok ? "yes" : "no", f2.fitted_constant_high / f2.stability,
      f2.fitted_constant_high, f2.stability);
  report(5, "two-sided bounds", ok && in_time, detail, t.seconds());
}

// 6. Shell-difference lower bound with the constant inherited from 4.
void criterion6() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (int Q : {100, 1000}) {
    ShellDiffReport rep = shell_difference_check(golden(), Q, g_c1, kBudget);
    ok = ok && rep.holds;
    detail += fmt("%sQ=%d: K=%.3f, k in [1,%ld], %s", Q == 100 ? "" : "; ", Q, rep.K,
                  rep.k_hi, rep.holds ? (rep.rows.empty() ? "vacuous" : "holds") : "VIOLATED");
  }
  report(6, "shell differences", ok, fmt("c=%.4f; ", g_c1) + detail, t.seconds());
}

// 7. Chunking must not change a single output byte.
void criterion7() {
  Timer t;
  bool ok = true;
  std::string bad;
  auto same = [&](const std::string& name, const std::string& a, const std::string& b,
                  const std::string& c) {
    if ((a != b || a != c) && ok) {
      ok = false;
      bad = name;
    }
  };

  auto count_art = [&](unsigned ch) {
    PhiTable table = compute_phi_table(root23(), 6, kBudget, ch);
    std::vector<CountRecord> recs;
    for (int Q : {3, 6})
      for (mpq_class eps : {mpq_class(1, 2), mpq_class(1, 8)})
        recs.push_back(count_M(root23(), eps, Q, kBudget, &table, ch));
    return count_csv(recs);
  };
  same("count", count_art(1), count_art(2), count_art(8));

  auto phi_art = [&](unsigned ch) {
    return phi_csv(compute_phi_table(root23(), 8, kBudget, ch));
  };
  same("phi", phi_art(1), phi_art(2), phi_art(8));

  auto sharp_art = [&](unsigned ch) {
    return sharpness_csv(sharpness_sequence(compute_phi_table(root2(), 50, kBudget, ch)));
  };
  same("sharpness", sharp_art(1), sharp_art(2), sharp_art(8));

  auto sum_art = [&](unsigned ch) {
    return sum_csv(sum_reciprocals(root23(), BoxSpec::cube(2, 6), kBudget, ch));
  };
  same("sum", sum_art(1), sum_art(2), sum_art(8));

  auto profile_art = [&](unsigned ch) {
    return profile_csv(dyadic_profile(golden(), 50, kBudget, nullptr, ch));
  };
  same("profile", profile_art(1), profile_art(2), profile_art(8));

  auto gap_art = [&](unsigned ch) {
    return gap_csv(verify_gap_principle(root23(), 3, kBudget, 200000, ch));
  };
  same("gap", gap_art(1), gap_art(2), gap_art(8));

  auto prop_art = [&](unsigned ch) {
    std::vector<std::pair<mpq_class, mpq_class>> grid = {
        {mpq_class(1, 2), 8}, {mpq_class(1, 4), 8}, {mpq_class(1, 4), 16}};
    return prop_csv(verify_prop_bound(golden(), grid, kBudget, ch));
  };
  same("prop", prop_art(1), prop_art(2), prop_art(8));

  auto fit_art = [&](unsigned ch) {
    return fit_csv(fit_theorem_constants(golden(), {8, 16, 32}, kBudget, ch));
  };
  same("fit", fit_art(1), fit_art(2), fit_art(8));

  auto shells_art = [&](unsigned ch) {
    return shells_csv(shell_difference_check(golden(), 100, 1.0, kBudget, ch));
  };
  same("shells", shells_art(1), shells_art(2), shells_art(8));

  auto widmer_art = [&](unsigned ch) {
    LatticeInstance inst(root23());
    return widmer_csv(widmer_instance_check(inst, mpq_class(1, 4), 6,
                                            {mpq_class(2), mpq_class(4), mpq_class(6)},
                                            kBudget, ch));
  };
  same("widmer", widmer_art(1), widmer_art(2), widmer_art(8));

  auto pairs_art = [&](unsigned ch) {
    return pairs_csv(enumerate_M(golden(), mpq_class(1, 4), 20, kBudget, 200000, ch));
  };
  same("pairs", pairs_art(1), pairs_art(2), pairs_art(8));

  report(7, "chunk determinism", ok,
         ok ? "11 artifact kinds byte-identical across chunks {1,2,8}" : "differs: " + bad,
         t.seconds());
}

}  // namespace

int main() {
  Timer total;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  std::printf("%s (%d/7 passed, %.1fs total)\n", failures == 0 ? "ACCEPTED" : "REJECTED",
              7 - failures, total.seconds());
  return failures == 0 ? 0 : 1;
}
