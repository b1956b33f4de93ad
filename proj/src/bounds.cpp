#include "fracparts/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracparts {

namespace {

double pow_n(double x, int n) { return std::pow(x, n); }

long floor_long(const mpq_class& Q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), Q.get_num().get_mpz_t(), Q.get_den().get_mpz_t());
  return fl.get_si();
}

BoundCatalogEntry make(const std::string& name, double value, int n, double q, double phi) {
  BoundCatalogEntry e;
  e.name = name;
  e.value = value;
  e.n = n;
  e.q = q;
  e.phi_q = phi;
  return e;
}

}  // namespace

BoundCatalogEntry evaluate_bound(const std::string& name, int n, const mpq_class& Q,
                                 double phi_q, std::optional<double> phi_2q) {
  if (Q < 1) throw std::invalid_argument("Q must be >= 1");
  if (!(phi_q > 0 && phi_q <= 1)) throw std::invalid_argument("phi(Q) must lie in (0, 1]");
  const double qd = Q.get_d();
  const double qn = pow_n(qd, n);
  if (name == "lv_lower") return make(name, qn * std::log(qd), n, qd, phi_q);
  if (name == "thm_upper")
    return make(name, qn * std::log(qd) + qn / phi_q, n, qd, phi_q);
  if (name == "thm_lower") {
    double raw = qn * std::log(qd * phi_q);
    BoundCatalogEntry e = make(name, std::max(raw, 0.0), n, qd, phi_q);
    e.nontrivial = std::log(qd * phi_q) >= 1;
    return e;
  }
  if (name == "gap_upper") {
    if (!phi_2q) throw MissingPhi2Q();
    if (!(*phi_2q > 0 && *phi_2q <= 1))
      throw std::invalid_argument("phi(2Q) must lie in (0, 1]");
    return make(name, qn * std::log(qd) / *phi_2q, n, qd, phi_q);
  }
  if (name == "lang_1d") {
    if (n != 1) throw std::invalid_argument("lang_1d is defined only at N = 1");
    return make(name, qd * std::log(qd) + qd / phi_q, n, qd, phi_q);
  }
  if (name == "trivial_floor") {
    double pts = pow_n(2.0 * static_cast<double>(floor_long(Q)) + 1.0, n);
    return make(name, 2.0 * (pts - 1.0), n, qd, phi_q);
  }
  throw std::invalid_argument("unknown bound name: " + name);
}

std::vector<BoundCatalogEntry> evaluate_bounds(int n, const mpq_class& Q, double phi_q,
                                               std::optional<double> phi_2q) {
  std::vector<BoundCatalogEntry> out;
  out.push_back(evaluate_bound("lv_lower", n, Q, phi_q));
  out.push_back(evaluate_bound("thm_upper", n, Q, phi_q));
  out.push_back(evaluate_bound("thm_lower", n, Q, phi_q));
  if (phi_2q) out.push_back(evaluate_bound("gap_upper", n, Q, phi_q, phi_2q));
  if (n == 1) out.push_back(evaluate_bound("lang_1d", n, Q, phi_q));
  out.push_back(evaluate_bound("trivial_floor", n, Q, phi_q));
  return out;
}

FitReport fit_theorem_constants(const AlphaVector& alpha, const std::vector<mpq_class>& Q_grid,
                                const PrecisionBudget& budget, unsigned chunks) {
  budget.validate();
  if (Q_grid.empty()) throw std::invalid_argument("Q grid must be nonempty");
  for (size_t i = 0; i + 1 < Q_grid.size(); ++i)
    if (!(Q_grid[i] < Q_grid[i + 1]))
      throw std::invalid_argument("Q grid must be strictly increasing");

  mpq_class max_Q = Q_grid.back();
  PhiTable table = compute_phi_table(alpha, max_Q, budget, chunks);
  const int n = alpha.dim();

  FitReport rep;
  double min_r = std::numeric_limits<double>::infinity();
  double min_l = std::numeric_limits<double>::infinity();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const mpq_class& Q : Q_grid) {
    SumResult s = sum_reciprocals(alpha, BoxSpec::cube(n, Q), budget, chunks);
    double phi_q = phi_at(table, Q).to_double();
    FitRow row;
    row.Q = Q;
    row.sum_mid = mpq_class((s.lower + s.upper) / 2).get_d();
    row.thm_upper = evaluate_bound("thm_upper", n, Q, phi_q).value;
    row.thm_lower = evaluate_bound("thm_lower", n, Q, phi_q).value;
    row.r = row.sum_mid / row.thm_upper;
    row.l = row.sum_mid / std::max(row.thm_lower, pow_n(Q.get_d(), n));
    min_r = std::min(min_r, row.r);
    min_l = std::min(min_l, row.l);
    rep.fitted_constant_high = std::max(rep.fitted_constant_high, row.r);
    double x = std::log(row.thm_upper), y = std::log(row.sum_mid);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    rep.rows.push_back(std::move(row));
  }
  rep.fitted_constant_low = min_l;
  rep.stability = rep.fitted_constant_high / min_r;

  const double m = static_cast<double>(rep.rows.size());
  double denom = m * sxx - sx * sx;
  if (rep.rows.size() >= 2 && denom != 0) {
    rep.slope = (m * sxy - sx * sy) / denom;
    double intercept = (sy - rep.slope * sx) / m;
    double ss = 0;
    for (const FitRow& row : rep.rows) {
      double e = std::log(row.sum_mid) - (rep.slope * std::log(row.thm_upper) + intercept);
      ss += e * e;
    }
    rep.residual = std::sqrt(ss / m);
  }
  return rep;
}

ShellDiffReport shell_difference_check(const AlphaVector& alpha, const mpq_class& Q, double c_n,
                                       const PrecisionBudget& budget, unsigned chunks) {
  budget.validate();
  if (!(c_n > 0)) throw std::invalid_argument("c_N must be positive");
  const int n = alpha.dim();
  PhiTable table = compute_phi_table(alpha, Q, budget, chunks);
  double phi_q = phi_at(table, Q).to_double();
  const double qd = Q.get_d();

  ShellDiffReport rep;
  rep.K = std::log2(std::pow(qd, n) * std::pow(phi_q, n) / std::pow(c_n, n + 1));
  rep.k_hi = static_cast<long>(std::floor(rep.K - 1));
  rep.min_margin = std::numeric_limits<double>::infinity();

  mpq_class qn = 1;
  for (int i = 0; i < n; ++i) qn *= Q;
  for (long k = rep.k_lo; k <= rep.k_hi; ++k) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(k));
    mpq_class eps_k(1, den);
    CountRecord big = count_M(alpha, eps_k, Q, budget, &table, chunks);
    CountRecord small = count_M(alpha, eps_k / 2, Q, budget, &table, chunks);
    ShellDiffRow row;
    row.k = k;
    row.count_k = big.count;
    row.count_k1 = small.count;
    mpq_class threshold = eps_k * qn;
    mpq_class diff = mpq_class(static_cast<unsigned long>(big.count)) -
                     mpq_class(static_cast<unsigned long>(small.count));
    row.threshold = threshold.get_d();
    row.margin = mpq_class(diff - threshold).get_d();
    row.ok = diff >= threshold;
    rep.holds = rep.holds && row.ok;
    rep.min_margin = std::min(rep.min_margin, row.margin);
    rep.rows.push_back(row);
  }
  if (rep.rows.empty()) rep.min_margin = 0;
  rep.derived_lower = rep.k_hi >= 1 ? static_cast<double>(rep.k_hi) * std::pow(qd, n) : 0;
  return rep;
}

}  // namespace fracparts
