#include "fracparts/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fracparts {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

double to_double_down(const mpq_class& q) { return Interval::from_q(q, 53).lo_d(); }
double to_double_up(const mpq_class& q) { return Interval::from_q(q, 53).hi_d(); }

namespace {

ojson witness_json(const std::vector<long>& w) {
  ojson a = ojson::array();
  for (long v : w) a.push_back(v);
  return a;
}

std::string witness_csv(const std::vector<long>& w) {
  std::string s = "[";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? ";" : "") + std::to_string(w[i]);
  return s + "]";
}

ojson finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

ojson count_json(const CountRecord& rec) {
  ojson j;
  j["n"] = rec.n;
  j["q"] = rec.q_radius.get_d();
  j["eps"] = rec.eps.get_d();
  j["count"] = rec.count;
  j["main_term"] = rec.main_term;
  j["error"] = rec.error;
  j["prop_bound_base"] = finite_or_null(rec.prop_bound_base);
  j["ties"] = rec.ties;
  return j;
}

ojson count_json(const std::vector<CountRecord>& recs) {
  ojson a = ojson::array();
  for (const auto& r : recs) a.push_back(count_json(r));
  return a;
}

ojson phi_json(const PhiTable& table) {
  ojson j;
  j["alpha"] = table.alpha_text;
  j["q_max"] = table.q_max.get_d();
  ojson bps = ojson::array();
  for (const auto& bp : table.breakpoints) {
    ojson b;
    b["x"] = bp.x;
    b["value"] = bp.value.to_double();
    b["witness"] = witness_json(bp.witness);
    bps.push_back(std::move(b));
  }
  j["breakpoints"] = std::move(bps);
  return j;
}

ojson sum_json(const SumResult& sum) {
  ojson j;
  ojson radii = ojson::array();
  for (const auto& r : sum.box.radii) radii.push_back(r.get_d());
  j["radii"] = std::move(radii);
  j["lower"] = to_double_down(sum.lower);
  j["upper"] = to_double_up(sum.upper);
  j["terms"] = sum.terms;
  return j;
}

ojson profile_json(const DyadicProfile& profile) {
  ojson j;
  j["q"] = profile.Q.get_d();
  ojson shells;
  for (const auto& [k, c] : profile.shell_counts) shells[std::to_string(k)] = c;
  j["shells"] = std::move(shells);
  j["k_max"] = profile.k_max;
  j["shell_ties"] = profile.shell_ties;
  return j;
}

ojson sandwich_json(const DyadicProfile& profile, const SumResult& sum,
                    const SandwichResult& sw) {
  ojson j;
  j["profile"] = profile_json(profile);
  j["sum"] = sum_json(sum);
  j["lower_sum"] = sw.lower_sum.get_d();
  j["upper_sum"] = sw.upper_sum.get_d();
  j["holds"] = sw.holds;
  return j;
}

ojson gap_json(const GapReport& rep) {
  ojson j;
  j["holds"] = rep.holds;
  j["values"] = rep.values;
  j["min_gap"] = finite_or_null(rep.min_gap);
  j["min_value"] = rep.min_value;
  j["floor"] = rep.floor_value;
  if (!rep.holds) {
    j["violation_a"] = witness_json(rep.violation_a);
    j["violation_b"] = witness_json(rep.violation_b);
  }
  return j;
}

ojson bounds_json(const std::vector<BoundCatalogEntry>& entries) {
  ojson a = ojson::array();
  for (const auto& e : entries) {
    ojson j;
    j["name"] = e.name;
    j["value"] = e.value;
    j["n"] = e.n;
    j["q"] = e.q;
    j["phi_q"] = e.phi_q;
    if (!e.nontrivial) j["nontrivial"] = false;
    a.push_back(std::move(j));
  }
  return a;
}

ojson sharpness_json(const std::vector<SharpnessEntry>& entries) {
  ojson a = ojson::array();
  for (const auto& e : entries) {
    ojson j;
    j["x"] = e.x;
    j["witness"] = witness_json(e.witness);
    j["value"] = e.value;
    a.push_back(std::move(j));
  }
  return a;
}

ojson fit_json(const FitReport& rep) {
  ojson j;
  ojson rows = ojson::array();
  for (const auto& r : rep.rows) {
    ojson row;
    row["q"] = r.Q.get_d();
    row["sum"] = r.sum_mid;
    row["thm_upper"] = r.thm_upper;
    row["thm_lower"] = r.thm_lower;
    row["r"] = r.r;
    row["l"] = r.l;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["fitted_constant_low"] = rep.fitted_constant_low;
  j["fitted_constant_high"] = rep.fitted_constant_high;
  j["stability"] = rep.stability;
  j["slope"] = rep.slope;
  j["residual"] = rep.residual;
  return j;
}

ojson shells_json(const ShellDiffReport& rep) {
  ojson j;
  j["K"] = rep.K;
  j["k_lo"] = rep.k_lo;
  j["k_hi"] = rep.k_hi;
  j["holds"] = rep.holds;
  j["min_margin"] = finite_or_null(rep.min_margin);
  j["derived_lower"] = rep.derived_lower;
  ojson rows = ojson::array();
  for (const auto& r : rep.rows) {
    ojson row;
    row["k"] = r.k;
    row["count_k"] = r.count_k;
    row["count_k1"] = r.count_k1;
    row["threshold"] = r.threshold;
    row["margin"] = r.margin;
    row["ok"] = r.ok;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

ojson prop_json(const PropBoundReport& rep) {
  ojson j;
  j["records"] = count_json(rep.records);
  ojson ratios = ojson::array();
  for (double r : rep.ratios) ratios.push_back(r);
  j["ratios"] = std::move(ratios);
  j["max_ratio"] = rep.max_ratio;
  j["slope"] = rep.slope;
  j["intercept"] = rep.intercept;
  return j;
}

ojson widmer_json(const WidmerReport& rep) {
  ojson j;
  j["eps"] = rep.eps.get_d();
  j["q"] = rep.Q.get_d();
  j["qbar"] = rep.qbar;
  ojson rows = ojson::array();
  for (const auto& r : rep.rows) {
    ojson row;
    row["b"] = r.B.get_d();
    row["mu"] = r.mu_value;
    row["term"] = r.term;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["min_term"] = rep.min_term;
  j["count"] = rep.count;
  j["main_term"] = rep.main_term;
  j["actual_error"] = rep.actual_error;
  j["ratio"] = rep.ratio;
  return j;
}

ojson admissibility_json(const AdmissibilityReport& rep) {
  ojson j;
  j["rho"] = rep.rho.get_d();
  j["nu_infinite"] = rep.nu_infinite;
  if (!rep.nu_infinite) j["nu"] = rep.nu_value;
  j["mu"] = rep.mu_value;
  j["lambda1_c"] = rep.lambda1_C;
  j["phi_floor"] = rep.phi_floor;
  if (rep.witness) {
    ojson w;
    w["p"] = rep.witness->p.get_str();
    w["q"] = witness_json(rep.witness->q);
    w["first_coord"] = rep.witness->first_coord;
    j["witness"] = std::move(w);
  }
  return j;
}

ojson pairs_json(const std::vector<PQPair>& pairs) {
  ojson a = ojson::array();
  for (const auto& pq : pairs) {
    ojson j;
    j["p"] = pq.p.get_str();
    j["q"] = witness_json(pq.q);
    a.push_back(std::move(j));
  }
  return a;
}

namespace {

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string> header) {
    bool first = true;
    for (const auto& h : header) {
      if (!first) out_ << ',';
      out_ << h;
      first = false;
    }
    out_ << '\n';
  }
  template <class... T>
  void row(const T&... cell) {
    bool first = true;
    ((out_ << (first ? "" : ","), out_ << cell, first = false), ...);
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string fd(double x) { return format_double(x); }

}  // namespace

std::string count_csv(const std::vector<CountRecord>& recs) {
  Csv csv{"n", "q", "eps", "count", "main_term", "error", "prop_bound_base", "ties"};
  for (const auto& r : recs)
    csv.row(r.n, fd(r.q_radius.get_d()), fd(r.eps.get_d()), r.count, fd(r.main_term),
            fd(r.error), fd(r.prop_bound_base), r.ties ? 1 : 0);
  return csv.str();
}

std::string phi_csv(const PhiTable& table) {
  Csv csv{"x", "value", "witness"};
  for (const auto& bp : table.breakpoints)
    csv.row(bp.x, fd(bp.value.to_double()), witness_csv(bp.witness));
  return csv.str();
}

std::string sum_csv(const SumResult& sum) {
  Csv csv{"radii", "midpoint", "radius", "lower", "upper", "terms"};
  std::string radii = "[";
  for (size_t i = 0; i < sum.box.radii.size(); ++i)
    radii += (i ? ";" : "") + format_double(sum.box.radii[i].get_d());
  radii += "]";
  mpq_class mid = (sum.lower + sum.upper) / 2;
  mpq_class rad = (sum.upper - sum.lower) / 2;
  csv.row(radii, fd(mid.get_d()), fd(to_double_up(rad)), fd(to_double_down(sum.lower)),
          fd(to_double_up(sum.upper)), sum.terms);
  return csv.str();
}

std::string profile_csv(const DyadicProfile& profile) {
  Csv csv{"k", "count"};
  for (const auto& [k, c] : profile.shell_counts) csv.row(k, c);
  return csv.str();
}

std::string bounds_csv(const std::vector<BoundCatalogEntry>& entries) {
  Csv csv{"name", "value", "n", "q", "phi_q"};
  for (const auto& e : entries) csv.row(e.name, fd(e.value), e.n, fd(e.q), fd(e.phi_q));
  return csv.str();
}

std::string sharpness_csv(const std::vector<SharpnessEntry>& entries) {
  Csv csv{"x", "witness", "value"};
  for (const auto& e : entries) csv.row(e.x, witness_csv(e.witness), fd(e.value));
  return csv.str();
}

std::string fit_csv(const FitReport& rep) {
  Csv csv{"q", "sum", "thm_upper", "thm_lower", "r", "l"};
  for (const auto& r : rep.rows)
    csv.row(fd(r.Q.get_d()), fd(r.sum_mid), fd(r.thm_upper), fd(r.thm_lower), fd(r.r),
            fd(r.l));
  return csv.str();
}

std::string shells_csv(const ShellDiffReport& rep) {
  Csv csv{"k", "count_k", "count_k1", "threshold", "margin", "ok"};
  for (const auto& r : rep.rows)
    csv.row(r.k, r.count_k, r.count_k1, fd(r.threshold), fd(r.margin), r.ok ? 1 : 0);
  return csv.str();
}

std::string prop_csv(const PropBoundReport& rep) {
  Csv csv{"n", "q", "eps", "count", "main_term", "error", "prop_bound_base", "ratio"};
  for (size_t i = 0; i < rep.records.size(); ++i) {
    const auto& r = rep.records[i];
    csv.row(r.n, fd(r.q_radius.get_d()), fd(r.eps.get_d()), r.count, fd(r.main_term),
            fd(r.error), fd(r.prop_bound_base), fd(rep.ratios[i]));
  }
  return csv.str();
}

std::string widmer_csv(const WidmerReport& rep) {
  Csv csv{"b", "mu", "term"};
  for (const auto& r : rep.rows) csv.row(fd(r.B.get_d()), fd(r.mu_value), fd(r.term));
  return csv.str();
}

std::string gap_csv(const GapReport& rep) {
  Csv csv{"values", "min_gap", "min_value", "floor", "holds"};
  csv.row(rep.values, fd(rep.min_gap), fd(rep.min_value), fd(rep.floor_value),
          rep.holds ? 1 : 0);
  return csv.str();
}

std::string pairs_csv(const std::vector<PQPair>& pairs) {
  Csv csv{"p", "q"};
  for (const auto& pq : pairs) csv.row(pq.p.get_str(), witness_csv(pq.q));
  return csv.str();
}

}  // namespace fracparts
