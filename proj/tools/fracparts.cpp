#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracparts/serialize.hpp"

namespace fp = fracparts;

namespace {

// "a/b", "0.25", or "7" as an exact rational.
mpq_class parse_rat(const std::string& text) {
  if (text.empty()) throw fp::ParseError("empty number", 0);
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw fp::ParseError("bad rational: " + text, 0);
    if (q.get_den() == 0) throw fp::ZeroDenominator();
    q.canonicalize();
    return q;
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    mpz_class z;
    if (z.set_str(text, 10) != 0) throw fp::ParseError("bad integer: " + text, 0);
    return mpq_class(z);
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac = text.size() - dot - 1;
  if (digits.empty() || frac == 0) throw fp::ParseError("bad decimal: " + text, 0);
  mpz_class num;
  if (num.set_str(digits, 10) != 0) throw fp::ParseError("bad decimal: " + text, 0);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Geometric grid "start:stop:factor".
std::vector<mpq_class> parse_grid(const std::string& text) {
  auto c1 = text.find(':');
  auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw fp::ParseError("grid must be start:stop:factor", 0);
  mpq_class start = parse_rat(text.substr(0, c1));
  mpq_class stop = parse_rat(text.substr(c1 + 1, c2 - c1 - 1));
  mpq_class factor = parse_rat(text.substr(c2 + 1));
  if (start <= 0 || factor <= 1 || stop < start)
    throw fp::ParseError("grid needs start > 0, stop >= start, factor > 1", 0);
  std::vector<mpq_class> out;
  for (mpq_class v = start; v <= stop; v *= factor) {
    out.push_back(v);
    if (out.size() > 10000) throw fp::ParseError("grid too large", 0);
  }
  return out;
}

struct Options {
  std::string alpha;
  std::string eps;
  std::string q;
  std::string qmax;
  std::string grid_q;
  std::string grid_eps;
  std::string grid_b;
  std::string radii;
  unsigned bits = 128;
  unsigned max_bits = 4096;
  unsigned chunks = 1;
  double cn = 0;
  size_t pair_cap = 200000;
  size_t cap = 200000;
  std::string format = "json";
  std::string out;

  fp::PrecisionBudget budget() const {
    fp::PrecisionBudget b;
    b.start_bits = bits;
    b.max_bits = max_bits;
    b.validate();
    return b;
  }
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--alpha", opt.alpha, "component grammar: rat:a/b, quad:(a+b*sqrt(d))/c, dec:x@bits")
      ->required();
  cmd->add_option("--bits", opt.bits, "starting precision");
  cmd->add_option("--max-bits", opt.max_bits, "precision ceiling");
  cmd->add_option("--chunks", opt.chunks, "enumeration chunks");
  cmd->add_option("--format", opt.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opt.out, "artifact path (stdout when omitted)");
}

void emit(const Options& opt, const fp::ojson& j, const std::string& csv) {
  std::string artifact = opt.format == "csv" ? csv : j.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << artifact;
  } else {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output path: " + opt.out);
    f << artifact;
  }
}

void summary(const std::string& line) { std::cerr << line << "\n"; }

int dispatch(const std::string& cmd, Options& opt) {
  fp::PrecisionBudget budget = opt.budget();
  fp::AlphaVector alpha = fp::parse_alpha(opt.alpha);

  if (cmd == "count" || cmd == "oracle") {
    mpq_class eps = parse_rat(opt.eps);
    mpq_class Q = parse_rat(opt.q);
    if (cmd == "oracle") {
      unsigned long long c = fp::naive_count_M(alpha, eps, Q, budget);
      fp::ojson j;
      j["count"] = c;
      emit(opt, j, "count\n" + std::to_string(c) + "\n");
      summary("oracle count " + std::to_string(c));
      return 0;
    }
    fp::PhiTable table;
    const fp::PhiTable* tp = nullptr;
    if (!alpha.resonant() && Q >= 1) {
      try {
        table = fp::compute_phi_table(alpha, Q, budget, opt.chunks);
        tp = &table;
      } catch (const fp::ResonanceError&) {
      }
    }
    fp::CountRecord rec = fp::count_M(alpha, eps, Q, budget, tp, opt.chunks);
    emit(opt, fp::count_json(rec), fp::count_csv({rec}));
    summary("count " + std::to_string(rec.count) + " main " + fp::format_double(rec.main_term) +
            " error " + fp::format_double(rec.error));
    return 0;
  }

  if (cmd == "sum") {
    fp::BoxSpec box;
    if (!opt.radii.empty()) {
      std::stringstream ss(opt.radii);
      std::string item;
      while (std::getline(ss, item, ',')) box.radii.push_back(parse_rat(item));
    } else {
      box = fp::BoxSpec::cube(alpha.dim(), parse_rat(opt.q));
    }
    fp::SumResult s = fp::sum_reciprocals(alpha, box, budget, opt.chunks);
    emit(opt, fp::sum_json(s), fp::sum_csv(s));
    summary("sum in [" + fp::format_double(fp::to_double_down(s.lower)) + ", " +
            fp::format_double(fp::to_double_up(s.upper)) + "] over " +
            std::to_string(s.terms) + " terms");
    return 0;
  }

  if (cmd == "phi") {
    mpq_class qmax = parse_rat(opt.qmax);
    fp::PhiTable table = fp::compute_phi_table(alpha, qmax, budget, opt.chunks);
    emit(opt, fp::phi_json(table), fp::phi_csv(table));
    summary("phi table with " + std::to_string(table.breakpoints.size()) + " breakpoints, phi(qmax) " +
            fp::format_double(fp::phi_at(table, qmax).to_double()));
    return 0;
  }

  if (cmd == "profile") {
    mpq_class Q = parse_rat(opt.q);
    fp::PhiTable table = fp::compute_phi_table(alpha, Q, budget, opt.chunks);
    fp::DyadicProfile prof = fp::dyadic_profile(alpha, Q, budget, &table, opt.chunks);
    fp::SumResult s = fp::sum_reciprocals(alpha, fp::BoxSpec::cube(alpha.dim(), Q), budget,
                                          opt.chunks);
    fp::SandwichResult sw = fp::sandwich_check(prof, s);
    emit(opt, fp::sandwich_json(prof, s, sw), fp::profile_csv(prof));
    summary("profile k_max " + std::to_string(prof.k_max) + " sandwich " +
            fp::format_double(sw.lower_sum.get_d()) + " <= S <= " +
            fp::format_double(sw.upper_sum.get_d()) + (sw.holds ? " holds" : " FAILS"));
    if (!sw.holds) throw fp::InvariantViolation("sandwich check failed");
    return 0;
  }

  if (cmd == "sharpness") {
    mpq_class qmax = parse_rat(opt.qmax);
    fp::PhiTable table = fp::compute_phi_table(alpha, qmax, budget, opt.chunks);
    auto seq = fp::sharpness_sequence(table);
    emit(opt, fp::sharpness_json(seq), fp::sharpness_csv(seq));
    summary("sharpness sequence with " + std::to_string(seq.size()) + " entries");
    return 0;
  }

  if (cmd == "verify-prop") {
    std::vector<std::pair<mpq_class, mpq_class>> grid;
    for (const auto& Q : parse_grid(opt.grid_q))
      for (const auto& e : parse_grid(opt.grid_eps)) grid.emplace_back(e, Q);
    fp::PropBoundReport rep = fp::verify_prop_bound(alpha, grid, budget, opt.chunks);
    emit(opt, fp::prop_json(rep), fp::prop_csv(rep));
    summary("prop bound max ratio " + fp::format_double(rep.max_ratio) + " slope " +
            fp::format_double(rep.slope));
    return 0;
  }

  if (cmd == "verify-theorem") {
    fp::FitReport rep = fp::fit_theorem_constants(alpha, parse_grid(opt.grid_q), budget,
                                                  opt.chunks);
    emit(opt, fp::fit_json(rep), fp::fit_csv(rep));
    summary("theorem fit low " + fp::format_double(rep.fitted_constant_low) + " high " +
            fp::format_double(rep.fitted_constant_high) + " stability " +
            fp::format_double(rep.stability));
    return 0;
  }

  if (cmd == "verify-gap") {
    mpq_class Q = parse_rat(opt.q);
    fp::GapReport rep = fp::verify_gap_principle(alpha, Q, budget, opt.pair_cap, opt.chunks);
    emit(opt, fp::gap_json(rep), fp::gap_csv(rep));
    summary("gap min " + fp::format_double(rep.min_gap) + " floor " +
            fp::format_double(rep.floor_value) + (rep.holds ? " holds" : " FAILS"));
    if (!rep.holds) throw fp::InvariantViolation("gap principle failed against empirical phi");
    return 0;
  }

  if (cmd == "verify-shells") {
    mpq_class Q = parse_rat(opt.q);
    double cn = opt.cn;
    if (!(cn > 0)) {
      std::vector<std::pair<mpq_class, mpq_class>> grid;
      for (const auto& Qg : parse_grid("16:256:2"))
        for (const auto& e : parse_grid("1/16:1/2:2")) grid.emplace_back(e, Qg);
      cn = 2 * fp::verify_prop_bound(alpha, grid, budget, opt.chunks).max_ratio;
      summary("default c_N " + fp::format_double(cn) + " fitted from the counting-error ratio");
    }
    fp::ShellDiffReport rep = fp::shell_difference_check(alpha, Q, cn, budget, opt.chunks);
    emit(opt, fp::shells_json(rep), fp::shells_csv(rep));
    summary("shells K " + fp::format_double(rep.K) + " range [1, " + std::to_string(rep.k_hi) +
            "]" + (rep.holds ? " holds" : " FAILS"));
    return 0;
  }

  if (cmd == "verify-widmer") {
    mpq_class eps = parse_rat(opt.eps);
    mpq_class Q = parse_rat(opt.q);
    std::vector<mpq_class> bgrid;
    if (!opt.grid_b.empty()) bgrid = parse_grid(opt.grid_b);
    fp::LatticeInstance inst(alpha);
    fp::WidmerReport rep = fp::widmer_instance_check(inst, eps, Q, bgrid, budget, opt.chunks);
    emit(opt, fp::widmer_json(rep), fp::widmer_csv(rep));
    summary("widmer error " + fp::format_double(rep.actual_error) + " vs min term " +
            fp::format_double(rep.min_term) + " ratio " + fp::format_double(rep.ratio));
    return 0;
  }

  throw std::invalid_argument("unknown command: " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reciprocal fractional-part sums and lattice box counts"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("FRACPARTS_MAX_BITS")) {
    try {
      opt.max_bits = static_cast<unsigned>(std::stoul(env));
    } catch (...) {
      std::cerr << "bad FRACPARTS_MAX_BITS value: " << env << "\n";
      return 4;
    }
  }

  auto* count = app.add_subcommand("count", "lattice points with |alpha.q + p| <= eps");
  add_common(count, opt);
  count->add_option("--eps", opt.eps)->required();
  count->add_option("--q", opt.q)->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force recount of the same set");
  add_common(oracle, opt);
  oracle->add_option("--eps", opt.eps)->required();
  oracle->add_option("--q", opt.q)->required();

  auto* sum = app.add_subcommand("sum", "sum of reciprocal fractional parts over a box");
  add_common(sum, opt);
  sum->add_option("--q", opt.q, "cube radius");
  sum->add_option("--radii", opt.radii, "comma-separated per-axis radii");

  auto* phi = app.add_subcommand("phi", "empirical maximal phi step function");
  add_common(phi, opt);
  phi->add_option("--qmax", opt.qmax)->required();

  auto* profile = app.add_subcommand("profile", "dyadic shell profile and sandwich check");
  add_common(profile, opt);
  profile->add_option("--q", opt.q)->required();

  auto* sharp = app.add_subcommand("sharpness", "witnesses attaining x^N / phi(x)");
  add_common(sharp, opt);
  sharp->add_option("--qmax", opt.qmax)->required();

  auto* verify = app.add_subcommand("verify", "bound verification suites");
  verify->require_subcommand(1);

  auto* vprop = verify->add_subcommand("prop", "counting error vs (eps Q^N / phi)^(N/(N+1))");
  add_common(vprop, opt);
  vprop->add_option("--grid-q", opt.grid_q, "start:stop:factor")->required();
  vprop->add_option("--grid-eps", opt.grid_eps, "start:stop:factor")->required();

  auto* vthm = verify->add_subcommand("theorem", "sum against its closed-form two-sided bounds");
  add_common(vthm, opt);
  vthm->add_option("--grid-q", opt.grid_q, "start:stop:factor")->required();

  auto* vgap = verify->add_subcommand("gap", "pairwise separation of fractional parts");
  add_common(vgap, opt);
  vgap->add_option("--q", opt.q)->required();
  vgap->add_option("--pair-cap", opt.pair_cap);

  auto* vshell = verify->add_subcommand("shells", "dyadic shell difference lower bound");
  add_common(vshell, opt);
  vshell->add_option("--q", opt.q)->required();
  vshell->add_option("--cn", opt.cn, "error constant; fitted when omitted");

  auto* vwid = verify->add_subcommand("widmer", "two-parameter error term over a B grid");
  add_common(vwid, opt);
  vwid->add_option("--eps", opt.eps)->required();
  vwid->add_option("--q", opt.q)->required();
  vwid->add_option("--grid-b", opt.grid_b, "start:stop:factor");

  CLI11_PARSE(app, argc, argv);

  std::string cmd;
  for (auto* sc : {count, oracle, sum, phi, profile, sharp})
    if (sc->parsed()) cmd = sc->get_name();
  if (verify->parsed())
    for (auto* sc : {vprop, vthm, vgap, vshell, vwid})
      if (sc->parsed()) cmd = "verify-" + sc->get_name();

  try {
    if (cmd == "sum" && opt.q.empty() && opt.radii.empty())
      throw std::invalid_argument("sum needs --q or --radii");
    return dispatch(cmd, opt);
  } catch (const fp::PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 2;
  } catch (const fp::ResonanceError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const fp::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 5;
  } catch (const fp::Error& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
}
