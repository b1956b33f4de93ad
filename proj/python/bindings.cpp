#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracparts/serialize.hpp"

namespace py = pybind11;
namespace fp = fracparts;

namespace {

fp::PrecisionBudget budget_of(unsigned bits, unsigned max_bits) {
  fp::PrecisionBudget b;
  b.start_bits = bits;
  b.max_bits = max_bits;
  b.validate();
  return b;
}

mpq_class rat_of(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

py::object json_obj(const fp::ojson& j) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sums of reciprocal fractional parts and lattice box counts";

  py::register_exception<fp::PrecisionExhausted>(m, "PrecisionExhausted");
  py::register_exception<fp::ResonanceError>(m, "ResonanceError");
  py::register_exception<fp::InvariantViolation>(m, "InvariantViolation");

  m.def(
      "count",
      [](const std::string& alpha, const std::string& eps, const std::string& q,
         unsigned bits, unsigned max_bits, unsigned chunks, bool with_phi) {
        fp::AlphaVector a = fp::parse_alpha(alpha);
        auto b = budget_of(bits, max_bits);
        fp::PhiTable table;
        const fp::PhiTable* tp = nullptr;
        mpq_class Q = rat_of(q);
        if (with_phi && Q >= 1) {
          table = fp::compute_phi_table(a, Q, b, chunks);
          tp = &table;
        }
        return json_obj(fp::count_json(fp::count_M(a, rat_of(eps), Q, b, tp, chunks)));
      },
      py::arg("alpha"), py::arg("eps"), py::arg("q"), py::arg("bits") = 128,
      py::arg("max_bits") = 4096, py::arg("chunks") = 1, py::arg("with_phi") = false);

  m.def(
      "oracle_count",
      [](const std::string& alpha, const std::string& eps, const std::string& q,
         unsigned bits, unsigned max_bits) {
        return fp::naive_count_M(fp::parse_alpha(alpha), rat_of(eps), rat_of(q),
                                 budget_of(bits, max_bits));
      },
      py::arg("alpha"), py::arg("eps"), py::arg("q"), py::arg("bits") = 128,
      py::arg("max_bits") = 4096);

  m.def(
      "sum_reciprocals",
      [](const std::string& alpha, const std::string& q, unsigned bits, unsigned max_bits,
         unsigned chunks) {
        fp::AlphaVector a = fp::parse_alpha(alpha);
        fp::SumResult s = fp::sum_reciprocals(a, fp::BoxSpec::cube(a.dim(), rat_of(q)),
                                              budget_of(bits, max_bits), chunks);
        return json_obj(fp::sum_json(s));
      },
      py::arg("alpha"), py::arg("q"), py::arg("bits") = 128, py::arg("max_bits") = 4096,
      py::arg("chunks") = 1);

  m.def(
      "phi_table",
      [](const std::string& alpha, const std::string& q_max, unsigned bits,
         unsigned max_bits, unsigned chunks) {
        return json_obj(fp::phi_json(fp::compute_phi_table(
            fp::parse_alpha(alpha), rat_of(q_max), budget_of(bits, max_bits), chunks)));
      },
      py::arg("alpha"), py::arg("q_max"), py::arg("bits") = 128, py::arg("max_bits") = 4096,
      py::arg("chunks") = 1);

  m.def(
      "dyadic_profile",
      [](const std::string& alpha, const std::string& q, unsigned bits, unsigned max_bits,
         unsigned chunks) {
        fp::AlphaVector a = fp::parse_alpha(alpha);
        auto b = budget_of(bits, max_bits);
        mpq_class Q = rat_of(q);
        fp::PhiTable table = fp::compute_phi_table(a, Q, b, chunks);
        return json_obj(fp::profile_json(fp::dyadic_profile(a, Q, b, &table, chunks)));
      },
      py::arg("alpha"), py::arg("q"), py::arg("bits") = 128, py::arg("max_bits") = 4096,
      py::arg("chunks") = 1);

  m.def(
      "cardinality_bridge",
      [](const std::string& alpha, const std::string& eps, const std::string& q,
         unsigned bits, unsigned max_bits) {
        fp::BridgeCounts c = fp::cardinality_bridge(fp::parse_alpha(alpha), rat_of(eps),
                                                    rat_of(q), budget_of(bits, max_bits));
        py::dict d;
        d["lattice_box_count"] = c.lattice_box_count;
        d["m_count"] = c.m_count;
        return d;
      },
      py::arg("alpha"), py::arg("eps"), py::arg("q"), py::arg("bits") = 128,
      py::arg("max_bits") = 4096);
}
