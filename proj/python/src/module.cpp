#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "galrep/algebra/bigint.hpp"
#include "galrep/algebra/poly_json.hpp"
#include "galrep/cli/cli.hpp"
#include "galrep/elliptic/elliptic.hpp"
#include "galrep/error.hpp"
#include "galrep/gl2/gl2.hpp"
#include "galrep/hecke/hecke.hpp"
#include "galrep/numberfield/numberfield.hpp"
#include "galrep/pipeline/assets.hpp"
#include "galrep/pipeline/pipeline.hpp"
#include "galrep/resolvent/resolvent.hpp"

namespace py = pybind11;
using namespace galrep;
using nlohmann::json;

namespace {

// Coefficients cross the boundary as decimal strings so Python ints of any size survive.
algebra::IntPoly poly_from(const std::vector<std::string>& coeffs) {
  std::vector<algebra::BigInt> c;
  for (const auto& s : coeffs) c.push_back(algebra::parse_bigint(s));
  return algebra::IntPoly(std::move(c));
}

std::vector<std::string> poly_to(const algebra::IntPoly& f) {
  std::vector<std::string> out;
  for (const auto& c : f.coeffs()) out.push_back(algebra::to_string(c));
  return out;
}

elliptic::CurveQ curve_from(const std::vector<std::string>& ainvs) { return elliptic::CurveQ::from_json(json(ainvs)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the galrep toolkit";
  py::register_exception<Error>(m, "GalrepError");

  m.def("verify_json",
        [](const std::string& assets, long prime_bound, long precision_bits, std::uint64_t seed) {
          py::gil_scoped_release release;
          const auto bundle = pipeline::load_assets(assets);
          return pipeline::emit_report(pipeline::run_pipeline(bundle, {prime_bound, precision_bits, seed}),
                                       pipeline::ReportFormat::Json);
        },
        py::arg("assets"), py::arg("prime_bound") = 50, py::arg("precision_bits") = 256, py::arg("seed") = 0x5eed);

  m.def("frobenius_json",
        [](const std::vector<std::string>& coeffs, long upto) {
          return numberfield::to_json(numberfield::frobenius_table(poly_from(coeffs), upto), "f").dump();
        },
        py::arg("coeffs"), py::arg("upto"));

  m.def("predict_orders",
        [](const std::map<long, int>& traces) {
          std::map<long, std::pair<std::set<int>, std::set<int>>> out;
          for (const auto& [l, e] : hecke::predict_orders(hecke::TraceSystem{"", "", traces}).entries) out[l] = {e.gl, e.pgl};
          return out;
        },
        py::arg("traces"));

  m.def("sextic_resolvent",
        [](const std::vector<std::string>& coeffs, long precision_bits) {
          return poly_to(resolvent::sextic_resolvent(poly_from(coeffs), precision_bits).poly);
        },
        py::arg("coeffs"), py::arg("precision_bits") = 256);

  m.def("field_discriminant_certified",
        [](const std::vector<std::string>& coeffs, const std::string& target, const std::vector<long>& primes) {
          return numberfield::certify_discriminant(poly_from(coeffs), algebra::parse_bigint(target), primes);
        },
        py::arg("coeffs"), py::arg("target"), py::arg("ramified_primes"));

  m.def("elliptic_traces",
        [](const std::vector<std::string>& ainvs, long upto) {
          return elliptic::trace_table(curve_from(ainvs), upto).traces;
        },
        py::arg("ainvs"), py::arg("upto"));

  m.def("torsion_field_polynomial",
        [](const std::vector<std::string>& ainvs, int p) {
          return poly_to(elliptic::torsion_field_polynomial(curve_from(ainvs), p));
        },
        py::arg("ainvs"), py::arg("p") = 5);

  m.def("group_facts_json", [] { return gl2::verify_group_facts().to_json().dump(); });

  m.def("cli",
        [](std::vector<std::string> args) {
          args.insert(args.begin(), "galrep");
          std::vector<const char*> argv;
          for (const auto& a : args) argv.push_back(a.c_str());
          std::ostringstream out, err;
          const int code = cli::cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));

  m.attr("DEFAULT_ASSETS") = GALREP_DATA_DIR;
}
