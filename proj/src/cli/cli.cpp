#include "galrep/cli/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "galrep/algebra/poly_json.hpp"
#include "galrep/elliptic/elliptic.hpp"
#include "galrep/error.hpp"
#include "galrep/gl2/gl2.hpp"
#include "galrep/hecke/hecke.hpp"
#include "galrep/hunter/hunter.hpp"
#include "galrep/numberfield/numberfield.hpp"
#include "galrep/pipeline/assets.hpp"
#include "galrep/pipeline/pipeline.hpp"
#include "galrep/resolvent/resolvent.hpp"

#ifndef GALREP_DATA_DIR
#define GALREP_DATA_DIR "data"
#endif

namespace galrep::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::string json_out;
  long precision_bits = 256;
  int threads = 0;
  std::uint64_t seed = 0x5eed;
  std::string assets = GALREP_DATA_DIR;
  long prime_bound = 50;
  bool human = false;
};

// Usage-class failures: bad files, bad schemas, bad arguments.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Emits `j` to the --json target when given, else to `out`.
void emit(const Options& o, const json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (o.json_out.empty() || o.json_out == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.json_out, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.json_out);
  f << text;
}

int threads_or_default(int t) {
  return t > 0 ? t : std::max(1u, std::thread::hardware_concurrency());
}

int run_verify(const Options& o, std::ostream& out) {
  const auto bundle = pipeline::load_assets(o.assets);
  const auto report = pipeline::run_pipeline(bundle, {o.prime_bound, o.precision_bits, o.seed});
  if (!o.json_out.empty() && o.json_out != "-") {
    std::ofstream f(o.json_out, std::ios::binary);
    if (!f) throw InputError("cannot write " + o.json_out);
    f << pipeline::emit_report(report, pipeline::ReportFormat::Json);
    out << pipeline::emit_report(report, pipeline::ReportFormat::Human);
  } else {
    out << pipeline::emit_report(report, o.human || o.json_out.empty() ? pipeline::ReportFormat::Human
                                                                        : pipeline::ReportFormat::Json);
  }
  return report.passed() ? kOk : kFailed;
}

int run_predict(const Options& o, const std::string& traces, std::ostream& out) {
  const auto rows = pipeline::parse_trace_rows(read_json(traces), traces);
  json j = json::object();
  for (const auto& r : rows) {
    const auto p = hecke::predict_orders(hecke::TraceSystem{r.name, "", r.b});
    json row = json::object();
    for (const auto& [l, e] : p.entries) row[std::to_string(l)] = {{"gl", e.gl}, {"pgl", e.pgl}};
    j[r.name] = row;
  }
  emit(o, j, out);
  return kOk;
}

int run_search(const Options& o, const std::string& spec_path, const std::string& checkpoint, std::ostream& out) {
  const auto spec = hunter::SearchSpec::from_json(read_json(spec_path));
  std::optional<std::filesystem::path> cp;
  if (!checkpoint.empty()) cp = checkpoint;
  const auto r = hunter::run_search(spec, hunter::full_partition(spec), threads_or_default(o.threads), cp);
  emit(o, r.to_json(), out);
  return kOk;
}

algebra::IntPoly read_poly(const std::string& path) { return pipeline::parse_poly_file(read_json(path), path); }

int run_resolvent(const Options& o, const std::string& poly, std::ostream& out) {
  const auto r = resolvent::sextic_resolvent(read_poly(poly), o.precision_bits);
  emit(o,
       json{{"resolvent", algebra::poly_to_json(r.poly)},
            {"max_residual", r.max_residual},
            {"precision_bits", r.precision_bits}},
       out);
  return kOk;
}

int run_frobenius(const Options& o, const std::string& poly, long upto, std::ostream& out) {
  emit(o, numberfield::to_json(numberfield::frobenius_table(read_poly(poly), upto), poly), out);
  return kOk;
}

elliptic::CurveQ asset_curve(const Options& o, const std::string& curve_file) {
  const std::string path = curve_file.empty() ? (std::filesystem::path(o.assets) / "curve.json").string() : curve_file;
  const json j = read_json(path);
  return elliptic::CurveQ::from_json(j.is_object() ? j.at("ainvs") : j);
}

int run_group_facts(const Options& o, std::ostream& out) {
  const auto g = gl2::verify_group_facts();
  emit(o, g.to_json(), out);
  return g.all_passed() ? kOk : kFailed;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Mod-5 Galois representation verification toolkit", "galrep"};
  app.require_subcommand(1);
  app.add_option("--json", o.json_out, "Write JSON output to this file ('-' for stdout)");
  app.add_option("--precision-bits", o.precision_bits, "Working precision for numeric stages")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--threads", o.threads, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "Recorded in report metadata");
  app.add_option("--assets", o.assets, "Asset directory")->check(CLI::ExistingDirectory);

  auto* verify = app.add_subcommand("verify", "Run the full verification pipeline");
  verify->add_option("--prime-bound", o.prime_bound, "Only use primes below this bound")->check(CLI::Range(3L, 100000L));
  verify->add_flag("--human", o.human, "Human-readable report on stdout even when --json is '-'");

  std::string traces;
  auto* predict = app.add_subcommand("predict", "Predict Frobenius orders from trace rows");
  predict->add_option("--traces", traces, "Trace rows JSON")->required();

  std::string spec, checkpoint;
  auto* search = app.add_subcommand("search", "Targeted Hunter search");
  search->add_option("--spec", spec, "Search spec JSON")->required();
  search->add_option("--checkpoint", checkpoint, "Checkpoint file for resuming");

  std::string poly;
  auto* res = app.add_subcommand("resolvent", "Sextic resolvent of a quintic");
  res->add_option("--poly", poly, "Polynomial JSON")->required();

  long upto = 50;
  auto* frob = app.add_subcommand("frobenius", "Frobenius cycle types of a polynomial");
  frob->add_option("--poly", poly, "Polynomial JSON")->required();
  frob->add_option("--upto", upto, "Prime bound")->check(CLI::Range(2L, 10000000L));

  std::string curve_file;
  int torsion_prime = 5;
  auto* ell = app.add_subcommand("elliptic", "Elliptic curve computations");
  ell->require_subcommand(1);
  ell->add_option("--curve", curve_file, "Curve JSON (default: asset curve)");
  auto* ell_traces = ell->add_subcommand("traces", "a_l = l + 1 - #E(F_l)");
  ell_traces->add_option("--upto", upto, "Prime bound")->check(CLI::Range(2L, 10000000L));
  auto* ell_torsion = ell->add_subcommand("torsion-poly", "Degree-24 torsion field polynomial");
  ell_torsion->add_option("--prime", torsion_prime, "Torsion prime")->check(CLI::IsMember({5}));

  auto* group = app.add_subcommand("group-facts", "Check the GL2(F5) subgroup facts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "galrep: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kUsage;
  }

  try {
    if (*verify) return run_verify(o, out);
    if (*predict) return run_predict(o, traces, out);
    if (*search) return run_search(o, spec, checkpoint, out);
    if (*res) return run_resolvent(o, poly, out);
    if (*frob) return run_frobenius(o, poly, upto, out);
    if (*ell_traces) {
      emit(o, elliptic::trace_table(asset_curve(o, curve_file), upto).to_json(), out);
      return kOk;
    }
    if (*ell_torsion) {
      const auto f = elliptic::torsion_field_polynomial(asset_curve(o, curve_file), torsion_prime);
      emit(o, json{{"poly", algebra::poly_to_json(f)}, {"degree", f.degree()}}, out);
      return kOk;
    }
    if (*group) return run_group_facts(o, out);
  } catch (const InputError& e) {
    err << "galrep: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "galrep: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    const bool input = e.code() == ErrorCode::Schema || e.code() == ErrorCode::InvalidArgument;
    return input ? kUsage : kFailed;
  } catch (const nlohmann::json::exception& e) {
    err << "galrep: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace galrep::cli
