#include "galrep/pipeline/pipeline.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "galrep/algebra/bigint.hpp"
#include "galrep/algebra/poly_json.hpp"
#include "galrep/elliptic/elliptic.hpp"
#include "galrep/error.hpp"
#include "galrep/gl2/gl2.hpp"
#include "galrep/hecke/hecke.hpp"
#include "galrep/numberfield/numberfield.hpp"
#include "galrep/resolvent/resolvent.hpp"

#ifndef GALREP_VERSION
#define GALREP_VERSION "unknown"
#endif

namespace galrep::pipeline {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "galrep-report/1";

template <typename V>
using RowMap = std::map<long, V>;

template <typename V>
struct Row {
  std::string id;
  RowMap<V> values;
};

template <typename V>
RowMap<V> below(const RowMap<V>& m, long bound) {
  RowMap<V> out;
  for (const auto& [l, v] : m) {
    if (l < bound) out[l] = v;
  }
  return out;
}

template <typename V>
std::vector<long> differing(const RowMap<V>& a, const RowMap<V>& b) {
  std::vector<long> out;
  for (const auto& [l, v] : a) {
    auto it = b.find(l);
    if (it == b.end() || it->second != v) out.push_back(l);
  }
  for (const auto& [l, v] : b) {
    if (!a.count(l)) out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct RowMatch {
  bool bijective = false;
  std::map<std::string, std::string> derived_to_printed;
  json witness;
};

// Set-based comparison: each derived row equals exactly one printed row and vice versa.
template <typename V>
RowMatch match_rows(const std::vector<Row<V>>& derived, const std::vector<Row<V>>& printed) {
  RowMatch m;
  m.witness["mismatches"] = json::array();
  std::map<std::string, int> printed_hits;
  bool ok = derived.size() == printed.size();
  for (const auto& d : derived) {
    std::vector<std::string> equal;
    const Row<V>* nearest = nullptr;
    std::vector<long> nearest_diff;
    for (const auto& p : printed) {
      const auto diff = differing(d.values, p.values);
      if (diff.empty()) equal.push_back(p.id);
      if (!nearest || diff.size() < nearest_diff.size()) {
        nearest = &p;
        nearest_diff = diff;
      }
    }
    if (equal.size() == 1) {
      m.derived_to_printed[d.id] = equal.front();
      ++printed_hits[equal.front()];
    } else {
      ok = false;
      json w{{"derived", d.id}, {"equal_rows", equal}};
      if (nearest) {
        w["nearest"] = nearest->id;
        w["differs_at"] = nearest_diff;
      }
      m.witness["mismatches"].push_back(w);
    }
  }
  for (const auto& [name, hits] : printed_hits) ok = ok && hits == 1;
  m.bijective = ok;
  m.witness["correspondence"] = m.derived_to_printed;
  return m;
}

json row_json(const RowMap<int>& m) {
  json j = json::object();
  for (const auto& [l, v] : m) j[std::to_string(l)] = v;
  return j;
}

json row_json(const RowMap<std::set<int>>& m) {
  json j = json::object();
  for (const auto& [l, v] : m) j[std::to_string(l)] = std::vector<int>(v.begin(), v.end());
  return j;
}

std::string poly_name_list(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

struct Context {
  const AssetBundle& bundle;
  const PipelineOptions& opt;
  VerificationReport& report;
  std::vector<hecke::SystemPair> pairs;
  std::vector<hecke::TraceSystem> traces;       // restricted to l < bound
  std::vector<hecke::OrderPrediction> predictions;
  std::vector<std::string> row_ids;             // "theta/theta'" per derived row
};

using StageFn = std::function<StageResult(Context&)>;

struct StageDef {
  std::string name;
  std::vector<std::string> needs;
  StageFn run;
};

StageResult make(const std::string& name, bool ok, std::string summary, json witness) {
  return {name, ok ? StageStatus::Pass : StageStatus::Fail, std::move(summary), std::move(witness)};
}

json& corr(Context& c, const std::string& row) { return c.report.correspondences[row]; }

// --- stages -----------------------------------------------------------------

StageResult stage_pairing(Context& c) {
  std::vector<hecke::EigenSystem> systems;
  for (auto s : c.bundle.eigen_systems) {
    std::map<long, hecke::EigenPair> kept;
    for (const auto& [l, e] : s.entries) {
      if (l < c.opt.prime_bound) kept[l] = e;
    }
    s.entries = std::move(kept);
    systems.push_back(std::move(s));
  }
  c.pairs = hecke::pair_systems(systems);
  json w = json::array();
  for (const auto& p : c.pairs) w.push_back({systems[p.first].name, systems[p.second].name});
  std::string s;
  for (const auto& p : c.pairs) s += (s.empty() ? "" : ", ") + systems[p.first].name + "<->" + systems[p.second].name;
  return make("pairing", true, s, {{"pairs", w}});
}

StageResult stage_trace_recovery(Context& c) {
  json rows = json::object();
  for (const auto& p : c.pairs) {
    auto x = c.bundle.eigen_systems[p.first], y = c.bundle.eigen_systems[p.second];
    for (auto* s : {&x, &y}) {
      std::erase_if(s->entries, [&](const auto& kv) { return kv.first >= c.opt.prime_bound; });
    }
    auto t = hecke::recover_trace(x, y);
    const std::string id = t.theta_source + "/" + t.theta_prime_source;
    c.row_ids.push_back(id);
    rows[id] = row_json(RowMap<int>(t.b.begin(), t.b.end()));
    c.traces.push_back(std::move(t));
  }
  return make("trace-recovery", true, std::to_string(c.traces.size()) + " trace rows", {{"rows", rows}});
}

StageResult stage_table2(Context& c) {
  std::vector<Row<int>> derived, printed;
  for (std::size_t i = 0; i < c.traces.size(); ++i) derived.push_back({c.row_ids[i], below(c.traces[i].b, c.opt.prime_bound)});
  for (const auto& r : c.bundle.trace_rows) printed.push_back({r.name, below(r.b, c.opt.prime_bound)});
  auto m = match_rows(derived, printed);
  json printed_json = json::object();
  for (const auto& r : printed) printed_json[r.id] = row_json(r.values);
  m.witness["printed"] = printed_json;
  for (const auto& [d, p] : m.derived_to_printed) corr(c, d)["table2"] = p;
  std::string s;
  for (const auto& [d, p] : m.derived_to_printed) s += (s.empty() ? "" : ", ") + d + "=" + p;
  return make("table2-golden", m.bijective, m.bijective ? s : "derived trace rows differ from the printed rows", m.witness);
}

StageResult stage_predict(Context& c) {
  json rows = json::object();
  for (std::size_t i = 0; i < c.traces.size(); ++i) {
    c.predictions.push_back(hecke::predict_orders(c.traces[i]));
    RowMap<std::set<int>> gl;
    for (const auto& [l, e] : c.predictions.back().entries) gl[l] = e.gl;
    rows[c.row_ids[i]] = row_json(gl);
  }
  return make("order-prediction", true, std::to_string(c.predictions.size()) + " order rows", {{"rows", rows}});
}

StageResult stage_table3(Context& c) {
  std::vector<Row<std::set<int>>> derived, printed;
  for (std::size_t i = 0; i < c.predictions.size(); ++i) {
    RowMap<std::set<int>> gl;
    for (const auto& [l, e] : c.predictions[i].entries) gl[l] = e.gl;
    derived.push_back({c.row_ids[i], below(gl, c.opt.prime_bound)});
  }
  for (const auto& r : c.bundle.order_rows) printed.push_back({r.name, below(r.orders, c.opt.prime_bound)});
  auto m = match_rows(derived, printed);
  json printed_json = json::object();
  for (const auto& r : printed) printed_json[r.id] = row_json(r.values);
  m.witness["printed"] = printed_json;
  for (const auto& [d, p] : m.derived_to_printed) corr(c, d)["table3"] = p;
  std::string s;
  for (const auto& [d, p] : m.derived_to_printed) s += (s.empty() ? "" : ", ") + d + "=" + p;
  return make("table3-golden", m.bijective, m.bijective ? s : "derived order rows differ from the printed rows", m.witness);
}

StageResult stage_certify(Context& c) {
  json w = json::object();
  bool ok = true;
  for (const auto& q : c.bundle.quintics) {
    const auto cert = numberfield::certify_discriminant_detailed(q.poly, c.bundle.target_discriminant, c.bundle.ramified_primes);
    json cong = json::object(), dedekind = json::object();
    bool cong_ok = true;
    for (long p : c.bundle.ramified_primes) {
      const auto a = numberfield::total_ram_congruence(q.poly, p);
      cong[std::to_string(p)] = a ? json(*a) : json(nullptr);
      cong_ok = cong_ok && a.has_value();
      dedekind[std::to_string(p)] = numberfield::dedekind_p_maximal(q.poly, p);
    }
    const auto irr = numberfield::certify_irreducible(q.poly);
    w[q.name] = {{"discriminant", cert.to_json()},
                 {"congruence_root", cong},
                 {"dedekind_maximal", dedekind},
                 {"irreducibility", irr.to_json()}};
    ok = ok && cert.certified && cong_ok && irr.status == numberfield::Irreducibility::Proven;
  }
  return make("quintic-certification", ok,
              ok ? "field discriminant " + algebra::to_string(c.bundle.target_discriminant) + " certified for all quintics"
                 : "some quintic failed certification",
              w);
}

// Rows whose predictions accept every usable Frobenius order of f.
template <typename Accept>
json compatible_rows(Context& c, const NamedPoly& f, Accept accept, std::vector<std::size_t>& hits) {
  const auto table = numberfield::frobenius_table(f.poly, c.opt.prime_bound);
  json skipped = json::array();
  for (const auto& s : table.skipped) skipped.push_back({{"l", s.l}, {"reason", s.reason}});
  c.report.skipped_primes[f.name] = skipped;
  json per_row = json::object();
  for (std::size_t i = 0; i < c.predictions.size(); ++i) {
    std::optional<long> first_bad;
    for (const auto& r : table.records) {
      auto it = c.predictions[i].entries.find(r.l);
      if (it == c.predictions[i].entries.end()) continue;
      if (!accept(r.order, it->second) && !first_bad) first_bad = r.l;
    }
    per_row[c.row_ids[i]] = first_bad ? json{{"compatible", false}, {"first_failure", *first_bad}}
                                      : json{{"compatible", true}};
    if (!first_bad) hits.push_back(i);
  }
  json orders = json::object();
  for (const auto& r : table.records) orders[std::to_string(r.l)] = r.order;
  return {{"orders", orders}, {"rows", per_row}};
}

StageResult stage_assignment(Context& c) {
  json w = json::object();
  bool ok = true;
  std::set<std::size_t> used;
  std::vector<std::string> parts;
  for (const auto& q : c.bundle.quintics) {
    std::vector<std::size_t> hits;
    w[q.name] = compatible_rows(
        c, q,
        [](int order, const hecke::OrderEntry& e) {
          const auto cmp = numberfield::compatible_orders(order, e);
          return cmp.strong && cmp.weak;
        },
        hits);
    if (hits.size() != 1) {
      ok = false;
      w[q.name]["verdict"] = hits.empty() ? "no compatible row" : "ambiguous";
      continue;
    }
    const auto& id = c.row_ids[hits.front()];
    w[q.name]["assigned"] = id;
    ok = ok && used.insert(hits.front()).second;
    corr(c, id)["quintic"] = q.name;
    parts.push_back(q.name + "->" + id);
  }
  return make("quintic-assignment", ok, ok ? poly_name_list(parts) : "assignment not unique", w);
}

StageResult stage_resolvent(Context& c) {
  json w = json::object();
  bool ok = c.bundle.quintics.size() == c.bundle.sextics.size();
  std::vector<std::string> parts;
  int unseparated = 0;
  for (std::size_t i = 0; i < c.bundle.quintics.size(); ++i) {
    const auto& q = c.bundle.quintics[i];
    const auto r = resolvent::sextic_resolvent(q.poly, c.opt.precision_bits);
    json cmp = json::object();
    std::vector<std::string> consistent;
    for (const auto& f : c.bundle.sextics) {
      const auto s = resolvent::same_splitting_field_heuristic(r.poly, f.poly, c.opt.prime_bound);
      cmp[f.name] = s.to_json();
      if (s.verdict == resolvent::Verdict::ConsistentUpToBound) consistent.push_back(f.name);
    }
    // Small bounds may leave other sextics unseparated; only the listed partner is required.
    const bool mine = i < c.bundle.sextics.size() &&
                      std::find(consistent.begin(), consistent.end(), c.bundle.sextics[i].name) != consistent.end();
    ok = ok && mine && r.max_residual < 1e-6;
    if (consistent.size() > 1) ++unseparated;
    w[q.name] = {{"resolvent", algebra::poly_to_json(r.poly)},
                 {"max_residual", r.max_residual},
                 {"precision_bits", r.precision_bits},
                 {"comparisons", cmp},
                 {"consistent_with", consistent}};
    if (mine) {
      const auto& f = c.bundle.sextics[i].name;
      parts.push_back(q.name + "~" + f);
      for (auto& [row, entry] : c.report.correspondences.items()) {
        if (entry.value("quintic", "") == q.name) entry["sextic"] = f;
      }
    }
  }
  std::string summary = ok ? poly_name_list(parts) : "resolvent does not match the listed sextic";
  if (ok && unseparated) summary += " (" + std::to_string(unseparated) + " not separated below the bound)";
  return make("resolvent", ok, summary, w);
}

StageResult stage_degree24(Context& c) {
  json w = json::object();
  bool ok = true;
  std::vector<NamedPoly> polys = c.bundle.degree24;
  polys.push_back(c.bundle.torsion_poly);
  std::vector<std::string> parts;
  for (const auto& f : polys) {
    std::vector<std::size_t> hits;
    w[f.name] = compatible_rows(
        c, f, [](int order, const hecke::OrderEntry& e) { return e.gl.count(order) > 0; }, hits);
    if (hits.size() != 1) {
      ok = false;
      w[f.name]["verdict"] = hits.empty() ? "no compatible row" : "ambiguous";
      continue;
    }
    const auto& id = c.row_ids[hits.front()];
    w[f.name]["assigned"] = id;
    auto& list = corr(c, id)["degree24"];
    if (list.is_null()) list = json::array();
    list.push_back(f.name);
    parts.push_back(f.name + "->" + id);
  }
  const auto torsion = elliptic::verify_torsion_field(c.bundle.torsion_poly.poly);
  w["torsion_field"] = torsion.to_json();
  ok = ok && torsion.irreducible_mod_47 && torsion.max_part_mod_19 == 20;
  return make("degree24", ok, ok ? poly_name_list(parts) : "degree-24 Frobenius data inconsistent", w);
}

StageResult stage_elliptic(Context& c) {
  const auto t = elliptic::trace_table(c.bundle.curve, c.opt.prime_bound);
  json w = t.to_json();
  std::vector<std::string> matches;
  json per_row = json::object();
  for (std::size_t i = 0; i < c.traces.size(); ++i) {
    std::vector<long> bad;
    for (const auto& [l, b] : c.traces[i].b) {
      auto it = t.traces.find(l);
      if (it == t.traces.end()) continue;
      if (((it->second % 5) + 5) % 5 != b) bad.push_back(l);
    }
    per_row[c.row_ids[i]] = bad;
    if (bad.empty()) matches.push_back(c.row_ids[i]);
  }
  w["mismatches_by_row"] = per_row;
  w["matching_rows"] = matches;
  const bool ok = matches.size() == 1;
  if (ok) corr(c, matches.front())["curve"] = c.bundle.curve_label;
  return make("elliptic-traces", ok, ok ? c.bundle.curve_label + " traces match " + matches.front() : "no unique matching row", w);
}

StageResult stage_torsion(Context& c) {
  const auto exact = elliptic::torsion_field_polynomial(c.bundle.curve, c.bundle.torsion_prime);
  const auto numeric = elliptic::torsion_field_polynomial_numeric(c.bundle.curve, c.bundle.torsion_prime,
                                                                  std::max<long>(c.opt.precision_bits, 300));
  const auto diff = [&] {
    std::vector<int> out;
    for (int k = 0; k <= std::max(exact.degree(), c.bundle.torsion_poly.poly.degree()); ++k) {
      if (exact.coeff(k) != c.bundle.torsion_poly.poly.coeff(k)) out.push_back(k);
    }
    return out;
  }();
  const bool ok = diff.empty() && numeric.poly == exact && numeric.max_residual < 1e-8;
  json w{{"differing_coefficients", diff},
         {"constant_term", algebra::to_string(exact.coeff(0))},
         {"numeric_matches", numeric.poly == exact},
         {"numeric_max_residual", numeric.max_residual}};
  return make("torsion-polynomial", ok, ok ? "exact and numeric routes reproduce " + c.bundle.torsion_poly.name : "mismatch", w);
}

StageResult stage_group_facts(Context&) {
  const auto g = gl2::verify_group_facts();
  const bool ok = g.all_passed() && g.borel_order == 80 && g.j_order == 20 && g.quotient_order == 4 &&
                  g.quotient_generator_order == 4;
  return make("group-facts", ok, ok ? "|H|=80, |J|=20, H/J cyclic of order 4" : "group facts failed", g.to_json());
}

const std::vector<StageDef>& stage_defs() {
  static const std::vector<StageDef> defs = {
      {"pairing", {}, stage_pairing},
      {"trace-recovery", {"pairing"}, stage_trace_recovery},
      {"table2-golden", {"trace-recovery"}, stage_table2},
      {"order-prediction", {"trace-recovery"}, stage_predict},
      {"table3-golden", {"order-prediction"}, stage_table3},
      {"quintic-certification", {}, stage_certify},
      {"quintic-assignment", {"order-prediction"}, stage_assignment},
      {"resolvent", {}, stage_resolvent},
      {"degree24", {"order-prediction"}, stage_degree24},
      {"elliptic-traces", {"trace-recovery"}, stage_elliptic},
      {"torsion-polynomial", {}, stage_torsion},
      {"group-facts", {}, stage_group_facts},
  };
  return defs;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

void render_rows(std::ostringstream& out, const json& derived, const json& printed, const json& corr_map) {
  std::set<long> primes;
  for (const auto& [id, row] : printed.items())
    for (const auto& [l, v] : row.items()) primes.insert(std::stol(l));
  auto cell = [](const json& v) {
    if (v.is_array()) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ",") + std::to_string(x.get<int>());
      return s;
    }
    return v.is_null() ? std::string("-") : std::to_string(v.get<int>());
  };
  out << "  " << pad("l", 12);
  for (long l : primes) out << pad(std::to_string(l), 6);
  out << '\n';
  auto line = [&](const std::string& label, const json& row) {
    out << "  " << pad(label, 12);
    for (long l : primes) {
      const auto key = std::to_string(l);
      out << pad(row.contains(key) ? cell(row.at(key)) : "-", 6);
    }
    out << '\n';
  };
  for (const auto& [id, row] : derived.items()) {
    line(id, row);
    if (corr_map.contains(id)) {
      const auto label = corr_map.at(id).get<std::string>();
      if (printed.contains(label)) line("  = " + label, printed.at(label));
    } else {
      out << "    (no printed row)\n";
    }
  }
}

}  // namespace

std::string to_string(StageStatus s) {
  switch (s) {
    case StageStatus::Pass: return "pass";
    case StageStatus::Fail: return "fail";
    case StageStatus::Skipped: return "skipped";
  }
  return "?";
}

const StageResult* VerificationReport::find(const std::string& name) const {
  for (const auto& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

int VerificationReport::failures() const {
  return static_cast<int>(std::count_if(stages.begin(), stages.end(), [](const auto& s) {
    return s.status != StageStatus::Pass;
  }));
}

VerificationReport run_pipeline(const AssetBundle& bundle, const PipelineOptions& options) {
  if (options.prime_bound < 3) throw Error(ErrorCode::InvalidArgument, "prime bound must be at least 3");
  VerificationReport report;
  report.correspondences = json::object();
  report.skipped_primes = json::object();
  report.metadata = {{"tool", "galrep"},
                     {"version", GALREP_VERSION},
                     {"seed", options.seed},
                     {"precision_bits", options.precision_bits},
                     {"prime_bound", options.prime_bound},
                     {"gmp", gmp_version},
                     {"mpfr", mpfr_get_version()},
                     {"assets", bundle.checksums}};
  Context ctx{bundle, options, report, {}, {}, {}, {}};
  for (const auto& def : stage_defs()) {
    std::vector<std::string> blocked;
    for (const auto& n : def.needs) {
      const auto* s = report.find(n);
      if (!s || s->status != StageStatus::Pass) blocked.push_back(n);
    }
    if (!blocked.empty()) {
      report.stages.push_back({def.name, StageStatus::Skipped, "needs " + poly_name_list(blocked), {{"blocked_by", blocked}}});
      continue;
    }
    try {
      report.stages.push_back(def.run(ctx));
    } catch (const Error& e) {
      report.stages.push_back({def.name, StageStatus::Fail, e.what(), {{"error", e.what()}, {"code", std::string(error_code_name(e.code()))}}});
    }
  }
  return report;
}

json to_json(const VerificationReport& r) {
  json stages = json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"name", s.name}, {"status", to_string(s.status)}, {"summary", s.summary}, {"witness", s.witness}});
  }
  return {{"schema", kSchema},
          {"metadata", r.metadata},
          {"stages", stages},
          {"correspondences", r.correspondences},
          {"skipped_primes", r.skipped_primes},
          {"summary", {{"stages", r.stages.size()}, {"failures", r.failures()}, {"passed", r.passed()}}}};
}

std::string emit_report(const VerificationReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "galrep verification report (" << kSchema << ")\n";
  out << "prime bound " << r.metadata.value("prime_bound", 0) << ", precision " << r.metadata.value("precision_bits", 0)
      << " bits, seed " << r.metadata.value("seed", std::uint64_t{0}) << "\n\n";
  out << "Stages\n";
  for (const auto& s : r.stages) {
    std::string tag = to_string(s.status);
    std::transform(tag.begin(), tag.end(), tag.begin(), ::toupper);
    out << "  [" << pad(tag, 7) << "] " << pad(s.name, 22) << s.summary << '\n';
  }
  const auto* t2 = r.find("table2-golden");
  const auto* tr = r.find("trace-recovery");
  if (t2 && tr && tr->status == StageStatus::Pass && t2->witness.contains("printed")) {
    out << "\nTrace rows: derived, then the printed row it equals\n";
    render_rows(out, tr->witness.at("rows"), t2->witness.at("printed"), t2->witness.at("correspondence"));
  }
  const auto* t3 = r.find("table3-golden");
  const auto* op = r.find("order-prediction");
  if (t3 && op && op->status == StageStatus::Pass && t3->witness.contains("printed")) {
    out << "\nOrder rows: derived, then the printed row it equals\n";
    render_rows(out, op->witness.at("rows"), t3->witness.at("printed"), t3->witness.at("correspondence"));
  }
  out << "\nCorrespondence\n";
  for (const auto& [row, entry] : r.correspondences.items()) {
    out << "  " << pad(row, 8);
    for (const auto& key : {"table2", "table3", "quintic", "sextic", "degree24", "curve"}) {
      if (!entry.contains(key)) continue;
      const auto& v = entry.at(key);
      std::string text;
      if (v.is_array()) {
        for (const auto& x : v) text += (text.empty() ? "" : "+") + x.get<std::string>();
      } else {
        text = v.get<std::string>();
      }
      out << "  " << key << "=" << text;
    }
    out << '\n';
  }
  out << "\nSkipped primes\n";
  for (const auto& [name, list] : r.skipped_primes.items()) {
    out << "  " << pad(name, 8);
    for (const auto& s : list) out << " " << s.at("l").get<long>() << "(" << s.at("reason").get<std::string>() << ")";
    out << '\n';
  }
  out << "\n" << r.stages.size() << " stages, " << r.failures() << " not passed\n";
  return out.str();
}

}  // namespace galrep::pipeline
