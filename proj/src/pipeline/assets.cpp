#include "galrep/pipeline/assets.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "galrep/algebra/bigint.hpp"
#include "galrep/algebra/poly_json.hpp"
#include "galrep/error.hpp"

namespace galrep::pipeline {

namespace {

using nlohmann::json;

const std::array<const char*, 8> kAssetFiles = {"table1.json", "table2.json",   "table3.json",   "table4.json",
                                                "table5.json", "quintics.json", "sextics.json", "curve.json"};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Schema, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Schema, where + ": " + e.what());
  }
}

long small_int(const json& j, const std::string& where) {
  const BigInt v = algebra::bigint_from_json(j);
  if (!v.fits_slong_p()) throw Error(ErrorCode::Schema, where + ": integer out of range");
  return v.get_si();
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::Schema, where + ": missing \"" + key + "\"");
  return j.at(key);
}

NamedPoly named_poly(const json& j, const std::string& where) {
  return {field(j, "name", where).get<std::string>(), algebra::poly_from_json(field(j, "poly", where))};
}

std::vector<NamedPoly> poly_list(const json& j, const std::string& where) {
  std::vector<NamedPoly> out;
  for (const auto& e : field(j, "polys", where)) out.push_back(named_poly(e, where));
  if (out.empty()) throw Error(ErrorCode::Schema, where + ": no polynomials");
  return out;
}

// Errors from nested helpers already name the file; wrap anything else.
template <typename F>
auto with_context(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Schema && std::string(e.what()).find(where) != std::string::npos) throw;
    throw Error(ErrorCode::Schema, where + ": " + e.what());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Schema, where + ": " + e.what());
  }
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Internal, "sha256 failed");
  }
  std::ostringstream out;
  for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

std::vector<TraceRow> parse_trace_rows(const json& j, const std::string& where) {
  return with_context(where, [&] {
    std::vector<TraceRow> rows;
    for (const auto& r : field(j, "rows", where)) {
      TraceRow row{field(r, "name", where).get<std::string>(), {}};
      for (const auto& [l, v] : field(r, "entries", where).items()) {
        const long b = small_int(v, where);
        if (b < 0 || b >= 5) throw Error(ErrorCode::Schema, where + ": trace outside [0, 5)");
        row.b[std::stol(l)] = static_cast<int>(b);
      }
      rows.push_back(std::move(row));
    }
    return rows;
  });
}

IntPoly parse_poly_file(const json& j, const std::string& where) {
  return with_context(where, [&] { return algebra::poly_from_json(j.is_object() ? field(j, "poly", where) : j); });
}

AssetBundle load_assets(const std::filesystem::path& dir) {
  AssetBundle b;
  const json manifest = parse(read_file(dir / "manifest.json"), "manifest.json");
  if (manifest.value("schema", "") != "galrep-assets/1") throw Error(ErrorCode::Schema, "manifest.json: unknown schema");
  std::map<std::string, json> docs;
  for (const char* name : kAssetFiles) {
    const std::string text = read_file(dir / name);
    const std::string digest = sha256_hex(text);
    const auto& files = field(manifest, "files", "manifest.json");
    if (!files.contains(name)) throw Error(ErrorCode::Schema, std::string("manifest.json: no entry for ") + name);
    if (files.at(name).get<std::string>() != digest) {
      throw Error(ErrorCode::Schema, std::string(name) + ": checksum mismatch (got " + digest + ")");
    }
    b.checksums[name] = digest;
    docs[name] = parse(text, name);
  }

  with_context("table1.json", [&] {
    const auto& t = docs["table1.json"];
    for (const auto& s : field(t, "systems", "table1.json")) {
      hecke::EigenSystem sys{field(s, "name", "table1.json").get<std::string>(), {}};
      for (const auto& [l, v] : field(s, "entries", "table1.json").items()) {
        if (!v.is_array() || v.size() != 2) throw Error(ErrorCode::Schema, "table1.json: entry must be a pair");
        sys.entries[std::stol(l)] = {static_cast<int>(small_int(v[0], "table1.json")),
                                     static_cast<int>(small_int(v[1], "table1.json"))};
      }
      b.eigen_systems.push_back(std::move(sys));
    }
    return 0;
  });
  b.trace_rows = parse_trace_rows(docs["table2.json"], "table2.json");
  with_context("table3.json", [&] {
    for (const auto& r : field(docs["table3.json"], "rows", "table3.json")) {
      OrderRow row{field(r, "name", "table3.json").get<std::string>(), {}};
      for (const auto& [l, v] : field(r, "entries", "table3.json").items()) {
        for (const auto& o : v) row.orders[std::stol(l)].insert(static_cast<int>(small_int(o, "table3.json")));
      }
      b.order_rows.push_back(std::move(row));
    }
    return 0;
  });
  b.degree24 = with_context("table4.json", [&] { return poly_list(docs["table4.json"], "table4.json"); });
  b.torsion_poly = with_context("table5.json", [&] { return named_poly(docs["table5.json"], "table5.json"); });
  with_context("quintics.json", [&] {
    const auto& q = docs["quintics.json"];
    b.quintics = poly_list(q, "quintics.json");
    b.target_discriminant = algebra::bigint_from_json(field(q, "target_discriminant", "quintics.json"));
    for (const auto& p : field(q, "ramified_primes", "quintics.json")) b.ramified_primes.push_back(small_int(p, "quintics.json"));
    return 0;
  });
  b.sextics = with_context("sextics.json", [&] { return poly_list(docs["sextics.json"], "sextics.json"); });
  with_context("curve.json", [&] {
    const auto& c = docs["curve.json"];
    b.curve_label = c.value("label", "");
    b.curve = elliptic::CurveQ::from_json(field(c, "ainvs", "curve.json"));
    b.torsion_prime = static_cast<int>(small_int(field(c, "torsion_prime", "curve.json"), "curve.json"));
    return 0;
  });
  return b;
}

}  // namespace galrep::pipeline
