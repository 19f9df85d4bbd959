#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "galrep/algebra/int_poly.hpp"
#include "galrep/elliptic/elliptic.hpp"
#include "galrep/hecke/hecke.hpp"
#include "json.hpp"

namespace galrep::pipeline {

using algebra::BigInt;
using algebra::IntPoly;

struct NamedPoly {
  std::string name;
  IntPoly poly;
};

struct TraceRow {
  std::string name;
  std::map<long, int> b;
};

struct OrderRow {
  std::string name;
  std::map<long, std::set<int>> orders;
};

struct AssetBundle {
  std::vector<hecke::EigenSystem> eigen_systems;  // table1
  std::vector<TraceRow> trace_rows;               // table2
  std::vector<OrderRow> order_rows;               // table3
  std::vector<NamedPoly> degree24;                // table4
  NamedPoly torsion_poly;                         // table5
  std::vector<NamedPoly> quintics;
  BigInt target_discriminant;
  std::vector<long> ramified_primes;
  std::vector<NamedPoly> sextics;
  std::string curve_label;
  elliptic::CurveQ curve{0, 0, 1, -2, 1};
  int torsion_prime = 5;
  std::map<std::string, std::string> checksums;  // file -> sha256 as loaded
};

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Loads every asset, checking it against manifest.json and validating its
/// schema. Throws Error(Schema) naming the file on any problem.
AssetBundle load_assets(const std::filesystem::path& dir);

/// Parsers shared with the CLI. Each throws Error(Schema) with `where` in the message.
std::vector<TraceRow> parse_trace_rows(const nlohmann::json& j, const std::string& where);
IntPoly parse_poly_file(const nlohmann::json& j, const std::string& where);

}  // namespace galrep::pipeline
