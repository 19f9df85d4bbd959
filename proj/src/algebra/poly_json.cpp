#include "galrep/algebra/poly_json.hpp"

#include "galrep/error.hpp"

namespace galrep::algebra {

nlohmann::json bigint_to_json(const BigInt& n) { return to_string(n); }

BigInt bigint_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    try {
      return parse_bigint(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::Schema, e.what());
    }
  }
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  throw Error(ErrorCode::Schema, "expected a decimal integer string, got " + j.dump());
}

nlohmann::json poly_to_json(const IntPoly& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : f.coeffs()) out.push_back(to_string(c));
  return out;
}

IntPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Schema, "polynomial must be a JSON array");
  std::vector<BigInt> c;
  c.reserve(j.size());
  for (const auto& x : j) c.push_back(bigint_from_json(x));
  return IntPoly(std::move(c));
}

}  // namespace galrep::algebra
