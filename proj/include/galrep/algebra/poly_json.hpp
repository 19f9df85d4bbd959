#pragma once

#include "json.hpp"

#include "galrep/algebra/int_poly.hpp"

namespace galrep::algebra {

/// ["307744","-117360","13040","0","0","1"]: decimal strings, constant term first.
nlohmann::json poly_to_json(const IntPoly& f);

/// Accepts decimal strings (and plain JSON integers that fit in 64 bits).
/// Throws Error(Schema) on anything else.
IntPoly poly_from_json(const nlohmann::json& j);

nlohmann::json bigint_to_json(const BigInt& n);
BigInt bigint_from_json(const nlohmann::json& j);

}  // namespace galrep::algebra
