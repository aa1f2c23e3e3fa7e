#pragma once

#include <json.hpp>

#include "tamefgl/fgl/law.hpp"

namespace tamefgl {

inline constexpr const char* kLawSchema = "tamefgl.law/1";
inline constexpr const char* kMulSchema = "tamefgl.mul/1";

/// {"schema","dim","ring":{"ell","prec"},"cap","laws":[series…],"provenance"}.
nlohmann::json law_to_json(const FormalGroupLaw& f);
/// The loaded law carries no structural shortcuts. Throws ParseError.
FormalGroupLaw law_from_json(const nlohmann::json& j);

nlohmann::json mul_to_json(const MulByM& m);
MulByM mul_from_json(const nlohmann::json& j);

}  // namespace tamefgl
