#pragma once

#include <json.hpp>

#include "tamefgl/series/series.hpp"

namespace tamefgl {

/// {"ell","prec","nvars","cap","terms":[{"e":[...],"c":"decimal"}]}, terms in
/// canonical order, coefficients as canonical residues.
nlohmann::json series_to_json(const TruncatedSeries& f);
/// Throws ParseError on malformed input.
TruncatedSeries series_from_json(const nlohmann::json& j);

}  // namespace tamefgl
