#include "tamefgl/fgl/json.hpp"

#include "tamefgl/error.hpp"
#include "tamefgl/series/json.hpp"

namespace tamefgl {

namespace {

nlohmann::json series_array(const std::vector<TruncatedSeries>& fs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : fs) out.push_back(series_to_json(f));
  return out;
}

std::vector<TruncatedSeries> series_list(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, "expected a nonempty array of series");
  std::vector<TruncatedSeries> out;
  for (const auto& s : j) out.push_back(series_from_json(s));
  return out;
}

void expect_schema(const nlohmann::json& j, const char* schema) {
  if (j.contains("schema") && j.at("schema") != schema)
    throw Error(ErrorCode::ParseError, "unexpected schema " + j.at("schema").dump());
}

}  // namespace

nlohmann::json law_to_json(const FormalGroupLaw& f) {
  return {{"schema", kLawSchema},
          {"dim", f.dim()},
          {"ring", {{"ell", f.ring().ell()}, {"prec", f.ring().prec()}}},
          {"cap", f.cap()},
          {"laws", series_array(f.laws())},
          {"provenance", f.provenance()}};
}

FormalGroupLaw law_from_json(const nlohmann::json& j) {
  try {
    expect_schema(j, kLawSchema);
    int dim = j.at("dim").get<int>();
    auto laws = series_list(j.at("laws"));
    return FormalGroupLaw(dim, std::move(laws), j.value("provenance", std::string("json")));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

nlohmann::json mul_to_json(const MulByM& m) {
  return {{"schema", kMulSchema}, {"m", m.m}, {"maps", series_array(m.maps)}};
}

MulByM mul_from_json(const nlohmann::json& j) {
  try {
    expect_schema(j, kMulSchema);
    return {j.at("m").get<int>(), series_list(j.at("maps"))};
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

}  // namespace tamefgl
