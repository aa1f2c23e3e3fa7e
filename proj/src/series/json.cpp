#include "tamefgl/series/json.hpp"

#include "tamefgl/error.hpp"

namespace tamefgl {

nlohmann::json series_to_json(const TruncatedSeries& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    nlohmann::json e = nlohmann::json::array();
    for (int k = 0; k < f.nvars(); ++k) e.push_back(t.e[static_cast<std::size_t>(k)]);
    terms.push_back({{"e", std::move(e)}, {"c", to_decimal(t.c)}});
  }
  return {{"ell", f.ring().ell()},
          {"prec", f.ring().prec()},
          {"nvars", f.nvars()},
          {"cap", f.cap()},
          {"terms", std::move(terms)}};
}

TruncatedSeries series_from_json(const nlohmann::json& j) {
  try {
    Ring R(j.at("ell").get<int>(), j.at("prec").get<int>());
    int nvars = j.at("nvars").get<int>();
    int cap = j.at("cap").get<int>();
    if (nvars < 1 || nvars > kMaxVars) throw Error(ErrorCode::ParseError, "bad nvars");
    std::vector<std::pair<Exponent, Residue>> raw;
    for (const auto& t : j.at("terms")) {
      const auto& e = t.at("e");
      if (!e.is_array() || static_cast<int>(e.size()) != nvars)
        throw Error(ErrorCode::ParseError, "exponent length differs from nvars");
      Exponent x{};
      for (int k = 0; k < nvars; ++k) {
        int v = e[static_cast<std::size_t>(k)].get<int>();
        if (v < 0 || v > cap) throw Error(ErrorCode::ParseError, "exponent out of range");
        x[static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(v);
      }
      const auto& c = t.at("c");
      Residue r = c.is_string() ? R.from_decimal(c.get<std::string>()) : R.from_int(c.get<std::int64_t>());
      raw.emplace_back(x, r);
    }
    return TruncatedSeries::from_terms(R, nvars, cap, std::move(raw));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

}  // namespace tamefgl
