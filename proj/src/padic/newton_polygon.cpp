#include "tamefgl/padic/newton_polygon.hpp"

#include <algorithm>
#include <map>

#include "tamefgl/error.hpp"

namespace tamefgl {

std::vector<std::pair<Rational, int>> NewtonPolygon::root_valuations() const {
  std::vector<std::pair<Rational, int>> out;
  for (const auto& s : segments_) out.emplace_back(-s.slope, s.length);
  return out;
}

namespace {

// Sign of the cross product (b − a) × (c − a); ≤ 0 means b is not strictly
// below the chord a→c, so b is dropped from the lower hull.
bool not_below_chord(const PolygonVertex& a, const PolygonVertex& b, const PolygonVertex& c) {
  Rational lhs = (b.valuation - a.valuation) * Rational(c.degree - a.degree);
  Rational rhs = (c.valuation - a.valuation) * Rational(b.degree - a.degree);
  return lhs >= rhs;
}

}  // namespace

NewtonPolygon newton_polygon(const std::vector<PolygonPoint>& points, std::optional<int> cap) {
  // One point per degree, keeping the lowest valuation.
  std::map<int, Rational> best;
  for (const auto& p : points) {
    if (!p.valuation) continue;
    auto it = best.find(p.degree);
    if (it == best.end() || *p.valuation < it->second) best[p.degree] = *p.valuation;
  }
  if (best.size() < 2)
    throw Error(ErrorCode::AllCoefficientsBelowPrecision,
                "a Newton polygon needs at least two finite-valuation points");

  std::vector<PolygonVertex> hull;
  for (const auto& [deg, v] : best) {
    PolygonVertex cur{deg, v};
    while (hull.size() >= 2 && not_below_chord(hull[hull.size() - 2], hull.back(), cur)) hull.pop_back();
    hull.push_back(cur);
  }

  std::vector<PolygonSegment> segments;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[i + 1];
    int len = b.degree - a.degree;
    Rational slope = (b.valuation - a.valuation) / Rational(len);
    bool certified = true;
    if (cap) {
      // An unseen point (d, w) with d > cap and w ≥ 0 leaves the segment
      // intact iff the extended line is ≤ 0 at every such d.
      Rational at_next = b.valuation + slope * Rational(*cap + 1 - b.degree);
      certified = b.degree <= *cap && slope <= Rational(0) && at_next <= Rational(0);
    }
    segments.push_back({slope, len, certified});
  }
  return NewtonPolygon(std::move(hull), std::move(segments));
}

NewtonPolygon series_newton_polygon(const std::vector<PadicCoeff>& coefficients) {
  std::vector<PolygonPoint> pts;
  for (std::size_t d = 0; d < coefficients.size(); ++d) {
    Valuation v = coefficients[d].valuation();
    if (v.is_finite()) pts.push_back({static_cast<int>(d), Rational(v.value())});
    else pts.push_back({static_cast<int>(d), std::nullopt});
    if (v.is_finite() && v.value() == 0) break;
  }
  return newton_polygon(pts);
}

}  // namespace tamefgl
