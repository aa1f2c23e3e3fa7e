#pragma once

#include <optional>
#include <vector>

#include "tamefgl/padic/rational.hpp"
#include "tamefgl/padic/ring.hpp"

namespace tamefgl {

struct PolygonPoint {
  int degree;
  std::optional<Rational> valuation;  // nullopt: ⊥, skipped
};

struct PolygonVertex {
  int degree;
  Rational valuation;
  friend bool operator==(const PolygonVertex&, const PolygonVertex&) = default;
};

struct PolygonSegment {
  Rational slope;
  int length;
  /// False when a coefficient of degree beyond the cap (valuation ≥ 0)
  /// could still bend the hull at this segment.
  bool certified;
  friend bool operator==(const PolygonSegment&, const PolygonSegment&) = default;
};

/// Lower convex hull of (degree, valuation) points. A segment of slope −s
/// and length m accounts for m roots of valuation s.
class NewtonPolygon {
 public:
  NewtonPolygon(std::vector<PolygonVertex> vertices, std::vector<PolygonSegment> segments)
      : vertices_(std::move(vertices)), segments_(std::move(segments)) {}

  const std::vector<PolygonVertex>& vertices() const { return vertices_; }
  const std::vector<PolygonSegment>& segments() const { return segments_; }

  /// (valuation, multiplicity) of the roots certified by the polygon.
  std::vector<std::pair<Rational, int>> root_valuations() const;

  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;

 private:
  std::vector<PolygonVertex> vertices_;
  std::vector<PolygonSegment> segments_;
};

/// Builds the polygon; ⊥ entries are skipped. With `cap` set, segments the
/// unseen tail (degree > cap, valuation ≥ 0) could alter are flagged
/// provisional. Throws AllCoefficientsBelowPrecision with < 2 finite points.
NewtonPolygon newton_polygon(const std::vector<PolygonPoint>& points,
                             std::optional<int> cap = std::nullopt);

/// Polygon of a one-variable coefficient list c_0, c_1, … truncated at the
/// first unit coefficient (the Weierstrass degree), as is standard for
/// power series over Z_ℓ.
NewtonPolygon series_newton_polygon(const std::vector<PadicCoeff>& coefficients);

}  // namespace tamefgl
