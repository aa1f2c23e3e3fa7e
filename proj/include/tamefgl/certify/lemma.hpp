#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamefgl/padic/rational.hpp"
#include "tamefgl/series/series.hpp"

namespace tamefgl {

enum class LemmaKind { Antisymmetric, Symmetric };

struct ShapeCheck {
  std::string name;
  bool pass = false;
  std::optional<std::string> witness;
};

/// Shape test for f(Z1, Z2) = ℓ(Z1 ∓ Z2) + ℓ·(degrees 2 … ℓ^r − 1)
/// + a(Z1^{ℓ^r} ∓ Z2^{ℓ^r}) + (degree > ℓ^r) with ℓ ∤ a and
/// f(Z2, Z1) = ∓f(Z1, Z2). Any root (x, y) with v(x), v(y) ≥ v(x ∓ y) then
/// has v(x ∓ y) = β = 1/(ℓ^r − 1).
struct LemmaShapeReport {
  LemmaKind kind = LemmaKind::Antisymmetric;
  int r = 0;
  std::vector<ShapeCheck> checks;
  /// Coefficient of Z1^{ℓ^r}.
  Residue a = 0;
  /// Set only when every check passes.
  std::optional<Rational> beta;
  bool pass() const { return beta.has_value(); }
  const ShapeCheck* first_failure() const;
};

/// Throws CapTooSmall when cap < ℓ^r, VarArityMismatch unless f has two
/// variables, InvalidArgument for r < 1.
LemmaShapeReport lemma_shape_check(const TruncatedSeries& f, LemmaKind kind, int r);

}  // namespace tamefgl
