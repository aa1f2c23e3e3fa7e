#pragma once

#include <span>
#include <vector>

#include "tamefgl/series/series.hpp"

namespace tamefgl {

struct HenselResult {
  /// Root b as residues mod ℓ^N; only the class mod ℓ^precision is
  /// determined.
  std::vector<Residue> root;
  /// N − v(e): digits of b fixed by the iteration.
  int precision = 0;
  int iterations = 0;
  /// min_i v(f_i(b)), capped at N.
  int residual_valuation = 0;
  /// min_i v(b_i − a_i), capped at N.
  int shift_valuation = 0;
};

/// Newton iteration x ← x − adj(J)·f(x)/det J(x) from a, accepting a step
/// only when the least residual valuation strictly increases.
/// Hypotheses: v(f_i(a)) > 2·v(e) for all i and v(det J(a)) = v(e); a
/// violation throws HypothesisViolated. Throws PrecisionExhausted when no
/// step improves before N − v(e) digits or after 64 steps. For affine
/// systems the residual condition is not required.
HenselResult hensel_lift(std::span<const TruncatedSeries> system, std::span<const Residue> a, Residue e);

/// The same iteration without the residual hypothesis, used to check that
/// other starts in the ball reach the same root.
HenselResult newton_refine(std::span<const TruncatedSeries> system, std::span<const Residue> start, Residue e);

}  // namespace tamefgl
