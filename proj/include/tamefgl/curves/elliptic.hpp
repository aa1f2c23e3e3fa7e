#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tamefgl/fgl/law.hpp"
#include "tamefgl/padic/finite_field.hpp"
#include "tamefgl/series/series.hpp"

namespace tamefgl {

/// H_ℓ(x) = Σ_{k ≤ (ℓ−1)/2} C((ℓ−1)/2, k)² x^k over F_ℓ, as a one-variable
/// series with cap (ℓ−1)/2. Throws NotPrime, InvalidArgument for ℓ = 2.
TruncatedSeries deuring_poly(int ell);

/// x² − x + a dividing H_ℓ, a ∈ F_ℓ* the smallest such representative.
struct DeuringFactor {
  int ell = 0;
  std::int64_t a = 0;
};

/// Throws EllTooSmall for ℓ ≤ 3, NotFound if no factor exists (which would
/// contradict the known existence result).
DeuringFactor find_quadratic_factor(int ell);
/// Whether x² − x + a divides H_ℓ over F_ℓ.
bool divides_deuring(int ell, std::int64_t a);

/// y² = x³ + b x² + b x + 1 over F_ℓ.
struct BaseEllipticB {
  int ell = 0;
  std::int64_t b = 0;
  Weierstrass weierstrass() const { return Weierstrass::b_form(b); }
};

/// Number of F_ℓ-points (with O) of a Weierstrass curve, 5 ≤ ℓ ≤ 10⁴.
/// Throws SingularCurve, InvalidArgument outside the range.
std::int64_t count_points(int ell, const Weierstrass& w);
/// #E(F_ℓ) = ℓ + 1.
bool is_supersingular(int ell, const Weierstrass& w);

/// j(E) in F_ℓ. Throws SingularCurve.
std::int64_t j_invariant(int ell, const Weierstrass& w);

struct BaseCurveProof {
  DeuringFactor factor;
  BaseEllipticB curve;
  /// Discriminant of x³ + b x² + b x + 1 mod ℓ.
  std::int64_t delta_g = 0;
  /// Legendre parameter (1 + √(1 − 4a))/2 in F_ℓ², verified H_ℓ(λ) = 0.
  std::optional<Fp2Element> lambda;
  bool lambda_verified = false;
  /// Whether the alternative reading 1/2 + √(1 − 4a) is also a root of H_ℓ.
  bool literal_lambda_is_root = false;
  std::int64_t points = 0;
  bool supersingular = false;
};

/// b = (1 − a)/a for the canonical Deuring factor, with proof data.
BaseCurveProof supersingular_base_curve(int ell);

/// H_ℓ evaluated in F_ℓ².
Fp2Element deuring_value(int ell, const Fp2Element& x);

/// x-coordinates of P₁ = (−1, 0), P₂, P₃ = ((1 − b ± √(b² − 2b − 3))/2, 0).
/// Throws SingularCurve for b ≡ 3, −1.
std::array<Fp2Element, 3> two_torsion(const BaseEllipticB& e);

struct GlueReport {
  /// ψ (P₂ ↔ P₃) commutes with Frobenius.
  bool galois_compatible = false;
  /// "order-2" when j ∉ {0, 1728}, "enumeration" otherwise.
  std::string route;
  std::int64_t j = 0;
  int automorphisms = 0;
  /// Some automorphism restricts to ψ on E[2].
  bool psi_induced = false;
  bool supersingular = false;
  /// Stamped when supersingular: the glued surface has r = 2.
  bool r_equals_2 = false;
  bool pass() const { return galois_compatible && !psi_induced; }
};

/// Throws SingularCurve.
GlueReport glue_preconditions(const BaseEllipticB& e);

}  // namespace tamefgl
