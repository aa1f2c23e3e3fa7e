#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tamefgl/certify/certificate.hpp"
#include "tamefgl/curves/elliptic.hpp"
#include "tamefgl/padic/ring.hpp"

namespace tamefgl {

inline constexpr const char* kCurveSchema = "tamefgl.curve/1";

/// y² = f₀ + f₁x + … + f₆x⁶ over Z/ℓ^N (f_i is the coefficient of x^i).
class HyperellipticSextic {
 public:
  /// Throws BadReduction unless f₆ and the discriminant are units.
  HyperellipticSextic(const Ring& ring, std::array<Residue, 7> coeffs);

  const Ring& ring() const { return ring_; }
  int ell() const { return ring_.ell(); }
  const std::array<Residue, 7>& coeffs() const { return f_; }
  Residue coeff(int i) const { return f_[static_cast<std::size_t>(i)]; }
  /// Signed decimal representatives.
  std::vector<std::string> coeff_strings() const;
  /// "6x^6+5x^5+…" with the symmetric representatives.
  std::string to_string() const;

 private:
  Ring ring_;
  std::array<Residue, 7> f_;
};

/// Discriminant of the degree-6 polynomial (zero when f₆ vanishes).
Residue sextic_discriminant(const Ring& ring, const std::array<Residue, 7>& f);
/// f₆ and the discriminant are units.
bool good_reduction(const Ring& ring, const std::array<Residue, 7>& f);

struct FamilyMember {
  HyperellipticSextic curve;
  TameCertificate certificate;
};

/// f₀ = f₆ = 1 + d₀, f₁ = f₅ = d₁, f₂ = f₄ = (1 − a)/a + d₂, f₃ = d₃ with
/// a the canonical Deuring factor (lifted as its integer representative).
/// Throws OffsetNotDivisible, BadReduction, EllTooSmall.
FamilyMember family_primera(const Ring& ring, const std::array<std::int64_t, 4>& offsets);

/// Starting from a symmetric base sextic: f₆ = f₆ᵇ + g₀, f₅ = f₅ᵇ + g₁,
/// f₄ = f₄ᵇ + g₂, f₃ = f₃ᵇ, and f₀ = f₆ − e₆₀, f₁ = f₅ − e₅₁,
/// f₂ = f₄ − e₄₂. The free shifts g must lie in (ℓ), the asymmetries e in
/// (ℓ⁴). Throws AsymmetryTooLarge, OffsetNotDivisible, BadReduction.
FamilyMember family_main(const HyperellipticSextic& base, const std::array<std::int64_t, 3>& asym,
                         const std::array<std::int64_t, 3>& free);

/// Full decision procedure for y² = f(x). Never throws on curve data;
/// a precision below 5 gives an ERROR certificate.
TameCertificate validate_curve(const Ring& ring, const std::array<Residue, 7>& f);
TameCertificate validate_curve(const HyperellipticSextic& c);

/// Checklist entry names of validate_curve, in order.
namespace curve_check {
inline constexpr const char* kGoodReduction = "degree 6 with unit discriminant";
inline constexpr const char* kDeuring = "f4 = (1-a)/a mod l for a factor x^2 - x + a of H_l";
inline constexpr const char* kF6 = "f6 - 1 in (l)";
inline constexpr const char* kF5 = "f5 in (l)";
inline constexpr const char* kF3 = "f3 in (l)";
inline constexpr const char* kSym60 = "f6 - f0 in (l^4)";
inline constexpr const char* kSym51 = "f5 - f1 in (l^4)";
inline constexpr const char* kSym42 = "f4 - f2 in (l^4)";
inline constexpr const char* kSupersingular = "base curve supersingular by point count";
inline constexpr const char* kGluing = "gluing preconditions";
}  // namespace curve_check

/// Seeded family_main member: offsets in (ℓ), asymmetries in (ℓ⁴), free
/// shifts in (ℓ), redrawn until the reduction is good.
FamilyMember random_family_main(const Ring& ring, std::uint64_t seed);

/// A copy of `f` breaking exactly the congruence named `check` at its
/// threshold, with good reduction kept. Returns false when no such
/// mutation exists for this curve.
bool mutate_curve(const Ring& ring, const std::array<Residue, 7>& f, const std::string& check, std::uint64_t seed,
                  std::array<Residue, 7>& out);

nlohmann::json curve_to_json(const HyperellipticSextic& c);
/// {"ell","coeffs":[…]} with optional "prec" (default precision otherwise).
/// Coefficients are decimal strings or integers. Throws ParseError.
std::pair<Ring, std::array<Residue, 7>> curve_from_json(const nlohmann::json& j);

}  // namespace tamefgl
