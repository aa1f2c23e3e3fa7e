#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tamefgl/certify/certificate.hpp"
#include "tamefgl/certify/lemma.hpp"
#include "tamefgl/fgl/law.hpp"

namespace tamefgl {

/// Structural check that a 2-dim law over Z/ℓ^N is symmetric of height 4
/// with r = 2, which forces every nonzero ℓ-torsion point to have minimal
/// coordinate valuation α = 1/(ℓ² − 1). Failed hypotheses give REFUSED with
/// the entry named. Throws CapTooSmall (cap < ℓ² + 2), DimMismatch,
/// InvalidArgument (ℓ = 2).
TameCertificate certify_symmetric(const FormalGroupLaw& f, const std::string& subject = "");

/// Same, reusing an already computed [ℓ] of f.
TameCertificate certify_symmetric(const FormalGroupLaw& f, const MulByM& ell_map, const std::string& subject = "");

/// Certifies F′ from a certified base F when every coefficient of
/// [ℓ]_i − [ℓ]′_i lies in (ℓ⁴) and F′ is a formal group law. The law-level
/// difference is reported as a diagnostic. Throws CapMismatch when the laws
/// differ in ring, cap or dimension.
TameCertificate certify_perturbed(const TameCertificate& base, const FormalGroupLaw& f, const FormalGroupLaw& fprime,
                                  const std::string& subject = "");
TameCertificate certify_perturbed(const TameCertificate& base, const MulByM& base_ell_map,
                                  const FormalGroupLaw& fprime, const std::string& subject = "");

/// Least valuation among the coefficients of a − b over all coordinates,
/// with the first monomial attaining it (canonical order, coordinate order).
struct DifferenceReport {
  bool zero = true;
  int valuation = 0;
  int coordinate = 0;
  Exponent at{};
};
DifferenceReport least_difference(std::span<const TruncatedSeries> a, std::span<const TruncatedSeries> b);

/// Linear change of coordinates T = I + ℓ^k·M with M drawn from `seed`.
/// With `unit_entry`, one off-diagonal entry of M is a unit so the
/// perturbation has exact ℓ-adic size ℓ^k.
std::vector<TruncatedSeries> perturbation_map(const Ring& ring, int cap, int k, std::uint64_t seed,
                                              bool unit_entry);
/// conjugate_fgl(f, perturbation_map(...)).
FormalGroupLaw perturb_law(const FormalGroupLaw& f, int k, std::uint64_t seed, bool unit_entry);

}  // namespace tamefgl
