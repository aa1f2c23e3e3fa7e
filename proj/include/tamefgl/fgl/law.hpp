#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tamefgl/series/series.hpp"

namespace tamefgl {

/// An n-dimensional formal group law (n ∈ {1, 2}): n series in the 2n
/// variables (X₁, …, X_n, Y₁, …, Y_n), all truncated at the same cap.
class FormalGroupLaw {
 public:
  FormalGroupLaw(int dim, std::vector<TruncatedSeries> laws, std::string provenance);

  int dim() const { return dim_; }
  const Ring& ring() const { return laws_.front().ring(); }
  int cap() const { return laws_.front().cap(); }
  const std::vector<TruncatedSeries>& laws() const { return laws_; }
  const TruncatedSeries& law(int i) const { return laws_[static_cast<std::size_t>(i)]; }
  const std::string& provenance() const { return provenance_; }

  /// Set for laws built by product_fgl: the two 1-dim factors.
  const std::vector<std::shared_ptr<const FormalGroupLaw>>& factors() const { return factors_; }
  /// Set for laws built by conjugate_fgl: the original law and the change of
  /// coordinates T with its inverse (both n series in n variables).
  const std::shared_ptr<const FormalGroupLaw>& conjugated_from() const { return base_; }
  const std::vector<TruncatedSeries>& transform() const { return transform_; }
  const std::vector<TruncatedSeries>& inverse_transform() const { return inverse_transform_; }

  /// Same law without the structural shortcuts (factors, conjugation data).
  FormalGroupLaw opaque() const;

 private:
  friend FormalGroupLaw product_fgl(const FormalGroupLaw&, const FormalGroupLaw&);
  friend FormalGroupLaw conjugate_fgl(const FormalGroupLaw&, std::span<const TruncatedSeries>);
  int dim_;
  std::vector<TruncatedSeries> laws_;
  std::string provenance_;
  std::vector<std::shared_ptr<const FormalGroupLaw>> factors_;
  std::shared_ptr<const FormalGroupLaw> base_;
  std::vector<TruncatedSeries> transform_;
  std::vector<TruncatedSeries> inverse_transform_;
};

/// [m] as n series in n variables.
struct MulByM {
  int m;
  std::vector<TruncatedSeries> maps;
};

struct Weierstrass {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  /// y² = x³ + b x² + b x + 1.
  static Weierstrass b_form(std::int64_t b) { return {0, b, 0, b, 1}; }
};

/// Discriminant of a general Weierstrass equation, reduced in `ring`.
Residue weierstrass_discriminant(const Ring& ring, const Weierstrass& w);

FormalGroupLaw additive_fgl(const Ring& ring, int cap);
FormalGroupLaw multiplicative_fgl(const Ring& ring, int cap);
/// Law of the curve in the parameter z = −x/y. Throws SingularCurve when the
/// discriminant vanishes in the ring.
FormalGroupLaw elliptic_fgl(const Ring& ring, const Weierstrass& w, int cap);
/// H(X₁,X₂,Y₁,Y₂) = (F(X₁,Y₁), G(X₂,Y₂)).
FormalGroupLaw product_fgl(const FormalGroupLaw& f, const FormalGroupLaw& g);
/// G = T⁻¹(F(T(X), T(Y))) for T with zero constant term and invertible
/// linear part. Throws NonInvertibleLinearPart.
FormalGroupLaw conjugate_fgl(const FormalGroupLaw& f, std::span<const TruncatedSeries> t);
/// Compositional inverse of an n-tuple with invertible linear part.
std::vector<TruncatedSeries> compositional_inverse(std::span<const TruncatedSeries> t);

/// [m] by the recursion [m+1] = F(Z, [m]). Products and conjugates are
/// routed through their factors / base law unless `use_structure` is false.
MulByM mul_by_m(const FormalGroupLaw& f, int m, bool use_structure = true);

/// F₂(X₂,X₁,Y₂,Y₁) = F₁(X₁,X₂,Y₁,Y₂). Throws DimMismatch for dim ≠ 2.
bool is_symmetric(const FormalGroupLaw& f);

struct AxiomCheck {
  std::string name;
  bool pass = true;
  /// Smallest offending monomial in canonical order, rendered with X/Y/Z.
  std::optional<std::string> witness;
  /// Total degree through which the identity was compared.
  int degree_checked = 0;
};

struct AxiomReport {
  AxiomCheck unit;
  AxiomCheck linear_term;
  AxiomCheck associativity;
  AxiomCheck commutativity;
  bool all_pass() const { return unit.pass && linear_term.pass && associativity.pass && commutativity.pass; }
};

/// Associativity is compared through `assoc_degree`; the default is the
/// full cap for 1-dim laws (at most 64) and min(cap, 12) for 2-dim laws.
AxiomReport check_axioms(const FormalGroupLaw& f, std::optional<int> assoc_degree = std::nullopt);

/// r with u = ℓ^r, u the least exponent of a single variable in any nonzero
/// monomial of the maps reduced mod ℓ. Verifies that every exponent is
/// divisible by ℓ^r. Throws ZeroSeries, ZeroExponent (u = 1), NotAPowerOfEll.
int r_exponent(std::span<const TruncatedSeries> maps);
inline int r_exponent(const MulByM& m) { return r_exponent(m.maps); }

struct HeightResult {
  bool infinite = false;
  int h = 0;
  /// dim 2: h = 2r + s with t = ℓ^s the order of the eliminated generator.
  int r = 0;
  int s = 0;
  std::string note;
};

/// Height from [ℓ] (any precision; reduced mod ℓ internally). Infinite when
/// some coordinate of [ℓ] mod ℓ vanishes through the cap. Throws
/// CapTooSmall, NotAPowerOfEll, Unsupported (no linear term after
/// extracting ℓ^r, outside the elimination this implements).
HeightResult height(std::span<const TruncatedSeries> ell_map);
inline HeightResult height(const MulByM& m) { return height(m.maps); }
HeightResult height(const FormalGroupLaw& f);

/// Renders an exponent over blocks of `dim` variables named X, Y, Z.
std::string monomial_name(const Exponent& e, int nvars, int dim);
/// Renders an exponent of an n-variable map: Z1^a*Z2^b (Z^a for n = 1).
std::string map_monomial_name(const Exponent& e, int nvars);

}  // namespace tamefgl
