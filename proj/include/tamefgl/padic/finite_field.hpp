#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace tamefgl {

/// Element of the prime field F_ℓ. ℓ is limited to 32 bits so products fit in 64.
class FpElement {
 public:
  FpElement(std::uint32_t ell, std::int64_t value);

  std::uint32_t ell() const { return ell_; }
  std::uint64_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  FpElement operator+(const FpElement& o) const;
  FpElement operator-(const FpElement& o) const;
  FpElement operator*(const FpElement& o) const;
  FpElement operator/(const FpElement& o) const { return *this * o.inverse(); }
  FpElement operator-() const { return {ell_, value_ == 0 ? 0 : static_cast<std::int64_t>(ell_ - value_)}; }
  FpElement pow(std::uint64_t e) const;
  FpElement inverse() const;

  /// Legendre symbol: 1, -1, or 0.
  int legendre() const;
  bool is_square() const { return legendre() >= 0; }

  friend bool operator==(const FpElement& a, const FpElement& b) {
    return a.ell_ == b.ell_ && a.value_ == b.value_;
  }

 private:
  std::uint32_t ell_;
  std::uint64_t value_;
};

/// Square root in F_ℓ (Tonelli–Shanks). Of the two roots, the one whose
/// canonical representative in [0, ℓ) is smaller is returned.
std::optional<FpElement> sqrt_in_field(const FpElement& a);

/// Smallest positive quadratic non-residue mod ℓ.
std::uint32_t smallest_nonresidue(std::uint32_t ell);

/// Element c0 + c1·t of F_ℓ[t]/(t² − n), n the smallest non-residue.
class Fp2Element {
 public:
  Fp2Element(std::uint32_t ell, std::int64_t c0, std::int64_t c1 = 0);
  Fp2Element(const FpElement& base);  // NOLINT(google-explicit-constructor)

  std::uint32_t ell() const { return ell_; }
  std::uint32_t nonresidue() const { return n_; }
  std::uint64_t c0() const { return c0_; }
  std::uint64_t c1() const { return c1_; }
  bool in_base_field() const { return c1_ == 0; }
  bool is_zero() const { return c0_ == 0 && c1_ == 0; }
  FpElement base() const;  // requires in_base_field()

  Fp2Element operator+(const Fp2Element& o) const;
  Fp2Element operator-(const Fp2Element& o) const;
  Fp2Element operator*(const Fp2Element& o) const;
  Fp2Element operator/(const Fp2Element& o) const { return *this * o.inverse(); }
  Fp2Element operator-() const;
  Fp2Element inverse() const;
  Fp2Element pow(std::uint64_t e) const;
  /// x ↦ x^ℓ, i.e. t ↦ −t.
  Fp2Element frobenius() const;

  std::string to_string() const;

  friend bool operator==(const Fp2Element& a, const Fp2Element& b) {
    return a.ell_ == b.ell_ && a.c0_ == b.c0_ && a.c1_ == b.c1_;
  }

 private:
  std::uint32_t ell_;
  std::uint32_t n_;
  std::uint64_t c0_;
  std::uint64_t c1_;
};

/// Square root of a base-field element inside F_ℓ²: in F_ℓ when a is a
/// square, otherwise √(a/n)·t.
Fp2Element sqrt_into_fp2(const FpElement& a);

}  // namespace tamefgl
