#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tamefgl {

/// Residues are stored in 128 bits; moduli must stay below 2^126 so that a
/// sum of two residues never wraps.
using Residue = unsigned __int128;

std::string to_decimal(Residue value);

bool is_prime(std::uint64_t n);

/// Exact ℓ-adic valuation of a residue class mod ℓ^N. A zero residue only
/// tells us the valuation is at least N, which is kept distinct from "= N".
class Valuation {
 public:
  static Valuation exact(int v) { return Valuation(v, false); }
  static Valuation at_least(int prec) { return Valuation(prec, true); }

  bool is_finite() const { return !bottom_; }
  bool is_bottom() const { return bottom_; }
  /// The exact value when finite, else the precision bound.
  int value() const { return value_; }

  /// v ≥ k holds for certain.
  bool at_least_value(int k) const { return value_ >= k; }

  std::string to_string() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation(int v, bool bottom) : value_(v), bottom_(bottom) {}
  int value_;
  bool bottom_;
};

/// The coefficient ring Z/ℓ^N (N = 1 gives the prime field F_ℓ).
class Ring {
 public:
  Ring(int ell, int prec);

  /// Largest N with ℓ^N < 2^56, the range served by the lazy-reduction kernels.
  static int fast_precision_limit(int ell);
  /// Largest N with ℓ^N < 2^126.
  static int max_precision(int ell);
  /// Default working precision: 24, lowered when ℓ^24 leaves the fast range.
  static int default_precision(int ell);

  int ell() const { return ell_; }
  int prec() const { return prec_; }
  Residue modulus() const { return modulus_; }
  bool is_field() const { return prec_ == 1; }
  bool fits_u64() const { return modulus_ <= static_cast<Residue>(UINT64_MAX); }
  bool lazy_ok() const { return modulus_ < (static_cast<Residue>(1) << 56); }

  Ring residue_field() const { return Ring(ell_, 1); }
  Ring with_precision(int prec) const { return Ring(ell_, prec); }

  Residue reduce(Residue x) const { return x % modulus_; }
  Residue from_int(std::int64_t x) const;
  Residue from_unsigned(std::uint64_t x) const { return static_cast<Residue>(x) % modulus_; }
  /// Accepts an optional sign followed by decimal digits of any length.
  Residue from_decimal(std::string_view text) const;

  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + (modulus_ - b); }
  Residue neg(Residue a) const { return a == 0 ? 0 : modulus_ - a; }
  Residue mul(Residue a, Residue b) const;
  Residue pow(Residue base, std::uint64_t e) const;

  Valuation valuation(Residue x) const;
  bool is_unit(Residue x) const { return x % static_cast<Residue>(ell_) != 0; }
  /// Inverse of a unit; throws InvalidArgument otherwise.
  Residue inverse(Residue unit) const;
  /// ℓ^k as a residue (zero once k ≥ N).
  Residue ell_power(int k) const;
  /// Canonical representative of x / ℓ^k, requiring v(x) ≥ k. The result is
  /// only meaningful modulo ℓ^(N-k); the top digits are set to zero.
  Residue divide_by_ell_power(Residue x, int k) const;
  /// Representative in (-M/2, M/2] rendered in decimal.
  std::string to_signed_decimal(Residue x) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.ell_ == b.ell_ && a.prec_ == b.prec_;
  }

  std::string describe() const;

 private:
  int ell_;
  int prec_;
  Residue modulus_;
};

/// An element of Z/ℓ^N with its ring attached.
class PadicCoeff {
 public:
  PadicCoeff(const Ring& ring, Residue residue) : ring_(ring), residue_(ring.reduce(residue)) {}
  static PadicCoeff from_int(const Ring& ring, std::int64_t x) { return {ring, ring.from_int(x)}; }

  const Ring& ring() const { return ring_; }
  Residue residue() const { return residue_; }
  int ell() const { return ring_.ell(); }
  int prec() const { return ring_.prec(); }

  Valuation valuation() const { return ring_.valuation(residue_); }
  bool is_zero() const { return residue_ == 0; }
  bool is_unit() const { return ring_.is_unit(residue_); }
  PadicCoeff inverse() const { return {ring_, ring_.inverse(residue_)}; }
  PadicCoeff reduce_mod_ell() const { return {ring_.residue_field(), residue_}; }

  PadicCoeff operator+(const PadicCoeff& o) const;
  PadicCoeff operator-(const PadicCoeff& o) const;
  PadicCoeff operator*(const PadicCoeff& o) const;
  PadicCoeff operator-() const { return {ring_, ring_.neg(residue_)}; }

  std::string to_string() const { return to_decimal(residue_); }

  friend bool operator==(const PadicCoeff& a, const PadicCoeff& b) {
    return a.ring_ == b.ring_ && a.residue_ == b.residue_;
  }

 private:
  void require_same_ring(const PadicCoeff& o) const;
  Ring ring_;
  Residue residue_;
};

/// ℓ-adic valuation of a coefficient; ⊥ ("≥ prec") for a zero residue.
inline Valuation val(const PadicCoeff& x) { return x.valuation(); }

}  // namespace tamefgl
