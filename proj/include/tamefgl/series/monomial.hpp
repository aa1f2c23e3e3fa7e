#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace tamefgl {

/// Series are supported in up to six variables: four for 2-dim laws, six for
/// the associativity check of a 2-dim law.
inline constexpr int kMaxVars = 6;

using Exponent = std::array<std::uint16_t, kMaxVars>;

int total_degree(const Exponent& e, int nvars);

/// Canonical monomial order: graded, and within a degree the monomial with
/// the larger exponent of the earlier variable comes first (Z1 < Z2 for two
/// variables: Z1^a Z2^b < Z1^c Z2^d iff a+b < c+d, or equal degree and a > c).
bool graded_less(const Exponent& a, const Exponent& b, int nvars);

Exponent unit_exponent(int k);

/// Dense enumeration of all monomials of total degree ≤ cap in canonical
/// order, plus a mixed-radix lookup so that index_of(a + b) is a table read.
class MonomialIndex {
 public:
  MonomialIndex(int nvars, int cap);

  int nvars() const { return nvars_; }
  int cap() const { return cap_; }
  int size() const { return static_cast<int>(exponents_.size()); }

  const Exponent& exponent(int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  int degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  std::uint32_t key(int i) const { return keys_[static_cast<std::size_t>(i)]; }
  std::uint32_t key_of(const Exponent& e) const;
  /// -1 if the monomial lies beyond the cap.
  int index_of(const Exponent& e) const;
  int index_of_key(std::uint32_t key) const { return lookup_[key]; }
  /// One past the last index whose degree is ≤ d.
  int end_of_degree(int d) const;

 private:
  int nvars_;
  int cap_;
  std::uint32_t radix_;
  std::vector<Exponent> exponents_;
  std::vector<int> degrees_;
  std::vector<std::uint32_t> keys_;
  std::vector<int> degree_end_;
  std::vector<std::int32_t> lookup_;
};

}  // namespace tamefgl
