#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tamefgl/padic/ring.hpp"
#include "tamefgl/series/monomial.hpp"

namespace tamefgl {

struct Term {
  Exponent e;
  Residue c;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate power series over Z/ℓ^N truncated at total degree
/// `cap`. Terms are kept in canonical graded order, never zero, never beyond
/// the cap. Everything of degree ≤ cap is exact.
class TruncatedSeries {
 public:
  TruncatedSeries(const Ring& ring, int nvars, int cap);

  /// Merges duplicates; drops zeros and monomials beyond the cap.
  static TruncatedSeries from_terms(const Ring& ring, int nvars, int cap,
                                    std::vector<std::pair<Exponent, Residue>> terms);
  static TruncatedSeries variable(const Ring& ring, int nvars, int cap, int k);
  static TruncatedSeries constant(const Ring& ring, int nvars, int cap, Residue c);
  static TruncatedSeries monomial(const Ring& ring, int nvars, int cap, const Exponent& e, Residue c);

  const Ring& ring() const { return ring_; }
  int nvars() const { return nvars_; }
  int cap() const { return cap_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Residue coeff(const Exponent& e) const;
  PadicCoeff coefficient(const Exponent& e) const { return {ring_, coeff(e)}; }
  Residue constant_term() const { return coeff(Exponent{}); }
  /// Lowest total degree carrying a nonzero coefficient, -1 for zero.
  int min_degree() const { return terms_.empty() ? -1 : total_degree(terms_.front().e, nvars_); }

  TruncatedSeries truncated(int cap) const;
  /// Homogeneous part of degree d.
  TruncatedSeries homogeneous_part(int d) const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries scaled(Residue s) const;

  std::string to_string() const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.ring_ == b.ring_ && a.nvars_ == b.nvars_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
  }

 private:
  friend class SeriesBuilder;
  Ring ring_;
  int nvars_;
  int cap_;
  std::vector<Term> terms_;
};

enum class ArithOp { Add, Sub, Mul };

/// Ring arithmetic with explicit compatibility checks; the result cap is the
/// smaller input cap. Throws RingMismatch / VarArityMismatch.
TruncatedSeries arith(ArithOp op, const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const PadicCoeff& s, const TruncatedSeries& a);

/// f(args₁, …, args_m): each argument is a series in the same n variables
/// with zero constant term. Exact up to min(f.cap, argument caps).
TruncatedSeries substitute(const TruncatedSeries& f, std::span<const TruncatedSeries> args);
/// Several outer series sharing the same arguments (powers are computed once).
std::vector<TruncatedSeries> substitute_all(std::span<const TruncatedSeries> fs,
                                            std::span<const TruncatedSeries> args);

/// Coefficientwise reduction to F_ℓ; the cap is kept.
TruncatedSeries reduce_mod_ell(const TruncatedSeries& f);

/// Re-indexes variables: variable k of f becomes variable map[k] of a series
/// in `nvars` variables.
TruncatedSeries rename_variables(const TruncatedSeries& f, int nvars, std::span<const int> map);

TruncatedSeries partial_derivative(const TruncatedSeries& f, int k);

/// Multiplicative inverse of a series with unit constant term.
TruncatedSeries series_inverse(const TruncatedSeries& f);

/// Value at a point; exact when f is a polynomial of degree ≤ cap, otherwise
/// the truncation error is bounded by (cap + 1)·min v(point).
Residue evaluate(const TruncatedSeries& f, std::span<const Residue> point);

}  // namespace tamefgl
