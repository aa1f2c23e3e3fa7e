#pragma once

#include <memory>
#include <vector>

#include "tamefgl/series/monomial.hpp"
#include "tamefgl/series/series.hpp"

namespace tamefgl {

/// Shared, immutable monomial layout for (nvars, cap). Built once per shape
/// and process; the table is a pure function of its key.
std::shared_ptr<const MonomialIndex> monomial_index(int nvars, int cap);

/// Dense coefficient buffer over a MonomialIndex. This is the working form
/// for products and compositions; TruncatedSeries stays the value type.
class DenseSeries {
 public:
  explicit DenseSeries(std::shared_ptr<const MonomialIndex> index);
  static DenseSeries from_sparse(const TruncatedSeries& f, std::shared_ptr<const MonomialIndex> index);

  const MonomialIndex& index() const { return *index_; }
  const std::shared_ptr<const MonomialIndex>& index_ptr() const { return index_; }
  std::vector<Residue>& coeffs() { return c_; }
  const std::vector<Residue>& coeffs() const { return c_; }

  /// Nonzero positions in increasing (graded) order.
  std::vector<int> support() const;
  TruncatedSeries to_sparse(const Ring& ring, int cap) const;

 private:
  std::shared_ptr<const MonomialIndex> index_;
  std::vector<Residue> c_;
};

/// out += a·b, keeping only monomials of degree ≤ limit.
void dense_mul_add(const Ring& ring, const DenseSeries& a, const DenseSeries& b, DenseSeries& out, int limit);
DenseSeries dense_mul(const Ring& ring, const DenseSeries& a, const DenseSeries& b, int limit);
/// acc += s·x
void dense_add_scaled(const Ring& ring, DenseSeries& acc, const DenseSeries& x, Residue s);

}  // namespace tamefgl
