#pragma once

#include <vector>

#include "tamefgl/padic/ring.hpp"

namespace tamefgl {

/// Square matrix over Z/ℓ^N, row-major.
struct Matrix {
  Ring ring;
  int n;
  std::vector<Residue> a;

  Matrix(const Ring& r, int size) : ring(r), n(size), a(static_cast<std::size_t>(size) * size, 0) {}
  Residue& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  Residue at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// Exact determinant over the chain ring Z/ℓ^N. Elimination pivots on an
/// entry of minimal valuation, which divides every other remaining entry,
/// so no precision is lost.
Residue determinant(const Matrix& m);

/// Transpose of the cofactor matrix: adj(M)·M = det(M)·I.
Matrix adjugate(const Matrix& m);

}  // namespace tamefgl
