#include "tamefgl/padic/linear_algebra.hpp"

#include <utility>

namespace tamefgl {

Residue determinant(const Matrix& input) {
  const Ring& R = input.ring;
  Matrix m = input;
  const int n = m.n;
  Residue det = R.reduce(1);
  bool negate = false;
  for (int k = 0; k < n; ++k) {
    int pi = -1, pj = -1, best = R.prec() + 1;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) {
        Valuation v = R.valuation(m.at(i, j));
        if (v.is_finite() && v.value() < best) {
          best = v.value();
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) return 0;  // remaining block vanishes mod ℓ^N
    if (pi != k) {
      for (int j = 0; j < n; ++j) std::swap(m.at(pi, j), m.at(k, j));
      negate = !negate;
    }
    if (pj != k) {
      for (int i = 0; i < n; ++i) std::swap(m.at(i, pj), m.at(i, k));
      negate = !negate;
    }
    const Residue pivot = m.at(k, k);
    const Residue pivot_unit_inv = R.inverse(R.divide_by_ell_power(pivot, best));
    det = R.mul(det, pivot);
    for (int i = k + 1; i < n; ++i) {
      Residue x = m.at(i, k);
      if (x == 0) continue;
      // x = ℓ^best·w, pivot = ℓ^best·u  ⇒  factor = w/u
      Residue factor = R.mul(R.divide_by_ell_power(x, best), pivot_unit_inv);
      for (int j = k; j < n; ++j) m.at(i, j) = R.sub(m.at(i, j), R.mul(factor, m.at(k, j)));
    }
  }
  return negate ? R.neg(det) : det;
}

Matrix adjugate(const Matrix& m) {
  const Ring& R = m.ring;
  const int n = m.n;
  Matrix adj(R, n);
  if (n == 1) {
    adj.at(0, 0) = R.reduce(1);
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix minor(R, n - 1);
      for (int r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(mr, mc++) = m.at(r, c);
        }
        ++mr;
      }
      Residue cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = R.neg(cof);
      adj.at(j, i) = cof;
    }
  return adj;
}

}  // namespace tamefgl
