#include "tamefgl/padic/discriminant.hpp"

#include <string>

#include "tamefgl/error.hpp"
#include "tamefgl/padic/linear_algebra.hpp"

namespace tamefgl {

PadicCoeff poly_discriminant(const std::vector<PadicCoeff>& coeffs, int degree) {
  if (degree < 1 || static_cast<int>(coeffs.size()) != degree + 1)
    throw Error(ErrorCode::DegreeMismatch,
                "expected " + std::to_string(degree + 1) + " coefficients");
  const Ring R = coeffs.front().ring();
  for (const auto& c : coeffs)
    if (!(c.ring() == R)) throw Error(ErrorCode::RingMismatch, "mixed coefficient rings");
  if (coeffs[degree].is_zero())
    throw Error(ErrorCode::DegreeMismatch, "leading coefficient vanishes in " + R.describe());
  if (degree == 1) return PadicCoeff(R, R.reduce(1));

  const int d = degree;
  const int size = 2 * d - 1;
  Matrix syl(R, size);
  // d − 1 rows of f, then d rows of f′; coefficients from the top degree down.
  for (int r = 0; r < d - 1; ++r)
    for (int k = 0; k <= d; ++k) syl.at(r, r + k) = coeffs[d - k].residue();
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) {
      int power = d - k;  // derivative of c_power x^power
      syl.at(d - 1 + r, r + k) = R.mul(R.from_int(power), coeffs[power].residue());
    }
  // Column 0 holds c_d (row 0) and d·c_d (row d−1) only; divide c_d out.
  syl.at(0, 0) = R.reduce(1);
  syl.at(d - 1, 0) = R.from_int(d);

  Residue det = determinant(syl);
  if ((d * (d - 1) / 2) % 2 == 1) det = R.neg(det);
  return PadicCoeff(R, det);
}

}  // namespace tamefgl
