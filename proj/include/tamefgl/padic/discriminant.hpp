#pragma once

#include <vector>

#include "tamefgl/padic/ring.hpp"

namespace tamefgl {

/// Discriminant of c_0 + c_1 x + … + c_d x^d over Z/ℓ^N, computed as
/// (−1)^(d(d−1)/2) Res(f, f′) / c_d with the leading coefficient divided out
/// of the Sylvester matrix column, so a non-unit c_d loses no precision.
/// Throws DegreeMismatch when c_d is zero in the ring.
PadicCoeff poly_discriminant(const std::vector<PadicCoeff>& coeffs, int degree);

}  // namespace tamefgl
