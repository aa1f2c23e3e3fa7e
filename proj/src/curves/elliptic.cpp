#include "tamefgl/curves/elliptic.hpp"

#include <algorithm>

#include "tamefgl/error.hpp"
#include "tamefgl/padic/discriminant.hpp"

namespace tamefgl {

namespace {

constexpr int kMaxPointCountEll = 10000;

void require_odd_prime(int ell) {
  if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell)))
    throw Error(ErrorCode::NotPrime, std::to_string(ell) + " is not prime");
  if (ell == 2) throw Error(ErrorCode::InvalidArgument, "ℓ must be odd");
}

FpElement fp(int ell, std::int64_t v) { return FpElement(static_cast<std::uint32_t>(ell), v); }

std::int64_t canon(int ell, std::int64_t v) { return ((v % ell) + ell) % ell; }

// Coefficients of H_ℓ mod ℓ, ascending.
std::vector<std::int64_t> deuring_coeffs(int ell) {
  const int m = (ell - 1) / 2;
  std::vector<std::int64_t> c;
  FpElement binom = fp(ell, 1);
  for (int k = 0; k <= m; ++k) {
    if (k > 0) binom = binom * fp(ell, m - k + 1) / fp(ell, k);
    c.push_back(static_cast<std::int64_t>((binom * binom).value()));
  }
  return c;
}

Ring field(int ell) { return Ring(ell, 1); }

}  // namespace

TruncatedSeries deuring_poly(int ell) {
  require_odd_prime(ell);
  auto c = deuring_coeffs(ell);
  Ring k = field(ell);
  std::vector<std::pair<Exponent, Residue>> raw;
  for (std::size_t i = 0; i < c.size(); ++i)
    raw.push_back({Exponent{static_cast<std::uint16_t>(i)}, k.from_int(c[i])});
  return TruncatedSeries::from_terms(k, 1, static_cast<int>(c.size()) - 1, std::move(raw));
}

bool divides_deuring(int ell, std::int64_t a) {
  require_odd_prime(ell);
  // Remainder of H_ℓ modulo x² − x + a, i.e. with x² ↦ x − a.
  auto c = deuring_coeffs(ell);
  std::vector<FpElement> r;
  for (auto v : c) r.push_back(fp(ell, v));
  FpElement av = fp(ell, a);
  for (std::size_t d = r.size(); d-- > 2;) {
    FpElement top = r[d];
    r[d] = fp(ell, 0);
    r[d - 1] = r[d - 1] + top;
    r[d - 2] = r[d - 2] - top * av;
  }
  return r[0].is_zero() && (r.size() < 2 || r[1].is_zero());
}

DeuringFactor find_quadratic_factor(int ell) {
  require_odd_prime(ell);
  if (ell <= 3) throw Error(ErrorCode::EllTooSmall, "no quadratic Deuring factor is sought for ℓ ≤ 3");
  for (std::int64_t a = 1; a < ell; ++a)
    if (divides_deuring(ell, a)) return {ell, a};
  throw Error(ErrorCode::NotFound, "no factor x² − x + a of H_" + std::to_string(ell) + " found");
}

std::int64_t count_points(int ell, const Weierstrass& w) {
  require_odd_prime(ell);
  if (ell < 5 || ell > kMaxPointCountEll)
    throw Error(ErrorCode::InvalidArgument, "point counting supports 5 ≤ ℓ ≤ " + std::to_string(kMaxPointCountEll));
  if (weierstrass_discriminant(field(ell), w) == 0) throw Error(ErrorCode::SingularCurve, "discriminant vanishes mod ℓ");
  // (2y + a1 x + a3)² = 4x³ + b2 x² + 2 b4 x + b6.
  FpElement a1 = fp(ell, w.a1), a2 = fp(ell, w.a2), a3 = fp(ell, w.a3), a4 = fp(ell, w.a4), a6 = fp(ell, w.a6);
  FpElement b2 = a1 * a1 + fp(ell, 4) * a2, b4 = fp(ell, 2) * a4 + a1 * a3, b6 = a3 * a3 + fp(ell, 4) * a6;
  std::int64_t n = 1;
  for (std::int64_t x = 0; x < ell; ++x) {
    FpElement X = fp(ell, x);
    FpElement rhs = ((fp(ell, 4) * X + b2) * X + fp(ell, 2) * b4) * X + b6;
    n += 1 + rhs.legendre();
  }
  return n;
}

bool is_supersingular(int ell, const Weierstrass& w) { return count_points(ell, w) == ell + 1; }

std::int64_t j_invariant(int ell, const Weierstrass& w) {
  require_odd_prime(ell);
  Ring k = field(ell);
  Residue disc = weierstrass_discriminant(k, w);
  if (disc == 0) throw Error(ErrorCode::SingularCurve, "discriminant vanishes mod ℓ");
  FpElement a1 = fp(ell, w.a1), a2 = fp(ell, w.a2), a3 = fp(ell, w.a3), a4 = fp(ell, w.a4);
  FpElement b2 = a1 * a1 + fp(ell, 4) * a2, b4 = fp(ell, 2) * a4 + a1 * a3;
  FpElement c4 = b2 * b2 - fp(ell, 24) * b4;
  FpElement j = c4 * c4 * c4 / fp(ell, static_cast<std::int64_t>(disc));
  return static_cast<std::int64_t>(j.value());
}

Fp2Element deuring_value(int ell, const Fp2Element& x) {
  auto c = deuring_coeffs(ell);
  Fp2Element acc(static_cast<std::uint32_t>(ell), 0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + Fp2Element(static_cast<std::uint32_t>(ell), c[i]);
  return acc;
}

BaseCurveProof supersingular_base_curve(int ell) {
  BaseCurveProof p;
  p.factor = find_quadratic_factor(ell);
  const auto u = static_cast<std::uint32_t>(ell);
  FpElement a = fp(ell, p.factor.a);
  p.curve = {ell, static_cast<std::int64_t>(((fp(ell, 1) - a) / a).value())};

  Ring k = field(ell);
  std::vector<PadicCoeff> g;
  for (std::int64_t c : {std::int64_t{1}, p.curve.b, p.curve.b, std::int64_t{1}}) g.push_back(PadicCoeff::from_int(k, c));
  p.delta_g = static_cast<std::int64_t>(poly_discriminant(g, 3).residue());
  if (p.delta_g == 0) throw Error(ErrorCode::SingularCurve, "base cubic has a repeated root");

  Fp2Element root = sqrt_into_fp2(fp(ell, 1) - fp(ell, 4) * a);
  Fp2Element half = Fp2Element(fp(ell, 2).inverse());
  p.lambda = (Fp2Element(u, 1) + root) * half;
  p.lambda_verified = deuring_value(ell, *p.lambda).is_zero();
  p.literal_lambda_is_root = deuring_value(ell, half + root).is_zero();

  p.points = count_points(ell, p.curve.weierstrass());
  p.supersingular = p.points == ell + 1;
  return p;
}

std::array<Fp2Element, 3> two_torsion(const BaseEllipticB& e) {
  require_odd_prime(e.ell);
  std::int64_t b = canon(e.ell, e.b);
  if (b == canon(e.ell, 3) || b == canon(e.ell, -1))
    throw Error(ErrorCode::SingularCurve, "b ≡ 3 or −1 gives a repeated 2-torsion root");
  const auto u = static_cast<std::uint32_t>(e.ell);
  FpElement B = fp(e.ell, b);
  Fp2Element s = sqrt_into_fp2(B * B - fp(e.ell, 2) * B - fp(e.ell, 3));
  Fp2Element half = Fp2Element(fp(e.ell, 2).inverse());
  Fp2Element base = Fp2Element(fp(e.ell, 1) - B);
  return {Fp2Element(u, e.ell - 1), (base + s) * half, (base - s) * half};
}

GlueReport glue_preconditions(const BaseEllipticB& e) {
  auto P = two_torsion(e);
  const int ell = e.ell;
  const auto u = static_cast<std::uint32_t>(ell);
  GlueReport rep;

  // Frobenius either fixes P₂, P₃ or swaps them; both commute with ψ.
  auto frob = [](const Fp2Element& x) { return x.frobenius(); };
  bool p1_fixed = frob(P[0]) == P[0];
  bool pair_stable = (frob(P[1]) == P[1] && frob(P[2]) == P[2]) || (frob(P[1]) == P[2] && frob(P[2]) == P[1]);
  rep.galois_compatible = p1_fixed && pair_stable;

  rep.j = j_invariant(ell, e.weierstrass());
  const std::int64_t j1728 = 1728 % ell;
  rep.route = (rep.j == 0 || rep.j == j1728) ? "enumeration" : "order-2";

  // Automorphisms (x, y) ↦ (u²x + r, u³y) of y² = g(x): u ∈ μ₁₂ ⊂ F_ℓ²*, r
  // sending some root to P₁.
  const std::uint64_t order = static_cast<std::uint64_t>(ell) * ell - 1;
  std::optional<Fp2Element> zeta;
  for (std::int64_t c0 = 0; c0 < ell && !zeta; ++c0)
    for (std::int64_t c1 = 1; c1 < ell && !zeta; ++c1) {
      Fp2Element w = Fp2Element(u, c0, c1).pow(order / 12);
      Fp2Element one(u, 1);
      if (!(w.pow(6) == one) && !(w.pow(4) == one)) zeta = w;
    }
  if (!zeta) throw Error(ErrorCode::NotFound, "no primitive 12th root of unity in F_ℓ²");
  FpElement bb = fp(ell, e.b);
  Fp2Element B(bb), one(u, 1), three(u, 3), two(u, 2);
  Fp2Element un = one;
  for (int i = 0; i < 12; ++i, un = un * *zeta) {
    Fp2Element al = un * un;
    Fp2Element u6 = al * al * al;
    for (int k = 0; k < 3; ++k) {
      Fp2Element r = P[0] - al * P[static_cast<std::size_t>(k)];
      // g(αx + r) = u⁶ g(x) coefficientwise.
      Fp2Element c3 = al * al * al;
      Fp2Element c2 = al * al * (three * r + B);
      Fp2Element c1 = al * (three * r * r + two * B * r + B);
      Fp2Element c0 = r * r * r + B * r * r + B * r + one;
      if (!(c3 == u6 && c2 == u6 * B && c1 == u6 * B && c0 == u6)) continue;
      ++rep.automorphisms;
      auto image = [&](const Fp2Element& x) { return al * x + r; };
      if (image(P[0]) == P[0] && image(P[1]) == P[2] && image(P[2]) == P[1]) rep.psi_induced = true;
    }
  }
  rep.supersingular = is_supersingular(ell, e.weierstrass());
  rep.r_equals_2 = rep.supersingular && rep.pass();
  return rep;
}

}  // namespace tamefgl
