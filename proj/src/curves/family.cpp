#include "tamefgl/curves/family.hpp"

#include <random>
#include <sstream>

#include "tamefgl/error.hpp"
#include "tamefgl/padic/discriminant.hpp"

namespace tamefgl {

namespace {

Rational alpha_for(int ell) { return Rational(1, static_cast<std::int64_t>(ell) * ell - 1); }

std::int64_t mod_ell(const Ring& R, Residue x) {
  return static_cast<std::int64_t>(R.reduce(x) % static_cast<Residue>(R.ell()));
}

int val(const Ring& R, Residue x) { return R.reduce(x) == 0 ? R.prec() : R.valuation(x).value(); }

// b ≡ f₄ mod ℓ and a = 1/(1 + b) when x² − x + a divides H_ℓ.
std::optional<std::int64_t> deuring_a_for(int ell, std::int64_t b) {
  if ((b + 1) % ell == 0) return std::nullopt;
  FpElement a = FpElement(static_cast<std::uint32_t>(ell), 1) / FpElement(static_cast<std::uint32_t>(ell), b + 1);
  auto av = static_cast<std::int64_t>(a.value());
  if ((1 - 4 * av) % ell == 0) return std::nullopt;
  if (!divides_deuring(ell, av)) return std::nullopt;
  return av;
}

std::string subject_of(const Ring& R, const std::array<Residue, 7>& f) {
  std::ostringstream os;
  os << "y^2 = ";
  bool first = true;
  for (int i = 6; i >= 0; --i) {
    std::string c = R.to_signed_decimal(f[static_cast<std::size_t>(i)]);
    if (c == "0") continue;
    if (!first && c[0] != '-') os << "+";
    first = false;
    if (i == 0 || (c != "1" && c != "-1")) os << c;
    else if (c == "-1") os << "-";
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  os << " over Z/" << R.ell() << "^" << R.prec();
  return os.str();
}

}  // namespace

Residue sextic_discriminant(const Ring& ring, const std::array<Residue, 7>& f) {
  if (ring.reduce(f[6]) == 0) return 0;
  std::vector<PadicCoeff> c;
  for (Residue x : f) c.emplace_back(ring, x);
  return poly_discriminant(c, 6).residue();
}

bool good_reduction(const Ring& ring, const std::array<Residue, 7>& f) {
  return ring.is_unit(f[6]) && ring.is_unit(sextic_discriminant(ring, f));
}

HyperellipticSextic::HyperellipticSextic(const Ring& ring, std::array<Residue, 7> coeffs) : ring_(ring), f_(coeffs) {
  for (auto& x : f_) x = ring_.reduce(x);
  if (!good_reduction(ring_, f_))
    throw Error(ErrorCode::BadReduction, "leading coefficient or discriminant is not a unit mod ℓ");
}

std::vector<std::string> HyperellipticSextic::coeff_strings() const {
  std::vector<std::string> out;
  for (Residue x : f_) out.push_back(ring_.to_signed_decimal(x));
  return out;
}

std::string HyperellipticSextic::to_string() const { return subject_of(ring_, f_); }

TameCertificate validate_curve(const HyperellipticSextic& c) { return validate_curve(c.ring(), c.coeffs()); }

TameCertificate validate_curve(const Ring& R, const std::array<Residue, 7>& f_in) {
  std::array<Residue, 7> f = f_in;
  for (auto& x : f) x = R.reduce(x);
  const int ell = R.ell();
  TameCertificate cert;
  cert.subject = subject_of(R, f);
  cert.provenance = "validate_curve";
  cert.ell = ell;
  if (R.prec() < 5) {
    cert.fail("precision " + std::to_string(R.prec()) + " is below 5; (l^4) congruences need one guard digit");
    return cert;
  }
  if (ell <= 3) {
    cert.fail("l must exceed 3");
    return cert;
  }
  namespace cc = curve_check;
  {
    std::optional<std::string> w;
    bool ok = false;
    try {
      ok = good_reduction(R, f);
      if (!ok)
        w = R.is_unit(f[6]) ? "discriminant " + R.to_signed_decimal(sextic_discriminant(R, f)) + " is not a unit"
                            : "f6 = " + R.to_signed_decimal(f[6]) + " is not a unit";
    } catch (const Error& e) {
      w = e.what();
    }
    cert.check(cc::kGoodReduction, "genus-2:good-reduction", ok, w);
  }
  const std::int64_t b = mod_ell(R, f[4]);
  {
    auto a = deuring_a_for(ell, b);
    std::optional<std::string> w;
    if (!a) w = "b = " + std::to_string(b) + " mod l admits no factor x^2 - x + a with b = (1-a)/a";
    cert.check(cc::kDeuring, "main-family:deuring-factor", a.has_value(), w);
  }
  auto congruence = [&](const char* name, const char* anchor, Residue x, int need) {
    int v = val(R, x);
    std::optional<std::string> w;
    if (v < need) w = "valuation " + std::to_string(v) + " (value " + R.to_signed_decimal(x) + ")";
    cert.check(name, anchor, v >= need, w);
  };
  congruence(cc::kF6, "main-family:f6-congruence", R.sub(f[6], 1), 1);
  congruence(cc::kF5, "main-family:f5-congruence", f[5], 1);
  congruence(cc::kF3, "main-family:f3-congruence", f[3], 1);
  congruence(cc::kSym60, "main-family:l4-symmetry", R.sub(f[6], f[0]), 4);
  congruence(cc::kSym51, "main-family:l4-symmetry", R.sub(f[5], f[1]), 4);
  congruence(cc::kSym42, "main-family:l4-symmetry", R.sub(f[4], f[2]), 4);
  BaseEllipticB base{ell, b};
  {
    std::optional<std::string> w;
    bool ok = false;
    try {
      auto n = count_points(ell, base.weierstrass());
      ok = n == ell + 1;
      if (!ok) w = "#E(F_l) = " + std::to_string(n) + " for b = " + std::to_string(b);
    } catch (const Error& e) {
      w = e.what();
    }
    cert.check(cc::kSupersingular, "first-family:supersingular-base", ok, w);
  }
  {
    std::optional<std::string> w;
    bool ok = false;
    try {
      auto g = glue_preconditions(base);
      ok = g.pass();
      if (!ok) w = g.psi_induced ? "the swap of P2, P3 comes from an automorphism" : "swap is not Galois compatible";
      else cert.diagnostics.push_back("gluing route: " + g.route + ", " + std::to_string(g.automorphisms) +
                                      " automorphisms, j = " + std::to_string(g.j));
    } catch (const Error& e) {
      w = e.what();
    }
    cert.check(cc::kGluing, "first-family:gluing", ok, w);
  }
  cert.conclude(alpha_for(ell));
  if (cert.verdict == Verdict::CertifiedTame)
    cert.trail = {trail::kMainFamily, trail::kFirstFamily, trail::kRelaxedSymmetry};
  return cert;
}

FamilyMember family_primera(const Ring& R, const std::array<std::int64_t, 4>& offsets) {
  const int ell = R.ell();
  for (std::size_t i = 0; i < 4; ++i)
    if (offsets[i] % ell != 0)
      throw Error(ErrorCode::OffsetNotDivisible, "offset d" + std::to_string(i) + " = " + std::to_string(offsets[i]) +
                                                     " is not in (l)");
  auto proof = supersingular_base_curve(ell);
  const std::int64_t b = proof.curve.b;
  std::array<Residue, 7> f{};
  f[0] = f[6] = R.from_int(1 + offsets[0]);
  f[1] = f[5] = R.from_int(offsets[1]);
  f[2] = f[4] = R.add(R.from_int(b), R.from_int(offsets[2]));
  f[3] = R.from_int(offsets[3]);
  HyperellipticSextic curve(R, f);

  TameCertificate cert;
  cert.subject = curve.to_string();
  cert.provenance = "family_primera";
  cert.ell = ell;
  cert.check("Deuring factor x^2 - x + a of H_l", "first-family:deuring-factor", true,
             std::nullopt);
  cert.diagnostics.push_back("a = " + std::to_string(proof.factor.a) + ", b = (1-a)/a = " + std::to_string(b));
  cert.check("base curve supersingular by point count", "first-family:supersingular-base", proof.supersingular,
             proof.supersingular ? std::nullopt
                                 : std::optional<std::string>("#E(F_l) = " + std::to_string(proof.points)));
  auto glue = glue_preconditions(proof.curve);
  cert.check("gluing preconditions", "first-family:gluing", glue.pass(),
             glue.pass() ? std::nullopt : std::optional<std::string>("swap of P2, P3 is induced or not Galois"));
  cert.check("f0 - 1, f1, f2 - (1-a)/a, f3 in (l)", "first-family:congruences", true, std::nullopt);
  cert.check("degree 6 with unit discriminant", "genus-2:good-reduction", true, std::nullopt);
  cert.conclude(alpha_for(ell));
  if (cert.verdict == Verdict::CertifiedTame) cert.trail = {trail::kFirstFamily};
  return {curve, cert};
}

FamilyMember family_main(const HyperellipticSextic& base, const std::array<std::int64_t, 3>& asym,
                         const std::array<std::int64_t, 3>& free) {
  const Ring& R = base.ring();
  const int ell = R.ell();
  const Residue l4 = R.ell_power(4);
  static const char* kAsymNames[] = {"e60", "e51", "e42"};
  for (std::size_t i = 0; i < 3; ++i) {
    Residue e = R.from_int(asym[i]);
    if (e != 0 && R.valuation(e).value() < 4)
      throw Error(ErrorCode::AsymmetryTooLarge,
                  std::string(kAsymNames[i]) + " = " + std::to_string(asym[i]) + " is not in (l^4)");
    if (free[i] % ell != 0)
      throw Error(ErrorCode::OffsetNotDivisible, "free shift g" + std::to_string(i) + " is not in (l)");
  }
  (void)l4;
  std::array<Residue, 7> f = base.coeffs();
  f[6] = R.add(f[6], R.from_int(free[0]));
  f[5] = R.add(f[5], R.from_int(free[1]));
  f[4] = R.add(f[4], R.from_int(free[2]));
  f[0] = R.sub(f[6], R.from_int(asym[0]));
  f[1] = R.sub(f[5], R.from_int(asym[1]));
  f[2] = R.sub(f[4], R.from_int(asym[2]));
  HyperellipticSextic curve(R, f);
  auto cert = validate_curve(curve);
  cert.provenance = "family_main";
  return {curve, cert};
}

FamilyMember random_family_main(const Ring& R, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto ell = static_cast<std::int64_t>(R.ell());
  auto draw = [&](std::int64_t scale, std::int64_t spread) {
    return scale * (static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * spread + 1)) - spread);
  };
  const std::int64_t l4 = ell * ell * ell * ell;
  std::array<std::int64_t, 4> d{draw(ell, ell), draw(ell, ell), draw(ell, ell), draw(ell, ell)};
  auto base = family_primera(R, d);
  std::array<std::int64_t, 3> e{draw(l4, ell), draw(l4, ell), draw(l4, ell)};
  std::array<std::int64_t, 3> g{draw(ell, ell), draw(ell, ell), draw(ell, ell)};
  return family_main(base.curve, e, g);
}

bool mutate_curve(const Ring& R, const std::array<Residue, 7>& f, const std::string& check, std::uint64_t seed,
                  std::array<Residue, 7>& out) {
  namespace cc = curve_check;
  const int ell = R.ell();
  std::mt19937_64 rng(seed);
  const Residue l3 = R.ell_power(3);
  // Units tried in a seeded order.
  std::vector<std::int64_t> units;
  for (std::int64_t u = 1; u < ell; ++u) units.push_back(u);
  std::shuffle(units.begin(), units.end(), rng);
  for (std::int64_t u : units) {
    out = f;
    Residue U = R.from_int(u);
    if (check == cc::kF6) {
      out[6] = R.add(out[6], U);
      out[0] = R.add(out[0], U);
    } else if (check == cc::kF5) {
      out[5] = R.add(out[5], U);
      out[1] = R.add(out[1], U);
    } else if (check == cc::kF3) {
      out[3] = R.add(out[3], U);
    } else if (check == cc::kDeuring) {
      out[4] = R.add(out[4], U);
      out[2] = R.add(out[2], U);
      if (deuring_a_for(ell, mod_ell(R, out[4]))) continue;
    } else if (check == cc::kSym60) {
      out[0] = R.add(out[0], R.mul(l3, U));
    } else if (check == cc::kSym51) {
      out[1] = R.add(out[1], R.mul(l3, U));
    } else if (check == cc::kSym42) {
      out[2] = R.add(out[2], R.mul(l3, U));
    } else {
      throw Error(ErrorCode::InvalidArgument, "no mutation defined for '" + check + "'");
    }
    if (good_reduction(R, out)) return true;
  }
  return false;
}

nlohmann::json curve_to_json(const HyperellipticSextic& c) {
  return {{"schema", kCurveSchema}, {"ell", c.ell()}, {"prec", c.ring().prec()}, {"coeffs", c.coeff_strings()}};
}

std::pair<Ring, std::array<Residue, 7>> curve_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("schema") && j.at("schema") != kCurveSchema)
      throw Error(ErrorCode::ParseError, "unexpected curve schema");
    int ell = j.at("ell").get<int>();
    int prec = j.contains("prec") ? j.at("prec").get<int>() : Ring::default_precision(ell);
    Ring R(ell, prec);
    const auto& c = j.at("coeffs");
    if (!c.is_array() || c.size() != 7) throw Error(ErrorCode::ParseError, "coeffs must list f0..f6");
    std::array<Residue, 7> f{};
    for (std::size_t i = 0; i < 7; ++i)
      f[i] = c[i].is_string() ? R.from_decimal(c[i].get<std::string>()) : R.from_int(c[i].get<std::int64_t>());
    return {R, f};
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

}  // namespace tamefgl
