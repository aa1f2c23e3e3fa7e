#include <doctest.h>

#include <set>

#include "tamefgl/curves/elliptic.hpp"
#include "tamefgl/curves/family.hpp"
#include "tamefgl/error.hpp"

using namespace tamefgl;

namespace {

std::vector<std::int64_t> deuring_coeffs(int ell) {
  auto h = deuring_poly(ell);
  std::vector<std::int64_t> out;
  for (int k = 0; k <= (ell - 1) / 2; ++k)
    out.push_back(static_cast<std::int64_t>(h.coeff(Exponent{static_cast<std::uint16_t>(k)})));
  return out;
}

std::array<Residue, 7> coeffs(const Ring& R, std::array<std::int64_t, 7> c) {
  std::array<Residue, 7> f{};
  for (std::size_t i = 0; i < 7; ++i) f[i] = R.from_int(c[i]);
  return f;
}

std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

const int kElls[] = {5, 7, 11, 13};

}  // namespace

TEST_CASE("Deuring polynomial examples") {
  CHECK(deuring_coeffs(5) == std::vector<std::int64_t>{1, 4, 1});
  CHECK(deuring_coeffs(7) == std::vector<std::int64_t>{1, 2, 2, 1});
  CHECK(deuring_coeffs(3) == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("quadratic factor of the Deuring polynomial") {
  CHECK(find_quadratic_factor(5).a == 1);
  CHECK(find_quadratic_factor(7).a == 5);
  CHECK_THROWS_AS(find_quadratic_factor(3), Error);
  for (int ell = 5; ell < 100; ell += 2) {
    bool prime = true;
    for (int d = 3; d * d <= ell; d += 2) prime = prime && ell % d != 0;
    if (!prime) continue;
    CAPTURE(ell);
    auto f = find_quadratic_factor(ell);
    CHECK(divides_deuring(ell, f.a));
    auto proof = supersingular_base_curve(ell);
    CHECK(proof.supersingular);
    CHECK(proof.points == ell + 1);
    CHECK(proof.lambda_verified);
    CHECK(mod((1 - f.a) - proof.curve.b * f.a, ell) == 0);
  }
}

TEST_CASE("base curves") {
  auto p5 = supersingular_base_curve(5);
  CHECK(p5.curve.b == 0);
  CHECK(p5.points == 6);
  auto p7 = supersingular_base_curve(7);
  CHECK(p7.curve.b == 2);
  CHECK(p7.points == 8);
  REQUIRE(p7.lambda.has_value());
  CHECK(*p7.lambda == Fp2Element(7, 2));
  CHECK_FALSE(p7.literal_lambda_is_root);
  // y² = x³ + x + 1 over F_5 is ordinary.
  CHECK(count_points(5, Weierstrass{0, 0, 0, 1, 1}) == 9);
  CHECK_FALSE(is_supersingular(5, Weierstrass{0, 0, 0, 1, 1}));
}

TEST_CASE("two-torsion of the base curve") {
  auto t = two_torsion({7, 2});
  std::set<std::uint64_t> xs;
  for (auto& x : t) {
    CHECK(x.in_base_field());
    xs.insert(x.c0());
  }
  CHECK(xs == std::set<std::uint64_t>{6, 4, 2});
  auto t5 = two_torsion({5, 0});
  bool outside = false;
  for (auto& x : t5) outside = outside || !x.in_base_field();
  CHECK(outside);
  CHECK_THROWS_AS(two_torsion({5, 3}), Error);
  for (int ell : kElls)
    for (std::int64_t b = 0; b < ell; ++b) {
      if (mod(b - 3, ell) == 0 || mod(b + 1, ell) == 0) continue;
      for (auto& x : two_torsion({ell, b})) {
        Fp2Element g = x * x * x + Fp2Element(static_cast<std::uint32_t>(ell), b) * x * x +
                       Fp2Element(static_cast<std::uint32_t>(ell), b) * x + Fp2Element(static_cast<std::uint32_t>(ell), 1);
        CHECK(g.is_zero());
      }
    }
}

TEST_CASE("gluing preconditions") {
  auto g7 = glue_preconditions({7, 2});
  CHECK(g7.pass());
  // b = 2 ≡ −3/2 mod 7, so j = 1728.
  CHECK(g7.j == 6);
  CHECK(g7.route == "enumeration");
  CHECK(g7.automorphisms == 4);
  auto g5 = glue_preconditions({5, 0});
  CHECK(g5.pass());
  CHECK(g5.route == "enumeration");
  CHECK(g5.j == 0);
  auto g11 = glue_preconditions({11, 1});
  CHECK(g11.route == "order-2");
}

TEST_CASE("first family examples") {
  Ring R5(5, 24);
  auto m = family_primera(R5, {5, 5, 10, 10});
  CHECK(m.curve.coeff_strings() == std::vector<std::string>{"6", "5", "10", "10", "10", "5", "6"});
  CHECK(m.certificate.verdict == Verdict::CertifiedTame);
  CHECK(*m.certificate.alpha == Rational(1, 24));
  CHECK(m.certificate.trail == std::vector<std::string>{trail::kFirstFamily});

  Ring R7(7, 19);
  auto m7 = family_primera(R7, {0, 0, 0, 0});
  CHECK(m7.curve.coeff_strings() == std::vector<std::string>{"1", "0", "2", "0", "2", "0", "1"});
  CHECK(*m7.certificate.alpha == Rational(1, 48));
  CHECK_THROWS_AS(family_primera(R5, {1, 0, 0, 0}), Error);
}

TEST_CASE("first family reduces to x^6 + b x^4 + b x^2 + 1") {
  for (int ell : kElls) {
    Ring R(ell, Ring::default_precision(ell));
    const std::int64_t b = supersingular_base_curve(ell).curve.b;
    std::uint64_t s = 7;
    for (int t = 0; t < 100; ++t) {
      std::array<std::int64_t, 4> d{};
      for (auto& x : d) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        x = ell * (static_cast<std::int64_t>(s >> 40) % 41 - 20);
      }
      auto m = family_primera(R, d);
      std::array<std::int64_t, 7> want{1, 0, b, 0, b, 0, 1};
      for (int i = 0; i < 7; ++i)
        CHECK(static_cast<std::int64_t>(m.curve.coeff(i) % static_cast<Residue>(ell)) == want[static_cast<std::size_t>(i)]);
      CHECK(m.certificate.verdict == Verdict::CertifiedTame);
      CHECK(validate_curve(m.curve).verdict == Verdict::CertifiedTame);
    }
  }
}

TEST_CASE("main family examples") {
  Ring R(5, 24);
  auto base = family_primera(R, {0, 0, 0, 0}).curve;
  auto m = family_main(base, {625, 0, -1250}, {0, 0, 0});
  CHECK(m.certificate.verdict == Verdict::CertifiedTame);
  CHECK(m.certificate.trail ==
        std::vector<std::string>{trail::kMainFamily, trail::kFirstFamily, trail::kRelaxedSymmetry});
  CHECK(m.curve.coeff_strings()[0] == "-624");
  CHECK(m.curve.coeff_strings()[2] == "1250");
  try {
    family_main(base, {125, 0, 0}, {0, 0, 0});
    FAIL("expected AsymmetryTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AsymmetryTooLarge);
  }
  auto same = family_main(base, {0, 0, 0}, {0, 0, 0});
  CHECK(same.curve.coeffs() == base.coeffs());
}

TEST_CASE("validate_curve examples") {
  Ring R7(7, 19);
  CHECK(validate_curve(R7, coeffs(R7, {1, 0, 2, 0, 2, 0, 1})).verdict == Verdict::CertifiedTame);
  Ring R5(5, 24);
  auto bad = validate_curve(R5, coeffs(R5, {1, 0, 0, 1, 0, 0, 1}));
  CHECK(bad.verdict == Verdict::Refused);
  REQUIRE(bad.first_failure());
  CHECK(bad.first_failure()->name == curve_check::kF3);
  CHECK(bad.first_failure()->witness.has_value());
  CHECK(validate_curve(R5, coeffs(R5, {1, 0, 0, 0, 0, 0, 1})).verdict == Verdict::CertifiedTame);
  Ring low(5, 4);
  CHECK(validate_curve(low, coeffs(low, {1, 0, 0, 0, 0, 0, 1})).verdict == Verdict::Error);
  // degenerate sextic
  auto deg = validate_curve(R5, coeffs(R5, {1, 0, 0, 0, 0, 0, 0}));
  CHECK(deg.verdict == Verdict::Refused);
  CHECK(deg.first_failure()->name == curve_check::kGoodReduction);
  CHECK_THROWS_AS(HyperellipticSextic(R5, coeffs(R5, {1, 0, 0, 0, 0, 0, 0})), Error);
}

TEST_CASE("random main-family members certify and round-trip") {
  for (int ell : kElls) {
    Ring R(ell, Ring::default_precision(ell));
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      CAPTURE(ell);
      CAPTURE(seed);
      auto m = random_family_main(R, seed);
      CHECK(m.certificate.verdict == Verdict::CertifiedTame);
      auto [R2, f2] = curve_from_json(curve_to_json(m.curve));
      CHECK(R2.ell() == ell);
      CHECK(f2 == m.curve.coeffs());
      auto again = certificate_from_json(certificate_to_json(m.certificate));
      CHECK(certificate_to_json(again) == certificate_to_json(m.certificate));
    }
  }
}

TEST_CASE("one broken congruence is named as the first failure") {
  const char* checks[] = {curve_check::kDeuring, curve_check::kF6,    curve_check::kF5,   curve_check::kF3,
                          curve_check::kSym60,   curve_check::kSym51, curve_check::kSym42};
  for (int ell : kElls) {
    Ring R(ell, Ring::default_precision(ell));
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      auto m = random_family_main(R, seed);
      for (const char* c : checks) {
        CAPTURE(ell);
        CAPTURE(c);
        std::array<Residue, 7> g{};
        REQUIRE(mutate_curve(R, m.curve.coeffs(), c, seed, g));
        auto cert = validate_curve(R, g);
        CHECK(cert.verdict == Verdict::Refused);
        REQUIRE(cert.first_failure());
        CHECK(cert.first_failure()->name == std::string(c));
        CHECK(cert.first_failure()->witness.has_value());
      }
    }
  }
}

TEST_CASE("curve JSON") {
  Ring R(5, 24);
  auto m = family_primera(R, {5, 5, 10, 10});
  auto j = curve_to_json(m.curve);
  CHECK(j["schema"] == kCurveSchema);
  nlohmann::json k = {{"ell", 5}, {"coeffs", {1, 0, 0, 0, 0, 0, 1}}};
  auto [R2, f] = curve_from_json(k);
  CHECK(R2.prec() == Ring::default_precision(5));
  CHECK(f[6] == 1);
  CHECK_THROWS_AS(curve_from_json(nlohmann::json{{"ell", 5}, {"coeffs", {1, 2}}}), Error);
  CHECK_THROWS_AS(curve_from_json(nlohmann::json::parse("{\"coeffs\":[]}")), Error);
}
