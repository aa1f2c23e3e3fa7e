#include <doctest.h>

#include "gen.hpp"
#include "tamefgl/error.hpp"
#include "tamefgl/fgl/law.hpp"

using namespace tamefgl;

namespace {

TruncatedSeries var(const Ring& R, int n, int cap, int k) { return TruncatedSeries::variable(R, n, cap, k); }

Exponent ex(std::initializer_list<int> xs) {
  Exponent e{};
  std::size_t i = 0;
  for (int x : xs) e[i++] = static_cast<std::uint16_t>(x);
  return e;
}

FormalGroupLaw supersingular5(int cap) { return elliptic_fgl(Ring(5, 12), Weierstrass::b_form(0), cap); }

// (1+Z)^m − 1 truncated.
TruncatedSeries binomial_oracle(const Ring& R, int m, int cap) {
  std::vector<std::pair<Exponent, Residue>> raw;
  Residue c = 1;
  for (int k = 1; k <= m && k <= cap; ++k) {
    c = R.mul(c, R.from_int(m - k + 1));
    // exact binomial via running product divided at the end (m ≤ 20 keeps this in range)
    std::int64_t b = 1;
    for (int i = 1; i <= k; ++i) b = b * (m - k + i) / i;
    raw.push_back({Exponent{static_cast<std::uint16_t>(k)}, R.from_int(b)});
  }
  return TruncatedSeries::from_terms(R, 1, cap, std::move(raw));
}

std::vector<TruncatedSeries> linear_map(const Ring& R, int cap, std::int64_t a, std::int64_t b, std::int64_t c,
                                        std::int64_t d) {
  auto Z1 = var(R, 2, cap, 0), Z2 = var(R, 2, cap, 1);
  return {Z1.scaled(R.from_int(a)) + Z2.scaled(R.from_int(b)), Z1.scaled(R.from_int(c)) + Z2.scaled(R.from_int(d))};
}

}  // namespace

TEST_CASE("axiom check examples") {
  Ring R(5, 10);
  CHECK(check_axioms(additive_fgl(R, 10)).all_pass());
  CHECK(check_axioms(multiplicative_fgl(R, 10)).all_pass());
  auto X = var(R, 2, 10, 0), Y = var(R, 2, 10, 1);
  FormalGroupLaw bad(1, {X + Y + X * X}, "test");
  auto rep = check_axioms(bad);
  CHECK_FALSE(rep.unit.pass);
  CHECK(rep.unit.witness == "X^2");
  CHECK_FALSE(rep.commutativity.pass);
  CHECK_FALSE(rep.associativity.pass);
  CHECK(rep.linear_term.pass);
  FormalGroupLaw bad_linear(1, {X + Y.scaled(2)}, "test");
  CHECK(check_axioms(bad_linear).linear_term.witness == "Y");
}

TEST_CASE("multiplication by m for the multiplicative law matches (1+Z)^m - 1") {
  Ring R(5, 12);
  auto F = multiplicative_fgl(R, 12);
  auto Z = var(R, 1, 12, 0);
  CHECK(mul_by_m(F, 3).maps[0].to_string() == "3*Z1 + 3*Z1^2 + Z1^3");
  CHECK(mul_by_m(F, 1).maps[0] == Z);
  CHECK(mul_by_m(F, 0).maps[0].is_zero());
  for (int m = 0; m <= 15; ++m) CHECK(mul_by_m(F, m).maps[0] == binomial_oracle(R, m, 12));
  CHECK_THROWS_AS(mul_by_m(F, -1), Error);
}

TEST_CASE("elliptic law agrees with the invariant-differential oracle") {
  // a = (1, −1, 1, 2, 3); coefficients from an exact rational log/exp computation.
  const int table[][3] = {{1, 0, 1},   {0, 1, 1},   {1, 1, -1},  {2, 1, 1},   {1, 2, 1},   {3, 1, -2},
                          {2, 2, -4},  {1, 3, -2},  {4, 1, -6},  {3, 2, -8},  {2, 3, -8},  {1, 4, -6},
                          {5, 1, -4},  {4, 2, -3},  {3, 3, -4},  {2, 4, -3},  {1, 5, -4},  {6, 1, -9},
                          {5, 2, -29}, {4, 3, -49}, {3, 4, -49}, {2, 5, -29}, {1, 6, -9}};
  for (auto [ell, prec] : {std::pair{5, 10}, std::pair{7, 8}, std::pair{13, 6}}) {
    Ring R(ell, prec);
    auto F = elliptic_fgl(R, Weierstrass{1, -1, 1, 2, 3}, 7);
    std::vector<std::pair<Exponent, Residue>> raw;
    for (const auto& row : table) raw.push_back({ex({row[0], row[1]}), R.from_int(row[2])});
    CHECK(F.law(0) == TruncatedSeries::from_terms(R, 2, 7, raw));
  }
}

TEST_CASE("elliptic law low-degree shape and axioms") {
  Ring R(7, 12);
  for (auto w : {Weierstrass{1, 2, 3, 4, 5}, Weierstrass{0, 0, 0, 1, 1}, Weierstrass::b_form(2)}) {
    auto F = elliptic_fgl(R, w, 12);
    const auto& f = F.law(0);
    CHECK(f.coeff(ex({1, 1})) == R.from_int(-w.a1));
    CHECK(f.coeff(ex({2, 1})) == R.from_int(-w.a2));
    CHECK(f.coeff(ex({1, 2})) == R.from_int(-w.a2));
    CHECK(f.coeff(ex({3, 1})) == R.from_int(-2 * w.a3));
    CHECK(f.coeff(ex({2, 2})) == R.from_int(w.a1 * w.a2 - 3 * w.a3));
    CHECK(check_axioms(F).all_pass());
  }
  CHECK_THROWS_AS(elliptic_fgl(R, Weierstrass::b_form(3), 10), Error);
}

TEST_CASE("reduced [l] of supersingular and ordinary elliptic laws") {
  Ring R(5, 24);
  auto ss = mul_by_m(elliptic_fgl(R, Weierstrass{0, 0, 0, 0, 1}, 27), 5);
  CHECK(reduce_mod_ell(ss.maps[0]).min_degree() == 25);
  CHECK(r_exponent(ss) == 2);
  auto ord = mul_by_m(elliptic_fgl(R, Weierstrass{0, 0, 0, 1, 1}, 27), 5);
  CHECK(reduce_mod_ell(ord.maps[0]).min_degree() == 5);
  CHECK(r_exponent(ord) == 1);
}

TEST_CASE("r exponent examples and errors") {
  Ring R(5, 12);
  CHECK(r_exponent(mul_by_m(multiplicative_fgl(R, 27), 5)) == 1);
  CHECK_THROWS_AS(r_exponent(mul_by_m(additive_fgl(R, 27), 5)), Error);
  try {
    r_exponent(mul_by_m(additive_fgl(R, 27), 5));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroSeries);
  }
  auto Z = var(R, 1, 10, 0);
  std::vector<TruncatedSeries> lin{Z};
  try {
    r_exponent(lin);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroExponent);
  }
  std::vector<TruncatedSeries> six{TruncatedSeries::monomial(R, 1, 10, Exponent{6}, 1)};
  CHECK_THROWS_AS(r_exponent(six), Error);
  std::vector<TruncatedSeries> mixed{TruncatedSeries::monomial(R, 1, 30, Exponent{5}, 1) +
                                     TruncatedSeries::monomial(R, 1, 30, Exponent{7}, 1)};
  CHECK_THROWS_AS(r_exponent(mixed), Error);
}

TEST_CASE("height examples") {
  Ring R(5, 12);
  auto hm = height(multiplicative_fgl(R, 27));
  CHECK_FALSE(hm.infinite);
  CHECK(hm.h == 1);
  CHECK(height(additive_fgl(R, 27)).infinite);
  auto E = supersingular5(27);
  auto hp = height(product_fgl(E, E));
  CHECK(hp.h == 4);
  CHECK(hp.r == 2);
  CHECK(hp.s == 0);
  CHECK(height(E).h == 2);
}

TEST_CASE("height is additive over products") {
  for (int ell : {5, 7}) {
    Ring R(ell, 10);
    int cap = ell * ell + 2;
    std::vector<FormalGroupLaw> laws{multiplicative_fgl(R, cap), elliptic_fgl(R, Weierstrass{0, 0, 0, 1, 1}, cap),
                                     additive_fgl(R, cap)};
    if (ell == 5) laws.push_back(elliptic_fgl(R, Weierstrass::b_form(0), cap));
    if (ell == 7) laws.push_back(elliptic_fgl(R, Weierstrass::b_form(2), cap));
    for (const auto& f : laws)
      for (const auto& g : laws) {
        auto hf = height(f), hg = height(g), hp = height(product_fgl(f, g));
        if (hf.infinite || hg.infinite) {
          CHECK(hp.infinite);
        } else {
          CHECK(hp.h == hf.h + hg.h);
        }
      }
  }
}

TEST_CASE("product law examples") {
  Ring R(5, 10);
  auto A = product_fgl(additive_fgl(R, 6), additive_fgl(R, 6));
  CHECK(A.law(0).to_string() == "Z1 + Z3");
  CHECK(A.law(1).to_string() == "Z2 + Z4");
  auto M = product_fgl(multiplicative_fgl(R, 6), multiplicative_fgl(R, 6));
  auto two = mul_by_m(M, 2);
  CHECK(two.maps[0].to_string() == "2*Z1 + Z1^2");
  CHECK(two.maps[1].to_string() == "2*Z2 + Z2^2");
  auto E = supersingular5(10);
  CHECK(is_symmetric(product_fgl(E, E)));
  auto O = elliptic_fgl(Ring(5, 12), Weierstrass{0, 0, 0, 1, 1}, 10);
  CHECK_FALSE(is_symmetric(product_fgl(E, O)));
  CHECK_THROWS_AS(is_symmetric(E), Error);
  CHECK_THROWS_AS(product_fgl(E, multiplicative_fgl(R, 10)), Error);
}

TEST_CASE("structured and generic multiplication by m agree") {
  Ring R(5, 16);
  auto E = elliptic_fgl(R, Weierstrass::b_form(0), 9);
  auto O = elliptic_fgl(R, Weierstrass{0, 0, 0, 1, 1}, 9);
  auto P = product_fgl(E, O);
  auto C = conjugate_fgl(P, linear_map(R, 9, 1, 5, 5, 1));
  for (int m = 0; m <= 5; ++m) {
    CHECK(mul_by_m(P, m, true).maps == mul_by_m(P, m, false).maps);
    CHECK(mul_by_m(C, m, true).maps == mul_by_m(C, m, false).maps);
  }
}

TEST_CASE("multiplication by m is additive in m") {
  Ring R(7, 12);
  auto E = elliptic_fgl(R, Weierstrass::b_form(2), 10);
  auto F = conjugate_fgl(product_fgl(E, E), linear_map(R, 10, 1, 7, 14, 1));
  for (int m1 = 0; m1 <= 7; ++m1)
    for (int m2 = 0; m1 + m2 <= 7; ++m2) {
      auto a = mul_by_m(F, m1), b = mul_by_m(F, m2);
      std::vector<TruncatedSeries> args = a.maps;
      args.insert(args.end(), b.maps.begin(), b.maps.end());
      CHECK(substitute_all(F.laws(), args) == mul_by_m(F, m1 + m2).maps);
    }
}

TEST_CASE("symmetry propagates to every [m]") {
  for (int ell : {5, 7}) {
    Ring R(ell, 10);
    auto E = elliptic_fgl(R, Weierstrass::b_form(ell == 5 ? 0 : 2), 12);
    auto F = conjugate_fgl(product_fgl(E, E), linear_map(R, 12, 1, ell, ell, 1));
    REQUIRE(is_symmetric(F));
    std::vector<int> swap{1, 0};
    for (int m = 0; m <= ell; ++m) {
      auto mm = mul_by_m(F, m);
      CHECK(rename_variables(mm.maps[1], 2, swap) == mm.maps[0]);
    }
  }
}

TEST_CASE("conjugation examples") {
  Ring R(5, 12);
  auto E = supersingular5(10);
  auto O = elliptic_fgl(R, Weierstrass{0, 0, 0, 1, 1}, 10);
  auto P = product_fgl(E, O);
  auto same = conjugate_fgl(P, linear_map(R, 10, 1, 0, 0, 1));
  CHECK(same.laws() == P.laws());
  auto swapped = conjugate_fgl(P, linear_map(R, 10, 0, 1, 1, 0));
  CHECK(swapped.laws() == product_fgl(O, E).laws());
  auto S = conjugate_fgl(product_fgl(E, E), linear_map(R, 10, 1, 5, 5, 1));
  CHECK(is_symmetric(S));
  CHECK(check_axioms(S).all_pass());
  CHECK_THROWS_AS(conjugate_fgl(P, linear_map(R, 10, 5, 0, 0, 1)), Error);
  CHECK_THROWS_AS(conjugate_fgl(P, linear_map(R, 10, 1, 1, 1, 1)), Error);
}

TEST_CASE("nonlinear conjugation satisfies the axioms and inverts") {
  Ring R(5, 12);
  auto E = supersingular5(8);
  auto P = product_fgl(E, E);
  auto Z1 = var(R, 2, 8, 0), Z2 = var(R, 2, 8, 1);
  std::vector<TruncatedSeries> t{Z1 + Z2.scaled(5) + Z1 * Z2.scaled(3), Z2 + Z1 * Z1.scaled(2) + Z1 * Z2 * Z2};
  auto inv = compositional_inverse(t);
  auto round = substitute_all(t, inv);
  CHECK(round[0] == Z1);
  CHECK(round[1] == Z2);
  auto G = conjugate_fgl(P, t);
  CHECK(check_axioms(G).all_pass());
  CHECK(mul_by_m(G, 5, true).maps == mul_by_m(G, 5, false).maps);
}

TEST_CASE("conjugation by a swap-equivariant map at cap l^2+2 keeps r = 2 and height 4") {
  Ring R(5, 12);
  auto E = supersingular5(27);
  auto G = conjugate_fgl(product_fgl(E, E), linear_map(R, 27, 1, 5, 5, 1));
  CHECK(is_symmetric(G));
  auto generic = mul_by_m(G.opaque(), 5);
  CHECK(generic.maps == mul_by_m(G, 5).maps);
  CHECK(r_exponent(generic) == 2);
  CHECK(height(generic).h == 4);
}

TEST_CASE("height and r are invariant under random unit-linear conjugation") {
  testgen::Gen g(7);
  Ring R(5, 12);
  auto E = supersingular5(27);
  auto O = elliptic_fgl(R, Weierstrass{0, 0, 0, 1, 1}, 27);
  for (const auto& base : {product_fgl(E, E), product_fgl(E, O)}) {
    auto h0 = height(base);
    int r0 = r_exponent(mul_by_m(base, 5));
    for (int trial = 0; trial < 10; ++trial) {
      std::int64_t a, b, c, d;
      do {
        a = g.range(0, 124), b = g.range(0, 124), c = g.range(0, 124), d = g.range(0, 124);
      } while ((a * d - b * c) % 5 == 0);
      auto G = conjugate_fgl(base, linear_map(R, 27, a, b, c, d));
      auto m = mul_by_m(G, 5);
      CHECK(r_exponent(m) == r0);
      CHECK(height(m).h == h0.h);
    }
  }
}

TEST_CASE("degree l^2 matrix of a supersingular product is invertible") {
  for (int ell : {5, 7}) {
    Ring R(ell, 10);
    int cap = ell * ell + 2;
    auto E = elliptic_fgl(R, Weierstrass::b_form(ell == 5 ? 0 : 2), cap);
    auto m = mul_by_m(product_fgl(E, E), ell);
    Ring k(ell, 1);
    auto u = static_cast<std::uint16_t>(ell * ell);
    Residue a = k.reduce(m.maps[0].coeff(Exponent{u, 0})), b = k.reduce(m.maps[0].coeff(Exponent{0, u}));
    Residue c = k.reduce(m.maps[1].coeff(Exponent{u, 0})), d = k.reduce(m.maps[1].coeff(Exponent{0, u}));
    CHECK(k.sub(k.mul(a, d), k.mul(b, c)) != 0);
  }
}
