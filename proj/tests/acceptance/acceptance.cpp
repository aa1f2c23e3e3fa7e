// One PASS/FAIL line per acceptance criterion. With a criterion number as
// argument only that criterion runs. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tamefgl/certify/certify.hpp"
#include "tamefgl/certify/hensel.hpp"
#include "tamefgl/certify/lemma.hpp"
#include "tamefgl/curves/elliptic.hpp"
#include "tamefgl/curves/family.hpp"
#include "tamefgl/error.hpp"
#include "tamefgl/padic/discriminant.hpp"
#include "tamefgl/padic/newton_polygon.hpp"

using namespace tamefgl;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Outcome&)> run;
};

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

// Affine points of y² = x³ + b x² + b x + 1 plus infinity, by trying every pair.
std::int64_t brute_force_points(int ell, std::int64_t b) {
  std::int64_t n = 1;
  for (std::int64_t x = 0; x < ell; ++x) {
    std::int64_t rhs = mod(x * x % ell * x + b * x % ell * x + b * x + 1, ell);
    for (std::int64_t y = 0; y < ell; ++y)
      if (y * y % ell == rhs) ++n;
  }
  return n;
}

int cap_for(int ell) { return ell * ell + 2; }

FormalGroupLaw base_law(int ell) {
  Ring R(ell, Ring::default_precision(ell));
  return elliptic_fgl(R, supersingular_base_curve(ell).curve.weierstrass(), cap_for(ell));
}

FormalGroupLaw base_square(int ell) {
  auto e = base_law(ell);
  return product_fgl(e, e);
}

std::string str(std::int64_t v) { return std::to_string(v); }

void c1(Outcome& o) {
  int count = 0;
  for (int ell = 5; ell <= 97; ++ell) {
    if (!is_prime(ell)) continue;
    ++count;
    std::string at = " at l=" + str(ell);
    auto f = find_quadratic_factor(ell);
    auto p = supersingular_base_curve(ell);
    o.require(p.factor.a == f.a, "factor agrees with base curve" + at);
    o.require(mod(p.curve.b * f.a - (1 - f.a), ell) == 0, "b = (1-a)/a" + at);
    o.require(brute_force_points(ell, p.curve.b) == ell + 1, "exhaustive count is l+1" + at);
    o.require(count_points(ell, p.curve.weierstrass()) == ell + 1, "library count is l+1" + at);
    o.require(p.lambda.has_value() && p.lambda_verified, "lambda verified" + at);
    if (p.lambda) o.require(deuring_value(ell, *p.lambda).is_zero(), "H_l(lambda) = 0" + at);
  }
  o.note(str(count) + " primes");
}

void c2(Outcome& o) {
  for (int ell : {5, 7}) {
    auto m = mul_by_m(base_law(ell), ell);
    int d = reduce_mod_ell(m.maps[0]).min_degree();
    o.require(d == ell * ell, "supersingular [l] mod l starts at degree l^2 at l=" + str(ell) + " (got " + str(d) + ")");
    o.require(r_exponent(m) == 2, "r = 2 at l=" + str(ell));
    o.note("l=" + str(ell) + ": degree " + str(d));
  }
  Ring R(5, Ring::default_precision(5));
  auto ord = elliptic_fgl(R, Weierstrass{0, 0, 0, 1, 1}, cap_for(5));
  auto m = mul_by_m(ord, 5);
  int d = reduce_mod_ell(m.maps[0]).min_degree();
  o.require(d == 5, "ordinary control starts at degree l (got " + str(d) + ")");
  o.require(r_exponent(m) == 1, "ordinary r = 1");
  o.note("ordinary: degree " + str(d));
}

void c3(Outcome& o) {
  for (int ell : {5, 7}) {
    std::string at = " at l=" + str(ell);
    auto f = base_square(ell);
    auto m = mul_by_m(f, ell);
    o.require(is_symmetric(f), "symmetric" + at);
    auto h = height(m);
    o.require(!h.infinite && h.h == 4, "height 4" + at);
    o.require(r_exponent(m) == 2, "r = 2" + at);
    auto anti = lemma_shape_check(m.maps[0] - m.maps[1], LemmaKind::Antisymmetric, 2);
    auto sym = lemma_shape_check(m.maps[0] + m.maps[1], LemmaKind::Symmetric, 2);
    o.require(anti.pass(), "antisymmetric lemma shape" + at);
    o.require(sym.pass(), "symmetric lemma shape" + at);
    auto cert = certify_symmetric(f, m, "E x E");
    bool a2b2 = false;
    for (const auto& e : cert.checklist)
      if (e.name == "l does not divide a^2 - b^2") a2b2 = e.pass;
    o.require(a2b2, "l does not divide a^2 - b^2" + at);
    Rational alpha(1, static_cast<std::int64_t>(ell) * ell - 1);
    o.require(cert.verdict == Verdict::CertifiedTame && cert.alpha && *cert.alpha == alpha,
              "CERTIFIED_TAME with alpha = 1/(l^2-1)" + at);
    if (cert.alpha) o.note("l=" + str(ell) + ": alpha = " + cert.alpha->to_string());
  }
}

void c4(Outcome& o) {
  for (int ell : {5, 7, 11, 13}) {
    const int top = ell * ell;
    Ring R(ell, Ring::default_precision(ell));
    auto e = elliptic_fgl(R, supersingular_base_curve(ell).curve.weierstrass(), top + 1);
    auto m = mul_by_m(e, ell).maps[0];
    std::vector<PadicCoeff> c;
    for (int k = 1; k <= top + 1; ++k) c.push_back(m.coefficient(Exponent{static_cast<std::uint16_t>(k)}));
    auto poly = series_newton_polygon(c);
    const auto& s = poly.segments();
    bool ok = s.size() == 1 && s[0].slope == Rational(-1, top - 1) && s[0].length == top - 1;
    o.require(ok, "single segment of slope -1/(l^2-1), length l^2-1 at l=" + str(ell));
    if (!s.empty()) o.note("l=" + str(ell) + ": slope " + s[0].slope.to_string() + " x " + str(s[0].length));
  }
}

void c5(Outcome& o) {
  auto f = base_square(5);
  const Ring& R = f.ring();
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 10; ++t) {
    std::array<std::int64_t, 4> a{};
    do {
      for (auto& x : a) x = static_cast<std::int64_t>(rng() % 625) - 312;
    } while (mod(a[0] * a[3] - a[1] * a[2], 5) == 0);
    auto Z1 = TruncatedSeries::variable(R, 2, f.cap(), 0), Z2 = TruncatedSeries::variable(R, 2, f.cap(), 1);
    std::vector<TruncatedSeries> T{Z1.scaled(R.from_int(a[0])) + Z2.scaled(R.from_int(a[1])),
                                   Z1.scaled(R.from_int(a[2])) + Z2.scaled(R.from_int(a[3]))};
    auto g = conjugate_fgl(f, T);
    // Odd trials use the generic recursion on the opaque law.
    auto m = t % 2 == 0 ? mul_by_m(g, 5) : mul_by_m(g.opaque(), 5, false);
    auto h = height(m);
    o.require(!h.infinite && h.h == 4, "height 4 for conjugate " + str(t));
    o.require(r_exponent(m) == 2, "r = 2 for conjugate " + str(t));
  }
  o.note("10 conjugates");
}

void c6(Outcome& o) {
  auto f = base_square(5);
  auto m = mul_by_m(f, 5);
  auto base = certify_symmetric(f, m, "E x E");
  o.require(base.verdict == Verdict::CertifiedTame, "base law certified");
  int cert = 0, refused = 0;
  for (std::uint64_t s = 1; s <= 100; ++s) {
    if (certify_perturbed(base, m, perturb_law(f, 4, s, false)).verdict == Verdict::CertifiedTame) ++cert;
    auto r = certify_perturbed(base, m, perturb_law(f, 3, 1000 + s, true));
    if (r.verdict == Verdict::Refused) ++refused;
  }
  o.require(cert == 100, "100 l^4 perturbations certified (got " + str(cert) + ")");
  o.require(refused == 100, "100 l^3 unit perturbations refused (got " + str(refused) + ")");
  o.note(str(cert) + " certified, " + str(refused) + " refused");
}

void c7(Outcome& o) {
  Ring R(5, 24);
  const int cap = 8;
  auto x = TruncatedSeries::variable(R, 2, cap, 0), y = TruncatedSeries::variable(R, 2, cap, 1);
  auto c = [&](int k) { return TruncatedSeries::constant(R, 2, cap, R.ell_power(k)); };
  auto x7 = TruncatedSeries::monomial(R, 2, cap, Exponent{7, 0}, 1);
  auto y7 = TruncatedSeries::monomial(R, 2, cap, Exponent{0, 7}, 1);
  std::vector<TruncatedSeries> f{x.scaled(5) - c(5) + x7, y.scaled(5) - c(6) + y7};
  std::vector<Residue> zero{0, 0};
  const Residue e = 25;
  auto res = hensel_lift(f, zero, e);
  o.require(R.valuation(res.root[0]).value() == 4, "v(b1) = 4");
  o.require(R.valuation(res.root[1]).value() == 5, "v(b2) = 5");
  o.require(res.residual_valuation >= 20, "residual valuation >= 20 (got " + str(res.residual_valuation) + ")");
  const Residue digits = R.ell_power(res.precision);
  std::mt19937_64 rng(7);
  int same = 0;
  for (int t = 0; t < 10; ++t) {
    std::vector<Residue> start;
    for (Residue b : res.root) start.push_back(R.add(b, R.mul(R.mul(e, 5), R.from_int(static_cast<std::int64_t>(rng() % 1000000)))));
    auto r = newton_refine(f, start, e);
    bool eq = true;
    for (std::size_t i = 0; i < 2; ++i) eq = eq && (r.root[i] % digits) == (res.root[i] % digits);
    if (eq) ++same;
  }
  o.require(same == 10, "10 perturbed starts converge to the same root (got " + str(same) + ")");
  o.note("root known mod 5^" + str(res.precision) + ", residual valuation " + str(res.residual_valuation));
}

void c8(Outcome& o) {
  const char* checks[] = {curve_check::kDeuring, curve_check::kF6,    curve_check::kF5,   curve_check::kF3,
                          curve_check::kSym60,   curve_check::kSym51, curve_check::kSym42};
  int members = 0, mutants = 0;
  for (int ell : {5, 7, 11, 13}) {
    Ring R(ell, Ring::default_precision(ell));
    for (std::uint64_t s = 1; s <= 100; ++s) {
      auto m = random_family_main(R, s);
      auto [R2, f2] = curve_from_json(curve_to_json(m.curve));
      bool ok = m.certificate.verdict == Verdict::CertifiedTame &&
                validate_curve(R2, f2).verdict == Verdict::CertifiedTame;
      o.require(ok, "member revalidates at l=" + str(ell) + " seed " + str(static_cast<std::int64_t>(s)));
      members += ok;
      for (const char* c : checks) {
        std::array<Residue, 7> g{};
        bool made = mutate_curve(R, m.curve.coeffs(), c, s, g);
        auto cert = validate_curve(R, g);
        bool named = made && cert.verdict == Verdict::Refused && cert.first_failure() &&
                     cert.first_failure()->name == std::string(c);
        o.require(named, std::string("mutation '") + c + "' refused and named at l=" + str(ell));
        mutants += named;
      }
    }
  }
  o.note(str(members) + "/400 members, " + str(mutants) + "/2800 mutations");
}

void c9(Outcome& o) {
  o.require(find_quadratic_factor(5).a == 1, "a = 1 at l=5");
  o.require(find_quadratic_factor(7).a == 5, "a = 5 at l=7");
  Ring R(7, 10);
  auto dg = supersingular_base_curve(7).delta_g;
  o.require(dg == 4, "Delta_g = 4 mod 7 (got " + str(dg) + ")");
  std::array<Residue, 7> f{1, 0, 2, 0, 2, 0, 1};
  auto df = static_cast<std::int64_t>(sextic_discriminant(R, f) % 7);
  o.require(df == 3, "Delta_f = 3 mod 7 (got " + str(df) + "; the resultant discriminant of x^6+2x^4+2x^2+1 is " +
                         str(df) + " mod 7, and -64*Delta_g = 3 does not hold as an identity)");
  std::set<std::uint64_t> xs;
  for (auto& x : two_torsion({7, 2}))
    if (x.in_base_field()) xs.insert(x.c0());
  o.require(xs == std::set<std::uint64_t>{6, 4, 2}, "2-torsion x-coordinates {-1, 4, 2} at l=7, b=2");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all{
      {1, "Deuring factor and supersingular base curves for 5 <= l <= 97", 5, c1},
      {2, "[l] mod l starts at degree l^2 (supersingular) and l (ordinary)", 10, c2},
      {3, "E x E certified tame with alpha = 1/(l^2-1) at l = 5, 7", 30, c3},
      {4, "Newton polygon of [l](Z)/Z is one segment of slope -1/(l^2-1)", 5, c4},
      {5, "unit-linear conjugates keep height 4 and r = 2", 60, c5},
      {6, "l^4 perturbations certified, l^3 unit perturbations refused", 60, c6},
      {7, "Hensel lift of the worked system and uniqueness", 1, c7},
      {8, "main-family round trip and single-condition mutations", 60, c8},
      {9, "known-answer vectors", 1, c9},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_s, "runtime budget " + std::to_string(c.budget_s) + " s");
    failures += !o.pass;
    std::printf("%s  criterion %d: %s  [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs);
    for (const auto& n : o.notes) std::printf("      %s\n", n.c_str());
  }
  std::fflush(stdout);
  return failures;
}
