#include "tamefgl/certify/certify.hpp"

#include <array>
#include <random>

#include "tamefgl/error.hpp"

namespace tamefgl {

namespace {

std::string coord_name(int i) { return "[l]_" + std::to_string(i + 1); }

// Single-variable power of least exponent in the reductions mod ℓ.
std::string least_exponent_witness(std::span<const TruncatedSeries> maps) {
  int best = 0;
  std::string where;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    auto red = reduce_mod_ell(maps[i]);
    for (const auto& t : red.terms())
      for (int k = 0; k < red.nvars(); ++k) {
        int p = t.e[static_cast<std::size_t>(k)];
        if (p > 0 && (best == 0 || p < best)) {
          best = p;
          where = map_monomial_name(t.e, red.nvars()) + " in " + coord_name(static_cast<int>(i)) + " mod l";
        }
      }
  }
  return where;
}

std::string lemma_witness(const LemmaShapeReport& rep) {
  const ShapeCheck* f = rep.first_failure();
  if (f == nullptr) return "";
  return f->name + (f->witness ? ": " + *f->witness : "");
}

void require_certifiable(const FormalGroupLaw& f) {
  if (f.dim() != 2) throw Error(ErrorCode::DimMismatch, "certification needs a 2-dimensional law");
  const int ell = f.ring().ell();
  if (ell == 2) throw Error(ErrorCode::InvalidArgument, "certification needs an odd prime");
  if (f.cap() < ell * ell + 2)
    throw Error(ErrorCode::CapTooSmall, "cap " + std::to_string(f.cap()) + " is below l^2 + 2");
}

Rational alpha_for(int ell) { return Rational(1, static_cast<std::int64_t>(ell) * ell - 1); }

}  // namespace

DifferenceReport least_difference(std::span<const TruncatedSeries> a, std::span<const TruncatedSeries> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimMismatch, "different numbers of coordinates");
  DifferenceReport rep;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto d = a[i] - b[i];
    const Ring& R = d.ring();
    for (const auto& t : d.terms()) {
      int v = R.valuation(t.c).value();
      if (rep.zero || v < rep.valuation) {
        rep.zero = false;
        rep.valuation = v;
        rep.coordinate = static_cast<int>(i);
        rep.at = t.e;
      }
    }
  }
  return rep;
}

TameCertificate certify_symmetric(const FormalGroupLaw& f, const std::string& subject) {
  require_certifiable(f);
  return certify_symmetric(f, mul_by_m(f, f.ring().ell()), subject);
}

TameCertificate certify_symmetric(const FormalGroupLaw& f, const MulByM& ell_map, const std::string& subject) {
  require_certifiable(f);
  const Ring& R = f.ring();
  const int ell = R.ell();
  if (ell_map.m != ell || ell_map.maps.size() != 2 || !(ell_map.maps[0].ring() == R))
    throw Error(ErrorCode::RingMismatch, "the supplied map is not [l] of this law");

  TameCertificate cert;
  cert.subject = subject.empty() ? f.provenance() : subject;
  cert.provenance = f.provenance();
  cert.ell = ell;
  const Rational alpha = alpha_for(ell);
  auto done = [&]() {
    cert.conclude(alpha);
    if (cert.verdict == Verdict::CertifiedTame)
      cert.trail = {trail::kTorsionValuation, trail::kDim2WildInertia, trail::kValuationToTame};
    return cert;
  };

  {
    auto ax = check_axioms(f);
    std::optional<std::string> w;
    for (const AxiomCheck* c : {&ax.unit, &ax.linear_term, &ax.associativity, &ax.commutativity})
      if (!c->pass) {
        w = c->name + ": " + c->witness.value_or("?");
        break;
      }
    if (!cert.check("formal group law axioms", "law-axioms", ax.all_pass(), w)) return done();
  }
  {
    std::array<int, 4> swap{1, 0, 3, 2};
    auto diff = rename_variables(f.law(1), 4, swap) - f.law(0);
    std::optional<std::string> w;
    if (!diff.is_zero()) w = monomial_name(diff.terms().front().e, 4, 2) + " in F1";
    if (!cert.check("symmetric law", "torsion-valuation:symmetric", diff.is_zero(), w)) return done();
  }
  const auto& maps = ell_map.maps;
  {
    std::optional<std::string> w;
    for (int i = 0; i < 2; ++i)
      if (reduce_mod_ell(maps[static_cast<std::size_t>(i)]).is_zero() && !w)
        w = coord_name(i) + " vanishes mod l through degree " + std::to_string(f.cap());
    if (!cert.check("[l] nonzero mod l", "torsion-valuation:finite-height", !w.has_value(), w)) return done();
  }
  {
    std::optional<std::string> w;
    bool ok = false;
    try {
      int r = r_exponent(maps);
      ok = r == 2;
      if (!ok) w = "r = " + std::to_string(r) + " (" + least_exponent_witness(maps) + ")";
    } catch (const Error& e) {
      w = e.what();
    }
    if (!cert.check("r = 2", "torsion-valuation:r-equals-2", ok, w)) return done();
  }
  {
    std::optional<std::string> w;
    bool ok = false;
    try {
      auto h = height(maps);
      ok = !h.infinite && h.h == 4;
      if (!ok) w = h.infinite ? "height infinite" : "h = " + std::to_string(h.h);
    } catch (const Error& e) {
      w = e.what();
    }
    if (!cert.check("height 4", "torsion-valuation:height-4", ok, w)) return done();
  }
  {
    auto u = static_cast<std::uint16_t>(ell * ell);
    Ring k = R.residue_field();
    Residue a = k.reduce(maps[0].coeff(Exponent{u, 0})), b = k.reduce(maps[0].coeff(Exponent{0, u}));
    Residue disc = k.sub(k.mul(a, a), k.mul(b, b));
    std::optional<std::string> w;
    if (disc == 0) w = "a = " + to_decimal(a) + ", b = " + to_decimal(b) + " mod l";
    if (!cert.check("l does not divide a^2 - b^2", "torsion-valuation:degree-l^2-coefficients", disc != 0, w))
      return done();
  }
  {
    auto rep = lemma_shape_check(maps[0] - maps[1], LemmaKind::Antisymmetric, 2);
    std::optional<std::string> w;
    if (!rep.pass()) w = lemma_witness(rep);
    if (!cert.check("antisymmetric lemma shape of [l]_1 - [l]_2", "valuation-lemma:antisymmetric", rep.pass(), w))
      return done();
  }
  {
    auto rep = lemma_shape_check(maps[0] + maps[1], LemmaKind::Symmetric, 2);
    std::optional<std::string> w;
    if (!rep.pass()) w = lemma_witness(rep);
    cert.check("symmetric lemma shape of [l]_1 + [l]_2", "valuation-lemma:symmetric", rep.pass(), w);
  }
  return done();
}

TameCertificate certify_perturbed(const TameCertificate& base, const FormalGroupLaw& f, const FormalGroupLaw& fprime,
                                  const std::string& subject) {
  if (!(f.ring() == fprime.ring()) || f.cap() != fprime.cap() || f.dim() != fprime.dim())
    throw Error(ErrorCode::CapMismatch, "base and perturbed laws differ in ring, cap or dimension");
  auto cert = certify_perturbed(base, mul_by_m(f, f.ring().ell()), fprime, subject);
  auto law_diff = least_difference(f.laws(), fprime.laws());
  if (law_diff.zero) {
    cert.diagnostics.push_back("laws are identical");
  } else {
    cert.diagnostics.push_back("law difference has valuation " + std::to_string(law_diff.valuation) + " at " +
                               monomial_name(law_diff.at, 2 * f.dim(), f.dim()) + " in F" +
                               std::to_string(law_diff.coordinate + 1));
  }
  return cert;
}

TameCertificate certify_perturbed(const TameCertificate& base, const MulByM& base_ell_map,
                                  const FormalGroupLaw& fprime, const std::string& subject) {
  const Ring& R = fprime.ring();
  const int ell = R.ell();
  if (base_ell_map.maps.empty() || !(base_ell_map.maps.front().ring() == R) ||
      base_ell_map.maps.front().cap() != fprime.cap() ||
      static_cast<int>(base_ell_map.maps.size()) != fprime.dim() || base_ell_map.m != ell)
    throw Error(ErrorCode::CapMismatch, "base [l] and perturbed law differ in ring, cap or dimension");
  if (R.prec() < 5) throw Error(ErrorCode::PrecisionUnsupported, "an (l^4) test needs precision at least 5");

  TameCertificate cert;
  cert.subject = subject.empty() ? fprime.provenance() : subject;
  cert.provenance = fprime.provenance();
  cert.ell = ell;
  const Rational alpha = alpha_for(ell);
  auto done = [&]() {
    cert.conclude(alpha);
    if (cert.verdict == Verdict::CertifiedTame) {
      cert.trail = base.trail;
      cert.trail.emplace_back(trail::kRelaxedSymmetry);
      cert.diagnostics.emplace_back("accepted via propagated condition: the (l^4) test is applied to [l]");
    }
    return cert;
  };

  {
    bool ok = base.verdict == Verdict::CertifiedTame && base.ell == ell && base.alpha == alpha;
    std::optional<std::string> w;
    if (!ok) w = "base verdict " + std::string(to_string(base.verdict)) + " at l = " + std::to_string(base.ell);
    if (!cert.check("base law certified with alpha = 1/(l^2-1)", "relaxed-symmetry:certified-base", ok, w))
      return done();
  }
  {
    auto mp = mul_by_m(fprime, ell);
    auto d = least_difference(base_ell_map.maps, mp.maps);
    bool ok = d.zero || d.valuation >= 4;
    std::optional<std::string> w;
    if (!ok) {
      // First monomial, in canonical order, whose difference leaves (ℓ⁴).
      Exponent first{};
      int coord = -1;
      for (std::size_t i = 0; i < mp.maps.size(); ++i) {
        auto diff = base_ell_map.maps[i] - mp.maps[i];
        for (const auto& t : diff.terms())
          if (R.valuation(t.c).value() < 4) {
            if (coord < 0 || graded_less(t.e, first, diff.nvars())) {
              first = t.e;
              coord = static_cast<int>(i);
            }
            break;
          }
      }
      auto diff = base_ell_map.maps[static_cast<std::size_t>(coord)] - mp.maps[static_cast<std::size_t>(coord)];
      w = map_monomial_name(first, fprime.dim()) + " in " + coord_name(coord) + " (valuation " +
          R.valuation(diff.coeff(first)).to_string() + ")";
    }
    if (!cert.check("[l] - [l]' in (l^4)", "relaxed-symmetry:l4-congruence", ok, w)) return done();
  }
  {
    auto ax = check_axioms(fprime);
    std::optional<std::string> w;
    for (const AxiomCheck* c : {&ax.unit, &ax.linear_term, &ax.associativity, &ax.commutativity})
      if (!c->pass) {
        w = c->name + ": " + c->witness.value_or("?");
        break;
      }
    cert.check("formal group law axioms", "law-axioms", ax.all_pass(), w);
  }
  return done();
}

std::vector<TruncatedSeries> perturbation_map(const Ring& ring, int cap, int k, std::uint64_t seed, bool unit_entry) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "perturbation exponent must be at least 1");
  std::mt19937_64 rng(seed);
  const std::uint64_t ell = static_cast<std::uint64_t>(ring.ell());
  std::array<Residue, 4> m{};
  for (auto& x : m) x = ring.from_unsigned(rng() % (ell * ell));
  if (unit_entry) {
    std::size_t slot = (rng() % 2 == 0) ? 1 : 2;
    m[slot] = ring.from_unsigned(1 + rng() % (ell - 1) + ell * (rng() % ell));
  }
  Residue s = ring.ell_power(k);
  auto Z1 = TruncatedSeries::variable(ring, 2, cap, 0), Z2 = TruncatedSeries::variable(ring, 2, cap, 1);
  return {Z1 + Z1.scaled(ring.mul(s, m[0])) + Z2.scaled(ring.mul(s, m[1])),
          Z2 + Z1.scaled(ring.mul(s, m[2])) + Z2.scaled(ring.mul(s, m[3]))};
}

FormalGroupLaw perturb_law(const FormalGroupLaw& f, int k, std::uint64_t seed, bool unit_entry) {
  if (f.dim() != 2) throw Error(ErrorCode::DimMismatch, "perturbations are generated for 2-dimensional laws");
  return conjugate_fgl(f, perturbation_map(f.ring(), f.cap(), k, seed, unit_entry));
}

}  // namespace tamefgl
