#include "tamefgl/certify/lemma.hpp"

#include <array>

#include "tamefgl/error.hpp"
#include "tamefgl/fgl/law.hpp"

namespace tamefgl {

const ShapeCheck* LemmaShapeReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

LemmaShapeReport lemma_shape_check(const TruncatedSeries& f, LemmaKind kind, int r) {
  if (f.nvars() != 2) throw Error(ErrorCode::VarArityMismatch, "the shape test takes a series in Z1, Z2");
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be at least 1");
  const Ring& R = f.ring();
  const int ell = R.ell();
  std::int64_t q = 1;
  for (int i = 0; i < r; ++i) {
    q *= ell;
    if (q > f.cap()) throw Error(ErrorCode::CapTooSmall, "cap " + std::to_string(f.cap()) + " is below ℓ^r");
  }
  const int top = static_cast<int>(q);
  const bool anti = kind == LemmaKind::Antisymmetric;
  auto name = [](const Exponent& e) { return map_monomial_name(e, 2); };
  auto val = [&](Residue c) { return R.valuation(c).to_string(); };

  LemmaShapeReport rep;
  rep.kind = kind;
  rep.r = r;

  {
    std::array<int, 2> swap{1, 0};
    auto g = rename_variables(f, 2, swap);
    auto diff = anti ? g + f : g - f;
    ShapeCheck c{anti ? "f(Z2,Z1) = -f(Z1,Z2)" : "f(Z2,Z1) = f(Z1,Z2)", diff.is_zero(), std::nullopt};
    if (!c.pass) c.witness = name(diff.terms().front().e);
    rep.checks.push_back(std::move(c));
  }
  {
    Residue ellr = R.from_int(ell);
    Residue c1 = f.coeff(Exponent{1, 0}), c2 = f.coeff(Exponent{0, 1});
    Residue want2 = anti ? R.neg(ellr) : ellr;
    ShapeCheck c{anti ? "linear part l*(Z1 - Z2)" : "linear part l*(Z1 + Z2)", c1 == ellr && c2 == want2,
                 std::nullopt};
    if (!c.pass) c.witness = c1 != ellr ? "Z1 coefficient " + R.to_signed_decimal(c1)
                                        : "Z2 coefficient " + R.to_signed_decimal(c2);
    if (f.constant_term() != 0) {
      c.pass = false;
      c.witness = "nonzero constant term";
    }
    rep.checks.push_back(std::move(c));
  }
  {
    ShapeCheck low{"coefficients of degree 2.." + std::to_string(top - 1) + " divisible by l", true, std::nullopt};
    ShapeCheck mixed{"mixed terms of degree " + std::to_string(top) + " divisible by l", true, std::nullopt};
    for (const auto& t : f.terms()) {
      int d = total_degree(t.e, 2);
      if (R.is_unit(t.c)) {
        if (d >= 2 && d < top && low.pass) {
          low.pass = false;
          low.witness = name(t.e) + " (valuation " + val(t.c) + ")";
        }
        if (d == top && t.e[0] != 0 && t.e[1] != 0 && mixed.pass) {
          mixed.pass = false;
          mixed.witness = name(t.e) + " (valuation " + val(t.c) + ")";
        }
      }
    }
    rep.checks.push_back(std::move(low));
    rep.checks.push_back(std::move(mixed));
  }
  {
    auto e1 = Exponent{static_cast<std::uint16_t>(top), 0}, e2 = Exponent{0, static_cast<std::uint16_t>(top)};
    Residue a = f.coeff(e1), b = f.coeff(e2);
    rep.a = a;
    bool ok = R.is_unit(a) && b == (anti ? R.neg(a) : a);
    ShapeCheck c{std::string("unit a at Z1^") + std::to_string(top) + (anti ? ", -a" : ", a") + " at Z2^" +
                     std::to_string(top),
                 ok, std::nullopt};
    if (!ok)
      c.witness = !R.is_unit(a) ? name(e1) + " coefficient " + R.to_signed_decimal(a) + " (valuation " + val(a) + ")"
                                : name(e2) + " coefficient " + R.to_signed_decimal(b);
    rep.checks.push_back(std::move(c));
  }
  if (rep.first_failure() == nullptr) rep.beta = Rational(1, static_cast<std::int64_t>(q) - 1);
  return rep;
}

}  // namespace tamefgl
