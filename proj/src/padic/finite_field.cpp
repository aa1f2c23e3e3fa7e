#include "tamefgl/padic/finite_field.hpp"

#include "tamefgl/error.hpp"
#include "tamefgl/padic/ring.hpp"

namespace tamefgl {

namespace {

std::uint64_t reduce_signed(std::int64_t v, std::uint32_t ell) {
  std::int64_t m = static_cast<std::int64_t>(ell);
  std::int64_t r = v % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

void require_same(std::uint32_t a, std::uint32_t b) {
  if (a != b) throw Error(ErrorCode::RingMismatch, "field characteristic mismatch");
}

}  // namespace

FpElement::FpElement(std::uint32_t ell, std::int64_t value)
    : ell_(ell), value_(reduce_signed(value, ell)) {
  if (ell < 2) throw Error(ErrorCode::NotPrime, "field characteristic must be prime");
}

FpElement FpElement::operator+(const FpElement& o) const {
  require_same(ell_, o.ell_);
  return {ell_, static_cast<std::int64_t>((value_ + o.value_) % ell_)};
}

FpElement FpElement::operator-(const FpElement& o) const {
  require_same(ell_, o.ell_);
  return {ell_, static_cast<std::int64_t>((value_ + ell_ - o.value_) % ell_)};
}

FpElement FpElement::operator*(const FpElement& o) const {
  require_same(ell_, o.ell_);
  return {ell_, static_cast<std::int64_t>(value_ * o.value_ % ell_)};
}

FpElement FpElement::pow(std::uint64_t e) const {
  std::uint64_t result = 1 % ell_;
  std::uint64_t base = value_;
  while (e != 0) {
    if (e & 1U) result = result * base % ell_;
    base = base * base % ell_;
    e >>= 1U;
  }
  return {ell_, static_cast<std::int64_t>(result)};
}

FpElement FpElement::inverse() const {
  if (value_ == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero in F_ell");
  return pow(ell_ - 2);
}

int FpElement::legendre() const {
  if (value_ == 0) return 0;
  return pow((ell_ - 1) / 2).value() == 1 ? 1 : -1;
}

std::optional<FpElement> sqrt_in_field(const FpElement& a) {
  const std::uint32_t p = a.ell();
  if (a.is_zero()) return FpElement(p, 0);
  if (a.legendre() != 1) return std::nullopt;
  // Tonelli–Shanks: p - 1 = q·2^s with q odd.
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  FpElement z(p, static_cast<std::int64_t>(smallest_nonresidue(p)));
  FpElement c = z.pow(q);
  FpElement x = a.pow((q + 1) / 2);
  FpElement t = a.pow(q);
  int m = s;
  while (!(t == FpElement(p, 1))) {
    int i = 0;
    FpElement t2 = t;
    while (!(t2 == FpElement(p, 1))) {
      t2 = t2 * t2;
      ++i;
    }
    FpElement b = c;
    for (int j = 0; j < m - i - 1; ++j) b = b * b;
    x = x * b;
    c = b * b;
    t = t * c;
    m = i;
  }
  FpElement other = -x;
  return other.value() < x.value() ? other : x;
}

std::uint32_t smallest_nonresidue(std::uint32_t ell) {
  for (std::uint32_t n = 2; n < ell; ++n)
    if (FpElement(ell, n).legendre() == -1) return n;
  throw Error(ErrorCode::NotFound, "no quadratic non-residue mod " + std::to_string(ell));
}

Fp2Element::Fp2Element(std::uint32_t ell, std::int64_t c0, std::int64_t c1)
    : ell_(ell), n_(smallest_nonresidue(ell)), c0_(reduce_signed(c0, ell)), c1_(reduce_signed(c1, ell)) {}

Fp2Element::Fp2Element(const FpElement& base)
    : Fp2Element(base.ell(), static_cast<std::int64_t>(base.value()), 0) {}

FpElement Fp2Element::base() const {
  if (c1_ != 0) throw Error(ErrorCode::InvalidArgument, "element is not in F_ell");
  return {ell_, static_cast<std::int64_t>(c0_)};
}

Fp2Element Fp2Element::operator+(const Fp2Element& o) const {
  require_same(ell_, o.ell_);
  return {ell_, static_cast<std::int64_t>((c0_ + o.c0_) % ell_),
          static_cast<std::int64_t>((c1_ + o.c1_) % ell_)};
}

Fp2Element Fp2Element::operator-(const Fp2Element& o) const {
  require_same(ell_, o.ell_);
  return {ell_, static_cast<std::int64_t>((c0_ + ell_ - o.c0_) % ell_),
          static_cast<std::int64_t>((c1_ + ell_ - o.c1_) % ell_)};
}

Fp2Element Fp2Element::operator*(const Fp2Element& o) const {
  require_same(ell_, o.ell_);
  const std::uint64_t p = ell_;
  std::uint64_t r0 = (c0_ * o.c0_ + (c1_ * o.c1_ % p) * n_) % p;
  std::uint64_t r1 = (c0_ * o.c1_ + c1_ * o.c0_) % p;
  return {ell_, static_cast<std::int64_t>(r0), static_cast<std::int64_t>(r1)};
}

Fp2Element Fp2Element::operator-() const {
  return {ell_, -static_cast<std::int64_t>(c0_), -static_cast<std::int64_t>(c1_)};
}

Fp2Element Fp2Element::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "inverse of zero in F_ell^2");
  // (c0 + c1 t)^(-1) = (c0 − c1 t) / (c0² − n c1²)
  FpElement a(ell_, static_cast<std::int64_t>(c0_));
  FpElement b(ell_, static_cast<std::int64_t>(c1_));
  FpElement norm = a * a - FpElement(ell_, n_) * b * b;
  FpElement inv = norm.inverse();
  return {ell_, static_cast<std::int64_t>((a * inv).value()),
          static_cast<std::int64_t>((-(b * inv)).value())};
}

Fp2Element Fp2Element::pow(std::uint64_t e) const {
  Fp2Element result(ell_, 1, 0);
  Fp2Element base = *this;
  while (e != 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

Fp2Element Fp2Element::frobenius() const {
  return {ell_, static_cast<std::int64_t>(c0_), -static_cast<std::int64_t>(c1_)};
}

std::string Fp2Element::to_string() const {
  if (c1_ == 0) return std::to_string(c0_);
  return std::to_string(c0_) + "+" + std::to_string(c1_) + "*t";
}

Fp2Element sqrt_into_fp2(const FpElement& a) {
  if (auto r = sqrt_in_field(a)) return Fp2Element(*r);
  const std::uint32_t p = a.ell();
  FpElement n(p, smallest_nonresidue(p));
  auto r = sqrt_in_field(a / n);  // a/n is a square since both are non-residues
  return {p, 0, static_cast<std::int64_t>(r->value())};
}

}  // namespace tamefgl
