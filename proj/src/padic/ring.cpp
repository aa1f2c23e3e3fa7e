#include "tamefgl/padic/ring.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

#include "tamefgl/error.hpp"

namespace tamefgl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::PrecisionUnsupported: return "PrecisionUnsupported";
    case ErrorCode::AllCoefficientsBelowPrecision: return "AllCoefficientsBelowPrecision";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::VarArityMismatch: return "VarArityMismatch";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::CapTooSmall: return "CapTooSmall";
    case ErrorCode::CapTooLarge: return "CapTooLarge";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::NonInvertibleLinearPart: return "NonInvertibleLinearPart";
    case ErrorCode::ZeroSeries: return "ZeroSeries";
    case ErrorCode::NotAPowerOfEll: return "NotAPowerOfEll";
    case ErrorCode::ZeroExponent: return "ZeroExponent";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::CapMismatch: return "CapMismatch";
    case ErrorCode::EllTooSmall: return "EllTooSmall";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::OffsetNotDivisible: return "OffsetNotDivisible";
    case ErrorCode::BadReduction: return "BadReduction";
    case ErrorCode::AsymmetryTooLarge: return "AsymmetryTooLarge";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string to_decimal(Residue value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string Valuation::to_string() const {
  return bottom_ ? ">=" + std::to_string(value_) : std::to_string(value_);
}

namespace {

constexpr Residue kMaxModulus = static_cast<Residue>(1) << 126;

int largest_power_below(int ell, Residue bound) {
  Residue p = 1;
  int n = 0;
  while (p <= bound / static_cast<Residue>(ell) && p * static_cast<Residue>(ell) < bound) {
    p *= static_cast<Residue>(ell);
    ++n;
  }
  return n;
}

}  // namespace

Ring::Ring(int ell, int prec) : ell_(ell), prec_(prec), modulus_(1) {
  if (ell <= 2 || !is_prime(static_cast<std::uint64_t>(ell)))
    throw Error(ErrorCode::NotPrime, "ell must be an odd prime, got " + std::to_string(ell));
  if (prec < 1) throw Error(ErrorCode::PrecisionUnsupported, "precision must be positive");
  if (prec > max_precision(ell))
    throw Error(ErrorCode::PrecisionUnsupported,
                std::to_string(ell) + "^" + std::to_string(prec) + " exceeds 2^126");
  for (int i = 0; i < prec; ++i) modulus_ *= static_cast<Residue>(ell);
}

int Ring::fast_precision_limit(int ell) {
  return largest_power_below(ell, static_cast<Residue>(1) << 56);
}

int Ring::max_precision(int ell) { return largest_power_below(ell, kMaxModulus); }

int Ring::default_precision(int ell) { return std::min(24, fast_precision_limit(ell)); }

Residue Ring::from_int(std::int64_t x) const {
  if (x >= 0) return static_cast<Residue>(static_cast<std::uint64_t>(x)) % modulus_;
  // -(x) without overflow at INT64_MIN
  Residue mag = static_cast<Residue>(-(x + 1)) + 1;
  return neg(mag % modulus_);
}

Residue Ring::from_decimal(std::string_view text) const {
  bool negative = false;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw Error(ErrorCode::ParseError, "empty integer literal");
  Residue r = 0;
  const Residue ten = reduce(10);
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9')
      throw Error(ErrorCode::ParseError, "bad digit in integer literal '" + std::string(text) + "'");
    r = add(mul(r, ten), reduce(static_cast<Residue>(c - '0')));
  }
  return negative ? neg(r) : r;
}

Residue Ring::mul(Residue a, Residue b) const {
  if (fits_u64()) {
    Residue p = static_cast<Residue>(static_cast<std::uint64_t>(a)) *
                static_cast<std::uint64_t>(b);
    return p % modulus_;
  }
  using boost::multiprecision::uint256_t;
  auto widen = [](Residue v) {
    uint256_t w = static_cast<std::uint64_t>(v >> 64);
    w <<= 64;
    w |= static_cast<std::uint64_t>(v);
    return w;
  };
  uint256_t p = widen(a) * widen(b);
  p %= widen(modulus_);
  Residue hi = static_cast<std::uint64_t>(p >> 64);
  Residue lo = static_cast<std::uint64_t>(p);
  return (hi << 64) | lo;
}

Residue Ring::pow(Residue base, std::uint64_t e) const {
  Residue result = reduce(1);
  base = reduce(base);
  while (e != 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Valuation Ring::valuation(Residue x) const {
  x = reduce(x);
  if (x == 0) return Valuation::at_least(prec_);
  int v = 0;
  while (x % static_cast<Residue>(ell_) == 0) {
    x /= static_cast<Residue>(ell_);
    ++v;
  }
  return Valuation::exact(v);
}

Residue Ring::inverse(Residue unit) const {
  if (!is_unit(unit)) throw Error(ErrorCode::InvalidArgument, "inverse of a non-unit");
  // Euler: the unit group of Z/ℓ^N has order ℓ^(N-1)(ℓ-1).
  Residue order = modulus_ / static_cast<Residue>(ell_) * static_cast<Residue>(ell_ - 1);
  // order < 2^126 but pow takes 64-bit exponents; split when needed.
  Residue e = order - 1;
  Residue result = reduce(1);
  Residue base = reduce(unit);
  while (e != 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Residue Ring::ell_power(int k) const {
  if (k >= prec_) return 0;
  Residue p = 1;
  for (int i = 0; i < k; ++i) p *= static_cast<Residue>(ell_);
  return p;
}

Residue Ring::divide_by_ell_power(Residue x, int k) const {
  x = reduce(x);
  if (k == 0) return x;
  if (!valuation(x).at_least_value(k))
    throw Error(ErrorCode::InvalidArgument, "division by ell^k of an element of smaller valuation");
  Residue d = 1;
  for (int i = 0; i < k && i < prec_; ++i) d *= static_cast<Residue>(ell_);
  return x / d;
}

std::string Ring::to_signed_decimal(Residue x) const {
  x = reduce(x);
  if (x > modulus_ / 2) return "-" + to_decimal(modulus_ - x);
  return to_decimal(x);
}

std::string Ring::describe() const {
  return prec_ == 1 ? "F_" + std::to_string(ell_)
                    : "Z/" + std::to_string(ell_) + "^" + std::to_string(prec_);
}

void PadicCoeff::require_same_ring(const PadicCoeff& o) const {
  if (!(ring_ == o.ring_))
    throw Error(ErrorCode::RingMismatch, ring_.describe() + " vs " + o.ring_.describe());
}

PadicCoeff PadicCoeff::operator+(const PadicCoeff& o) const {
  require_same_ring(o);
  return {ring_, ring_.add(residue_, o.residue_)};
}

PadicCoeff PadicCoeff::operator-(const PadicCoeff& o) const {
  require_same_ring(o);
  return {ring_, ring_.sub(residue_, o.residue_)};
}

PadicCoeff PadicCoeff::operator*(const PadicCoeff& o) const {
  require_same_ring(o);
  return {ring_, ring_.mul(residue_, o.residue_)};
}

}  // namespace tamefgl
