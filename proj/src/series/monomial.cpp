#include "tamefgl/series/monomial.hpp"

#include <string>

#include "tamefgl/error.hpp"

namespace tamefgl {

int total_degree(const Exponent& e, int nvars) {
  int d = 0;
  for (int k = 0; k < nvars; ++k) d += e[static_cast<std::size_t>(k)];
  return d;
}

bool graded_less(const Exponent& a, const Exponent& b, int nvars) {
  int da = total_degree(a, nvars);
  int db = total_degree(b, nvars);
  if (da != db) return da < db;
  for (int k = 0; k < nvars; ++k) {
    auto i = static_cast<std::size_t>(k);
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

Exponent unit_exponent(int k) {
  Exponent e{};
  e[static_cast<std::size_t>(k)] = 1;
  return e;
}

namespace {

constexpr std::uint64_t kMaxLookup = std::uint64_t{1} << 25;

void enumerate_degree(int nvars, int var, int remaining, Exponent& cur, std::vector<Exponent>& out) {
  if (var == nvars - 1) {
    cur[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(remaining);
    out.push_back(cur);
    cur[static_cast<std::size_t>(var)] = 0;
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(e);
    enumerate_degree(nvars, var + 1, remaining - e, cur, out);
  }
  cur[static_cast<std::size_t>(var)] = 0;
}

}  // namespace

MonomialIndex::MonomialIndex(int nvars, int cap)
    : nvars_(nvars), cap_(cap), radix_(static_cast<std::uint32_t>(cap + 1)) {
  if (nvars < 1 || nvars > kMaxVars)
    throw Error(ErrorCode::VarArityMismatch, "unsupported number of variables " + std::to_string(nvars));
  if (cap < 0) throw Error(ErrorCode::CapTooSmall, "negative cap");
  std::uint64_t table = 1;
  for (int k = 0; k < nvars; ++k) {
    table *= radix_;
    if (table > kMaxLookup)
      throw Error(ErrorCode::CapTooLarge, "cap " + std::to_string(cap) + " in " +
                                              std::to_string(nvars) + " variables is too large");
  }
  Exponent cur{};
  for (int d = 0; d <= cap; ++d) {
    enumerate_degree(nvars, 0, d, cur, exponents_);
    degree_end_.push_back(static_cast<int>(exponents_.size()));
  }
  lookup_.assign(table, -1);
  degrees_.reserve(exponents_.size());
  keys_.reserve(exponents_.size());
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    degrees_.push_back(total_degree(exponents_[i], nvars));
    std::uint32_t k = key_of(exponents_[i]);
    keys_.push_back(k);
    lookup_[k] = static_cast<std::int32_t>(i);
  }
}

std::uint32_t MonomialIndex::key_of(const Exponent& e) const {
  std::uint32_t k = 0;
  for (int v = nvars_ - 1; v >= 0; --v) k = k * radix_ + e[static_cast<std::size_t>(v)];
  return k;
}

int MonomialIndex::index_of(const Exponent& e) const {
  if (total_degree(e, nvars_) > cap_) return -1;
  return lookup_[key_of(e)];
}

int MonomialIndex::end_of_degree(int d) const {
  if (d < 0) return 0;
  if (d >= cap_) return size();
  return degree_end_[static_cast<std::size_t>(d)];
}

}  // namespace tamefgl
