#include "tamefgl/series/dense.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "builder.hpp"
#include "tamefgl/error.hpp"

namespace tamefgl {

std::shared_ptr<const MonomialIndex> monomial_index(int nvars, int cap) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialIndex>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({nvars, cap});
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const MonomialIndex>(nvars, cap);
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(std::make_pair(nvars, cap), built);
  return it->second;
}

DenseSeries::DenseSeries(std::shared_ptr<const MonomialIndex> index)
    : index_(std::move(index)), c_(static_cast<std::size_t>(index_->size()), 0) {}

DenseSeries DenseSeries::from_sparse(const TruncatedSeries& f, std::shared_ptr<const MonomialIndex> index) {
  if (f.nvars() != index->nvars())
    throw Error(ErrorCode::VarArityMismatch, "dense layout has a different number of variables");
  DenseSeries d(std::move(index));
  for (const auto& t : f.terms()) {
    int i = d.index_->index_of(t.e);
    if (i >= 0) d.c_[static_cast<std::size_t>(i)] = t.c;
  }
  return d;
}

std::vector<int> DenseSeries::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) out.push_back(static_cast<int>(i));
  return out;
}

TruncatedSeries DenseSeries::to_sparse(const Ring& ring, int cap) const {
  std::vector<Term> terms;
  int end = index_->end_of_degree(cap);
  for (int i = 0; i < end; ++i) {
    Residue c = ring.reduce(c_[static_cast<std::size_t>(i)]);
    if (c != 0) terms.push_back({index_->exponent(i), c});
  }
  return SeriesBuilder::make(ring, index_->nvars(), cap, std::move(terms));
}

namespace {

constexpr Residue kTopBit = static_cast<Residue>(1) << 127;

struct Entry {
  int index;
  std::uint32_t key;
  Residue c;
};

std::vector<Entry> entries(const DenseSeries& s, int limit) {
  std::vector<Entry> out;
  const auto& idx = s.index();
  int end = idx.end_of_degree(limit);
  const auto& c = s.coeffs();
  for (int i = 0; i < end; ++i)
    if (c[static_cast<std::size_t>(i)] != 0) out.push_back({i, idx.key(i), c[static_cast<std::size_t>(i)]});
  return out;
}

}  // namespace

void dense_mul_add(const Ring& ring, const DenseSeries& a, const DenseSeries& b, DenseSeries& out, int limit) {
  const MonomialIndex& idx = out.index();
  if (&a.index() != &idx || &b.index() != &idx)
    throw Error(ErrorCode::InvalidArgument, "dense operands use different layouts");
  limit = std::min(limit, idx.cap());
  if (limit < 0) return;
  auto ea = entries(a, limit);
  if (ea.empty()) return;
  int min_a = idx.degree(ea.front().index);
  auto eb = entries(b, limit - min_a);
  if (eb.empty()) return;
  int min_b = idx.degree(eb.front().index);
  if (min_a + min_b > limit) return;

  auto& oc = out.coeffs();
  if (ring.lazy_ok()) {
    // Products stay below 2^112, so a sum is reduced only when its top bit
    // is set and never wraps.
    const Residue M = ring.modulus();
    for (const Entry& x : ea) {
      int dx = idx.degree(x.index);
      if (dx + min_b > limit) break;
      int end = idx.end_of_degree(limit - dx);
      auto ax = static_cast<std::uint64_t>(x.c);
      for (const Entry& y : eb) {
        if (y.index >= end) break;
        Residue p = static_cast<Residue>(ax) * static_cast<std::uint64_t>(y.c);
        Residue& slot = oc[static_cast<std::size_t>(idx.index_of_key(x.key + y.key))];
        slot += p;
        if (slot & kTopBit) slot %= M;
      }
    }
    int end = idx.end_of_degree(limit);
    for (int i = idx.end_of_degree(min_a + min_b - 1); i < end; ++i) oc[static_cast<std::size_t>(i)] %= M;
  } else {
    for (auto& v : oc) v = ring.reduce(v);
    for (const Entry& x : ea) {
      int dx = idx.degree(x.index);
      if (dx + min_b > limit) break;
      int end = idx.end_of_degree(limit - dx);
      for (const Entry& y : eb) {
        if (y.index >= end) break;
        Residue& slot = oc[static_cast<std::size_t>(idx.index_of_key(x.key + y.key))];
        slot = ring.add(slot, ring.mul(x.c, y.c));
      }
    }
  }
}

DenseSeries dense_mul(const Ring& ring, const DenseSeries& a, const DenseSeries& b, int limit) {
  DenseSeries out(a.index_ptr());
  dense_mul_add(ring, a, b, out, limit);
  return out;
}

void dense_add_scaled(const Ring& ring, DenseSeries& acc, const DenseSeries& x, Residue s) {
  s = ring.reduce(s);
  if (s == 0) return;
  auto& a = acc.coeffs();
  const auto& c = x.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (c[i] != 0) a[i] = ring.add(ring.reduce(a[i]), ring.mul(c[i], s));
}

}  // namespace tamefgl
