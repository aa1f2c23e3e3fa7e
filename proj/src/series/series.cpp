#include "tamefgl/series/series.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>

#include "builder.hpp"
#include "tamefgl/error.hpp"
#include "tamefgl/series/dense.hpp"

namespace tamefgl {

namespace {

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!(a.ring() == b.ring()))
    throw Error(ErrorCode::RingMismatch, a.ring().describe() + " vs " + b.ring().describe());
  if (a.nvars() != b.nvars())
    throw Error(ErrorCode::VarArityMismatch,
                std::to_string(a.nvars()) + " vs " + std::to_string(b.nvars()) + " variables");
}

Exponent add_exponents(const Exponent& a, const Exponent& b, int nvars) {
  Exponent e{};
  for (int k = 0; k < nvars; ++k) {
    auto i = static_cast<std::size_t>(k);
    e[i] = static_cast<std::uint16_t>(a[i] + b[i]);
  }
  return e;
}

// Below this many term pairs a sort-and-merge product beats building a dense
// layout.
constexpr std::size_t kSparseProductLimit = 4096;

TruncatedSeries sparse_product(const TruncatedSeries& a, const TruncatedSeries& b, int cap) {
  const Ring& R = a.ring();
  const int n = a.nvars();
  std::vector<std::pair<Exponent, Residue>> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& x : a.terms()) {
    int dx = total_degree(x.e, n);
    if (dx > cap) break;
    for (const auto& y : b.terms()) {
      if (dx + total_degree(y.e, n) > cap) break;
      raw.emplace_back(add_exponents(x.e, y.e, n), R.mul(x.c, y.c));
    }
  }
  return TruncatedSeries::from_terms(R, n, cap, std::move(raw));
}

TruncatedSeries dense_product(const TruncatedSeries& a, const TruncatedSeries& b, int cap) {
  auto idx = monomial_index(a.nvars(), cap);
  auto da = DenseSeries::from_sparse(a, idx);
  auto db = DenseSeries::from_sparse(b, idx);
  return dense_mul(a.ring(), da, db, cap).to_sparse(a.ring(), cap);
}

TruncatedSeries product(const TruncatedSeries& a, const TruncatedSeries& b, int cap) {
  if (a.is_zero() || b.is_zero()) return TruncatedSeries(a.ring(), a.nvars(), cap);
  if (a.size() * b.size() <= kSparseProductLimit) return sparse_product(a, b, cap);
  return dense_product(a, b, cap);
}

TruncatedSeries merge(const TruncatedSeries& a, const TruncatedSeries& b, bool subtract) {
  const Ring& R = a.ring();
  const int n = a.nvars();
  const int cap = std::min(a.cap(), b.cap());
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  auto push = [&](const Exponent& e, Residue c) {
    if (c != 0 && total_degree(e, n) <= cap) out.push_back({e, c});
  };
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && graded_less(ia->e, ib->e, n))) {
      push(ia->e, ia->c);
      ++ia;
    } else if (ia == ea || graded_less(ib->e, ia->e, n)) {
      push(ib->e, subtract ? R.neg(ib->c) : ib->c);
      ++ib;
    } else {
      push(ia->e, subtract ? R.sub(ia->c, ib->c) : R.add(ia->c, ib->c));
      ++ia;
      ++ib;
    }
  }
  return SeriesBuilder::make(R, n, cap, std::move(out));
}

}  // namespace

TruncatedSeries::TruncatedSeries(const Ring& ring, int nvars, int cap) : ring_(ring), nvars_(nvars), cap_(cap) {
  if (nvars < 1 || nvars > kMaxVars)
    throw Error(ErrorCode::VarArityMismatch, "unsupported number of variables " + std::to_string(nvars));
  if (cap < 0) throw Error(ErrorCode::CapTooSmall, "negative cap");
}

TruncatedSeries TruncatedSeries::from_terms(const Ring& ring, int nvars, int cap,
                                            std::vector<std::pair<Exponent, Residue>> terms) {
  TruncatedSeries s(ring, nvars, cap);
  for (auto& [e, c] : terms) {
    for (int k = nvars; k < kMaxVars; ++k)
      if (e[static_cast<std::size_t>(k)] != 0)
        throw Error(ErrorCode::VarArityMismatch, "exponent uses a variable beyond " + std::to_string(nvars));
    c = ring.reduce(c);
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [nvars](const auto& x, const auto& y) { return graded_less(x.first, y.first, nvars); });
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    Residue c = 0;
    while (j < terms.size() && terms[j].first == terms[i].first) c = ring.add(c, terms[j++].second);
    if (c != 0 && total_degree(terms[i].first, nvars) <= cap) s.terms_.push_back({terms[i].first, c});
    i = j;
  }
  return s;
}

TruncatedSeries TruncatedSeries::variable(const Ring& ring, int nvars, int cap, int k) {
  if (k < 0 || k >= nvars) throw Error(ErrorCode::VarArityMismatch, "variable index out of range");
  return monomial(ring, nvars, cap, unit_exponent(k), 1);
}

TruncatedSeries TruncatedSeries::constant(const Ring& ring, int nvars, int cap, Residue c) {
  return monomial(ring, nvars, cap, Exponent{}, c);
}

TruncatedSeries TruncatedSeries::monomial(const Ring& ring, int nvars, int cap, const Exponent& e, Residue c) {
  return from_terms(ring, nvars, cap, {{e, c}});
}

Residue TruncatedSeries::coeff(const Exponent& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [this](const Term& t, const Exponent& x) { return graded_less(t.e, x, nvars_); });
  return (it != terms_.end() && it->e == e) ? it->c : 0;
}

TruncatedSeries TruncatedSeries::truncated(int cap) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (total_degree(t.e, nvars_) <= cap) out.push_back(t);
  return SeriesBuilder::make(ring_, nvars_, std::min(cap, cap_), std::move(out));
}

TruncatedSeries TruncatedSeries::homogeneous_part(int d) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (total_degree(t.e, nvars_) == d) out.push_back(t);
  return SeriesBuilder::make(ring_, nvars_, cap_, std::move(out));
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const { return arith(ArithOp::Add, *this, o); }
TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return arith(ArithOp::Sub, *this, o); }
TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const { return arith(ArithOp::Mul, *this, o); }

TruncatedSeries TruncatedSeries::operator-() const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.c = ring_.neg(t.c);
  return SeriesBuilder::make(ring_, nvars_, cap_, std::move(out));
}

TruncatedSeries TruncatedSeries::scaled(Residue s) const {
  s = ring_.reduce(s);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Residue c = ring_.mul(t.c, s);
    if (c != 0) out.push_back({t.e, c});
  }
  return SeriesBuilder::make(ring_, nvars_, cap_, std::move(out));
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = ring_.to_signed_decimal(t.c);
    bool negative = c.front() == '-';
    if (negative) c.erase(0, 1);
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << "-";
    first = false;
    bool constant = total_degree(t.e, nvars_) == 0;
    if (c != "1" || constant) os << c;
    bool need_star = c != "1" || constant;
    for (int k = 0; k < nvars_; ++k) {
      int p = t.e[static_cast<std::size_t>(k)];
      if (p == 0) continue;
      if (need_star) os << "*";
      os << "Z" << (k + 1);
      if (p > 1) os << "^" << p;
      need_star = true;
    }
  }
  return os.str();
}

TruncatedSeries arith(ArithOp op, const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b);
  switch (op) {
    case ArithOp::Add: return merge(a, b, false);
    case ArithOp::Sub: return merge(a, b, true);
    case ArithOp::Mul: return product(a, b, std::min(a.cap(), b.cap()));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown arithmetic operation");
}

TruncatedSeries scale(const PadicCoeff& s, const TruncatedSeries& a) {
  if (!(s.ring() == a.ring()))
    throw Error(ErrorCode::RingMismatch, s.ring().describe() + " vs " + a.ring().describe());
  return a.scaled(s.residue());
}

namespace {

// Composition engine. Arguments consisting of a single term are placed
// directly; the remaining ("general") arguments are expanded by Horner's rule
// over their exponents, using per-argument power tables.
class Substituter {
 public:
  static constexpr std::size_t kMemoGeneralLimit = 2;

  Substituter(std::span<const TruncatedSeries> args, int m, int f_cap) : m_(m) {
    if (args.empty()) throw Error(ErrorCode::VarArityMismatch, "no arguments to substitute");
    if (static_cast<int>(args.size()) != m)
      throw Error(ErrorCode::VarArityMismatch, "expected " + std::to_string(m) + " arguments, got " +
                                                   std::to_string(args.size()));
    const TruncatedSeries& first = args.front();
    R_ = std::make_unique<Ring>(first.ring());
    n_ = first.nvars();
    cap_ = f_cap;
    for (std::size_t j = 0; j < args.size(); ++j) {
      const auto& g = args[j];
      require_compatible(first, g);
      if (g.constant_term() != 0)
        throw Error(ErrorCode::NonzeroConstantTerm, "argument " + std::to_string(j + 1) + " has a constant term");
      cap_ = std::min(cap_, g.cap());
    }
    idx_ = monomial_index(n_, cap_);
    kind_.resize(args.size());
    for (std::size_t j = 0; j < args.size(); ++j) {
      const auto& g = args[j].truncated(cap_);
      if (g.is_zero()) {
        kind_[j] = Kind::Zero;
      } else if (g.size() == 1) {
        kind_[j] = Kind::Monomial;
        mono_e_.push_back(g.terms().front().e);
        mono_c_.push_back(g.terms().front().c);
        mono_slot_.push_back(static_cast<int>(j));
      } else {
        kind_[j] = Kind::General;
        general_.push_back(static_cast<int>(j));
        general_series_.push_back(DenseSeries::from_sparse(g, idx_));
        general_min_deg_.push_back(g.min_degree());
      }
    }
    powers_.resize(general_.size());
  }

  int cap() const { return cap_; }

  TruncatedSeries apply(const TruncatedSeries& f) {
    if (f.nvars() != m_)
      throw Error(ErrorCode::VarArityMismatch, "outer series has " + std::to_string(f.nvars()) + " variables, " +
                                                   std::to_string(m_) + " arguments given");
    if (!(f.ring() == *R_)) throw Error(ErrorCode::RingMismatch, f.ring().describe() + " vs " + R_->describe());
    const int cap = std::min(cap_, f.cap());
    // Group terms by their exponents on the general arguments; each group's
    // monomial part is kept as a list of (slot, coefficient).
    std::map<std::vector<int>, Sparse> groups;
    std::vector<char> used(general_.size(), 0);
    for (const auto& t : f.terms()) {
      Exponent img{};
      Residue c = t.c;
      int deg = 0;
      bool vanishes = false;
      std::vector<int> beta(general_.size());
      for (int j = 0; j < m_; ++j) {
        int a = t.e[static_cast<std::size_t>(j)];
        if (a == 0) continue;
        switch (kind_[static_cast<std::size_t>(j)]) {
          case Kind::Zero: vanishes = true; break;
          case Kind::Monomial: {
            auto slot = static_cast<std::size_t>(mono_index(j));
            c = R_->mul(c, R_->pow(mono_c_[slot], static_cast<std::uint64_t>(a)));
            for (int k = 0; k < n_; ++k) {
              auto i = static_cast<std::size_t>(k);
              int v = img[i] + a * mono_e_[slot][i];
              deg += a * mono_e_[slot][i];
              img[i] = static_cast<std::uint16_t>(std::min(v, 65535));
            }
            break;
          }
          case Kind::General: {
            auto g = static_cast<std::size_t>(general_index(j));
            beta[g] = a;
            deg += a * general_min_deg_[g];
            break;
          }
        }
        if (vanishes || deg > cap) break;
      }
      if (vanishes || deg > cap || c == 0) continue;
      int pos = idx_->index_of(img);
      if (pos < 0) continue;
      for (std::size_t g = 0; g < beta.size(); ++g)
        if (beta[g] > 0) used[g] = 1;
      auto& grp = groups[beta];
      grp.pos.push_back(pos);
      grp.c.push_back(c);
    }
    if (groups.empty()) return TruncatedSeries(*R_, n_, cap);
    for (auto& [beta, p] : groups) p = normalized(std::move(p));

    std::size_t nused = 0;
    for (char u : used) nused += u ? 1 : 0;
    if (nused <= kMemoGeneralLimit) {
      // Few general arguments actually occur: multiply each group by a
      // memoized sparse product of powers.
      std::vector<Residue> acc(static_cast<std::size_t>(idx_->size()), 0);
      for (const auto& [beta, p] : groups) {
        int pmin = 0;
        for (std::size_t g = 0; g < beta.size(); ++g) pmin += beta[g] * general_min_deg_[g];
        if (pmin > cap) continue;
        sparse_mul_add(p, joint_power(beta), acc, cap);
      }
      DenseSeries result(idx_);
      result.coeffs() = std::move(acc);
      return result.to_sparse(*R_, cap);
    }
    // Horner over the general arguments, most significant first.
    std::vector<std::pair<std::vector<int>, DenseSeries>> dense_groups;
    dense_groups.reserve(groups.size());
    for (const auto& [beta, p] : groups) {
      DenseSeries d(idx_);
      for (std::size_t i = 0; i < p.pos.size(); ++i) d.coeffs()[static_cast<std::size_t>(p.pos[i])] = p.c[i];
      dense_groups.emplace_back(beta, std::move(d));
    }
    std::vector<std::pair<std::vector<int>, const DenseSeries*>> items;
    items.reserve(dense_groups.size());
    for (const auto& [beta, p] : dense_groups) items.emplace_back(beta, &p);
    DenseSeries result = horner(items, 0, items.size(), 0, cap);
    return result.to_sparse(*R_, cap);
  }

 private:
  enum class Kind { Zero, Monomial, General };

  // Slots in increasing order with reduced nonzero coefficients.
  struct Sparse {
    std::vector<int> pos;
    std::vector<Residue> c;
  };

  Sparse normalized(Sparse s) const {
    std::vector<std::size_t> order(s.pos.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.pos[a] < s.pos[b]; });
    Sparse out;
    for (std::size_t i : order) {
      if (!out.pos.empty() && out.pos.back() == s.pos[i]) {
        out.c.back() = R_->add(out.c.back(), s.c[i]);
      } else {
        out.pos.push_back(s.pos[i]);
        out.c.push_back(R_->reduce(s.c[i]));
      }
    }
    Sparse nz;
    for (std::size_t i = 0; i < out.pos.size(); ++i)
      if (out.c[i] != 0) {
        nz.pos.push_back(out.pos[i]);
        nz.c.push_back(out.c[i]);
      }
    return nz;
  }

  // acc += a·b through total degree `limit`. In lazy mode acc holds
  // unreduced sums; otherwise it stays reduced.
  // When `touched` is given, every slot written for the first time (marked
  // in mark_) is appended to it.
  void sparse_mul_add(const Sparse& a, const Sparse& b, std::vector<Residue>& acc, int limit,
                      std::vector<int>* touched = nullptr) {
    if (a.pos.empty() || b.pos.empty()) return;
    const MonomialIndex& idx = *idx_;
    const int min_b = idx.degree(b.pos.front());
    const bool lazy = R_->lazy_ok();
    const Residue M = R_->modulus();
    constexpr Residue kTop = static_cast<Residue>(1) << 127;
    for (std::size_t i = 0; i < a.pos.size(); ++i) {
      int dx = idx.degree(a.pos[i]);
      if (dx + min_b > limit) break;
      int end = idx.end_of_degree(limit - dx);
      std::uint32_t kx = idx.key(a.pos[i]);
      Residue cx = a.c[i];
      for (std::size_t j = 0; j < b.pos.size(); ++j) {
        if (b.pos[j] >= end) break;
        int at = idx.index_of_key(kx + idx.key(b.pos[j]));
        if (touched && !mark_[static_cast<std::size_t>(at)]) {
          mark_[static_cast<std::size_t>(at)] = 1;
          touched->push_back(at);
        }
        Residue& slot = acc[static_cast<std::size_t>(at)];
        if (lazy) {
          slot += static_cast<Residue>(static_cast<std::uint64_t>(cx)) * static_cast<std::uint64_t>(b.c[j]);
          if (slot & kTop) slot %= M;
        } else {
          slot = R_->add(slot, R_->mul(cx, b.c[j]));
        }
      }
    }
  }

  int mono_index(int j) const {
    for (std::size_t s = 0; s < mono_slot_.size(); ++s)
      if (mono_slot_[s] == j) return static_cast<int>(s);
    return -1;
  }
  int general_index(int j) const {
    for (std::size_t s = 0; s < general_.size(); ++s)
      if (general_[s] == j) return static_cast<int>(s);
    return -1;
  }

  const DenseSeries& power(std::size_t g, int t) {
    auto& table = powers_[g];
    if (table.empty()) {
      DenseSeries one(idx_);
      one.coeffs()[0] = 1;
      table.push_back(std::move(one));
    }
    while (static_cast<int>(table.size()) <= t) {
      int next_min = static_cast<int>(table.size()) * general_min_deg_[g];
      if (next_min > cap_) {
        table.emplace_back(idx_);
        continue;
      }
      table.push_back(dense_mul(*R_, table.back(), general_series_[g], cap_));
    }
    return table[static_cast<std::size_t>(t)];
  }

  // Π_g general[g]^beta[g], built from a smaller memoized power.
  const Sparse& joint_power(const std::vector<int>& beta) {
    auto it = joint_.find(beta);
    if (it != joint_.end()) return it->second;
    std::size_t last = beta.size();
    for (std::size_t g = 0; g < beta.size(); ++g)
      if (beta[g] > 0) last = g;
    if (last == beta.size()) {
      Sparse one;
      one.pos.push_back(0);
      one.c.push_back(1);
      return joint_.emplace(beta, std::move(one)).first->second;
    }
    std::vector<int> prev = beta;
    --prev[last];
    const Sparse& base = joint_power(prev);
    if (general_sparse_.size() != general_series_.size()) {
      for (const auto& d : general_series_) {
        Sparse s;
        for (int i : d.support()) {
          s.pos.push_back(i);
          s.c.push_back(d.coeffs()[static_cast<std::size_t>(i)]);
        }
        general_sparse_.push_back(std::move(s));
      }
    }
    if (scratch_.empty()) {
      scratch_.assign(static_cast<std::size_t>(idx_->size()), 0);
      mark_.assign(static_cast<std::size_t>(idx_->size()), 0);
    }
    std::vector<int> touched;
    sparse_mul_add(base, general_sparse_[last], scratch_, cap_, &touched);
    std::sort(touched.begin(), touched.end());
    Sparse next;
    for (int i : touched) {
      auto u = static_cast<std::size_t>(i);
      Residue c = R_->reduce(scratch_[u]);
      scratch_[u] = 0;
      mark_[u] = 0;
      if (c != 0) {
        next.pos.push_back(i);
        next.c.push_back(c);
      }
    }
    return joint_.emplace(beta, std::move(next)).first->second;
  }

  static bool is_constant(const DenseSeries& s) {
    const auto& c = s.coeffs();
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) return false;
    return true;
  }

  // items[lo, hi) share general exponents 0..level-1 and are sorted
  // lexicographically by their exponent vectors.
  DenseSeries horner(const std::vector<std::pair<std::vector<int>, const DenseSeries*>>& items, std::size_t lo,
                     std::size_t hi, std::size_t level, int cap) {
    DenseSeries acc(idx_);
    if (level == general_.size()) {
      for (std::size_t i = lo; i < hi; ++i) dense_add_scaled(*R_, acc, *items[i].second, 1);
      return acc;
    }
    for (std::size_t i = lo; i < hi;) {
      int t = items[i].first[level];
      std::size_t j = i;
      while (j < hi && items[j].first[level] == t) ++j;
      int pmin = t * general_min_deg_[level];
      if (pmin <= cap) {
        if (t == 0) {
          DenseSeries inner = horner(items, i, j, level + 1, cap);
          dense_add_scaled(*R_, acc, inner, 1);
        } else {
          DenseSeries inner = horner(items, i, j, level + 1, cap - pmin);
          const DenseSeries& p = power(level, t);
          if (is_constant(inner)) {
            dense_add_scaled(*R_, acc, p, inner.coeffs()[0]);
          } else {
            dense_mul_add(*R_, p, inner, acc, cap);
          }
        }
      }
      i = j;
    }
    return acc;
  }

  int m_;
  int n_ = 0;
  int cap_ = 0;
  std::unique_ptr<Ring> R_;
  std::shared_ptr<const MonomialIndex> idx_;
  std::vector<Kind> kind_;
  std::vector<Exponent> mono_e_;
  std::vector<Residue> mono_c_;
  std::vector<int> mono_slot_;
  std::vector<int> general_;
  std::vector<DenseSeries> general_series_;
  std::vector<int> general_min_deg_;
  std::vector<std::vector<DenseSeries>> powers_;
  std::map<std::vector<int>, Sparse> joint_;
  std::vector<Sparse> general_sparse_;
  std::vector<Residue> scratch_;
  std::vector<char> mark_;
};

}  // namespace

TruncatedSeries substitute(const TruncatedSeries& f, std::span<const TruncatedSeries> args) {
  Substituter sub(args, f.nvars(), f.cap());
  return sub.apply(f);
}

std::vector<TruncatedSeries> substitute_all(std::span<const TruncatedSeries> fs,
                                            std::span<const TruncatedSeries> args) {
  std::vector<TruncatedSeries> out;
  if (fs.empty()) return out;
  int cap = fs.front().cap();
  for (const auto& f : fs) cap = std::max(cap, f.cap());
  Substituter sub(args, fs.front().nvars(), cap);
  for (const auto& f : fs) out.push_back(sub.apply(f));
  return out;
}

TruncatedSeries reduce_mod_ell(const TruncatedSeries& f) {
  Ring k = f.ring().residue_field();
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Residue c = k.reduce(t.c);
    if (c != 0) out.push_back({t.e, c});
  }
  return SeriesBuilder::make(k, f.nvars(), f.cap(), std::move(out));
}

TruncatedSeries rename_variables(const TruncatedSeries& f, int nvars, std::span<const int> map) {
  if (static_cast<int>(map.size()) != f.nvars())
    throw Error(ErrorCode::VarArityMismatch, "variable map has the wrong length");
  for (int target : map)
    if (target < 0 || target >= nvars) throw Error(ErrorCode::VarArityMismatch, "variable map out of range");
  std::vector<std::pair<Exponent, Residue>> raw;
  raw.reserve(f.size());
  for (const auto& t : f.terms()) {
    Exponent e{};
    for (int k = 0; k < f.nvars(); ++k)
      e[static_cast<std::size_t>(map[static_cast<std::size_t>(k)])] += t.e[static_cast<std::size_t>(k)];
    raw.emplace_back(e, t.c);
  }
  return TruncatedSeries::from_terms(f.ring(), nvars, f.cap(), std::move(raw));
}

TruncatedSeries partial_derivative(const TruncatedSeries& f, int k) {
  if (k < 0 || k >= f.nvars()) throw Error(ErrorCode::VarArityMismatch, "variable index out of range");
  const Ring& R = f.ring();
  std::vector<std::pair<Exponent, Residue>> raw;
  for (const auto& t : f.terms()) {
    auto i = static_cast<std::size_t>(k);
    if (t.e[i] == 0) continue;
    Exponent e = t.e;
    Residue c = R.mul(t.c, R.from_int(e[i]));
    --e[i];
    raw.emplace_back(e, c);
  }
  return TruncatedSeries::from_terms(R, f.nvars(), std::max(0, f.cap() - 1), std::move(raw));
}

TruncatedSeries series_inverse(const TruncatedSeries& f) {
  const Ring& R = f.ring();
  Residue c0 = f.constant_term();
  if (!R.is_unit(c0)) throw Error(ErrorCode::InvalidArgument, "constant term is not a unit");
  const int cap = f.cap();
  auto idx = monomial_index(f.nvars(), cap);
  DenseSeries df = DenseSeries::from_sparse(f, idx);
  DenseSeries g(idx);
  g.coeffs()[0] = R.inverse(c0);
  // Newton iteration g ← g·(2 − f·g); each step doubles the exact degree.
  for (int exact = 0; exact < cap;) {
    exact = 2 * exact + 1;
    int lim = std::min(cap, exact);
    DenseSeries fg = dense_mul(R, df, g, lim);
    for (auto& c : fg.coeffs()) c = R.neg(c);
    fg.coeffs()[0] = R.add(fg.coeffs()[0], 2);
    g = dense_mul(R, g, fg, lim);
  }
  return g.to_sparse(R, cap);
}

Residue evaluate(const TruncatedSeries& f, std::span<const Residue> point) {
  if (static_cast<int>(point.size()) != f.nvars())
    throw Error(ErrorCode::VarArityMismatch, "point has the wrong dimension");
  const Ring& R = f.ring();
  std::vector<std::vector<Residue>> pw(point.size());
  for (std::size_t k = 0; k < point.size(); ++k) pw[k].push_back(1);
  Residue sum = 0;
  for (const auto& t : f.terms()) {
    Residue v = t.c;
    for (std::size_t k = 0; k < point.size(); ++k) {
      int e = t.e[k];
      while (static_cast<int>(pw[k].size()) <= e) pw[k].push_back(R.mul(pw[k].back(), R.reduce(point[k])));
      v = R.mul(v, pw[k][static_cast<std::size_t>(e)]);
    }
    sum = R.add(sum, v);
  }
  return sum;
}

}  // namespace tamefgl
