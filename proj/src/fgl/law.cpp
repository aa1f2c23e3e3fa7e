#include "tamefgl/fgl/law.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tamefgl/error.hpp"
#include "tamefgl/padic/linear_algebra.hpp"

namespace tamefgl {

namespace {

TruncatedSeries var(const Ring& R, int n, int cap, int k) { return TruncatedSeries::variable(R, n, cap, k); }

std::vector<int> iota_map(int n, int offset) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), offset);
  return m;
}

// Smallest monomial (canonical order) whose coefficients differ.
std::optional<Exponent> first_difference(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int n = a.nvars();
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && graded_less(ia->e, ib->e, n))) return ia->e;
    if (ia == ea || graded_less(ib->e, ia->e, n)) return ib->e;
    if (ia->c != b.coeff(ia->e)) return ia->e;
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

struct Offender {
  Exponent e;
  int coordinate;
};

void keep_smallest(std::optional<Offender>& best, const Exponent& e, int coordinate, int nvars) {
  if (!best || graded_less(e, best->e, nvars)) best = Offender{e, coordinate};
}

std::string render(const std::optional<Offender>& o, int nvars, int dim) {
  std::string name = monomial_name(o->e, nvars, dim);
  if (dim > 1) name += " in F" + std::to_string(o->coordinate + 1);
  return name;
}

Matrix linear_part(std::span<const TruncatedSeries> t) {
  const Ring& R = t.front().ring();
  const int n = static_cast<int>(t.size());
  Matrix m(R, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = t[static_cast<std::size_t>(i)].coeff(unit_exponent(j));
  return m;
}

// Σ_j m_ij · s_j for each i.
std::vector<TruncatedSeries> apply_matrix(const Matrix& m, std::span<const TruncatedSeries> s) {
  std::vector<TruncatedSeries> out;
  for (int i = 0; i < m.n; ++i) {
    TruncatedSeries acc(s.front().ring(), s.front().nvars(), s.front().cap());
    for (int j = 0; j < m.n; ++j)
      if (m.at(i, j) != 0) acc = acc + s[static_cast<std::size_t>(j)].scaled(m.at(i, j));
    out.push_back(std::move(acc));
  }
  return out;
}

Matrix invert(const Matrix& m) {
  const Ring& R = m.ring;
  Residue det = determinant(m);
  if (!R.is_unit(det)) throw Error(ErrorCode::NonInvertibleLinearPart, "linear part is not invertible mod ℓ");
  Matrix adj = adjugate(m);
  Residue inv = R.inverse(det);
  for (auto& x : adj.a) x = R.mul(x, inv);
  return adj;
}

bool is_linear(std::span<const TruncatedSeries> t) {
  for (const auto& s : t)
    for (const auto& term : s.terms())
      if (total_degree(term.e, s.nvars()) != 1) return false;
  return true;
}

// Composition of n-tuples: outer(inner).
std::vector<TruncatedSeries> compose(std::span<const TruncatedSeries> outer, std::span<const TruncatedSeries> inner) {
  return substitute_all(outer, inner);
}

void require_zero_constant(std::span<const TruncatedSeries> t) {
  for (const auto& s : t)
    if (s.constant_term() != 0) throw Error(ErrorCode::NonzeroConstantTerm, "change of coordinates has a constant term");
}

}  // namespace

std::string monomial_name(const Exponent& e, int nvars, int dim) {
  static const char* kBlocks[] = {"X", "Y", "Z"};
  std::ostringstream os;
  bool any = false;
  for (int k = 0; k < nvars; ++k) {
    int p = e[static_cast<std::size_t>(k)];
    if (p == 0) continue;
    if (any) os << "*";
    any = true;
    int block = k / dim;
    os << (block < 3 ? kBlocks[block] : "W");
    if (dim > 1) os << (k % dim + 1);
    if (p > 1) os << "^" << p;
  }
  return any ? os.str() : "1";
}

std::string map_monomial_name(const Exponent& e, int nvars) {
  std::ostringstream os;
  bool any = false;
  for (int k = 0; k < nvars; ++k) {
    int p = e[static_cast<std::size_t>(k)];
    if (p == 0) continue;
    if (any) os << "*";
    any = true;
    os << "Z";
    if (nvars > 1) os << (k + 1);
    if (p > 1) os << "^" << p;
  }
  return any ? os.str() : "1";
}

FormalGroupLaw::FormalGroupLaw(int dim, std::vector<TruncatedSeries> laws, std::string provenance)
    : dim_(dim), laws_(std::move(laws)), provenance_(std::move(provenance)) {
  if (dim < 1 || dim > 2) throw Error(ErrorCode::DimMismatch, "only dimensions 1 and 2 are supported");
  if (static_cast<int>(laws_.size()) != dim)
    throw Error(ErrorCode::DimMismatch, "expected " + std::to_string(dim) + " series");
  for (const auto& s : laws_) {
    if (s.nvars() != 2 * dim) throw Error(ErrorCode::VarArityMismatch, "a law series needs 2·dim variables");
    if (!(s.ring() == laws_.front().ring())) throw Error(ErrorCode::RingMismatch, "law series in different rings");
    if (s.cap() != laws_.front().cap()) throw Error(ErrorCode::CapMismatch, "law series with different caps");
  }
}

FormalGroupLaw FormalGroupLaw::opaque() const { return FormalGroupLaw(dim_, laws_, provenance_); }

Residue weierstrass_discriminant(const Ring& R, const Weierstrass& w) {
  auto c = [&](std::int64_t x) { return R.from_int(x); };
  auto mul = [&](std::initializer_list<Residue> xs) {
    Residue p = 1;
    for (auto x : xs) p = R.mul(p, x);
    return p;
  };
  Residue a1 = c(w.a1), a2 = c(w.a2), a3 = c(w.a3), a4 = c(w.a4), a6 = c(w.a6);
  Residue b2 = R.add(mul({a1, a1}), mul({4, a2}));
  Residue b4 = R.add(mul({2, a4}), mul({a1, a3}));
  Residue b6 = R.add(mul({a3, a3}), mul({4, a6}));
  Residue b8 = R.add(mul({a1, a1, a6}), mul({4, a2, a6}));
  b8 = R.sub(b8, mul({a1, a3, a4}));
  b8 = R.add(b8, mul({a2, a3, a3}));
  b8 = R.sub(b8, mul({a4, a4}));
  Residue d = R.neg(mul({b2, b2, b8}));
  d = R.sub(d, mul({8, b4, b4, b4}));
  d = R.sub(d, mul({27, b6, b6}));
  d = R.add(d, mul({9, b2, b4, b6}));
  return d;
}

FormalGroupLaw additive_fgl(const Ring& R, int cap) {
  return FormalGroupLaw(1, {var(R, 2, cap, 0) + var(R, 2, cap, 1)}, "additive");
}

FormalGroupLaw multiplicative_fgl(const Ring& R, int cap) {
  auto X = var(R, 2, cap, 0), Y = var(R, 2, cap, 1);
  return FormalGroupLaw(1, {X + Y + X * Y}, "multiplicative");
}

FormalGroupLaw elliptic_fgl(const Ring& R, const Weierstrass& w, int cap) {
  if (cap < 1) throw Error(ErrorCode::CapTooSmall, "cap must be at least 1");
  if (weierstrass_discriminant(R, w) == 0)
    throw Error(ErrorCode::SingularCurve, "Weierstrass discriminant vanishes in " + R.describe());
  auto c = [&](std::int64_t x) { return R.from_int(x); };

  // w(z) = z³ + a1 z w + a2 z² w + a3 w² + a4 z w² + a6 w³, by fixed point.
  const int wcap = cap + 1;
  auto z = var(R, 1, wcap, 0);
  auto z2 = z * z, z3 = z2 * z;
  TruncatedSeries W(R, 1, wcap);
  for (int it = 0; it <= wcap; ++it) {
    auto W2 = W * W;
    auto next = z3 + (z * W).scaled(c(w.a1)) + (z2 * W).scaled(c(w.a2)) + W2.scaled(c(w.a3)) +
                (z * W2).scaled(c(w.a4)) + (W2 * W).scaled(c(w.a6));
    if (next == W) break;
    W = std::move(next);
  }

  // λ = Σ_n A_{n−3} (z2^n − z1^n)/(z2 − z1), with A_k the coefficient of z^{k+3}.
  std::vector<std::pair<Exponent, Residue>> lam_terms;
  for (int n = 3; n <= cap + 1; ++n) {
    Residue A = W.coeff(Exponent{static_cast<std::uint16_t>(n)});
    if (A == 0) continue;
    for (int i = 0; i <= n - 1; ++i)
      lam_terms.push_back({Exponent{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(n - 1 - i)}, A});
  }
  auto lambda = TruncatedSeries::from_terms(R, 2, cap, std::move(lam_terms));
  auto Z1 = var(R, 2, cap, 0), Z2 = var(R, 2, cap, 1);
  std::vector<int> to_first{0};
  auto Wz1 = rename_variables(W, 2, to_first).truncated(cap);
  auto nu = Wz1 - lambda * Z1;
  auto lam2 = lambda * lambda;
  // The line w = λz + ν meets the curve in z1, z2, z3; their sum is −(z² coeff)/(z³ coeff).
  auto num = -(lambda.scaled(c(w.a1)) + lam2.scaled(c(w.a3)) + nu.scaled(c(w.a2)) +
               (lambda * nu).scaled(c(2 * w.a4)) + (lam2 * nu).scaled(c(3 * w.a6)));
  auto one = TruncatedSeries::constant(R, 2, cap, 1);
  auto den = one + lambda.scaled(c(w.a2)) + lam2.scaled(c(w.a4)) + (lam2 * lambda).scaled(c(w.a6));
  auto zsum = num * series_inverse(den) - Z1 - Z2;

  // The law is the inverse point of the third intersection: i(z) = z/(a1 z + a3 w(z) − 1).
  auto denom = zsum.scaled(c(w.a1)) - one;
  if (c(w.a3) != 0) {
    std::vector<TruncatedSeries> arg{zsum};
    denom = denom + substitute(W.truncated(cap), arg).scaled(c(w.a3));
  }
  auto law = zsum * series_inverse(denom);

  std::ostringstream prov;
  prov << "elliptic[a1=" << w.a1 << ",a2=" << w.a2 << ",a3=" << w.a3 << ",a4=" << w.a4 << ",a6=" << w.a6 << "]";
  return FormalGroupLaw(1, {law}, prov.str());
}

FormalGroupLaw product_fgl(const FormalGroupLaw& f, const FormalGroupLaw& g) {
  if (f.dim() != 1 || g.dim() != 1) throw Error(ErrorCode::DimMismatch, "product needs two 1-dim laws");
  if (!(f.ring() == g.ring())) throw Error(ErrorCode::RingMismatch, f.ring().describe() + " vs " + g.ring().describe());
  if (f.cap() != g.cap()) throw Error(ErrorCode::CapMismatch, "factors have different caps");
  std::vector<int> first{0, 2}, second{1, 3};
  FormalGroupLaw h(2, {rename_variables(f.law(0), 4, first), rename_variables(g.law(0), 4, second)},
                   "product(" + f.provenance() + ", " + g.provenance() + ")");
  h.factors_ = {std::make_shared<const FormalGroupLaw>(f), std::make_shared<const FormalGroupLaw>(g)};
  return h;
}

std::vector<TruncatedSeries> compositional_inverse(std::span<const TruncatedSeries> t) {
  if (t.empty()) throw Error(ErrorCode::InvalidArgument, "empty change of coordinates");
  const int n = static_cast<int>(t.size());
  const Ring& R = t.front().ring();
  for (const auto& s : t)
    if (s.nvars() != n) throw Error(ErrorCode::VarArityMismatch, "change of coordinates must be n series in n variables");
  require_zero_constant(t);
  int cap = t.front().cap();
  for (const auto& s : t) cap = std::min(cap, s.cap());
  Matrix linv = invert(linear_part(t));
  std::vector<TruncatedSeries> ident;
  for (int k = 0; k < n; ++k) ident.push_back(var(R, n, cap, k));
  std::vector<TruncatedSeries> s = apply_matrix(linv, ident);
  if (is_linear(t)) return s;
  // S ← S − L⁻¹(T(S) − Z): each pass fixes one more degree.
  for (int it = 0; it < cap; ++it) {
    auto ts = compose(t, s);
    std::vector<TruncatedSeries> err;
    for (int k = 0; k < n; ++k) err.push_back(ts[static_cast<std::size_t>(k)] - ident[static_cast<std::size_t>(k)]);
    auto corr = apply_matrix(linv, err);
    bool done = true;
    for (int k = 0; k < n; ++k) {
      if (!corr[static_cast<std::size_t>(k)].is_zero()) done = false;
      s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)] - corr[static_cast<std::size_t>(k)];
    }
    if (done) break;
  }
  return s;
}

FormalGroupLaw conjugate_fgl(const FormalGroupLaw& f, std::span<const TruncatedSeries> t) {
  const int n = f.dim();
  if (static_cast<int>(t.size()) != n) throw Error(ErrorCode::DimMismatch, "change of coordinates has the wrong length");
  for (const auto& s : t) {
    if (!(s.ring() == f.ring())) throw Error(ErrorCode::RingMismatch, "change of coordinates in another ring");
    if (s.nvars() != n) throw Error(ErrorCode::VarArityMismatch, "change of coordinates must be n series in n variables");
  }
  require_zero_constant(t);
  int cap = f.cap();
  for (const auto& s : t) cap = std::min(cap, s.cap());
  std::vector<TruncatedSeries> tt;
  for (const auto& s : t) tt.push_back(s.truncated(cap));
  auto tinv = compositional_inverse(tt);

  // F(T(X), T(Y)) in 2n variables, then T⁻¹ of that.
  std::vector<TruncatedSeries> args;
  auto xs = iota_map(n, 0), ys = iota_map(n, n);
  for (const auto& s : tt) args.push_back(rename_variables(s, 2 * n, xs));
  for (const auto& s : tt) args.push_back(rename_variables(s, 2 * n, ys));
  std::vector<TruncatedSeries> laws;
  for (const auto& s : f.laws()) laws.push_back(s.truncated(cap));
  auto w = substitute_all(laws, args);
  auto g = substitute_all(tinv, w);

  FormalGroupLaw out(n, std::move(g), "conjugate(" + f.provenance() + ")");
  out.base_ = std::make_shared<const FormalGroupLaw>(f);
  out.transform_ = std::move(tt);
  out.inverse_transform_ = std::move(tinv);
  return out;
}

MulByM mul_by_m(const FormalGroupLaw& f, int m, bool use_structure) {
  constexpr int kMaxM = 1000;
  if (m < 0 || m > kMaxM) throw Error(ErrorCode::InvalidArgument, "m must lie in [0, " + std::to_string(kMaxM) + "]");
  if (f.cap() < 1) throw Error(ErrorCode::CapTooSmall, "cap must be at least 1");
  const Ring& R = f.ring();
  const int n = f.dim();
  const int cap = f.cap();

  if (use_structure && !f.factors().empty()) {
    MulByM out{m, {}};
    for (int i = 0; i < n; ++i) {
      auto part = mul_by_m(*f.factors()[static_cast<std::size_t>(i)], m, true);
      std::vector<int> place{i};
      out.maps.push_back(rename_variables(part.maps.front(), n, place));
    }
    return out;
  }
  if (use_structure && f.conjugated_from()) {
    auto base = mul_by_m(*f.conjugated_from(), m, true);
    auto inner = compose(base.maps, f.transform());
    return MulByM{m, compose(f.inverse_transform(), inner)};
  }

  std::vector<TruncatedSeries> ident;
  for (int k = 0; k < n; ++k) ident.push_back(var(R, n, cap, k));
  if (m == 0) {
    std::vector<TruncatedSeries> zero(static_cast<std::size_t>(n), TruncatedSeries(R, n, cap));
    return MulByM{0, zero};
  }
  std::vector<TruncatedSeries> cur = ident;
  for (int k = 1; k < m; ++k) {
    std::vector<TruncatedSeries> args = ident;
    args.insert(args.end(), cur.begin(), cur.end());
    cur = substitute_all(f.laws(), args);
  }
  return MulByM{m, cur};
}

bool is_symmetric(const FormalGroupLaw& f) {
  if (f.dim() != 2) throw Error(ErrorCode::DimMismatch, "symmetry is defined for 2-dim laws");
  std::vector<int> swap{1, 0, 3, 2};
  return rename_variables(f.law(1), 4, swap) == f.law(0);
}

AxiomReport check_axioms(const FormalGroupLaw& f, std::optional<int> assoc_degree) {
  const int n = f.dim();
  const int nv = 2 * n;
  const int cap = f.cap();
  const Ring& R = f.ring();
  AxiomReport rep;
  rep.unit.name = "unit";
  rep.linear_term.name = "linear_term";
  rep.associativity.name = "associativity";
  rep.commutativity.name = "commutativity";
  rep.unit.degree_checked = cap;
  rep.linear_term.degree_checked = std::min(cap, 1);
  rep.commutativity.degree_checked = cap;

  std::optional<Offender> unit_bad, linear_bad, comm_bad;
  for (int i = 0; i < n; ++i) {
    const auto& s = f.law(i);
    bool seen_x = false, seen_y = false;
    for (const auto& t : s.terms()) {
      bool has_x = false, has_y = false;
      for (int k = 0; k < n; ++k) {
        has_x |= t.e[static_cast<std::size_t>(k)] != 0;
        has_y |= t.e[static_cast<std::size_t>(n + k)] != 0;
      }
      Exponent xi = unit_exponent(i), yi = unit_exponent(n + i);
      if (!has_y || !has_x) {
        bool ok = (t.e == xi || t.e == yi) && t.c == 1;
        if (t.e == xi) seen_x = true;
        if (t.e == yi) seen_y = true;
        if (!ok) keep_smallest(unit_bad, t.e, i, nv);
      }
      if (total_degree(t.e, nv) == 1 && !((t.e == xi || t.e == yi) && t.c == 1)) keep_smallest(linear_bad, t.e, i, nv);
      if (total_degree(t.e, nv) == 0) keep_smallest(linear_bad, t.e, i, nv);
    }
    if (cap >= 1) {
      if (!seen_x) {
        keep_smallest(unit_bad, unit_exponent(i), i, nv);
        keep_smallest(linear_bad, unit_exponent(i), i, nv);
      }
      if (!seen_y) {
        keep_smallest(unit_bad, unit_exponent(n + i), i, nv);
        keep_smallest(linear_bad, unit_exponent(n + i), i, nv);
      }
    }
    std::vector<int> swap_blocks;
    for (int k = 0; k < nv; ++k) swap_blocks.push_back((k + n) % nv);
    auto swapped = rename_variables(s, nv, swap_blocks);
    if (auto d = first_difference(s, swapped)) keep_smallest(comm_bad, *d, i, nv);
  }
  if (unit_bad) {
    rep.unit.pass = false;
    rep.unit.witness = render(unit_bad, nv, n);
  }
  if (linear_bad) {
    rep.linear_term.pass = false;
    rep.linear_term.witness = render(linear_bad, nv, n);
  }
  if (comm_bad) {
    rep.commutativity.pass = false;
    rep.commutativity.witness = render(comm_bad, nv, n);
  }

  // F(F(X,Y),Z) against F(X,F(Y,Z)) in 3n variables.
  int deg = assoc_degree.value_or(n == 1 ? std::min(cap, 64) : std::min(cap, 12));
  deg = std::clamp(deg, 0, cap);
  rep.associativity.degree_checked = deg;
  if (deg >= 1) {
    const int nv3 = 3 * n;
    std::vector<TruncatedSeries> laws, xy, yz;
    for (const auto& s : f.laws()) {
      auto st = s.truncated(deg);
      laws.push_back(st);
      xy.push_back(rename_variables(st, nv3, iota_map(nv, 0)));
      yz.push_back(rename_variables(st, nv3, iota_map(nv, n)));
    }
    std::vector<TruncatedSeries> left_args = xy, right_args;
    for (int k = 0; k < n; ++k) left_args.push_back(var(R, nv3, deg, 2 * n + k));
    for (int k = 0; k < n; ++k) right_args.push_back(var(R, nv3, deg, k));
    right_args.insert(right_args.end(), yz.begin(), yz.end());
    auto left = substitute_all(laws, left_args);
    auto right = substitute_all(laws, right_args);
    std::optional<Offender> assoc_bad;
    for (int i = 0; i < n; ++i)
      if (auto d = first_difference(left[static_cast<std::size_t>(i)], right[static_cast<std::size_t>(i)]))
        keep_smallest(assoc_bad, *d, i, nv3);
    if (assoc_bad) {
      rep.associativity.pass = false;
      rep.associativity.witness = render(assoc_bad, nv3, n);
    }
  }
  return rep;
}

int r_exponent(std::span<const TruncatedSeries> maps) {
  if (maps.empty()) throw Error(ErrorCode::InvalidArgument, "no series given");
  const int ell = maps.front().ring().ell();
  int u = 0;
  std::vector<TruncatedSeries> reduced;
  for (const auto& s : maps) {
    reduced.push_back(reduce_mod_ell(s));
    for (const auto& t : reduced.back().terms())
      for (int k = 0; k < s.nvars(); ++k) {
        int p = t.e[static_cast<std::size_t>(k)];
        if (p > 0 && (u == 0 || p < u)) u = p;
      }
  }
  bool all_zero = std::all_of(reduced.begin(), reduced.end(), [](const auto& s) { return s.is_zero(); });
  if (all_zero) throw Error(ErrorCode::ZeroSeries, "the series vanish mod ℓ through the cap");
  if (u == 0) throw Error(ErrorCode::NotAPowerOfEll, "only a constant term survives mod ℓ");
  if (u == 1) throw Error(ErrorCode::ZeroExponent, "a variable occurs to the first power (r = 0)");
  int r = 0;
  int q = 1;
  while (q < u) {
    q *= ell;
    ++r;
  }
  if (q != u) throw Error(ErrorCode::NotAPowerOfEll, "least exponent " + std::to_string(u) + " is not a power of ℓ");
  for (const auto& s : reduced)
    for (const auto& t : s.terms())
      for (int k = 0; k < s.nvars(); ++k)
        if (t.e[static_cast<std::size_t>(k)] % q != 0)
          throw Error(ErrorCode::NotAPowerOfEll,
                      "monomial " + map_monomial_name(t.e, s.nvars()) + " is not a series in Z^" +
                          std::to_string(q));
  return r;
}

namespace {

int log_ell(int ell, int t) {
  int s = 0;
  int q = 1;
  while (q < t) {
    q *= ell;
    ++s;
  }
  if (q != t) throw Error(ErrorCode::NotAPowerOfEll, std::to_string(t) + " is not a power of ℓ");
  return s;
}

// g(Z) = f(Z^q) ↦ f, known through degree ⌊cap/q⌋.
TruncatedSeries divide_exponents(const TruncatedSeries& g, int q) {
  std::vector<std::pair<Exponent, Residue>> raw;
  for (const auto& t : g.terms()) {
    Exponent e{};
    for (int k = 0; k < g.nvars(); ++k) e[static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(t.e[static_cast<std::size_t>(k)] / q);
    raw.emplace_back(e, t.c);
  }
  return TruncatedSeries::from_terms(g.ring(), g.nvars(), g.cap() / q, std::move(raw));
}

}  // namespace

HeightResult height(std::span<const TruncatedSeries> ell_map) {
  if (ell_map.empty() || ell_map.size() > 2) throw Error(ErrorCode::DimMismatch, "height supports dimensions 1 and 2");
  const int n = static_cast<int>(ell_map.size());
  const int ell = ell_map.front().ring().ell();
  std::vector<TruncatedSeries> g;
  for (const auto& s : ell_map) {
    if (s.nvars() != n) throw Error(ErrorCode::VarArityMismatch, "[ℓ] must have n series in n variables");
    g.push_back(reduce_mod_ell(s));
  }
  HeightResult res;
  for (const auto& s : g)
    if (s.is_zero()) {
      res.infinite = true;
      res.note = "a coordinate of [ℓ] vanishes mod ℓ through degree " + std::to_string(s.cap());
      return res;
    }
  if (n == 1) {
    res.h = log_ell(ell, g.front().min_degree());
    res.r = res.h;
    return res;
  }

  const int r = r_exponent(g);
  int q = 1;
  for (int i = 0; i < r; ++i) q *= ell;
  std::vector<TruncatedSeries> f{divide_exponents(g[0], q), divide_exponents(g[1], q)};
  const Ring& k = f[0].ring();
  const int dcap = f[0].cap();

  // Pivot: a generator with a nonzero linear coefficient, preferring Z1.
  int gen = -1, variable = -1;
  for (int v = 0; v < 2 && gen < 0; ++v)
    for (int i = 0; i < 2 && gen < 0; ++i)
      if (f[static_cast<std::size_t>(i)].coeff(unit_exponent(v)) != 0) {
        gen = i;
        variable = v;
      }
  if (gen < 0)
    throw Error(ErrorCode::Unsupported,
                "no linear term after extracting Z^" + std::to_string(q) + "; general standard bases are not implemented");
  if (variable == 1) {
    std::vector<int> swap{1, 0};
    f[0] = rename_variables(f[0], 2, swap);
    f[1] = rename_variables(f[1], 2, swap);
  }
  const TruncatedSeries& pivot = f[static_cast<std::size_t>(gen)];
  const TruncatedSeries& other = f[static_cast<std::size_t>(1 - gen)];
  Residue a = pivot.coeff(unit_exponent(0));
  Residue a_inv = k.inverse(a);

  // Solve pivot(φ(W), W) = 0 for φ; the quotient is then F_ℓ[[W]]/(other(φ, W)).
  auto W = TruncatedSeries::variable(k, 1, dcap, 0);
  TruncatedSeries phi(k, 1, dcap);
  for (int it = 0; it <= dcap; ++it) {
    std::vector<TruncatedSeries> args{phi, W};
    auto val = substitute(pivot, args);
    if (val.is_zero()) break;
    phi = phi - val.scaled(a_inv);
  }
  std::vector<TruncatedSeries> args{phi, W};
  auto h1 = substitute(other, args);
  if (h1.is_zero())
    throw Error(ErrorCode::CapTooSmall, "elimination does not close through degree " + std::to_string(dcap) +
                                            " after extracting Z^" + std::to_string(q));
  int t = h1.min_degree();
  res.r = r;
  res.s = log_ell(ell, t);
  res.h = 2 * r + res.s;
  return res;
}

HeightResult height(const FormalGroupLaw& f) {
  auto m = mul_by_m(f, f.ring().ell());
  return height(m.maps);
}

}  // namespace tamefgl
