#include "tamefgl/certify/hensel.hpp"

#include <algorithm>

#include "tamefgl/error.hpp"
#include "tamefgl/padic/linear_algebra.hpp"

namespace tamefgl {

namespace {

int vcap(const Ring& R, Residue x) { return x == 0 ? R.prec() : R.valuation(x).value(); }

int residual(const Ring& R, std::span<const TruncatedSeries> f, std::span<const Residue> x) {
  int v = R.prec();
  for (const auto& fi : f) v = std::min(v, vcap(R, evaluate(fi, x)));
  return v;
}

bool is_affine(std::span<const TruncatedSeries> system) {
  for (const auto& f : system)
    for (const auto& t : f.terms())
      if (total_degree(t.e, f.nvars()) > 1) return false;
  return true;
}

HenselResult iterate(std::span<const TruncatedSeries> system, std::span<const Residue> a, Residue e,
                     bool check_residual) {
  const int n = static_cast<int>(system.size());
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty system");
  const Ring& R = system.front().ring();
  for (const auto& f : system) {
    if (f.nvars() != n) throw Error(ErrorCode::VarArityMismatch, "the system needs n series in n variables");
    if (!(f.ring() == R)) throw Error(ErrorCode::RingMismatch, "series in different rings");
  }
  if (static_cast<int>(a.size()) != n) throw Error(ErrorCode::VarArityMismatch, "start point has the wrong length");
  for (Residue x : a)
    if (R.reduce(x) != 0 && R.is_unit(x))
      throw Error(ErrorCode::HypothesisViolated, "start point entries must have positive valuation");
  e = R.reduce(e);
  if (e == 0) throw Error(ErrorCode::HypothesisViolated, "e vanishes in the ring");
  const int ve = R.valuation(e).value();

  std::vector<std::vector<TruncatedSeries>> jac(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) jac[static_cast<std::size_t>(i)].push_back(partial_derivative(system[i], k));
  auto jacobian = [&](std::span<const Residue> x) {
    Matrix J(R, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        J.at(i, k) = evaluate(jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], x);
    return J;
  };

  std::vector<Residue> x(a.begin(), a.end());
  for (auto& v : x) v = R.reduce(v);
  int res = residual(R, system, x);
  if (check_residual && res <= 2 * ve)
    throw Error(ErrorCode::HypothesisViolated, "residual valuation " + std::to_string(res) +
                                                   " does not exceed 2·v(e) = " + std::to_string(2 * ve));
  {
    Residue d = determinant(jacobian(x));
    if (vcap(R, d) != ve)
      throw Error(ErrorCode::HypothesisViolated, "Jacobian determinant has valuation " + std::to_string(vcap(R, d)) +
                                                     ", expected v(e) = " + std::to_string(ve));
  }
  const int target = R.prec() - ve;
  constexpr int kMaxIterations = 64;
  HenselResult out;
  for (int it = 0; it < kMaxIterations && res < R.prec(); ++it) {
    Matrix J = jacobian(x);
    Residue det = determinant(J);
    int vd = vcap(R, det);
    if (vd != ve) throw Error(ErrorCode::HypothesisViolated, "the iteration left the Hensel ball");
    Residue unit_inv = R.inverse(R.divide_by_ell_power(det, vd));
    Matrix adj = adjugate(J);
    std::vector<Residue> fx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) fx[static_cast<std::size_t>(i)] = evaluate(system[i], x);
    std::vector<Residue> next = x;
    for (int i = 0; i < n; ++i) {
      Residue s = 0;
      for (int k = 0; k < n; ++k) s = R.add(s, R.mul(adj.at(i, k), fx[static_cast<std::size_t>(k)]));
      // adj·f has valuation ≥ v(det) inside the ball.
      if (vcap(R, s) < vd) throw Error(ErrorCode::HypothesisViolated, "Newton step is not integral");
      Residue step = R.mul(R.divide_by_ell_power(s, vd), unit_inv);
      next[static_cast<std::size_t>(i)] = R.sub(x[static_cast<std::size_t>(i)], step);
    }
    int nres = residual(R, system, next);
    if (nres <= res) break;
    x = std::move(next);
    res = nres;
    out.iterations = it + 1;
  }
  if (res < target)
    throw Error(ErrorCode::PrecisionExhausted,
                "residual valuation stalled at " + std::to_string(res) + " below " + std::to_string(target));
  out.root = x;
  out.precision = target;
  out.residual_valuation = res;
  out.shift_valuation = R.prec();
  for (int i = 0; i < n; ++i) out.shift_valuation = std::min(out.shift_valuation, vcap(R, R.sub(x[i], R.reduce(a[i]))));
  return out;
}

}  // namespace

HenselResult hensel_lift(std::span<const TruncatedSeries> system, std::span<const Residue> a, Residue e) {
  // An affine system is solved exactly by one step, so only the Jacobian
  // condition matters there.
  return iterate(system, a, e, !is_affine(system));
}

HenselResult newton_refine(std::span<const TruncatedSeries> system, std::span<const Residue> start, Residue e) {
  return iterate(system, start, e, false);
}

}  // namespace tamefgl
