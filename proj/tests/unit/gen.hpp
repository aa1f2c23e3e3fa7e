#pragma once

#include <random>
#include <vector>

#include "tamefgl/series/series.hpp"

namespace testgen {

using tamefgl::Exponent;
using tamefgl::Residue;
using tamefgl::Ring;
using tamefgl::TruncatedSeries;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }
  Residue residue(const Ring& R) {
    Residue hi = static_cast<Residue>(rng()) << 64 | rng();
    return hi % R.modulus();
  }
  Exponent exponent(int nvars, int max_degree) {
    Exponent e{};
    int budget = static_cast<int>(range(0, max_degree));
    for (int k = 0; k < nvars && budget > 0; ++k) {
      int v = (k == nvars - 1) ? budget : static_cast<int>(range(0, budget));
      e[static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(v);
      budget -= v;
    }
    return e;
  }
  /// Random sparse series; with zero_constant the constant term is dropped.
  TruncatedSeries series(const Ring& R, int nvars, int cap, int terms, bool zero_constant = false) {
    std::vector<std::pair<Exponent, Residue>> raw;
    for (int i = 0; i < terms; ++i) {
      Exponent e = exponent(nvars, cap);
      if (zero_constant && tamefgl::total_degree(e, nvars) == 0) continue;
      raw.emplace_back(e, residue(R));
    }
    return TruncatedSeries::from_terms(R, nvars, cap, std::move(raw));
  }
};

}  // namespace testgen
