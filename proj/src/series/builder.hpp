#pragma once

#include <vector>

#include "tamefgl/series/series.hpp"

namespace tamefgl {

/// Builds a series from terms that are already canonical (sorted, nonzero,
/// within the cap) without re-sorting.
class SeriesBuilder {
 public:
  static TruncatedSeries make(const Ring& ring, int nvars, int cap, std::vector<Term> terms) {
    TruncatedSeries s(ring, nvars, cap);
    s.terms_ = std::move(terms);
    return s;
  }
};

}  // namespace tamefgl
