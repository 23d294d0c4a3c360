#pragma once

#include <cstdint>
#include <string>

#include "property.hpp"

namespace hc {

struct SelftestResult {
  std::string report;
  bool ok = false;
};

// Reproduces the small-rank catalogue and the structural checks behind it:
// Hankel ranks of the four binary operations under connectivity on the
// n<=5 pool, the tensor rank cross-checked entry-by-entry against an
// independent recomputation, the submatrix rank inequality on the
// clique-width-2 system, and the rank equality across connected-of-order
// families. The report is byte-identical for any worker count.
SelftestResult run_selftest(uint64_t seed, int workers, const Conventions& conv = {});

}  // namespace hc
