#pragma once

#include <string>

#include "graph.hpp"

namespace hc {

// Certificate identifying a colored graph up to color-preserving
// isomorphism: two graphs have equal certificates iff some bijection of
// their vertices preserves both adjacency and colors.
struct CanonicalForm {
  std::string bytes;

  bool operator==(const CanonicalForm&) const = default;
  auto operator<=>(const CanonicalForm&) const = default;
  std::string hex() const;
};

inline constexpr int kDefaultCanonBound = 8;

// Minimal encoding over all color-preserving relabelings, found by
// permutation search pruned with iterated partition refinement. Exponential
// in the worst case, hence the vertex bound.
CanonicalForm canonical_form(const ColoredGraph& g, int max_vertices = kDefaultCanonBound);

// Convenience: equality of canonical forms.
bool isomorphic(const ColoredGraph& g, const ColoredGraph& h,
                int max_vertices = kDefaultCanonBound);

}  // namespace hc
