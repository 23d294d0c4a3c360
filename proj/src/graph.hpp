#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hc {

// Finite simple undirected graph with vertices 1..n and k available vertex
// colors. color[v-1] is 0 for an uncolored vertex, otherwise a value in
// 1..k; color classes are therefore disjoint and may be empty. Edges are
// kept sorted with u < v and without duplicates, so structural equality is
// plain field equality. n == 0 is the empty structure.
struct ColoredGraph {
  uint32_t n = 0;
  uint16_t k = 0;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  std::vector<uint16_t> color;  // size n, 0 = uncolored

  bool operator==(const ColoredGraph&) const = default;

  size_t edge_count() const { return edges.size(); }
  bool has_colors() const {
    for (uint16_t c : color)
      if (c != 0) return true;
    return false;
  }
  size_t color_class_size(uint16_t i) const {
    size_t s = 0;
    for (uint16_t c : color)
      if (c == i) ++s;
    return s;
  }
};

// Constructors for common shapes, used heavily in tests.
ColoredGraph empty_graph(uint16_t k = 0);
ColoredGraph single_vertex(uint16_t k = 0, uint16_t color = 0);
ColoredGraph complete_graph(uint32_t n, uint16_t k = 0);
ColoredGraph path_graph(uint32_t n, uint16_t k = 0);
ColoredGraph edgeless_graph(uint32_t n, uint16_t k = 0);
ColoredGraph cycle_graph(uint32_t n, uint16_t k = 0);

// Normalizes an edge list in place: orders endpoints, sorts, drops
// duplicates. Rejects self-loops and out-of-range endpoints.
void normalize_edges(ColoredGraph& g);

// The four binary operations. Union and join require equal color counts;
// the products are defined for uncolored operands only.
ColoredGraph disjoint_union(const ColoredGraph& g, const ColoredGraph& h);
ColoredGraph join_graphs(const ColoredGraph& g, const ColoredGraph& h);
ColoredGraph tensor_product(const ColoredGraph& g, const ColoredGraph& h);
ColoredGraph cartesian_product(const ColoredGraph& g, const ColoredGraph& h);

// Contracts color class i to a single vertex that keeps color i. Edges from
// class members to outside vertices transfer to the contracted vertex;
// intra-class edges vanish and parallel edges collapse. An empty class
// leaves the graph unchanged.
ColoredGraph fuse(const ColoredGraph& g, uint16_t i);

// Moves every vertex of color i to color j.
ColoredGraph recolor(const ColoredGraph& g, uint16_t i, uint16_t j);

// Adds every edge between color classes i and j (i != j). Idempotent.
ColoredGraph add_bicolor_edges(const ColoredGraph& g, uint16_t i, uint16_t j);

// Substitutes parts[v-1] for each vertex v of the uncolored template:
// disjoint copies of the parts, plus all cross edges between parts whose
// template vertices are adjacent.
ColoredGraph substitute(const ColoredGraph& tmpl, std::span<const ColoredGraph> parts);

// Induced subgraph on the given vertex set, relabelled 1..|s| in ascending
// vertex order.
ColoredGraph induced_subgraph(const ColoredGraph& g, std::span<const uint32_t> vertices);

// Text format (bit-exact):
//   graph n=<N> k=<K>
//   e <u> <v>
//   c <v> <i>
// One directive per line; vertices 1-based; duplicate `e` lines (in either
// orientation), self-loops and duplicate `c` lines are rejected. ';' is
// accepted as an alternative line separator so a graph can be embedded in a
// single physical line.
ColoredGraph parse_graph(std::string_view text);
std::string render_graph(const ColoredGraph& g);
// Single-line rendering with ';' separators, for embedding.
std::string render_graph_inline(const ColoredGraph& g);

}  // namespace hc
