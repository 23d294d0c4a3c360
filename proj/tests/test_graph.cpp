#include <doctest.h>

#include <set>

#include "canonical.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace hc;

namespace {

ColoredGraph g(const char* text) { return parse_graph(text); }

int component_count(const ColoredGraph& gr) {
  std::vector<int> comp(gr.n, -1);
  int nc = 0;
  for (uint32_t s = 0; s < gr.n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = nc;
    std::vector<uint32_t> stack{s};
    while (!stack.empty()) {
      uint32_t v = stack.back();
      stack.pop_back();
      for (auto [a, b] : gr.edges) {
        uint32_t u = UINT32_MAX;
        if (a - 1 == v) u = b - 1;
        if (b - 1 == v) u = a - 1;
        if (u != UINT32_MAX && comp[u] == -1) {
          comp[u] = nc;
          stack.push_back(u);
        }
      }
    }
    ++nc;
  }
  return nc;
}

// Random relabeling of the vertices, colors carried along.
ColoredGraph shuffled(const ColoredGraph& in, SplitMix64& rng) {
  std::vector<uint32_t> perm(in.n);
  for (uint32_t i = 0; i < in.n; ++i) perm[i] = i + 1;
  for (uint32_t i = in.n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  ColoredGraph out;
  out.n = in.n;
  out.k = in.k;
  out.color.assign(in.n, 0);
  for (uint32_t v = 0; v < in.n; ++v) out.color[perm[v] - 1] = in.color[v];
  for (auto [u, v] : in.edges)
    out.edges.push_back({std::min(perm[u - 1], perm[v - 1]), std::max(perm[u - 1], perm[v - 1])});
  normalize_edges(out);
  return out;
}

ColoredGraph random_graph(SplitMix64& rng, uint32_t max_n, uint16_t k) {
  ColoredGraph out;
  out.n = static_cast<uint32_t>(rng.below(max_n + 1));
  out.k = k;
  out.color.assign(out.n, 0);
  for (uint32_t v = 0; v < out.n; ++v)
    if (k > 0 && rng.coin()) out.color[v] = static_cast<uint16_t>(1 + rng.below(k));
  for (uint32_t u = 1; u <= out.n; ++u)
    for (uint32_t v = u + 1; v <= out.n; ++v)
      if (rng.coin()) out.edges.push_back({u, v});
  return out;
}

}  // namespace

TEST_CASE("disjoint union basics") {
  ColoredGraph k1 = single_vertex();
  CHECK(disjoint_union(empty_graph(), k1) == k1);
  ColoredGraph two = disjoint_union(k1, k1);
  CHECK(two.n == 2);
  CHECK(two.edges.empty());
  ColoredGraph u = disjoint_union(path_graph(2), path_graph(3));
  CHECK(u.n == 5);
  CHECK(u.edges.size() == 3);
  CHECK(component_count(u) == 2);
  ColoredGraph colored = single_vertex(1, 1);
  CHECK_THROWS_AS(disjoint_union(k1, colored), Error);
}

TEST_CASE("join basics") {
  ColoredGraph k1 = single_vertex();
  ColoredGraph gg = path_graph(3);
  CHECK(isomorphic(join_graphs(empty_graph(), gg), gg));
  CHECK(isomorphic(join_graphs(k1, k1), complete_graph(2)));
  CHECK(isomorphic(join_graphs(complete_graph(2), complete_graph(2)), complete_graph(4)));
  ColoredGraph a = path_graph(3), b = cycle_graph(4);
  CHECK(join_graphs(a, b).edges.size() == a.edges.size() + b.edges.size() + size_t(a.n) * b.n);
}

TEST_CASE("tensor product") {
  ColoredGraph k1 = single_vertex(), k2 = complete_graph(2), gg = cycle_graph(4);
  CHECK(tensor_product(empty_graph(), gg).n == 0);
  ColoredGraph t = tensor_product(k1, gg);
  CHECK(t.n == gg.n);
  CHECK(t.edges.empty());
  // K2 x_t K2: enumerating the predicate over all vertex pairs yields the
  // two edges (1,1)-(2,2) and (1,2)-(2,1).
  ColoredGraph tt = tensor_product(k2, k2);
  CHECK(tt.n == 4);
  REQUIRE(tt.edges.size() == 2);
  std::set<std::pair<uint32_t, uint32_t>> es(tt.edges.begin(), tt.edges.end());
  CHECK(es.count({1, 4}));
  CHECK(es.count({2, 3}));
  ColoredGraph colored = single_vertex(1, 1);
  CHECK_THROWS_AS(tensor_product(colored, colored), Error);
}

TEST_CASE("cartesian product") {
  ColoredGraph k1 = single_vertex(), k2 = complete_graph(2), gg = path_graph(3);
  CHECK(isomorphic(cartesian_product(k1, gg), gg));
  CHECK(cartesian_product(empty_graph(), gg).n == 0);
  CHECK(isomorphic(cartesian_product(k2, k2), cycle_graph(4)));
  ColoredGraph colored = single_vertex(1, 1);
  CHECK_THROWS_AS(cartesian_product(colored, colored), Error);
}

TEST_CASE("fuse") {
  ColoredGraph two = g("graph n=2 k=1\nc 1 1\nc 2 1");
  ColoredGraph f = fuse(two, 1);
  CHECK(f.n == 1);
  CHECK(f.color[0] == 1);

  // Path a(1)-b-c(1): both edges collapse onto the fused vertex.
  ColoredGraph path = g("graph n=3 k=1\ne 1 2\ne 2 3\nc 1 1\nc 3 1");
  ColoredGraph pf = fuse(path, 1);
  CHECK(pf.n == 2);
  CHECK(pf.edges.size() == 1);
  CHECK(pf.color_class_size(1) == 1);

  ColoredGraph plain = g("graph n=3 k=2\ne 1 2");
  CHECK(fuse(plain, 2) == plain);  // empty class
  CHECK_THROWS_AS(fuse(plain, 3), Error);

  // Intra-class edges vanish rather than becoming loops.
  ColoredGraph edge = g("graph n=2 k=1\ne 1 2\nc 1 1\nc 2 1");
  ColoredGraph ef = fuse(edge, 1);
  CHECK(ef.n == 1);
  CHECK(ef.edges.empty());
}

TEST_CASE("recolor") {
  ColoredGraph one = g("graph n=1 k=2\nc 1 1");
  CHECK(recolor(one, 1, 1) == one);
  CHECK(recolor(one, 1, 2).color[0] == 2);
  ColoredGraph two = g("graph n=2 k=2\nc 1 1\nc 2 2");
  ColoredGraph r = recolor(two, 1, 2);
  CHECK(r.color_class_size(2) == 2);
  CHECK(r.color_class_size(1) == 0);
  CHECK_THROWS_AS(recolor(one, 0, 1), Error);
  CHECK_THROWS_AS(recolor(one, 1, 3), Error);
}

TEST_CASE("add_bicolor_edges") {
  ColoredGraph uv = g("graph n=2 k=2\nc 1 1\nc 2 2");
  ColoredGraph e = add_bicolor_edges(uv, 1, 2);
  CHECK(e.edges.size() == 1);
  CHECK(add_bicolor_edges(e, 1, 2) == e);  // idempotent
  ColoredGraph none = g("graph n=2 k=2\nc 1 2\nc 2 2");
  CHECK(add_bicolor_edges(none, 1, 2) == none);  // empty class i
  CHECK_THROWS_AS(add_bicolor_edges(uv, 1, 1), Error);
}

TEST_CASE("substitute") {
  ColoredGraph a = path_graph(2), b = cycle_graph(3);
  ColoredGraph both[] = {a, b};
  CHECK(canonical_form(substitute(edgeless_graph(2), both)) ==
        canonical_form(disjoint_union(a, b)));
  CHECK(canonical_form(substitute(complete_graph(2), both)) ==
        canonical_form(join_graphs(a, b)));
  ColoredGraph only[] = {b};
  CHECK(substitute(single_vertex(), only) == b);
  CHECK_THROWS_AS(substitute(complete_graph(2), only), Error);
}

TEST_CASE("induced subgraph") {
  ColoredGraph k3 = complete_graph(3);
  CHECK(induced_subgraph(k3, std::vector<uint32_t>{1, 2, 3}) == k3);
  CHECK(induced_subgraph(k3, std::vector<uint32_t>{}).n == 0);
  CHECK(isomorphic(induced_subgraph(k3, std::vector<uint32_t>{1, 3}), complete_graph(2)));
  CHECK_THROWS_AS(induced_subgraph(k3, std::vector<uint32_t>{4}), Error);
}

TEST_CASE("canonical forms") {
  SplitMix64 rng(7);
  ColoredGraph p3 = path_graph(3);
  for (int i = 0; i < 20; ++i)
    CHECK(canonical_form(shuffled(p3, rng)) == canonical_form(p3));
  CHECK(canonical_form(p3) != canonical_form(complete_graph(3)));
  // Colors respected: endpoint-colored vs midpoint-colored P3 differ.
  ColoredGraph end = g("graph n=3 k=1\ne 1 2\ne 2 3\nc 1 1");
  ColoredGraph mid = g("graph n=3 k=1\ne 1 2\ne 2 3\nc 2 1");
  CHECK(canonical_form(end) != canonical_form(mid));
  CHECK_THROWS_AS(canonical_form(complete_graph(9)), Error);
}

TEST_CASE("canonical forms agree with brute-force isomorphism") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    ColoredGraph a = random_graph(rng, 5, 2);
    ColoredGraph b = rng.coin() ? shuffled(a, rng) : random_graph(rng, 5, 2);
    CHECK(isomorphic(a, b) == oracle::isomorphic_brute(a, b));
  }
}

TEST_CASE("operations are isomorphism-invariant") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    ColoredGraph a = random_graph(rng, 4, 2);
    ColoredGraph b = random_graph(rng, 4, 2);
    ColoredGraph a2 = shuffled(a, rng), b2 = shuffled(b, rng);
    CHECK(canonical_form(disjoint_union(a, b)) == canonical_form(disjoint_union(a2, b2)));
    CHECK(canonical_form(join_graphs(a, b)) == canonical_form(join_graphs(a2, b2)));
    CHECK(canonical_form(fuse(a, 1)) == canonical_form(fuse(a2, 1)));
    CHECK(canonical_form(recolor(a, 1, 2)) == canonical_form(recolor(a2, 1, 2)));
    CHECK(canonical_form(add_bicolor_edges(a, 1, 2)) ==
          canonical_form(add_bicolor_edges(a2, 1, 2)));
  }
}

TEST_CASE("binary operations commute up to isomorphism") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    ColoredGraph a = random_graph(rng, 4, 0);
    ColoredGraph b = random_graph(rng, 4, 0);
    CHECK(canonical_form(disjoint_union(a, b)) == canonical_form(disjoint_union(b, a)));
    CHECK(canonical_form(join_graphs(a, b)) == canonical_form(join_graphs(b, a)));
    // Products multiply vertex counts; keep them inside the canon bound.
    ColoredGraph c = random_graph(rng, 2, 0);
    CHECK(canonical_form(tensor_product(c, b)) == canonical_form(tensor_product(b, c)));
    CHECK(canonical_form(cartesian_product(c, b)) == canonical_form(cartesian_product(b, c)));
  }
}

TEST_CASE("graph text round-trip and rejects") {
  SplitMix64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    ColoredGraph a = random_graph(rng, 6, 3);
    CHECK(parse_graph(render_graph(a)) == a);
    CHECK(parse_graph(render_graph_inline(a)) == a);
  }
  CHECK_THROWS_AS(parse_graph("graph n=2 k=0\ne 1 2\ne 2 1"), Error);  // duplicate edge
  CHECK_THROWS_AS(parse_graph("graph n=2 k=0\ne 1 1"), Error);         // self-loop
  CHECK_THROWS_AS(parse_graph("graph n=2 k=0\ne 1 3"), Error);         // out of range
  CHECK_THROWS_AS(parse_graph("graph n=1 k=1\nc 1 2"), Error);         // color out of range
  CHECK_THROWS_AS(parse_graph("graph n=1 k=1\nc 1 1\nc 1 1"), Error);  // vertex recolored
  CHECK_THROWS_AS(parse_graph("n=1 k=0"), Error);                      // missing header
}
