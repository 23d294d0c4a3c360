#include <doctest.h>

#include "canonical.hpp"
#include "circuit.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "rng.hpp"
#include "system.hpp"

using namespace hc;

namespace {

// Random circuit over a small op alphabet, possibly with free leaves.
Circuit random_circuit(SplitMix64& rng, int size, bool allow_free) {
  if (size <= 1) {
    if (allow_free && rng.below(3) == 0) return Circuit::free_leaf();
    ColoredGraph g;
    g.n = static_cast<uint32_t>(rng.below(4));
    g.k = 2;
    g.color.assign(g.n, 0);
    for (uint32_t v = 0; v < g.n; ++v)
      if (rng.coin()) g.color[v] = static_cast<uint16_t>(1 + rng.below(2));
    for (uint32_t u = 1; u <= g.n; ++u)
      for (uint32_t v = u + 1; v <= g.n; ++v)
        if (rng.coin()) g.edges.push_back({u, v});
    return Circuit::leaf(std::move(g));
  }
  switch (rng.below(5)) {
    case 0: {
      int left = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(size - 1)));
      return Circuit::op(op_union(), {random_circuit(rng, left, allow_free),
                                      random_circuit(rng, size - 1 - left, allow_free)});
    }
    case 1: {
      int left = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(size - 1)));
      return Circuit::op(op_join(), {random_circuit(rng, left, allow_free),
                                     random_circuit(rng, size - 1 - left, allow_free)});
    }
    case 2:
      return Circuit::op(op_fuse(static_cast<uint16_t>(1 + rng.below(2))),
                         {random_circuit(rng, size - 1, allow_free)});
    case 3:
      return Circuit::op(op_recolor(1, 2), {random_circuit(rng, size - 1, allow_free)});
    default:
      return Circuit::op(op_eta(1, 2), {random_circuit(rng, size - 1, allow_free)});
  }
}

}  // namespace

TEST_CASE("parse atoms and forms") {
  Circuit x = parse_circuit("x");
  CHECK(x.nodes.size() == 1);
  CHECK(free_leaf_count(x) == 1);

  Circuit u = parse_circuit("(union (leaf \"graph n=1 k=1\\nc 1 1\") x)");
  CHECK(u.nodes.size() == 3);
  CHECK(free_leaf_count(u) == 1);
  CHECK(u.nodes[u.root].kind == NodeKind::Op);
  CHECK(u.nodes[u.root].op.tag == OpTag::Union);

  Circuit named = parse_circuit("(leaf @v1)");
  CHECK(named.nodes[named.root].kind == NodeKind::NamedLeaf);
  CHECK(named.names[0] == "v1");
}

TEST_CASE("parser errors carry position and reasons") {
  CHECK_THROWS_WITH_AS(parse_circuit("(fuse 1 x x)"), doctest::Contains("expects 1"), Error);
  CHECK_THROWS_AS(parse_circuit("(fuse 1 x y)"), Error);  // 'y' is not in the grammar
  CHECK_THROWS_AS(parse_circuit("(union x)"), Error);
  CHECK_THROWS_AS(parse_circuit("(eta 1 1 x)"), Error);
  CHECK_THROWS_AS(parse_circuit("(fuse 0 x)"), Error);
  CHECK_THROWS_AS(parse_circuit("(frob x)"), Error);
  CHECK_THROWS_AS(parse_circuit("(union x x"), Error);
  CHECK_THROWS_AS(parse_circuit(""), Error);
  CHECK_THROWS_AS(parse_circuit("x x"), Error);
  // Color bound enforced when given.
  CHECK_THROWS_AS(parse_circuit("(fuse 3 x)", 2), Error);
  CHECK_NOTHROW(parse_circuit("(fuse 2 x)", 2));
  // Position is reported.
  try {
    parse_circuit("(union x\n  (frob))");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("comments and whitespace are ignored") {
  Circuit c = parse_circuit("; a comment\n(union ; inline\n  x (leaf \"graph n=0 k=0\"))");
  CHECK(c.nodes.size() == 3);
}

TEST_CASE("render/parse round-trip on random circuits") {
  SplitMix64 rng(23);
  // The spec asks for 10^4 random circuits.
  for (int trial = 0; trial < 10'000; ++trial) {
    Circuit c = random_circuit(rng, 1 + static_cast<int>(rng.below(12)), true);
    std::string text = render_circuit(c);
    Circuit back = parse_circuit(text);
    CHECK(render_circuit(back) == text);
    CHECK(back.nodes.size() == c.nodes.size());
  }
}

TEST_CASE("substitute_free") {
  ColoredGraph k1 = single_vertex();
  Circuit sub = substitute_free(Circuit::free_leaf(), k1);
  CHECK(free_leaf_count(sub) == 0);
  CHECK(decode(sub) == k1);

  Circuit closed = parse_circuit("(leaf \"graph n=1 k=0\")");
  CHECK(render_circuit(substitute_free(closed, k1)) == render_circuit(closed));

  Circuit twice = Circuit::op(op_union(), {Circuit::free_leaf(), Circuit::free_leaf()});
  Circuit both = substitute_free(twice, k1);
  CHECK(free_leaf_count(both) == 0);
  CHECK(decode(both).n == 2);
}

TEST_CASE("decode") {
  CHECK(decode(Circuit::leaf(complete_graph(3))) == complete_graph(3));
  Circuit two = parse_circuit("(union (leaf \"graph n=1 k=0\") (leaf \"graph n=1 k=0\"))");
  ColoredGraph d = decode(two);
  CHECK(d.n == 2);
  CHECK(d.edges.empty());

  // eta over the union of two differently colored vertices gives an edge.
  Circuit cw = parse_circuit(
      "(eta 1 2 (union (leaf \"graph n=1 k=2\\nc 1 1\") (leaf \"graph n=1 k=2\\nc 1 2\")))");
  ColoredGraph e = decode(cw);
  CHECK(e.n == 2);
  CHECK(e.edges.size() == 1);

  CHECK_THROWS_AS(decode(Circuit::free_leaf()), Error);
  CHECK_THROWS_AS(decode(parse_circuit("(leaf @missing)")), Error);
}

TEST_CASE("decode honors the vertex budget") {
  // Tensor chain: (K2 x K2) x (K2 x K2) ... grows fast.
  Circuit k2 = Circuit::leaf(complete_graph(2));
  Circuit t = k2;
  for (int i = 0; i < 5; ++i) t = Circuit::op(op_tensor(), {t, t});
  DecodeOptions opts;
  opts.budget_vertices = 1000;
  CHECK_THROWS_AS(decode(t, opts), Error);
}

TEST_CASE("tree size") {
  CHECK(tree_size(Circuit::free_leaf()) == 1);
  Circuit c = parse_circuit("(union x (leaf \"graph n=0 k=0\"))");
  CHECK(tree_size(c) == 3);
  // Balanced binary tree of depth d has 2^(d+1)-1 nodes.
  Circuit t = Circuit::leaf(single_vertex());
  for (int d = 0; d < 3; ++d) t = Circuit::op(op_union(), {t, t});
  CHECK(tree_size(t) == 15);
}

TEST_CASE("decode composes with substitute_free") {
  SplitMix64 rng(29);
  ColoredGraph plug = parse_graph("graph n=2 k=2\ne 1 2\nc 1 1");
  for (int trial = 0; trial < 300; ++trial) {
    Circuit c = random_circuit(rng, 1 + static_cast<int>(rng.below(10)), true);
    Circuit closed = substitute_free(c, plug);
    REQUIRE(free_leaf_count(closed) == 0);
    // Reference: decode with an explicit bottom-up interpretation where
    // free leaves take the plug value.
    std::vector<ColoredGraph> values(c.nodes.size());
    for (uint32_t idx = 0; idx <= c.root; ++idx) {
      const CircuitNode& node = c.nodes[idx];
      if (node.kind == NodeKind::FreeLeaf) {
        values[idx] = plug;
      } else if (node.kind == NodeKind::GraphLeaf) {
        values[idx] = c.graphs[node.payload];
      } else {
        std::vector<ColoredGraph> args;
        for (uint32_t ci = 0; ci < node.child_count; ++ci)
          args.push_back(values[c.children[node.child_begin + ci]]);
        values[idx] = apply_op(node.op, args);
      }
    }
    CHECK(decode(closed) == values[c.root]);
  }
}

TEST_CASE("decode is isomorphism-invariant in leaf values") {
  // Swapping a leaf for an isomorphic graph yields an isomorphic decode.
  ColoredGraph p3a = parse_graph("graph n=3 k=2\ne 1 2\ne 2 3\nc 1 1");
  ColoredGraph p3b = parse_graph("graph n=3 k=2\ne 3 2\ne 2 1\nc 3 1");
  REQUIRE(isomorphic(p3a, p3b));
  Circuit ca = Circuit::op(op_eta(1, 2),
                           {Circuit::op(op_union(), {Circuit::leaf(p3a),
                                                     Circuit::leaf(single_vertex(2, 2))})});
  Circuit cb = Circuit::op(op_eta(1, 2),
                           {Circuit::op(op_union(), {Circuit::leaf(p3b),
                                                     Circuit::leaf(single_vertex(2, 2))})});
  CHECK(isomorphic(decode(ca), decode(cb)));
}

TEST_CASE("op signatures round-trip") {
  for (const OpKind& op :
       {op_union(), op_join(), op_tensor(), op_cartesian(), op_fuse(3), op_recolor(1, 2),
        op_eta(2, 5), op_subst(path_graph(3)), op_subst(edgeless_graph(2))}) {
    CHECK(parse_op_signature(op.signature()) == op);
  }
  CHECK_THROWS_AS(parse_op_signature("bogus"), Error);
  CHECK_THROWS_AS(parse_op_signature("fuse:0"), Error);
}
