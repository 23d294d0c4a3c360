#include <doctest.h>

#include <set>

#include "canonical.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "oracles.hpp"
#include "property.hpp"
#include "system.hpp"

using namespace hc;

namespace {

// Independent route: enumerate every labeled graph, filter by brute-force
// isomorphism.
size_t labeled_class_count(int n, int k) {
  std::vector<ColoredGraph> classes;
  std::vector<std::pair<uint32_t, uint32_t>> all_edges;
  for (uint32_t u = 1; u <= static_cast<uint32_t>(n); ++u)
    for (uint32_t v = u + 1; v <= static_cast<uint32_t>(n); ++v) all_edges.push_back({u, v});
  uint64_t edge_masks = uint64_t(1) << all_edges.size();
  uint64_t colorings = 1;
  for (int i = 0; i < n; ++i) colorings *= (k + 1);
  for (uint64_t em = 0; em < edge_masks; ++em) {
    for (uint64_t cm = 0; cm < colorings; ++cm) {
      ColoredGraph g;
      g.n = static_cast<uint32_t>(n);
      g.k = static_cast<uint16_t>(k);
      g.color.assign(n, 0);
      uint64_t c = cm;
      for (int v = 0; v < n; ++v) {
        g.color[v] = static_cast<uint16_t>(c % (k + 1));
        c /= (k + 1);
      }
      for (size_t e = 0; e < all_edges.size(); ++e)
        if ((em >> e) & 1) g.edges.push_back(all_edges[e]);
      bool seen = false;
      for (const ColoredGraph& h : classes)
        if (oracle::isomorphic_brute(g, h)) {
          seen = true;
          break;
        }
      if (!seen) classes.push_back(std::move(g));
    }
  }
  return classes.size();
}

}  // namespace

TEST_CASE("enum_graphs small counts") {
  CHECK(enum_graphs(1, 0).size() == 2);  // empty + K1
  CHECK(enum_graphs(2, 0).size() == 4);  // + 2K1, K2
  // 1,1,2,4,11 unlabeled graphs on 0..4 vertices.
  StructurePool p4 = enum_graphs(4, 0);
  CHECK(p4.size() == 19);
  CHECK(enum_graphs(5, 0).size() == 53);  // + 34 on five vertices
  CHECK(p4.graphs[0].n == 0);             // empty structure first
  // Deterministic order: nondecreasing vertex count, certificate order.
  for (size_t i = 1; i < p4.size(); ++i) {
    CHECK(p4.graphs[i - 1].n <= p4.graphs[i].n);
    if (p4.graphs[i - 1].n == p4.graphs[i].n)
      CHECK(p4.forms[i - 1].bytes < p4.forms[i].bytes);
  }
  CHECK_THROWS_AS(enum_graphs(9, 0), Error);  // beyond the canon bound
}

TEST_CASE("enum_graphs matches the exhaustive isomorphism filter") {
  for (int n = 0; n <= 5; ++n) {
    size_t got = 0;
    StructurePool pool = enum_graphs(n, 0);
    for (const auto& g : pool.graphs)
      if (g.n == static_cast<uint32_t>(n)) ++got;
    CHECK(got == labeled_class_count(n, 0));
  }
  // And with one color, up to 3 vertices.
  for (int n = 0; n <= 3; ++n) {
    size_t got = 0;
    StructurePool pool = enum_graphs(n, 1);
    for (const auto& g : pool.graphs)
      if (g.n == static_cast<uint32_t>(n)) ++got;
    CHECK(got == labeled_class_count(n, 1));
  }
}

TEST_CASE("enum_graphs pools are duplicate-free") {
  StructurePool pool = enum_graphs(4, 2);
  std::set<std::string> certs;
  for (const auto& f : pool.forms) CHECK(certs.insert(f.bytes).second);
  CHECK(pool.size() == certs.size());
}

TEST_CASE("enum_contexts depth 0 and 1") {
  InductiveSystem sys = make_union_system();
  StructurePool pool = enum_graphs(1, 0);  // {empty, K1}
  auto depth0 = enum_contexts(sys, pool, 0);
  REQUIRE(depth0.size() == 1);
  CHECK(render_circuit(depth0[0]) == "x");

  auto depth1 = enum_contexts(sys, pool, 1);
  REQUIRE(depth1.size() == 5);
  std::set<std::string> texts;
  for (const auto& c : depth1) texts.insert(render_circuit(c));
  CHECK(texts.count("x"));
  CHECK(texts.count("(union x (leaf \"graph n=0 k=0\\n\"))"));
  CHECK(texts.count("(union x (leaf \"graph n=1 k=0\\n\"))"));
  CHECK(texts.count("(union (leaf \"graph n=0 k=0\\n\") x)"));
  CHECK(texts.count("(union (leaf \"graph n=1 k=0\\n\") x)"));
}

TEST_CASE("enum_contexts unary nesting and budget") {
  InductiveSystem sys;
  sys.name = "fuse-only";
  sys.k = 1;
  sys.base.push_back({"a", single_vertex(1, 1)});
  sys.ops.push_back(op_fuse(1));
  StructurePool pool = enum_graphs(1, 1);
  auto ctxs = enum_contexts(sys, pool, 2);
  std::set<std::string> texts;
  for (const auto& c : ctxs) texts.insert(render_circuit(c));
  CHECK(texts.count("(fuse 1 (fuse 1 x))"));
  CHECK(ctxs.size() == 3);  // x, fuse(x), fuse(fuse(x))
  CHECK_THROWS_AS(enum_contexts(make_union_system(), enum_graphs(2, 0), 3, 10), Error);
}

TEST_CASE("every context has exactly one free leaf") {
  InductiveSystem sys = make_cliquewidth_system(2);
  StructurePool pool = enum_graphs(1, 2);
  for (const auto& c : enum_contexts(sys, pool, 2)) CHECK(free_leaf_count(c) == 1);
}

TEST_CASE("gen_parse_tree determinism and size") {
  InductiveSystem cw2 = make_cliquewidth_system(2);
  Circuit one = gen_parse_tree(cw2, 1, 42);
  CHECK(tree_size(one) == 1);
  for (uint64_t seed : {0ull, 1ull, 99ull}) {
    Circuit a = gen_parse_tree(cw2, 37, seed);
    Circuit b = gen_parse_tree(cw2, 37, seed);
    CHECK(render_circuit(a) == render_circuit(b));
    CHECK(tree_size(a) == 37);
    DecodeOptions opts;
    opts.system = &cw2;
    CHECK_NOTHROW(decode(a, opts));
  }
  CHECK(render_circuit(gen_parse_tree(cw2, 37, 7)) !=
        render_circuit(gen_parse_tree(cw2, 37, 8)));
}

TEST_CASE("gen_parse_tree adjusts unreachable sizes") {
  // A binary-only system realizes only odd node counts.
  InductiveSystem u = make_union_system();
  CHECK(tree_size(gen_parse_tree(u, 10, 3)) == 9);
  CHECK(tree_size(gen_parse_tree(u, 11, 3)) == 11);
}

TEST_CASE("cw1 decodes are edgeless (exhaustive to size 7)") {
  InductiveSystem cw1 = make_cliquewidth_system(1);
  size_t count = 0;
  exhaustive_parse_trees(cw1, 7, [&](const Circuit& c) {
    ColoredGraph g = decode(c);
    ++count;
    CHECK(g.edges.empty());
    return true;
  });
  CHECK(count > 0);
}

TEST_CASE("exhaustive_parse_trees counts and uniqueness") {
  InductiveSystem u = make_union_system();  // one binary op, two bases
  std::vector<std::string> seen;
  exhaustive_parse_trees(u, 3, [&](const Circuit& c) {
    seen.push_back(render_circuit(c));
    return true;
  });
  // Sizes 1 and 3: 2 leaves + 4 combinations.
  CHECK(seen.size() == 6);
  std::set<std::string> uniq(seen.begin(), seen.end());
  CHECK(uniq.size() == seen.size());

  std::vector<std::string> leaves;
  exhaustive_parse_trees(u, 1, [&](const Circuit& c) {
    leaves.push_back(render_circuit(c));
    return true;
  });
  CHECK(leaves.size() == 2);

  CHECK_THROWS_AS(
      exhaustive_parse_trees(u, 9, [](const Circuit&) { return true; }, 5), Error);
}

TEST_CASE("exhaustive stream is duplicate-free for cw2 to size 5") {
  InductiveSystem cw2 = make_cliquewidth_system(2);
  std::set<std::string> seen;
  size_t count = 0;
  exhaustive_parse_trees(cw2, 5, [&](const Circuit& c) {
    ++count;
    CHECK(seen.insert(render_circuit(c)).second);
    return true;
  });
  CHECK(count == seen.size());
  // t(1)=2, t(2)=6, t(3)=22, t(4)=90, t(5)=394 with three unary ops and
  // one binary op over two bases.
  CHECK(count == 2 + 6 + 22 + 90 + 394);
}

TEST_CASE("decoded tw trees respect the tree-width bound") {
  for (int k : {1, 2}) {
    InductiveSystem tw = make_treewidth_system(k);
    int checked = 0;
    for (uint64_t seed = 0; checked < 60; ++seed) {
      Circuit t = gen_parse_tree(tw, 1 + seed % 14, seed);
      DecodeOptions opts;
      opts.system = &tw;
      ColoredGraph g = decode(t, opts);
      if (g.n > 8) continue;
      ++checked;
      CHECK(oracle::treewidth_brute(g) <= k);
    }
  }
}

TEST_CASE("decoded mw trees decompose within the template width") {
  for (int k : {2, 3}) {
    InductiveSystem mw = make_modularwidth_system(k);
    int checked = 0;
    for (uint64_t seed = 0; checked < 40; ++seed) {
      DecodeOptions opts;
      opts.system = &mw;
      ColoredGraph g = decode(gen_parse_tree(mw, 1 + seed % 12, seed), opts);
      if (g.n > 7) continue;
      ++checked;
      CHECK(oracle::modular_ok(g, k));
    }
  }
}

TEST_CASE("builtin systems") {
  InductiveSystem tw1 = make_treewidth_system(1);
  CHECK(tw1.k == 1);
  CHECK(tw1.base.size() == enum_graphs(2, 1).size());
  CHECK(tw1.ops.size() == 2);  // union, fuse 1

  InductiveSystem cw3 = make_cliquewidth_system(3);
  CHECK(cw3.base.size() == 3);
  CHECK(cw3.ops.size() == 10);  // union + 6 recolors + 3 etas

  InductiveSystem mw2 = make_modularwidth_system(2);
  CHECK(mw2.base.size() == 1);
  CHECK(mw2.ops.size() == 4);  // union, join, subst 2K1, subst K2

  CHECK(resolve_system("union").name == "union");
  CHECK_THROWS_AS(resolve_system("xyzzy"), Error);
}

TEST_CASE("system files round-trip") {
  for (const InductiveSystem& sys :
       {make_cliquewidth_system(2), make_modularwidth_system(2), make_treewidth_system(1)}) {
    INFO(sys.name);
    InductiveSystem back = parse_system(render_system(sys));
    CHECK(back.name == sys.name);
    CHECK(back.k == sys.k);
    REQUIRE(back.base.size() == sys.base.size());
    for (size_t i = 0; i < back.base.size(); ++i) {
      CHECK(back.base[i].name == sys.base[i].name);
      CHECK(back.base[i].graph == sys.base[i].graph);
    }
    REQUIRE(back.ops.size() == sys.ops.size());
    for (size_t i = 0; i < back.ops.size(); ++i) CHECK(back.ops[i] == sys.ops[i]);
  }

  CHECK_THROWS_AS(parse_system("base a graph n=1 k=0"), Error);  // header first
  CHECK_THROWS_AS(parse_system("system s k=1\nop eta 1 1\nbase a graph n=1 k=1"), Error);
  CHECK_THROWS_AS(parse_system("system s k=0\nop union"), Error);  // no bases
}

TEST_CASE("system file with multi-line base blocks and comments") {
  const char* text =
      "# tiny system\n"
      "system demo k=1\n"
      "base a graph n=2 k=1\n"
      "e 1 2\n"
      "c 1 1\n"
      "base b graph n=1 k=1\n"
      "op union\n"
      "op fuse 1   # trailing comment\n";
  InductiveSystem sys = parse_system(text);
  CHECK(sys.base.size() == 2);
  CHECK(sys.base[0].graph.n == 2);
  CHECK(sys.base[0].graph.edges.size() == 1);
  CHECK(sys.base[1].graph.n == 1);
  CHECK(sys.ops.size() == 2);
}
