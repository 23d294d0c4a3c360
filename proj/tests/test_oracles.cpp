#include <doctest.h>

#include "graph.hpp"
#include "oracles.hpp"

using namespace hc;

// Sanity checks for the brute-force reference implementations themselves.

TEST_CASE("treewidth oracle on known graphs") {
  CHECK(oracle::treewidth_brute(empty_graph()) == -1);
  CHECK(oracle::treewidth_brute(single_vertex()) == 0);
  CHECK(oracle::treewidth_brute(edgeless_graph(4)) == 0);
  CHECK(oracle::treewidth_brute(path_graph(5)) == 1);
  CHECK(oracle::treewidth_brute(cycle_graph(5)) == 2);
  CHECK(oracle::treewidth_brute(complete_graph(4)) == 3);
  CHECK(oracle::treewidth_brute(complete_graph(6)) == 5);
  // K4 minus one edge.
  ColoredGraph g = complete_graph(4);
  g.edges.erase(g.edges.begin());
  CHECK(oracle::treewidth_brute(g) == 2);
  // Two triangles sharing nothing: width of the max component.
  CHECK(oracle::treewidth_brute(disjoint_union(complete_graph(3), complete_graph(3))) == 2);
}

TEST_CASE("modular decomposition oracle") {
  // Cographs decompose with k=1 templates never needed: union/join only.
  CHECK(oracle::modular_ok(empty_graph(), 1));
  CHECK(oracle::modular_ok(single_vertex(), 1));
  CHECK(oracle::modular_ok(complete_graph(4), 1));
  CHECK(oracle::modular_ok(edgeless_graph(5), 1));
  CHECK(oracle::modular_ok(join_graphs(edgeless_graph(2), edgeless_graph(2)), 1));
  // P4 is prime: needs a 4-vertex template.
  CHECK_FALSE(oracle::modular_ok(path_graph(4), 2));
  CHECK_FALSE(oracle::modular_ok(path_graph(4), 3));
  CHECK(oracle::modular_ok(path_graph(4), 4));
  // C5 is prime on 5 vertices.
  CHECK_FALSE(oracle::modular_ok(cycle_graph(5), 4));
  CHECK(oracle::modular_ok(cycle_graph(5), 5));
  // P4 with a pendant clique substituted into one end keeps width 4.
  ColoredGraph p4 = path_graph(4);
  ColoredGraph parts[] = {complete_graph(2), single_vertex(), single_vertex(), complete_graph(3)};
  CHECK(oracle::modular_ok(substitute(p4, parts), 4));
}

TEST_CASE("brute rank on known matrices") {
  CHECK(oracle::rank_brute({}) == 0);
  CHECK(oracle::rank_brute({{1, 0}, {0, 1}}) == 2);
  CHECK(oracle::rank_brute({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}}) == 3);
  CHECK(oracle::rank_brute({{1, 1}, {1, 1}}) == 1);
  CHECK(oracle::rank_brute({{0, 0}, {0, 0}}) == 0);
}

TEST_CASE("brute isomorphism") {
  CHECK(oracle::isomorphic_brute(path_graph(3), parse_graph("graph n=3 k=0\ne 2 1\ne 1 3")));
  CHECK_FALSE(oracle::isomorphic_brute(path_graph(3), complete_graph(3)));
  ColoredGraph a = parse_graph("graph n=2 k=1\nc 1 1");
  ColoredGraph b = parse_graph("graph n=2 k=1\nc 2 1");
  CHECK(oracle::isomorphic_brute(a, b));
  ColoredGraph c = parse_graph("graph n=2 k=1\nc 1 1\nc 2 1");
  CHECK_FALSE(oracle::isomorphic_brute(a, c));
}
