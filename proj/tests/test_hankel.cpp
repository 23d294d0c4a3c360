#include <doctest.h>

#include <algorithm>

#include "bitmatrix.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "hankel.hpp"
#include "oracles.hpp"
#include "property.hpp"
#include "rng.hpp"
#include "system.hpp"

using namespace hc;

TEST_CASE("gf2 rank basics") {
  BitMatrix id(3, 3);
  for (size_t i = 0; i < 3; ++i) id.set(i, i, true);
  CHECK(gf2_rank(id) == 3);

  BitMatrix zero(4, 5);
  CHECK(gf2_rank(zero) == 0);

  // The join-connectivity row set {110, 111, 011} has full rank.
  BitMatrix m(3, 3);
  m.set(0, 0, true);
  m.set(0, 1, true);
  m.set(1, 0, true);
  m.set(1, 1, true);
  m.set(1, 2, true);
  m.set(2, 1, true);
  m.set(2, 2, true);
  CHECK(gf2_rank(m) == 3);
  CHECK(distinct_row_count(m) == 3);
}

TEST_CASE("gf2 rank agrees with the dense reference on random matrices") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    size_t rows = 1 + rng.below(8), cols = 1 + rng.below(70);
    BitMatrix m(rows, cols);
    std::vector<std::vector<uint8_t>> ref(rows, std::vector<uint8_t>(cols, 0));
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c)
        if (rng.coin()) {
          m.set(r, c, true);
          ref[r][c] = 1;
        }
    int rank = gf2_rank(m);
    CHECK(rank == oracle::rank_brute(ref));
    // Over GF(2), a rank-r matrix has at most 2^r distinct rows.
    size_t distinct = distinct_row_count(m);
    CHECK(static_cast<size_t>(rank) <= distinct);
    CHECK(distinct <= (size_t(1) << rank));
  }
}

TEST_CASE("hankel matrix of union/connected on the n<=2 pool") {
  StructurePool pool = enum_graphs(2, 0);  // order: empty, K1, 2K1, K2
  REQUIRE(pool.size() == 4);
  REQUIRE(pool.graphs[2].edges.empty());  // 2K1 sorts before K2
  PropertyOracle conn = connected_oracle();
  BitMatrix m = build_hankel(op_union(), conn, pool);
  // Row of the empty structure is the connectivity indicator; nonempty
  // connected rows have a single 1 at the empty column.
  const bool want[4][4] = {
      {true, true, false, true},     // empty: connected(B)
      {true, false, false, false},   // K1
      {false, false, false, false},  // 2K1
      {true, false, false, false},   // K2
  };
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) CHECK(m.get(i, j) == want[i][j]);
  CHECK(gf2_rank(m) == 2);
}

TEST_CASE("hankel constant properties") {
  StructurePool pool = enum_graphs(3, 0);
  BitMatrix ones = build_hankel(op_union(), const_oracle(true), pool);
  CHECK(gf2_rank(ones) == 1);
  for (size_t i = 0; i < ones.rows; ++i)
    for (size_t j = 0; j < ones.cols; ++j) CHECK(ones.get(i, j));
  BitMatrix zeros = build_hankel(op_union(), const_oracle(false), pool);
  CHECK(gf2_rank(zeros) == 0);
}

TEST_CASE("build_hankel rejects non-binary ops") {
  StructurePool pool = enum_graphs(2, 1);
  CHECK_THROWS_AS(build_hankel(op_fuse(1), const_oracle(true), pool), Error);
}

TEST_CASE("circuit matrix with only the trivial context") {
  InductiveSystem sys = make_union_system();
  StructurePool pool = enum_graphs(2, 0);
  PropertyOracle conn = connected_oracle();
  BitMatrix m = build_circuit_matrix(sys, conn, pool, std::vector<Circuit>{Circuit::free_leaf()});
  REQUIRE(m.cols == 1);
  for (size_t i = 0; i < pool.size(); ++i) CHECK(m.get(i, 0) == conn(pool.graphs[i]));
}

TEST_CASE("hankel matrix embeds into the circuit matrix (submatrix ranks)") {
  PropertyOracle conn = connected_oracle();
  {
    InductiveSystem sys = make_union_system();
    StructurePool pool = enum_graphs(3, 0);
    BitMatrix h = build_hankel(op_union(), conn, pool);
    BitMatrix cm = build_circuit_matrix(sys, conn, pool, 1);
    CHECK(gf2_rank(h) <= gf2_rank(cm));
  }
  {
    InductiveSystem cw2 = make_cliquewidth_system(2);
    StructurePool pool = enum_graphs(2, 2);
    BitMatrix h = build_hankel(op_union(), conn, pool);
    for (int depth : {1, 2}) {
      BitMatrix cm = build_circuit_matrix(cw2, conn, pool, depth);
      CHECK(gf2_rank(h) <= gf2_rank(cm));
    }
  }
}

TEST_CASE("explicit context circuits match the depth-based construction") {
  InductiveSystem cw2 = make_cliquewidth_system(2);
  StructurePool pool = enum_graphs(2, 2);
  PropertyOracle conn = connected_oracle();
  std::vector<Circuit> ctxs = enum_contexts(cw2, pool, 1);
  BitMatrix a = build_circuit_matrix(cw2, conn, pool, ctxs);
  BitMatrix b = build_circuit_matrix(cw2, conn, pool, 1);
  REQUIRE(a.rows == b.rows);
  REQUIRE(a.cols == b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j) CHECK(a.get(i, j) == b.get(i, j));
}

TEST_CASE("context set must contain the trivial context") {
  InductiveSystem sys = make_union_system();
  StructurePool pool = enum_graphs(1, 0);
  Circuit wrapped =
      Circuit::op(op_union(), {Circuit::free_leaf(), Circuit::leaf(single_vertex())});
  std::vector<Circuit> ctxs;
  ctxs.push_back(std::move(wrapped));
  CHECK_THROWS_AS(build_circuit_matrix(sys, connected_oracle(), pool, ctxs), Error);
}

TEST_CASE("matrix fill is independent of the worker count") {
  InductiveSystem cw2 = make_cliquewidth_system(2);
  StructurePool pool = enum_graphs(3, 2);
  PropertyOracle conn = connected_oracle();
  BitMatrix one = build_circuit_matrix(cw2, conn, pool, 1, 1);
  BitMatrix four = build_circuit_matrix(cw2, conn, pool, 1, 4);
  CHECK(one.bits == four.bits);
}

TEST_CASE("saturation profile for union/connected") {
  InductiveSystem sys = make_union_system();
  PropertyOracle conn = connected_oracle();
  auto reports = saturation_profile(sys, conn, 4, 2);
  REQUIRE(reports.size() == 5 * 3);
  auto at = [&](int n, int d) -> const RankReport& { return reports[n * 3 + d]; };
  // Catalogued value: rank 2 from small truncations on.
  for (int n = 2; n <= 4; ++n)
    for (int d = 1; d <= 2; ++d) CHECK(at(n, d).rank == 2);
  CHECK(at(4, 2).saturated);
  // Monotone in both truncation parameters.
  for (int n = 0; n <= 4; ++n)
    for (int d = 0; d <= 2; ++d) {
      if (n > 0) CHECK(at(n - 1, d).rank <= at(n, d).rank);
      if (d > 0) CHECK(at(n, d - 1).rank <= at(n, d).rank);
      CHECK(static_cast<size_t>(at(n, d).rank) <= at(n, d).distinct_rows);
      CHECK(at(n, d).distinct_rows <= (size_t(1) << at(n, d).rank));
    }
}

TEST_CASE("rank report line format") {
  RankReport rep;
  rep.rank = 2;
  rep.distinct_rows = 3;
  rep.pool_bound = 4;
  rep.depth = 1;
  rep.saturated = true;
  CHECK(rep.line() == "rank 2 distinct_rows 3 pool 4 depth 1 saturated 1");
}

TEST_CASE("saturation profile for a constant property") {
  InductiveSystem sys = make_union_system();
  auto reports = saturation_profile(sys, const_oracle(true), 2, 2);
  for (const auto& rep : reports) {
    CHECK(rep.rank == 1);
    if (rep.pool_bound >= 1 && rep.depth >= 1) CHECK(rep.saturated);
  }
}

TEST_CASE("row equality transfers from deeper to shallower context sets") {
  InductiveSystem cw2 = make_cliquewidth_system(2);
  StructurePool pool = enum_graphs(3, 2);
  PropertyOracle conn = connected_oracle();
  BitMatrix deep = build_circuit_matrix(cw2, conn, pool, 2);
  BitMatrix shallow = build_circuit_matrix(cw2, conn, pool, 1);
  auto row_equal = [](const BitMatrix& m, size_t a, size_t b) {
    return std::equal(m.row(a), m.row(a) + m.words_per_row, m.row(b));
  };
  for (size_t a = 0; a < pool.size(); ++a)
    for (size_t b = a + 1; b < pool.size(); ++b)
      if (row_equal(deep, a, b)) CHECK(row_equal(shallow, a, b));
}

TEST_CASE("matrix dump shape") {
  BitMatrix m(2, 3);
  m.set(0, 1, true);
  m.set(1, 2, true);
  CHECK(dump_matrix(m) == "010\n001\n");
}
