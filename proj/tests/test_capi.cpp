#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <string>
#include <unistd.h>

#include "hc.h"

// Exercises the shared-library surface: handles, status codes, strings.

namespace {

struct str {
  char* s = nullptr;
  ~str() { hc_string_free(s); }
};

std::string temp_path(const char* name) {
  return std::string("/tmp/hc_capi_") + name + "_" + std::to_string(::getpid());
}

}  // namespace

TEST_CASE("version and error message plumbing") {
  CHECK(hc_version() != nullptr);
  CHECK(hc_graph_parse(nullptr, nullptr) == HC_ERROR_INVALID_ARGUMENT);
  CHECK(std::strlen(hc_last_error_message()) > 0);
}

TEST_CASE("graph parse/render/ops through the C API") {
  hc_graph* g = nullptr;
  REQUIRE(hc_graph_parse("graph n=3 k=1\ne 1 2\ne 2 3\nc 1 1", &g) == HC_OK);
  uint32_t n = 0, k = 0;
  uint64_t e = 0;
  CHECK(hc_graph_counts(g, &n, &e, &k) == HC_OK);
  CHECK(n == 3);
  CHECK(e == 2);
  CHECK(k == 1);

  str text;
  REQUIRE(hc_graph_render(g, &text.s) == HC_OK);
  hc_graph* back = nullptr;
  REQUIRE(hc_graph_parse(text.s, &back) == HC_OK);
  str text2;
  REQUIRE(hc_graph_render(back, &text2.s) == HC_OK);
  CHECK(std::string(text.s) == text2.s);

  hc_graph* u = nullptr;
  REQUIRE(hc_graph_union(g, back, &u) == HC_OK);
  uint32_t un = 0;
  hc_graph_counts(u, &un, nullptr, nullptr);
  CHECK(un == 6);

  hc_graph* fused = nullptr;
  REQUIRE(hc_graph_fuse(g, 1, &fused) == HC_OK);
  CHECK(hc_graph_fuse(g, 9, &fused) == HC_ERROR_DOMAIN);

  str cert1, cert2;
  REQUIRE(hc_graph_certificate(g, &cert1.s) == HC_OK);
  REQUIRE(hc_graph_certificate(back, &cert2.s) == HC_OK);
  CHECK(std::string(cert1.s) == cert2.s);

  // Malformed text surfaces a parse error.
  hc_graph* bad = nullptr;
  CHECK(hc_graph_parse("graph n=1 k=0\ne 1 1", &bad) == HC_ERROR_PARSE);

  hc_graph_free(g);
  hc_graph_free(back);
  hc_graph_free(u);
  hc_graph_free(fused);
}

TEST_CASE("properties and the polynomial") {
  hc_property* conn = nullptr;
  REQUIRE(hc_property_parse("connected", 1, 0, &conn) == HC_OK);
  hc_graph* k2 = nullptr;
  REQUIRE(hc_graph_parse("graph n=2 k=0\ne 1 2", &k2) == HC_OK);
  int verdict = 0;
  REQUIRE(hc_property_eval(conn, k2, &verdict) == HC_OK);
  CHECK(verdict == 1);

  double value = 0;
  uint64_t coeffs[8] = {0};
  size_t ncoeffs = 0;
  REQUIRE(hc_poly_eval(k2, conn, 1.0, 0, &value, coeffs, 8, &ncoeffs) == HC_OK);
  REQUIRE(ncoeffs == 3);
  CHECK(coeffs[0] == 1);
  CHECK(coeffs[1] == 2);
  CHECK(coeffs[2] == 1);
  CHECK(value == doctest::Approx(4.0));

  hc_property* bogus = nullptr;
  CHECK(hc_property_parse("definitely_not_a_property", 1, 0, &bogus) == HC_ERROR_PARSE);

  hc_property_free(conn);
  hc_graph_free(k2);
}

TEST_CASE("circuits through the C API") {
  hc_circuit* c = nullptr;
  REQUIRE(hc_circuit_parse("(union (leaf \"graph n=1 k=0\") x)", &c) == HC_OK);
  uint64_t nodes = 0, frees = 0;
  CHECK(hc_circuit_size(c, &nodes) == HC_OK);
  CHECK(nodes == 3);
  CHECK(hc_circuit_free_leaves(c, &frees) == HC_OK);
  CHECK(frees == 1);

  hc_graph* k1 = nullptr;
  REQUIRE(hc_graph_parse("graph n=1 k=0", &k1) == HC_OK);
  hc_circuit* closed = nullptr;
  REQUIRE(hc_circuit_substitute(c, k1, &closed) == HC_OK);
  hc_graph* decoded = nullptr;
  REQUIRE(hc_circuit_decode(closed, nullptr, &decoded) == HC_OK);
  uint32_t n = 0;
  hc_graph_counts(decoded, &n, nullptr, nullptr);
  CHECK(n == 2);

  // Free leaf cannot decode.
  hc_graph* nope = nullptr;
  CHECK(hc_circuit_decode(c, nullptr, &nope) == HC_ERROR_DOMAIN);

  hc_circuit_free(c);
  hc_circuit_free(closed);
  hc_graph_free(k1);
  hc_graph_free(decoded);
}

TEST_CASE("systems, pools, matrices, profile") {
  hc_system* sys = nullptr;
  REQUIRE(hc_system_open("cw2", &sys) == HC_OK);
  str name;
  uint32_t colors = 0;
  size_t bases = 0, ops = 0;
  REQUIRE(hc_system_info(sys, &name.s, &colors, &bases, &ops) == HC_OK);
  CHECK(std::string(name.s) == "cw2");
  CHECK(colors == 2);
  CHECK(bases == 2);
  CHECK(ops == 4);

  // Render to a file and reopen by path.
  str sys_text;
  REQUIRE(hc_system_render(sys, &sys_text.s) == HC_OK);
  std::string path = temp_path("system");
  FILE* f = fopen(path.c_str(), "w");
  REQUIRE(f);
  fputs(sys_text.s, f);
  fclose(f);
  hc_system* sys2 = nullptr;
  REQUIRE(hc_system_open(path.c_str(), &sys2) == HC_OK);
  str sys_text2;
  REQUIRE(hc_system_render(sys2, &sys_text2.s) == HC_OK);
  CHECK(std::string(sys_text.s) == sys_text2.s);
  std::remove(path.c_str());

  CHECK(hc_system_open("nope42", &sys2) == HC_ERROR_IO);

  hc_pool* pool = nullptr;
  REQUIRE(hc_pool_build(5, 0, &pool) == HC_OK);
  size_t size = 0;
  CHECK(hc_pool_size(pool, &size) == HC_OK);
  CHECK(size == 53);
  hc_graph* first = nullptr;
  REQUIRE(hc_pool_get(pool, 0, &first) == HC_OK);
  uint32_t n = 9;
  hc_graph_counts(first, &n, nullptr, nullptr);
  CHECK(n == 0);
  CHECK(hc_pool_get(pool, 999, &first) == HC_ERROR_INVALID_ARGUMENT);

  hc_property* conn = nullptr;
  REQUIRE(hc_property_parse("connected", 1, 0, &conn) == HC_OK);
  hc_matrix* m = nullptr;
  REQUIRE(hc_hankel_build("union", conn, pool, 2, &m) == HC_OK);
  int rank = 0;
  REQUIRE(hc_matrix_rank(m, &rank) == HC_OK);
  CHECK(rank == 2);
  size_t rows = 0, cols = 0;
  hc_matrix_shape(m, &rows, &cols);
  CHECK(rows == 53);
  CHECK(cols == 53);
  size_t distinct = 0;
  CHECK(hc_matrix_distinct_rows(m, &distinct) == HC_OK);
  CHECK(distinct <= 4);
  str dump;
  REQUIRE(hc_matrix_dump(m, &dump.s) == HC_OK);
  CHECK(std::strlen(dump.s) == 53 * 54);
  hc_matrix_free(m);

  hc_pool* small = nullptr;
  REQUIRE(hc_pool_build(2, 2, &small) == HC_OK);
  hc_matrix* cm = nullptr;
  REQUIRE(hc_circuit_matrix_build(sys, conn, small, 1, 1, &cm) == HC_OK);
  int cm_rank = 0;
  hc_matrix_rank(cm, &cm_rank);
  CHECK(cm_rank >= 1);
  hc_matrix_free(cm);

  str profile;
  REQUIRE(hc_saturation_profile(sys2, conn, 2, 1, 2, &profile.s) == HC_OK);
  CHECK(std::string(profile.s).find("rank ") == 0);

  hc_pool_free(pool);
  hc_pool_free(small);
  hc_property_free(conn);
  hc_system_free(sys);
  hc_system_free(sys2);
}

TEST_CASE("compile, save, load, evaluate, gen, bench") {
  hc_system* sys = nullptr;
  REQUIRE(hc_system_open("cw2", &sys) == HC_OK);
  hc_property* conn = nullptr;
  REQUIRE(hc_property_parse("connected", 1, 0, &conn) == HC_OK);

  hc_automaton* aut = nullptr;
  REQUIRE(hc_compile(sys, conn, 2, 2, 2, 1, 0, &aut) == HC_OK);
  size_t classes = 0;
  int rank = 0, pool_bound = 0, depth = 0;
  REQUIRE(hc_automaton_info(aut, &classes, &rank, &pool_bound, &depth) == HC_OK);
  CHECK(classes >= 2);
  CHECK(pool_bound == 2);
  CHECK(depth == 2);

  std::string path = temp_path("automaton");
  REQUIRE(hc_automaton_save(aut, path.c_str()) == HC_OK);
  hc_automaton* loaded = nullptr;
  REQUIRE(hc_automaton_load(path.c_str(), &loaded) == HC_OK);
  std::remove(path.c_str());

  hc_circuit* tree = nullptr;
  REQUIRE(hc_gen_tree(sys, 31, 7, &tree) == HC_OK);
  uint64_t nodes = 0;
  hc_circuit_size(tree, &nodes);
  CHECK(nodes == 31);

  int a1 = -1, a2 = -1;
  uint64_t en = 0;
  REQUIRE(hc_evaluate(aut, tree, &a1, &en) == HC_OK);
  REQUIRE(hc_evaluate(loaded, tree, &a2, nullptr) == HC_OK);
  CHECK(a1 == a2);
  CHECK(en == 31);
  // Agreement with the decoded verdict.
  hc_graph* decoded = nullptr;
  REQUIRE(hc_circuit_decode(tree, sys, &decoded) == HC_OK);
  int direct = -1;
  REQUIRE(hc_property_eval(conn, decoded, &direct) == HC_OK);
  CHECK(a1 == direct);

  CHECK(hc_automaton_load("/nonexistent.aut", &loaded) == HC_ERROR_IO);

  hc_graph_free(decoded);
  hc_circuit_free(tree);
  hc_automaton_free(aut);
  hc_automaton_free(loaded);
  hc_property_free(conn);
  hc_system_free(sys);
}

TEST_CASE("selftest smoke through the C API") {
  str report;
  int ok = 0;
  REQUIRE(hc_selftest(5, 4, 1, 0, &report.s, &ok) == HC_OK);
  CHECK(ok == 1);
  CHECK(std::string(report.s).find("selftest PASS") != std::string::npos);
}
