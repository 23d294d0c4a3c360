#include "hc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "automaton.hpp"
#include "bench.hpp"
#include "bitmatrix.hpp"
#include "canonical.hpp"
#include "circuit.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "hankel.hpp"
#include "property.hpp"
#include "selftest.hpp"
#include "system.hpp"

// Handle definitions: each wraps one core value.
struct hc_graph {
  hc::ColoredGraph g;
};
struct hc_circuit {
  hc::Circuit c;
};
struct hc_system {
  hc::InductiveSystem sys;
};
struct hc_pool {
  hc::StructurePool pool;
};
struct hc_property {
  hc::PropertyOracle prop;
  hc::Conventions conv;
};
struct hc_matrix {
  hc::BitMatrix m;
};
struct hc_automaton {
  hc::Automaton aut;
};

namespace {

thread_local std::string g_last_error;

hc_status set_error(hc_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

hc_status from_exception(const hc::Error& e) {
  return set_error(static_cast<hc_status>(static_cast<int>(e.code())), e.what());
}

// Runs the body, mapping exceptions to status codes.
template <typename Fn>
hc_status guarded(Fn&& fn) {
  try {
    fn();
    return HC_OK;
  } catch (const hc::Error& e) {
    return from_exception(e);
  } catch (const std::bad_alloc&) {
    return set_error(HC_ERROR_BUDGET, "out of memory");
  } catch (const std::exception& e) {
    return set_error(HC_ERROR_INTERNAL, e.what());
  } catch (...) {
    return set_error(HC_ERROR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hc_status out_string(const std::string& s, char** out) {
  *out = dup_string(s);
  if (!*out) return set_error(HC_ERROR_BUDGET, "out of memory");
  return HC_OK;
}

bool bad(const void* p) { return p == nullptr; }

hc_status invalid(const char* what) {
  return set_error(HC_ERROR_INVALID_ARGUMENT, std::string("null ") + what);
}

}  // namespace

extern "C" {

const char* hc_version(void) { return "1.0.0"; }

const char* hc_last_error_message(void) { return g_last_error.c_str(); }

void hc_string_free(char* s) { ::free(s); }

/* ----- graphs ---------------------------------------------------------- */

hc_status hc_graph_parse(const char* text, hc_graph** out) {
  if (bad(text) || bad(out)) return invalid("argument");
  return guarded([&] { *out = new hc_graph{hc::parse_graph(text)}; });
}

hc_status hc_graph_render(const hc_graph* g, char** out) {
  if (bad(g) || bad(out)) return invalid("argument");
  return guarded([&] {
    if (out_string(hc::render_graph(g->g), out) != HC_OK)
      hc::fail(hc::Err::budget, "out of memory");
  });
}

void hc_graph_free(hc_graph* g) { delete g; }

hc_status hc_graph_counts(const hc_graph* g, uint32_t* vertices, uint64_t* edges,
                          uint32_t* colors) {
  if (bad(g)) return invalid("graph");
  if (vertices) *vertices = g->g.n;
  if (edges) *edges = g->g.edges.size();
  if (colors) *colors = g->g.k;
  return HC_OK;
}

#define HC_BINARY_OP(cname, corefn)                                     \
  hc_status cname(const hc_graph* a, const hc_graph* b, hc_graph** out) { \
    if (bad(a) || bad(b) || bad(out)) return invalid("argument");        \
    return guarded([&] { *out = new hc_graph{hc::corefn(a->g, b->g)}; }); \
  }

HC_BINARY_OP(hc_graph_union, disjoint_union)
HC_BINARY_OP(hc_graph_join, join_graphs)
HC_BINARY_OP(hc_graph_tensor, tensor_product)
HC_BINARY_OP(hc_graph_cartesian, cartesian_product)
#undef HC_BINARY_OP

hc_status hc_graph_fuse(const hc_graph* g, uint32_t color, hc_graph** out) {
  if (bad(g) || bad(out)) return invalid("argument");
  return guarded([&] { *out = new hc_graph{hc::fuse(g->g, static_cast<uint16_t>(color))}; });
}

hc_status hc_graph_recolor(const hc_graph* g, uint32_t from, uint32_t to, hc_graph** out) {
  if (bad(g) || bad(out)) return invalid("argument");
  return guarded([&] {
    *out = new hc_graph{
        hc::recolor(g->g, static_cast<uint16_t>(from), static_cast<uint16_t>(to))};
  });
}

hc_status hc_graph_add_bicolor_edges(const hc_graph* g, uint32_t i, uint32_t j, hc_graph** out) {
  if (bad(g) || bad(out)) return invalid("argument");
  return guarded([&] {
    *out = new hc_graph{
        hc::add_bicolor_edges(g->g, static_cast<uint16_t>(i), static_cast<uint16_t>(j))};
  });
}

hc_status hc_graph_substitute(const hc_graph* tmpl, const hc_graph* const* parts, size_t nparts,
                              hc_graph** out) {
  if (bad(tmpl) || bad(out) || (nparts > 0 && bad(parts))) return invalid("argument");
  return guarded([&] {
    std::vector<hc::ColoredGraph> args;
    args.reserve(nparts);
    for (size_t i = 0; i < nparts; ++i) {
      if (!parts[i]) hc::fail(hc::Err::invalid_argument, "null part");
      args.push_back(parts[i]->g);
    }
    *out = new hc_graph{hc::substitute(tmpl->g, args)};
  });
}

hc_status hc_graph_induced(const hc_graph* g, const uint32_t* vertices, size_t count,
                           hc_graph** out) {
  if (bad(g) || bad(out) || (count > 0 && bad(vertices))) return invalid("argument");
  return guarded([&] {
    *out = new hc_graph{hc::induced_subgraph(g->g, std::span<const uint32_t>(vertices, count))};
  });
}

hc_status hc_graph_certificate(const hc_graph* g, char** out) {
  if (bad(g) || bad(out)) return invalid("argument");
  return guarded([&] {
    if (out_string(hc::canonical_form(g->g).hex(), out) != HC_OK)
      hc::fail(hc::Err::budget, "out of memory");
  });
}

/* ----- properties ------------------------------------------------------ */

hc_status hc_property_parse(const char* expr, int empty_connected, int proper_subsets,
                            hc_property** out) {
  if (bad(expr) || bad(out)) return invalid("argument");
  return guarded([&] {
    hc::Conventions conv{empty_connected != 0, proper_subsets != 0};
    *out = new hc_property{hc::parse_property(expr, conv), conv};
  });
}

hc_status hc_property_eval(const hc_property* p, const hc_graph* g, int* verdict) {
  if (bad(p) || bad(g) || bad(verdict)) return invalid("argument");
  return guarded([&] { *verdict = p->prop(g->g) ? 1 : 0; });
}

void hc_property_free(hc_property* p) { delete p; }

hc_status hc_poly_eval(const hc_graph* g, const hc_property* p, double x, int proper_subsets,
                       double* value, uint64_t* coeffs, size_t cap, size_t* ncoeffs) {
  if (bad(g) || bad(p) || bad(value)) return invalid("argument");
  return guarded([&] {
    hc::Conventions conv = p->conv;
    conv.proper_subsets = proper_subsets != 0;
    hc::PolyResult res = hc::poly_eval(g->g, p->prop, x, conv);
    *value = res.value;
    if (ncoeffs) *ncoeffs = res.coeffs.size();
    if (coeffs)
      for (size_t i = 0; i < res.coeffs.size() && i < cap; ++i) coeffs[i] = res.coeffs[i];
  });
}

/* ----- circuits --------------------------------------------------------- */

hc_status hc_circuit_parse(const char* text, hc_circuit** out) {
  if (bad(text) || bad(out)) return invalid("argument");
  return guarded([&] { *out = new hc_circuit{hc::parse_circuit(text)}; });
}

hc_status hc_circuit_render(const hc_circuit* c, char** out) {
  if (bad(c) || bad(out)) return invalid("argument");
  return guarded([&] {
    if (out_string(hc::render_circuit(c->c), out) != HC_OK)
      hc::fail(hc::Err::budget, "out of memory");
  });
}

void hc_circuit_free(hc_circuit* c) { delete c; }

hc_status hc_circuit_size(const hc_circuit* c, uint64_t* nodes) {
  if (bad(c) || bad(nodes)) return invalid("argument");
  *nodes = c->c.size();
  return HC_OK;
}

hc_status hc_circuit_free_leaves(const hc_circuit* c, uint64_t* count) {
  if (bad(c) || bad(count)) return invalid("argument");
  *count = hc::free_leaf_count(c->c);
  return HC_OK;
}

hc_status hc_circuit_substitute(const hc_circuit* c, const hc_graph* g, hc_circuit** out) {
  if (bad(c) || bad(g) || bad(out)) return invalid("argument");
  return guarded([&] { *out = new hc_circuit{hc::substitute_free(c->c, g->g)}; });
}

hc_status hc_circuit_decode(const hc_circuit* c, const hc_system* sys, hc_graph** out) {
  if (bad(c) || bad(out)) return invalid("argument");
  return guarded([&] {
    hc::DecodeOptions opts;
    if (sys) opts.system = &sys->sys;
    *out = new hc_graph{hc::decode(c->c, opts)};
  });
}

/* ----- systems ----------------------------------------------------------- */

hc_status hc_system_open(const char* ref, hc_system** out) {
  if (bad(ref) || bad(out)) return invalid("argument");
  return guarded([&] { *out = new hc_system{hc::resolve_system(ref)}; });
}

hc_status hc_system_render(const hc_system* sys, char** out) {
  if (bad(sys) || bad(out)) return invalid("argument");
  return guarded([&] {
    if (out_string(hc::render_system(sys->sys), out) != HC_OK)
      hc::fail(hc::Err::budget, "out of memory");
  });
}

hc_status hc_system_info(const hc_system* sys, char** name, uint32_t* colors, size_t* bases,
                         size_t* ops) {
  if (bad(sys)) return invalid("system");
  if (name && out_string(sys->sys.name, name) != HC_OK)
    return set_error(HC_ERROR_BUDGET, "out of memory");
  if (colors) *colors = sys->sys.k;
  if (bases) *bases = sys->sys.base.size();
  if (ops) *ops = sys->sys.ops.size();
  return HC_OK;
}

void hc_system_free(hc_system* sys) { delete sys; }

/* ----- pools and matrices ------------------------------------------------ */

hc_status hc_pool_build(uint32_t n_max, uint32_t colors, hc_pool** out) {
  if (bad(out)) return invalid("argument");
  return guarded([&] {
    *out = new hc_pool{hc::enum_graphs(static_cast<int>(n_max), static_cast<int>(colors))};
  });
}

hc_status hc_pool_size(const hc_pool* pool, size_t* size) {
  if (bad(pool) || bad(size)) return invalid("argument");
  *size = pool->pool.size();
  return HC_OK;
}

hc_status hc_pool_get(const hc_pool* pool, size_t index, hc_graph** out) {
  if (bad(pool) || bad(out)) return invalid("argument");
  if (index >= pool->pool.size())
    return set_error(HC_ERROR_INVALID_ARGUMENT, "pool index out of range");
  return guarded([&] { *out = new hc_graph{pool->pool.graphs[index]}; });
}

void hc_pool_free(hc_pool* pool) { delete pool; }

hc_status hc_hankel_build(const char* op, const hc_property* prop, const hc_pool* pool,
                          int workers, hc_matrix** out) {
  if (bad(op) || bad(prop) || bad(pool) || bad(out)) return invalid("argument");
  return guarded([&] {
    hc::OpKind kind = hc::parse_op_signature(op);
    *out = new hc_matrix{hc::build_hankel(kind, prop->prop, pool->pool, workers)};
  });
}

hc_status hc_circuit_matrix_build(const hc_system* sys, const hc_property* prop,
                                  const hc_pool* pool, int depth, int workers, hc_matrix** out) {
  if (bad(sys) || bad(prop) || bad(pool) || bad(out)) return invalid("argument");
  return guarded([&] {
    *out = new hc_matrix{
        hc::build_circuit_matrix(sys->sys, prop->prop, pool->pool, depth, workers)};
  });
}

hc_status hc_matrix_shape(const hc_matrix* m, size_t* rows, size_t* cols) {
  if (bad(m)) return invalid("matrix");
  if (rows) *rows = m->m.rows;
  if (cols) *cols = m->m.cols;
  return HC_OK;
}

hc_status hc_matrix_rank(const hc_matrix* m, int* rank) {
  if (bad(m) || bad(rank)) return invalid("argument");
  return guarded([&] { *rank = hc::gf2_rank(m->m); });
}

hc_status hc_matrix_distinct_rows(const hc_matrix* m, size_t* count) {
  if (bad(m) || bad(count)) return invalid("argument");
  return guarded([&] { *count = hc::distinct_row_count(m->m); });
}

hc_status hc_matrix_dump(const hc_matrix* m, char** out) {
  if (bad(m) || bad(out)) return invalid("argument");
  return guarded([&] {
    if (out_string(hc::dump_matrix(m->m), out) != HC_OK)
      hc::fail(hc::Err::budget, "out of memory");
  });
}

void hc_matrix_free(hc_matrix* m) { delete m; }

hc_status hc_saturation_profile(const hc_system* sys, const hc_property* prop, int n_max,
                                int depth_max, int workers, char** out) {
  if (bad(sys) || bad(prop) || bad(out)) return invalid("argument");
  return guarded([&] {
    auto reports = hc::saturation_profile(sys->sys, prop->prop, n_max, depth_max, workers);
    if (out_string(hc::profile_text(reports), out) != HC_OK)
      hc::fail(hc::Err::budget, "out of memory");
  });
}

/* ----- automata ------------------------------------------------------------ */

hc_status hc_compile(const hc_system* sys, const hc_property* prop, int pool_bound,
                     int depth_bound, int workers, int empty_connected, int proper_subsets,
                     hc_automaton** out) {
  if (bad(sys) || bad(prop) || bad(out)) return invalid("argument");
  return guarded([&] {
    hc::CompileOptions opts;
    opts.workers = workers;
    auto* handle = new hc_automaton{hc::compile(sys->sys, prop->prop, pool_bound, depth_bound, opts)};
    handle->aut.conventions = hc::Conventions{empty_connected != 0, proper_subsets != 0};
    *out = handle;
  });
}

hc_status hc_automaton_save(const hc_automaton* aut, const char* path) {
  if (bad(aut) || bad(path)) return invalid("argument");
  return guarded([&] { hc::save_automaton(aut->aut, path); });
}

hc_status hc_automaton_load(const char* path, hc_automaton** out) {
  if (bad(path) || bad(out)) return invalid("argument");
  return guarded([&] { *out = new hc_automaton{hc::load_automaton(path)}; });
}

hc_status hc_automaton_info(const hc_automaton* aut, size_t* classes, int* rank, int* pool_bound,
                            int* depth) {
  if (bad(aut)) return invalid("automaton");
  if (classes) *classes = aut->aut.classes.size();
  if (rank) *rank = aut->aut.provenance.rank;
  if (pool_bound) *pool_bound = aut->aut.provenance.pool_bound;
  if (depth) *depth = aut->aut.provenance.depth;
  return HC_OK;
}

void hc_automaton_free(hc_automaton* aut) { delete aut; }

hc_status hc_evaluate(const hc_automaton* aut, const hc_circuit* tree, int* accept,
                      uint64_t* nodes) {
  if (bad(aut) || bad(tree) || bad(accept)) return invalid("argument");
  return guarded([&] {
    hc::EvalTrace trace = hc::evaluate_tree(aut->aut, tree->c);
    *accept = trace.accept ? 1 : 0;
    if (nodes) *nodes = trace.nodes;
  });
}

/* ----- generation, bench, selftest ------------------------------------------ */

hc_status hc_gen_tree(const hc_system* sys, uint64_t size, uint64_t seed, hc_circuit** out) {
  if (bad(sys) || bad(out)) return invalid("argument");
  return guarded([&] {
    *out = new hc_circuit{hc::gen_parse_tree(sys->sys, static_cast<size_t>(size), seed)};
  });
}

hc_status hc_bench(const hc_automaton* aut, uint64_t seed, int runs, char** csv) {
  if (bad(aut) || bad(csv)) return invalid("argument");
  return guarded([&] {
    hc::BenchResult res = hc::run_bench(aut->aut, seed, runs);
    if (out_string(res.csv(), csv) != HC_OK) hc::fail(hc::Err::budget, "out of memory");
  });
}

hc_status hc_selftest(uint64_t seed, int workers, int empty_connected, int proper_subsets,
                      char** report, int* ok) {
  if (bad(report)) return invalid("argument");
  return guarded([&] {
    hc::Conventions conv{empty_connected != 0, proper_subsets != 0};
    hc::SelftestResult res = hc::run_selftest(seed, workers, conv);
    if (out_string(res.report, report) != HC_OK) hc::fail(hc::Err::budget, "out of memory");
    if (ok) *ok = res.ok ? 1 : 0;
  });
}

}  // extern "C"
