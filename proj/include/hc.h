/* hc — graph-property rank experiments and compiled tree automata.
 *
 * C interface over the core library: opaque handles, status codes, and
 * caller-freed strings. Every function returning hc_status reports errors
 * through its return value; hc_last_error_message() describes the most
 * recent failure on the calling thread. Strings returned through `char**`
 * out-parameters are heap-allocated and must be released with
 * hc_string_free().
 */

#ifndef HC_H
#define HC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hc_status {
  HC_OK = 0,
  HC_ERROR_INVALID_ARGUMENT = 1,
  HC_ERROR_PARSE = 2,
  HC_ERROR_DOMAIN = 3,
  HC_ERROR_BUDGET = 4,
  HC_ERROR_UNSATURATED = 5,
  HC_ERROR_IO = 6,
  HC_ERROR_BOUND = 7,
  HC_ERROR_INTERNAL = 8
} hc_status;

typedef struct hc_graph hc_graph;
typedef struct hc_circuit hc_circuit;
typedef struct hc_system hc_system;
typedef struct hc_pool hc_pool;
typedef struct hc_property hc_property;
typedef struct hc_matrix hc_matrix;
typedef struct hc_automaton hc_automaton;

const char* hc_version(void);
const char* hc_last_error_message(void);
void hc_string_free(char* s);

/* ----- colored graphs ------------------------------------------------ */

/* Text format: "graph n=<N> k=<K>" header, then "e <u> <v>" / "c <v> <i>"
 * lines; ';' may replace newlines. */
hc_status hc_graph_parse(const char* text, hc_graph** out);
hc_status hc_graph_render(const hc_graph* g, char** out);
void hc_graph_free(hc_graph* g);

hc_status hc_graph_counts(const hc_graph* g, uint32_t* vertices, uint64_t* edges,
                          uint32_t* colors);
hc_status hc_graph_union(const hc_graph* a, const hc_graph* b, hc_graph** out);
hc_status hc_graph_join(const hc_graph* a, const hc_graph* b, hc_graph** out);
hc_status hc_graph_tensor(const hc_graph* a, const hc_graph* b, hc_graph** out);
hc_status hc_graph_cartesian(const hc_graph* a, const hc_graph* b, hc_graph** out);
hc_status hc_graph_fuse(const hc_graph* g, uint32_t color, hc_graph** out);
hc_status hc_graph_recolor(const hc_graph* g, uint32_t from, uint32_t to, hc_graph** out);
hc_status hc_graph_add_bicolor_edges(const hc_graph* g, uint32_t i, uint32_t j, hc_graph** out);
hc_status hc_graph_substitute(const hc_graph* tmpl, const hc_graph* const* parts, size_t nparts,
                              hc_graph** out);
hc_status hc_graph_induced(const hc_graph* g, const uint32_t* vertices, size_t count,
                           hc_graph** out);
/* Hex certificate identifying the colored-isomorphism class. */
hc_status hc_graph_certificate(const hc_graph* g, char** out);

/* ----- properties ----------------------------------------------------- */

/* Expressions: connected | bipartite | empty | true | false |
 * conn_of_order:<spec> | and(...) | or(...) | not(...). */
hc_status hc_property_parse(const char* expr, int empty_connected, int proper_subsets,
                            hc_property** out);
hc_status hc_property_eval(const hc_property* p, const hc_graph* g, int* verdict);
void hc_property_free(hc_property* p);

/* Subset-sum polynomial; coeffs receives up to cap coefficients
 * (degree 0 first), *ncoeffs the true count. */
hc_status hc_poly_eval(const hc_graph* g, const hc_property* p, double x, int proper_subsets,
                       double* value, uint64_t* coeffs, size_t cap, size_t* ncoeffs);

/* ----- circuits / parse trees ----------------------------------------- */

hc_status hc_circuit_parse(const char* text, hc_circuit** out);
hc_status hc_circuit_render(const hc_circuit* c, char** out);
void hc_circuit_free(hc_circuit* c);
hc_status hc_circuit_size(const hc_circuit* c, uint64_t* nodes);
hc_status hc_circuit_free_leaves(const hc_circuit* c, uint64_t* count);
hc_status hc_circuit_substitute(const hc_circuit* c, const hc_graph* g, hc_circuit** out);
/* sys may be NULL when the circuit has no named leaves. */
hc_status hc_circuit_decode(const hc_circuit* c, const hc_system* sys, hc_graph** out);

/* ----- inductive systems ---------------------------------------------- */

/* ref: a system file path, or a builtin name (tw<k>, cw<k>, mw<k>, union). */
hc_status hc_system_open(const char* ref, hc_system** out);
hc_status hc_system_render(const hc_system* sys, char** out);
hc_status hc_system_info(const hc_system* sys, char** name, uint32_t* colors, size_t* bases,
                         size_t* ops);
void hc_system_free(hc_system* sys);

/* ----- pools and matrices --------------------------------------------- */

hc_status hc_pool_build(uint32_t n_max, uint32_t colors, hc_pool** out);
hc_status hc_pool_size(const hc_pool* pool, size_t* size);
hc_status hc_pool_get(const hc_pool* pool, size_t index, hc_graph** out);
void hc_pool_free(hc_pool* pool);

/* op: union | join | tensor | cartesian | fuse:<i> | recolor:<i>:<j> |
 * eta:<i>:<j> | subst:<n>:<edges>. */
hc_status hc_hankel_build(const char* op, const hc_property* prop, const hc_pool* pool,
                          int workers, hc_matrix** out);
hc_status hc_circuit_matrix_build(const hc_system* sys, const hc_property* prop,
                                  const hc_pool* pool, int depth, int workers, hc_matrix** out);
hc_status hc_matrix_shape(const hc_matrix* m, size_t* rows, size_t* cols);
hc_status hc_matrix_rank(const hc_matrix* m, int* rank);
hc_status hc_matrix_distinct_rows(const hc_matrix* m, size_t* count);
hc_status hc_matrix_dump(const hc_matrix* m, char** out);
void hc_matrix_free(hc_matrix* m);

/* Rank report lines for every truncation (n, d) up to the bounds. */
hc_status hc_saturation_profile(const hc_system* sys, const hc_property* prop, int n_max,
                                int depth_max, int workers, char** out);

/* ----- compilation and evaluation ------------------------------------- */

hc_status hc_compile(const hc_system* sys, const hc_property* prop, int pool_bound,
                     int depth_bound, int workers, int empty_connected, int proper_subsets,
                     hc_automaton** out);
hc_status hc_automaton_save(const hc_automaton* aut, const char* path);
hc_status hc_automaton_load(const char* path, hc_automaton** out);
hc_status hc_automaton_info(const hc_automaton* aut, size_t* classes, int* rank, int* pool_bound,
                            int* depth);
void hc_automaton_free(hc_automaton* aut);

hc_status hc_evaluate(const hc_automaton* aut, const hc_circuit* tree, int* accept,
                      uint64_t* nodes);

/* ----- generation, bench, selftest ------------------------------------ */

hc_status hc_gen_tree(const hc_system* sys, uint64_t size, uint64_t seed, hc_circuit** out);
/* CSV: size,eval_median_seconds,baseline_seconds (baseline may be
 * "skipped"). */
hc_status hc_bench(const hc_automaton* aut, uint64_t seed, int runs, char** csv);
/* Deterministic report; *ok is 1 when every check passed. */
hc_status hc_selftest(uint64_t seed, int workers, int empty_connected, int proper_subsets,
                      char** report, int* ok);

#ifdef __cplusplus
}
#endif

#endif /* HC_H */
