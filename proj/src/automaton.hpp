#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bitmatrix.hpp"
#include "circuit.hpp"
#include "enumerate.hpp"
#include "hankel.hpp"
#include "property.hpp"
#include "system.hpp"

namespace hc {

// One row-equivalence class: a closed witness circuit, its decoded graph
// (the minimal one seen, by vertex count then certificate), and whether
// members satisfy the property.
struct AutomatonClass {
  Circuit repr;
  ColoredGraph repr_graph;
  bool accept = false;
};

// Bottom-up tree automaton compiled from the truncated circuit-matrix
// rows: one state per distinct row, transitions per operation tuple.
// Immutable after compile/load except for the sparse transition cache,
// which is a read-through memo guarded by a mutex.
struct Automaton {
  InductiveSystem system;
  std::string property_expr;
  Conventions conventions;
  RankReport provenance;  // rank/pool/depth of the compile-time matrix

  std::vector<AutomatonClass> classes;
  std::vector<uint32_t> base_class_by_index;              // per system.base entry
  std::map<std::string, uint32_t> base_class_by_cert;     // certificate bytes -> class

  static constexpr uint32_t kNoEntry = 0xffffffffu;
  std::vector<std::vector<uint32_t>> table1;  // per op, arity 1: [class]
  std::vector<std::vector<uint32_t>> table2;  // per op, arity 2: [a*C + b]

  struct SparseTables {
    std::mutex mutex;
    std::map<std::pair<uint16_t, std::vector<uint32_t>>, uint32_t> entries;
  };
  std::unique_ptr<SparseTables> sparse = std::make_unique<SparseTables>();

  // Lazily constructed machinery for recomputing rows (used to fill
  // transition-cache misses after load).
  struct RowEngine;
  mutable std::unique_ptr<RowEngine> engine;
  mutable std::unique_ptr<std::mutex> engine_mutex = std::make_unique<std::mutex>();

  Automaton();
  Automaton(Automaton&&) noexcept;
  Automaton& operator=(Automaton&&) noexcept;
  ~Automaton();

  size_t class_count() const { return classes.size(); }
};

struct CompileOptions {
  int workers = 1;
  size_t class_cap = 4096;
  size_t max_contexts = kDefaultMaxContexts;
  size_t max_candidates = 200'000;
};

// Theorem-style compilation: seed classes from the base structures' rows,
// close under every operation (a combination with an unseen row founds a
// new class), then every computed tuple is a transition. Fails loudly when
// the class cap is hit instead of returning an unsound automaton.
Automaton compile(const InductiveSystem& sys, const PropertyOracle& prop, int pool_bound,
                  int depth_bound, const CompileOptions& opts = {});

struct EvalTrace {
  std::vector<uint32_t> classes;  // per arena node
  bool accept = false;
  size_t nodes = 0;
  size_t lookups = 0;  // transition-table lookups performed
};

// Single bottom-up pass; one table lookup per internal node; no graph is
// materialized. Leaves resolve by name or by certificate against the base
// structures.
EvalTrace evaluate_tree(const Automaton& aut, const Circuit& t);

void save_automaton(const Automaton& aut, const std::string& path);
Automaton load_automaton(const std::string& path);

// Structural equality used by round-trip tests.
bool automata_equal(const Automaton& a, const Automaton& b);

}  // namespace hc
