#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "canonical.hpp"
#include "circuit.hpp"
#include "graph.hpp"
#include "system.hpp"

namespace hc {

// All isomorphism classes of colored graphs up to a vertex bound, the
// empty structure first, then ordered by vertex count and certificate.
struct StructurePool {
  int n_max = 0;
  uint16_t k = 0;
  std::vector<ColoredGraph> graphs;
  std::vector<CanonicalForm> forms;
  std::unordered_map<std::string, uint32_t> index;  // certificate bytes -> position

  size_t size() const { return graphs.size(); }
  std::optional<uint32_t> find(const CanonicalForm& form) const {
    auto it = index.find(form.bytes);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

// Builds the pool by levelwise extension: every n-vertex graph arises from
// an (n-1)-vertex canonical graph by attaching one vertex.
StructurePool enum_graphs(int n_max, int k);

inline constexpr size_t kDefaultMaxContexts = 2'000'000;

// A one-free-leaf circuit stored as a chain of wrapping steps, innermost
// step first. Sibling slots hold pool graphs. This compact form is what
// matrix filling and compilation iterate over; enum_contexts exposes the
// same chains as ordinary circuits.
struct ContextStep {
  static constexpr int kMaxLeaves = 5;
  uint16_t op_index = 0;
  uint16_t free_pos = 0;
  uint8_t leaf_count = 0;
  std::array<uint32_t, kMaxLeaves> leaves{};
};

struct ContextChainSet {
  std::vector<ContextStep> steps;
  std::vector<std::pair<uint32_t, uint32_t>> spans;  // (begin, count) per chain
  // Chain whose steps are this chain's steps minus the outermost one; -1
  // for the trivial chain. Parents always precede children, which lets
  // row computations reuse the shared prefixes.
  std::vector<int64_t> parent;

  size_t size() const { return spans.size(); }
};

ContextChainSet enum_context_chains(const InductiveSystem& sys, const StructurePool& pool,
                                    int depth, size_t max_contexts = kDefaultMaxContexts);
Circuit chain_circuit(const InductiveSystem& sys, const StructurePool& pool,
                      const ContextChainSet& set, size_t chain);

// All contexts with nesting depth at most `depth`: the trivial context x,
// then one chain per (operation, free slot, sibling tuple) wrapping of a
// shallower context. Deterministic order, textually deduplicated.
std::vector<Circuit> enum_contexts(const InductiveSystem& sys, const StructurePool& pool,
                                   int depth, size_t max_contexts = kDefaultMaxContexts);

// Seeded random parse tree over the system's bases and operations with
// (up to) `size` nodes: when the operation arities cannot realize the
// exact node count, the largest realizable count below it is used. Child
// seeds are derived by index, so the tree depends only on (sys, size,
// seed). The cumulative vertex count of a decode is kept within the
// budget (0 = default) by regenerating with a salted seed.
Circuit gen_parse_tree(const InductiveSystem& sys, size_t size, uint64_t seed,
                       uint64_t budget_vertices = 0);

// Streams every parse tree with at most size_max nodes, each exactly once,
// smallest sizes first. The visited circuit is a shared arena that is only
// valid during the callback; return false to stop. max_trees > 0 bounds
// the stream and fails loudly when exceeded.
void exhaustive_parse_trees(const InductiveSystem& sys, size_t size_max,
                            const std::function<bool(const Circuit&)>& visit,
                            size_t max_trees = 0);

}  // namespace hc
