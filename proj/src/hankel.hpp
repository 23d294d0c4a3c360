#pragma once

#include <vector>

#include "bitmatrix.hpp"
#include "circuit.hpp"
#include "enumerate.hpp"
#include "property.hpp"
#include "system.hpp"

namespace hc {

// Context chains with their leaf graphs resolved, ready to apply to row
// structures. Built either from enumerated chains (leaves point into the
// pool) or from arbitrary one-free-leaf circuits (closed sibling subtrees
// are pre-decoded). Keeps 32-vertex bitset mirrors of every leaf and
// template so entries run without allocation when sizes permit.
struct CompiledContexts {
  std::vector<ContextStep> steps;
  std::vector<std::pair<uint32_t, uint32_t>> spans;
  std::vector<int64_t> parent;    // prefix sharing; empty when unknown
  std::vector<int32_t> parent_slot;  // compact index for chains that are parents
  size_t parent_count = 0;
  std::vector<size_t> level_end;  // #chains of nesting <= d, when known
  std::vector<ColoredGraph> owned_leaves;
  std::vector<const ColoredGraph*> leaves;
  std::vector<TinyGraph> leaf_tiny;
  std::vector<char> leaf_tiny_ok;
  std::vector<TinyGraph> tmpl_tiny;  // per system op; valid if tmpl_tiny_ok
  std::vector<char> tmpl_tiny_ok;

  size_t size() const { return spans.size(); }
};

CompiledContexts compile_context_chains(const InductiveSystem& sys, const StructurePool& pool,
                                        const ContextChainSet& chains);
CompiledContexts compile_context_circuits(const InductiveSystem& sys,
                                          const std::vector<Circuit>& contexts);

// Fills one row: bit j = prop(contexts[j] applied to g). out must hold
// (contexts.size()+63)/64 zeroed words. cols limits to a prefix.
void context_row(const InductiveSystem& sys, const CompiledContexts& ctx,
                 const PropertyOracle& prop, const ColoredGraph& g, uint64_t* out,
                 size_t cols);

// Hankel matrix of a binary operation over the pool: entry (i,j) is the
// property verdict of pool[i] <op> pool[j].
BitMatrix build_hankel(const OpKind& op, const PropertyOracle& prop, const StructurePool& pool,
                       int workers = 1);

// Circuit matrix: rows are pool structures, columns contexts; entry (i,j)
// is the verdict of plugging pool[i] into contexts[j].
BitMatrix build_circuit_matrix(const InductiveSystem& sys, const PropertyOracle& prop,
                               const StructurePool& pool, const std::vector<Circuit>& contexts,
                               int workers = 1);
// Same, over all enumerated contexts up to the given nesting depth.
BitMatrix build_circuit_matrix(const InductiveSystem& sys, const PropertyOracle& prop,
                               const StructurePool& pool, int depth, int workers = 1,
                               size_t max_contexts = kDefaultMaxContexts);

// Rank of every truncation (pool bound n, context depth d) for n <= n_max,
// d <= depth_max, in lexicographic order. A truncation is saturated when
// neither the last pool increment nor the last depth increment moved the
// rank.
std::vector<RankReport> saturation_profile(const InductiveSystem& sys,
                                           const PropertyOracle& prop, int n_max, int depth_max,
                                           int workers = 1,
                                           size_t max_contexts = kDefaultMaxContexts);

std::string profile_text(const std::vector<RankReport>& reports);

}  // namespace hc
