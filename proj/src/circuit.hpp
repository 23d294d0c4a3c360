#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"

namespace hc {

struct InductiveSystem;

enum class OpTag : uint8_t { Union, Join, Tensor, Cartesian, Fuse, Recolor, Eta, Subst };

// Operation label of a circuit node. Fuse uses i; Recolor and Eta use i
// and j; Subst carries the uncolored template whose vertex count is the
// arity.
struct OpKind {
  OpTag tag = OpTag::Union;
  uint16_t i = 0, j = 0;
  std::shared_ptr<const ColoredGraph> tmpl;

  int arity() const;
  // Space-free form, e.g. "union", "fuse:1", "recolor:1:2", "subst:2:1-2".
  std::string signature() const;
  bool operator==(const OpKind& other) const;
};

OpKind op_union();
OpKind op_join();
OpKind op_tensor();
OpKind op_cartesian();
OpKind op_fuse(uint16_t i);
OpKind op_recolor(uint16_t i, uint16_t j);
OpKind op_eta(uint16_t i, uint16_t j);
OpKind op_subst(ColoredGraph tmpl);
OpKind parse_op_signature(std::string_view sig);

// Applies an operation to decoded argument graphs.
ColoredGraph apply_op(const OpKind& op, std::span<const ColoredGraph> args);

enum class NodeKind : uint8_t { FreeLeaf, GraphLeaf, NamedLeaf, Op };

struct CircuitNode {
  NodeKind kind = NodeKind::FreeLeaf;
  OpKind op;                              // when kind == Op
  uint32_t payload = 0;                   // graph or name index
  uint32_t child_begin = 0, child_count = 0;
};

// Term over the operation set: leaves are structures, named base
// structures, or the free symbol x. Nodes live in a flat arena in which
// children always precede their parent; the root is the last node. The
// flat layout keeps evaluation and destruction iterative, so very deep
// trees are safe.
struct Circuit {
  std::vector<CircuitNode> nodes;
  std::vector<uint32_t> children;
  std::vector<ColoredGraph> graphs;
  std::vector<std::string> names;
  uint32_t root = 0;

  size_t size() const { return nodes.size(); }

  static Circuit free_leaf();
  static Circuit leaf(ColoredGraph g);
  static Circuit named_leaf(std::string name);
  static Circuit op(OpKind kind, std::vector<Circuit> parts);
};

// Grammar (whitespace-insensitive, ';' comments to end of line):
//   x
//   (leaf "<graph text>")        inline structure; \n \" \\ escapes
//   (leaf @<name>)               named base structure
//   (union A B) (join A B) (tensor A B) (cartesian A B)
//   (fuse <i> A) (recolor <i> <j> A) (eta <i> <j> A)
//   (subst "<graph text>" A1 ... Ar)
// max_color > 0 additionally bounds the color indices appearing in ops.
Circuit parse_circuit(std::string_view text, int max_color = 0);
std::string render_circuit(const Circuit& c);

// Replaces every free leaf by the given structure.
Circuit substitute_free(const Circuit& c, const ColoredGraph& a);

size_t tree_size(const Circuit& c);
size_t free_leaf_count(const Circuit& c);

// Extracts the subtree rooted at the given node into its own circuit.
Circuit subtree_circuit(const Circuit& c, uint32_t root);

uint64_t default_vertex_budget();  // HC_BUDGET_VERTICES or 10^7

struct DecodeOptions {
  uint64_t budget_vertices = 0;  // 0 = default_vertex_budget()
  const InductiveSystem* system = nullptr;  // resolves named leaves
};

// Bottom-up evaluation of a closed circuit. Guards: the running total of
// produced vertices stays within the vertex budget, and no intermediate
// graph's edge count may exceed eight times the budget.
ColoredGraph decode(const Circuit& c, const DecodeOptions& opts = {});

}  // namespace hc
