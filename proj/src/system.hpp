#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "graph.hpp"

namespace hc {

struct NamedGraph {
  std::string name;
  ColoredGraph graph;
};

// A finite set of base structures plus a finite operation set; the
// inductive class it generates is everything reachable from the bases
// under the operations. Op and base order is part of the value: context
// enumeration, compilation and serialization all follow it.
struct InductiveSystem {
  std::string name;
  uint16_t k = 0;
  std::vector<NamedGraph> base;
  std::vector<OpKind> ops;

  const ColoredGraph* find_base(std::string_view base_name) const;
  std::optional<size_t> find_op(const OpKind& op) const;
  std::optional<size_t> find_op_signature(std::string_view sig) const;
};

// Built-in families. Tree-width k: all colored graphs with at most k+1
// vertices as bases; union, recoloring, and per-color fusion. Clique-width
// k: single colored vertices; union, recoloring, and bicolor edge
// insertion. Modular-width k: a single vertex; union, join, and
// substitution along every template with exactly k vertices.
InductiveSystem make_treewidth_system(int k);
InductiveSystem make_cliquewidth_system(int k);
InductiveSystem make_modularwidth_system(int k);
// Disjoint union only, over bases {empty, K1}.
InductiveSystem make_union_system();

// System file format: a `system <name> k=<K>` header, then `base <name>
// <graph text...>` blocks (the graph text may continue on following lines)
// and `op <kind> [params]` lines, where <kind> is union, join, tensor,
// cartesian, `fuse <i>`, `recolor <i> <j>`, `eta <i> <j>` or `subst <graph
// text>` with ';' separating the embedded graph lines. '#' starts a
// comment.
InductiveSystem parse_system(std::string_view text);
std::string render_system(const InductiveSystem& sys);
InductiveSystem load_system_file(const std::string& path);

// Resolves a CLI-style reference: an existing file path wins; otherwise
// builtin names (tw<k>, cw<k>, mw<k>, union) are recognized.
InductiveSystem resolve_system(const std::string& ref);

}  // namespace hc
