#include "hankel.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace hc {

namespace {

// Vertex cap for the slow (heap) fallback path; context application is
// meant for desk-scale truncations, so runaway products fail loudly.
constexpr uint64_t kContextVertexCap = 1'000'000;

std::optional<TinyGraph> tiny_apply(const OpKind& op, const TinyGraph* tmpl,
                                    std::span<const TinyGraph> args) {
  switch (op.tag) {
    case OpTag::Union:
      return tiny_union(args[0], args[1]);
    case OpTag::Join:
      return tiny_join(args[0], args[1]);
    case OpTag::Tensor:
      return tiny_tensor(args[0], args[1]);
    case OpTag::Cartesian:
      return tiny_cartesian(args[0], args[1]);
    case OpTag::Fuse:
      return tiny_fuse(args[0], op.i);
    case OpTag::Recolor:
      return tiny_recolor(args[0], op.i, op.j);
    case OpTag::Eta:
      return tiny_eta(args[0], op.i, op.j);
    case OpTag::Subst:
      if (!tmpl) return std::nullopt;
      return tiny_subst(*tmpl, args);
  }
  return std::nullopt;
}

void fill_tiny_mirrors(CompiledContexts& ctx, const InductiveSystem& sys) {
  ctx.leaf_tiny.resize(ctx.leaves.size());
  ctx.leaf_tiny_ok.assign(ctx.leaves.size(), 0);
  for (size_t i = 0; i < ctx.leaves.size(); ++i) {
    if (auto t = TinyGraph::from_graph(*ctx.leaves[i])) {
      ctx.leaf_tiny[i] = *t;
      ctx.leaf_tiny_ok[i] = 1;
    }
  }
  ctx.tmpl_tiny.resize(sys.ops.size());
  ctx.tmpl_tiny_ok.assign(sys.ops.size(), 0);
  for (size_t oi = 0; oi < sys.ops.size(); ++oi) {
    if (sys.ops[oi].tag != OpTag::Subst) continue;
    if (auto t = TinyGraph::from_graph(*sys.ops[oi].tmpl)) {
      ctx.tmpl_tiny[oi] = *t;
      ctx.tmpl_tiny_ok[oi] = 1;
    }
  }
}

}  // namespace

CompiledContexts compile_context_chains(const InductiveSystem& sys, const StructurePool& pool,
                                        const ContextChainSet& chains) {
  CompiledContexts ctx;
  ctx.steps = chains.steps;
  ctx.spans = chains.spans;
  ctx.parent = chains.parent;
  ctx.parent_slot.assign(ctx.spans.size(), -1);
  for (int64_t p : ctx.parent)
    if (p >= 0 && ctx.parent_slot[static_cast<size_t>(p)] < 0)
      ctx.parent_slot[static_cast<size_t>(p)] = static_cast<int32_t>(ctx.parent_count++);
  ctx.leaves.reserve(pool.size());
  for (const ColoredGraph& g : pool.graphs) ctx.leaves.push_back(&g);
  fill_tiny_mirrors(ctx, sys);
  return ctx;
}

CompiledContexts compile_context_circuits(const InductiveSystem& sys,
                                          const std::vector<Circuit>& contexts) {
  CompiledContexts ctx;
  bool has_trivial = false;
  // Two passes: collect leaf graphs first so pointers stay stable.
  struct RawStep {
    uint16_t op_index, free_pos;
    std::vector<size_t> leaf_ids;
  };
  std::vector<std::vector<RawStep>> all_chains;
  for (const Circuit& c : contexts) {
    if (free_leaf_count(c) != 1)
      fail(Err::domain, "context must contain exactly one free leaf occurrence");
    std::vector<RawStep> chain;
    uint32_t node = c.root;
    for (;;) {
      const CircuitNode& nd = c.nodes[node];
      if (nd.kind == NodeKind::FreeLeaf) break;
      if (nd.kind != NodeKind::Op)
        fail(Err::domain, "context free leaf is not reachable through operations");
      auto subtree_free = [&](uint32_t r) {
        // The arena is contiguous per subtree is not guaranteed here, so
        // walk explicitly.
        std::vector<uint32_t> stack{r};
        while (!stack.empty()) {
          uint32_t v = stack.back();
          stack.pop_back();
          const CircuitNode& n2 = c.nodes[v];
          if (n2.kind == NodeKind::FreeLeaf) return true;
          for (uint32_t i = 0; i < n2.child_count; ++i)
            stack.push_back(c.children[n2.child_begin + i]);
        }
        return false;
      };
      auto oi = sys.find_op(nd.op);
      if (!oi) fail(Err::domain, "context uses operation " + nd.op.signature() +
                                     " which is not in system '" + sys.name + "'");
      RawStep step;
      step.op_index = static_cast<uint16_t>(*oi);
      int free_child = -1;
      for (uint32_t ci = 0; ci < nd.child_count; ++ci) {
        uint32_t child = c.children[nd.child_begin + ci];
        if (subtree_free(child)) {
          if (free_child >= 0) fail(Err::internal, "two free paths in a one-free-leaf context");
          free_child = static_cast<int>(ci);
        }
      }
      if (free_child < 0) fail(Err::internal, "context lost its free leaf");
      step.free_pos = static_cast<uint16_t>(free_child);
      if (nd.child_count > static_cast<uint32_t>(ContextStep::kMaxLeaves) + 1)
        fail(Err::domain, "context operation arity exceeds the supported width");
      for (uint32_t ci = 0; ci < nd.child_count; ++ci) {
        if (static_cast<int>(ci) == free_child) continue;
        uint32_t child = c.children[nd.child_begin + ci];
        // Closed sibling: decode it once, whatever its shape.
        ColoredGraph g = decode(subtree_circuit(c, child));
        step.leaf_ids.push_back(ctx.owned_leaves.size());
        ctx.owned_leaves.push_back(std::move(g));
      }
      chain.push_back(std::move(step));
      node = c.children[nd.child_begin + static_cast<uint32_t>(free_child)];
    }
    std::reverse(chain.begin(), chain.end());
    if (chain.empty()) has_trivial = true;
    all_chains.push_back(std::move(chain));
  }
  if (!has_trivial)
    fail(Err::domain, "context set must include the trivial context x");

  for (const auto& chain : all_chains) {
    uint32_t begin = static_cast<uint32_t>(ctx.steps.size());
    for (const RawStep& rs : chain) {
      ContextStep step;
      step.op_index = rs.op_index;
      step.free_pos = rs.free_pos;
      step.leaf_count = static_cast<uint8_t>(rs.leaf_ids.size());
      for (size_t i = 0; i < rs.leaf_ids.size(); ++i)
        step.leaves[i] = static_cast<uint32_t>(rs.leaf_ids[i]);
      ctx.steps.push_back(step);
    }
    ctx.spans.push_back({begin, static_cast<uint32_t>(chain.size())});
  }
  ctx.leaves.reserve(ctx.owned_leaves.size());
  for (const ColoredGraph& g : ctx.owned_leaves) ctx.leaves.push_back(&g);
  fill_tiny_mirrors(ctx, sys);
  return ctx;
}

namespace {

// One wrapping step on the fixed-size representation; nullopt on overflow
// or a leaf too large for it.
std::optional<TinyGraph> step_tiny(const InductiveSystem& sys, const CompiledContexts& ctx,
                                   const ContextStep& step, const TinyGraph& cur) {
  const OpKind& op = sys.ops[step.op_index];
  TinyGraph args[ContextStep::kMaxLeaves + 1];
  int leaf_at = 0;
  int arity = op.arity();
  for (int pos = 0; pos < arity; ++pos) {
    if (pos == static_cast<int>(step.free_pos)) {
      args[pos] = cur;
    } else {
      uint32_t leaf = step.leaves[leaf_at++];
      if (!ctx.leaf_tiny_ok[leaf]) return std::nullopt;
      args[pos] = ctx.leaf_tiny[leaf];
    }
  }
  return tiny_apply(op,
                    ctx.tmpl_tiny_ok[step.op_index] ? &ctx.tmpl_tiny[step.op_index] : nullptr,
                    std::span<const TinyGraph>(args, arity));
}

// Applies one chain to a start structure and evaluates the property.
// Prefers the fixed-size path; falls back to heap graphs on overflow.
bool chain_entry(const InductiveSystem& sys, const CompiledContexts& ctx, size_t chain,
                 const PropertyOracle& prop, const ColoredGraph& full,
                 const TinyGraph* tiny_start) {
  auto [begin, count] = ctx.spans[chain];
  if (tiny_start) {
    TinyGraph cur = *tiny_start;
    bool ok = true;
    for (uint32_t s = 0; s < count && ok; ++s) {
      auto next = step_tiny(sys, ctx, ctx.steps[begin + s], cur);
      if (!next)
        ok = false;
      else
        cur = *next;
    }
    if (ok) return prop.eval_tiny(cur);
  }

  ColoredGraph cur = full;
  for (uint32_t s = 0; s < count; ++s) {
    const ContextStep& step = ctx.steps[begin + s];
    const OpKind& op = sys.ops[step.op_index];
    std::vector<ColoredGraph> args;
    args.reserve(op.arity());
    int leaf_at = 0;
    uint64_t vertices = 0;
    for (int pos = 0; pos < op.arity(); ++pos) {
      if (pos == static_cast<int>(step.free_pos))
        args.push_back(std::move(cur));
      else
        args.push_back(*ctx.leaves[step.leaves[leaf_at++]]);
      vertices += args.back().n;
    }
    if (vertices > kContextVertexCap)
      fail(Err::budget, "context application exceeded the vertex cap");
    cur = apply_op(op, args);
    if (cur.n > kContextVertexCap)
      fail(Err::budget, "context application exceeded the vertex cap");
  }
  return prop(cur);
}

constexpr size_t kSharedPrefixMemoryCap = 64u << 20;  // bytes of cached parents

}  // namespace

void context_row(const InductiveSystem& sys, const CompiledContexts& ctx,
                 const PropertyOracle& prop, const ColoredGraph& g, uint64_t* out,
                 size_t cols) {
  auto tiny = TinyGraph::from_graph(g);
  bool shared = tiny && ctx.parent.size() == ctx.size() &&
                ctx.parent_count * sizeof(TinyGraph) <= kSharedPrefixMemoryCap;
  if (!shared) {
    const TinyGraph* tiny_ptr = tiny ? &*tiny : nullptr;
    for (size_t j = 0; j < cols; ++j)
      if (chain_entry(sys, ctx, j, prop, g, tiny_ptr)) out[j / 64] |= uint64_t(1) << (j % 64);
    return;
  }

  // Chains are emitted parents-first and each chain extends its parent by
  // one step, so one forward pass with a cache of parent values computes
  // every entry with a single operation application.
  std::vector<TinyGraph> cache(ctx.parent_count);
  std::vector<char> cached(ctx.parent_count, 0);
  for (size_t j = 0; j < cols; ++j) {
    auto [begin, count] = ctx.spans[j];
    std::optional<TinyGraph> value;
    int64_t par = ctx.parent[j];
    if (count == 0) {
      value = *tiny;
    } else if (par >= 0) {
      int32_t slot = ctx.parent_slot[static_cast<size_t>(par)];
      const TinyGraph* src = nullptr;
      TinyGraph trivial;
      if (ctx.spans[static_cast<size_t>(par)].second == 0) {
        trivial = *tiny;
        src = &trivial;
      } else if (slot >= 0 && cached[slot]) {
        src = &cache[slot];
      }
      if (src) value = step_tiny(sys, ctx, ctx.steps[begin + count - 1], *src);
    }

    bool bit;
    if (value) {
      bit = prop.eval_tiny(*value);
      int32_t own = ctx.parent_slot[j];
      if (own >= 0) {
        cache[own] = *value;
        cached[own] = 1;
      }
    } else {
      bit = chain_entry(sys, ctx, j, prop, g, nullptr);
    }
    if (bit) out[j / 64] |= uint64_t(1) << (j % 64);
  }
}

BitMatrix build_hankel(const OpKind& op, const PropertyOracle& prop, const StructurePool& pool,
                       int workers) {
  if (op.arity() != 2) fail(Err::domain, "build_hankel: operation must be binary");
  size_t n = pool.size();
  BitMatrix m(n, n);
  std::vector<std::optional<TinyGraph>> tiny(n);
  for (size_t i = 0; i < n; ++i) tiny[i] = TinyGraph::from_graph(pool.graphs[i]);

  parallel_for(n, workers, [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      for (size_t j = 0; j < n; ++j) {
        bool bit;
        try {
          std::optional<TinyGraph> t;
          if (tiny[i] && tiny[j]) {
            TinyGraph targs[2] = {*tiny[i], *tiny[j]};
            t = tiny_apply(op, nullptr, std::span<const TinyGraph>(targs, 2));
          }
          if (t) {
            bit = prop.eval_tiny(*t);
          } else {
            ColoredGraph gargs[2] = {pool.graphs[i], pool.graphs[j]};
            ColoredGraph combined = apply_op(op, std::span<const ColoredGraph>(gargs, 2));
            if (combined.n > kContextVertexCap)
              fail(Err::budget, "combination exceeded the vertex cap");
            bit = prop(combined);
          }
        } catch (const Error& e) {
          fail(e.code(), "build_hankel entry (" + std::to_string(i) + "," + std::to_string(j) +
                             "): " + e.what());
        }
        m.set(i, j, bit);
      }
    }
  });
  return m;
}

namespace {

BitMatrix matrix_from_contexts(const InductiveSystem& sys, const PropertyOracle& prop,
                               const StructurePool& pool, const CompiledContexts& ctx,
                               size_t cols, int workers) {
  BitMatrix m(pool.size(), cols);
  parallel_for(pool.size(), workers, [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      try {
        context_row(sys, ctx, prop, pool.graphs[i], m.row(i), cols);
      } catch (const Error& e) {
        fail(e.code(), "circuit matrix row " + std::to_string(i) + ": " + e.what());
      }
    }
  });
  return m;
}

}  // namespace

BitMatrix build_circuit_matrix(const InductiveSystem& sys, const PropertyOracle& prop,
                               const StructurePool& pool, const std::vector<Circuit>& contexts,
                               int workers) {
  if (contexts.empty()) fail(Err::domain, "build_circuit_matrix: no contexts");
  CompiledContexts ctx = compile_context_circuits(sys, contexts);
  return matrix_from_contexts(sys, prop, pool, ctx, ctx.size(), workers);
}

BitMatrix build_circuit_matrix(const InductiveSystem& sys, const PropertyOracle& prop,
                               const StructurePool& pool, int depth, int workers,
                               size_t max_contexts) {
  ContextChainSet chains = enum_context_chains(sys, pool, depth, max_contexts);
  CompiledContexts ctx = compile_context_chains(sys, pool, chains);
  return matrix_from_contexts(sys, prop, pool, ctx, ctx.size(), workers);
}

std::vector<RankReport> saturation_profile(const InductiveSystem& sys,
                                           const PropertyOracle& prop, int n_max, int depth_max,
                                           int workers, size_t max_contexts) {
  if (n_max < 0 || depth_max < 0) fail(Err::domain, "saturation_profile: negative bounds");
  std::vector<std::vector<int>> rank(n_max + 1, std::vector<int>(depth_max + 1, 0));
  std::vector<std::vector<size_t>> distinct(n_max + 1, std::vector<size_t>(depth_max + 1, 0));

  for (int n = 0; n <= n_max; ++n) {
    StructurePool pool = enum_graphs(n, sys.k);
    // Chains for depth d are a prefix of the chains for depth_max (they
    // are emitted level by level), so one enumeration and one full matrix
    // serve every d. The nesting of a chain is its step count.
    ContextChainSet chains = enum_context_chains(sys, pool, depth_max, max_contexts);
    std::vector<size_t> level_end(depth_max + 1, 0);
    for (const auto& span : chains.spans)
      for (int dd = static_cast<int>(span.second); dd <= depth_max; ++dd)
        ++level_end[static_cast<size_t>(dd)];
    CompiledContexts ctx = compile_context_chains(sys, pool, chains);
    BitMatrix fullm = matrix_from_contexts(sys, prop, pool, ctx, ctx.size(), workers);
    for (int d = 0; d <= depth_max; ++d) {
      size_t cols = level_end[static_cast<size_t>(d)];
      BitMatrix sub(fullm.rows, cols);
      for (size_t r = 0; r < fullm.rows; ++r)
        for (size_t c = 0; c < cols; ++c)
          if (fullm.get(r, c)) sub.set(r, c, true);
      rank[n][d] = gf2_rank(sub);
      distinct[n][d] = distinct_row_count(sub);
      if (!(rank[n][d] <= static_cast<int>(distinct[n][d])))
        fail(Err::internal, "rank exceeds distinct row count");
    }
  }

  std::vector<RankReport> reports;
  for (int n = 0; n <= n_max; ++n)
    for (int d = 0; d <= depth_max; ++d) {
      RankReport rep;
      rep.rank = rank[n][d];
      rep.distinct_rows = distinct[n][d];
      rep.pool_bound = n;
      rep.depth = d;
      rep.saturated = n >= 1 && d >= 1 && rank[n][d] == rank[n - 1][d] && rank[n][d] == rank[n][d - 1];
      reports.push_back(rep);
    }
  return reports;
}

std::string profile_text(const std::vector<RankReport>& reports) {
  std::ostringstream out;
  for (const auto& rep : reports) out << rep.line() << "\n";
  return out.str();
}

}  // namespace hc
