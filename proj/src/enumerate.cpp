#include "enumerate.hpp"

#include <algorithm>
#include <map>

#include "error.hpp"
#include "rng.hpp"

namespace hc {

StructurePool enum_graphs(int n_max, int k) {
  if (n_max < 0 || n_max > kDefaultCanonBound)
    fail(Err::bound, "enum_graphs: n_max " + std::to_string(n_max) +
                         " exceeds the canonicalization bound " +
                         std::to_string(kDefaultCanonBound));
  if (k < 0 || k > 255) fail(Err::domain, "enum_graphs: k out of range");

  StructurePool pool;
  pool.n_max = n_max;
  pool.k = static_cast<uint16_t>(k);

  auto push = [&](ColoredGraph g, CanonicalForm form) {
    pool.index.emplace(form.bytes, static_cast<uint32_t>(pool.graphs.size()));
    pool.graphs.push_back(std::move(g));
    pool.forms.push_back(std::move(form));
  };

  ColoredGraph empty = empty_graph(static_cast<uint16_t>(k));
  push(empty, canonical_form(empty));

  std::vector<ColoredGraph> level{empty};
  for (int n = 1; n <= n_max; ++n) {
    // Attach one new vertex to every member of the previous level, in
    // every way; dedup by certificate. Every n-vertex class is reached
    // because deleting a vertex lands in some (n-1)-vertex class.
    std::map<CanonicalForm, ColoredGraph> found;
    for (const ColoredGraph& g : level) {
      uint32_t masks = 1u << g.n;
      for (uint32_t mask = 0; mask < masks; ++mask) {
        for (int c = 0; c <= k; ++c) {
          ColoredGraph h = g;
          h.n = g.n + 1;
          h.color.push_back(static_cast<uint16_t>(c));
          for (uint32_t v = 0; v < g.n; ++v)
            if ((mask >> v) & 1u) h.edges.push_back({v + 1, h.n});
          std::sort(h.edges.begin(), h.edges.end());
          CanonicalForm form = canonical_form(h);
          found.emplace(std::move(form), std::move(h));
        }
      }
    }
    level.clear();
    for (auto& [form, g] : found) {
      level.push_back(g);
      push(std::move(g), form);
    }
  }
  return pool;
}

namespace {

// One wrapping step choice: an operation, the slot that receives the inner
// context, and pool leaves for the remaining slots.
std::vector<ContextStep> enumerate_wrappers(const InductiveSystem& sys,
                                            const StructurePool& pool) {
  std::vector<ContextStep> wrappers;
  for (size_t oi = 0; oi < sys.ops.size(); ++oi) {
    int r = sys.ops[oi].arity();
    if (r < 1) continue;
    if (r - 1 > ContextStep::kMaxLeaves)
      fail(Err::domain, "enum_contexts: operation arity " + std::to_string(r) +
                            " exceeds the supported context width");
    int leaf_slots = r - 1;
    uint64_t tuples = 1;
    for (int t = 0; t < leaf_slots; ++t) tuples *= pool.size();
    for (int pos = 0; pos < r; ++pos) {
      for (uint64_t tuple = 0; tuple < tuples; ++tuple) {
        ContextStep step;
        step.op_index = static_cast<uint16_t>(oi);
        step.free_pos = static_cast<uint16_t>(pos);
        step.leaf_count = static_cast<uint8_t>(leaf_slots);
        uint64_t rest = tuple;
        for (int t = 0; t < leaf_slots; ++t) {
          step.leaves[t] = static_cast<uint32_t>(rest % pool.size());
          rest /= pool.size();
        }
        wrappers.push_back(step);
      }
    }
  }
  return wrappers;
}

}  // namespace

ContextChainSet enum_context_chains(const InductiveSystem& sys, const StructurePool& pool,
                                    int depth, size_t max_contexts) {
  if (depth < 0) fail(Err::domain, "enum_contexts: negative depth");
  if (pool.size() == 0) fail(Err::domain, "enum_contexts: empty pool");
  ContextChainSet set;
  set.spans.push_back({0, 0});  // the trivial context x
  set.parent.push_back(-1);

  std::vector<ContextStep> wrappers = enumerate_wrappers(sys, pool);
  size_t level_begin = 0, level_end = 1;
  for (int d = 1; d <= depth; ++d) {
    size_t next_begin = set.spans.size();
    for (const ContextStep& w : wrappers) {
      for (size_t inner = level_begin; inner < level_end; ++inner) {
        if (set.spans.size() >= max_contexts)
          fail(Err::budget, "enum_contexts: context budget of " + std::to_string(max_contexts) +
                                " exceeded at depth " + std::to_string(d));
        auto [ib, ic] = set.spans[inner];
        uint32_t begin = static_cast<uint32_t>(set.steps.size());
        for (uint32_t s = 0; s < ic; ++s) set.steps.push_back(set.steps[ib + s]);
        set.steps.push_back(w);
        set.spans.push_back({begin, ic + 1});
        set.parent.push_back(static_cast<int64_t>(inner));
      }
    }
    level_begin = next_begin;
    level_end = set.spans.size();
  }
  return set;
}

Circuit chain_circuit(const InductiveSystem& sys, const StructurePool& pool,
                      const ContextChainSet& set, size_t chain) {
  auto [begin, count] = set.spans[chain];
  Circuit c = Circuit::free_leaf();
  for (uint32_t s = 0; s < count; ++s) {
    const ContextStep& step = set.steps[begin + s];
    const OpKind& op = sys.ops[step.op_index];
    std::vector<Circuit> parts;
    int leaf_at = 0;
    for (int pos = 0; pos < op.arity(); ++pos) {
      if (pos == step.free_pos)
        parts.push_back(std::move(c));
      else
        parts.push_back(Circuit::leaf(pool.graphs[step.leaves[leaf_at++]]));
    }
    c = Circuit::op(op, std::move(parts));
  }
  return c;
}

std::vector<Circuit> enum_contexts(const InductiveSystem& sys, const StructurePool& pool,
                                   int depth, size_t max_contexts) {
  ContextChainSet set = enum_context_chains(sys, pool, depth, max_contexts);
  std::vector<Circuit> out;
  out.reserve(set.size());
  std::vector<std::string> seen;
  for (size_t i = 0; i < set.size(); ++i) {
    Circuit c = chain_circuit(sys, pool, set, i);
    seen.push_back(render_circuit(c));
    out.push_back(std::move(c));
  }
  // Chains are distinct by construction; the textual dedup is a guard
  // against a pool or op set that collapses different chains to one text.
  std::vector<std::string> sorted = seen;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    std::vector<Circuit> unique;
    std::vector<std::string> kept;
    for (size_t i = 0; i < out.size(); ++i) {
      if (std::find(kept.begin(), kept.end(), seen[i]) == kept.end()) {
        kept.push_back(seen[i]);
        unique.push_back(std::move(out[i]));
      }
    }
    out = std::move(unique);
  }
  return out;
}

namespace {

// Node-count reachability: a parse tree with s nodes exists iff s-1 is a
// sum of operation arities (each internal node of arity r contributes r).
std::vector<bool> arity_monoid(const InductiveSystem& sys, size_t limit) {
  std::vector<bool> m(limit + 1, false);
  m[0] = true;
  for (size_t v = 1; v <= limit; ++v)
    for (const OpKind& op : sys.ops) {
      size_t r = static_cast<size_t>(op.arity());
      if (r >= 1 && r <= v && m[v - r]) {
        m[v] = true;
        break;
      }
    }
  return m;
}

struct PlanNode {
  int op = -1;  // -1 = leaf
  uint32_t base = 0;
  uint32_t child_begin = 0, child_count = 0;
};

struct Plan {
  std::vector<PlanNode> nodes;
  std::vector<uint32_t> children;
};

// Expands the random structure top-down; every node's seed depends only on
// its path, so the result is independent of processing order.
Plan build_plan(const InductiveSystem& sys, size_t size, uint64_t seed,
                const std::vector<bool>& monoid) {
  Plan plan;
  struct Task {
    size_t target;
    uint64_t seed;
    uint32_t slot;
  };
  std::vector<Task> stack;
  plan.nodes.emplace_back();
  stack.push_back({size, seed, 0});
  while (!stack.empty()) {
    Task task = stack.back();
    stack.pop_back();
    SplitMix64 rng(task.seed);
    if (task.target == 1) {
      plan.nodes[task.slot].op = -1;
      plan.nodes[task.slot].base = static_cast<uint32_t>(rng.below(sys.base.size()));
      continue;
    }
    std::vector<uint16_t> feasible;
    for (size_t oi = 0; oi < sys.ops.size(); ++oi) {
      size_t r = static_cast<size_t>(sys.ops[oi].arity());
      if (r >= 1 && r <= task.target - 1 && monoid[task.target - 1 - r])
        feasible.push_back(static_cast<uint16_t>(oi));
    }
    if (feasible.empty()) fail(Err::internal, "gen_parse_tree: no feasible operation");
    uint16_t oi = feasible[rng.below(feasible.size())];
    size_t r = static_cast<size_t>(sys.ops[oi].arity());

    // Split target-1 into r reachable child sizes, keeping the remainder
    // completable at every step.
    std::vector<size_t> sizes(r);
    size_t remaining = task.target - 1;
    for (size_t slot = 0; slot + 1 < r; ++slot) {
      size_t left = r - slot - 1;  // children still to size after this one
      size_t hi = remaining - left;
      size_t chosen = 0;
      bool ok = false;
      for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
        size_t t = 1 + rng.below(hi);
        if (monoid[t - 1] && monoid[remaining - t - left]) {
          chosen = t;
          ok = true;
        }
      }
      if (!ok) {
        std::vector<size_t> all;
        for (size_t t = 1; t <= hi; ++t)
          if (monoid[t - 1] && monoid[remaining - t - left]) all.push_back(t);
        if (all.empty()) fail(Err::internal, "gen_parse_tree: no feasible split");
        chosen = all[rng.below(all.size())];
      }
      sizes[slot] = chosen;
      remaining -= chosen;
    }
    sizes[r - 1] = remaining;

    PlanNode& node = plan.nodes[task.slot];
    node.op = oi;
    node.child_begin = static_cast<uint32_t>(plan.children.size());
    node.child_count = static_cast<uint32_t>(r);
    uint32_t first_child = static_cast<uint32_t>(plan.nodes.size());
    for (size_t ci = 0; ci < r; ++ci) {
      plan.children.push_back(first_child + static_cast<uint32_t>(ci));
      plan.nodes.emplace_back();
    }
    for (size_t ci = 0; ci < r; ++ci)
      stack.push_back(
          {sizes[ci], mix_seed(task.seed, 0xC0FFEEULL + ci), first_child + static_cast<uint32_t>(ci)});
  }
  return plan;
}

// Cumulative vertex count a decode of the plan would produce, mirroring
// the decode budget. Tracks color class sizes for fuse/recolor.
bool plan_within_budget(const InductiveSystem& sys, const Plan& plan, uint64_t budget) {
  struct Stat {
    uint64_t n = 0;
    std::vector<uint64_t> cls;
  };
  std::vector<Stat> stats(plan.nodes.size());
  uint64_t produced = 0;

  // Children have larger indices, so a reverse scan is bottom-up.
  for (size_t idx = plan.nodes.size(); idx-- > 0;) {
    const PlanNode& node = plan.nodes[idx];
    Stat st;
    if (node.op < 0) {
      const ColoredGraph& g = sys.base[node.base].graph;
      st.n = g.n;
      st.cls.assign(sys.k, 0);
      for (uint16_t c : g.color)
        if (c != 0) ++st.cls[c - 1];
    } else {
      const OpKind& op = sys.ops[node.op];
      auto child = [&](uint32_t i) -> Stat& {
        return stats[plan.children[node.child_begin + i]];
      };
      switch (op.tag) {
        case OpTag::Union:
        case OpTag::Join:
          st.n = child(0).n + child(1).n;
          st.cls = child(0).cls;
          for (size_t c = 0; c < st.cls.size(); ++c) st.cls[c] += child(1).cls[c];
          break;
        case OpTag::Tensor:
        case OpTag::Cartesian:
          st.n = child(0).n * child(1).n;
          st.cls.assign(sys.k, 0);
          break;
        case OpTag::Fuse:
          st = child(0);
          if (st.cls[op.i - 1] > 0) {
            st.n -= st.cls[op.i - 1] - 1;
            st.cls[op.i - 1] = 1;
          }
          break;
        case OpTag::Recolor:
          st = child(0);
          st.cls[op.j - 1] += st.cls[op.i - 1];
          st.cls[op.i - 1] = 0;
          break;
        case OpTag::Eta:
          st = child(0);
          break;
        case OpTag::Subst:
          st.cls.assign(sys.k, 0);
          for (uint32_t ci = 0; ci < node.child_count; ++ci) {
            st.n += child(ci).n;
            for (size_t c = 0; c < st.cls.size(); ++c) st.cls[c] += child(ci).cls[c];
          }
          break;
      }
    }
    produced += st.n;
    if (produced > budget) return false;
    stats[idx] = std::move(st);
  }
  return true;
}

Circuit plan_to_circuit(const InductiveSystem& sys, const Plan& plan) {
  Circuit c;
  for (size_t i = 0; i < sys.base.size(); ++i) c.names.push_back(sys.base[i].name);
  std::vector<uint32_t> arena_of(plan.nodes.size(), 0);
  struct Frame {
    uint32_t plan_idx;
    uint32_t next_child = 0;
  };
  std::vector<Frame> stack{{0, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const PlanNode& node = plan.nodes[f.plan_idx];
    if (node.op < 0) {
      CircuitNode leaf;
      leaf.kind = NodeKind::NamedLeaf;
      leaf.payload = node.base;
      c.nodes.push_back(std::move(leaf));
      arena_of[f.plan_idx] = static_cast<uint32_t>(c.nodes.size() - 1);
      stack.pop_back();
      continue;
    }
    if (f.next_child < node.child_count) {
      uint32_t child = plan.children[node.child_begin + f.next_child];
      ++f.next_child;
      stack.push_back({child, 0});
      continue;
    }
    CircuitNode op_node;
    op_node.kind = NodeKind::Op;
    op_node.op = sys.ops[node.op];
    op_node.child_begin = static_cast<uint32_t>(c.children.size());
    op_node.child_count = node.child_count;
    for (uint32_t ci = 0; ci < node.child_count; ++ci)
      c.children.push_back(arena_of[plan.children[node.child_begin + ci]]);
    c.nodes.push_back(std::move(op_node));
    arena_of[f.plan_idx] = static_cast<uint32_t>(c.nodes.size() - 1);
    stack.pop_back();
  }
  c.root = arena_of[0];
  return c;
}

}  // namespace

Circuit gen_parse_tree(const InductiveSystem& sys, size_t size, uint64_t seed,
                       uint64_t budget_vertices) {
  if (size < 1) fail(Err::domain, "gen_parse_tree: size must be at least 1");
  uint64_t budget = budget_vertices ? budget_vertices : default_vertex_budget();
  std::vector<bool> monoid = arity_monoid(sys, size);
  size_t target = size;
  while (target > 1 && !monoid[target - 1]) --target;

  for (int attempt = 0; attempt < 64; ++attempt) {
    uint64_t s = attempt == 0 ? seed : mix_seed(seed, 0xA77E3B7 + attempt);
    Plan plan = build_plan(sys, target, s, monoid);
    if (plan_within_budget(sys, plan, budget)) return plan_to_circuit(sys, plan);
  }
  fail(Err::budget,
       "gen_parse_tree: could not generate a tree of size " + std::to_string(target) +
           " within the vertex budget " + std::to_string(budget));
}

void exhaustive_parse_trees(const InductiveSystem& sys, size_t size_max,
                            const std::function<bool(const Circuit&)>& visit,
                            size_t max_trees) {
  if (sys.base.empty()) fail(Err::domain, "exhaustive_parse_trees: system has no bases");
  Circuit c;
  for (const auto& b : sys.base) c.graphs.push_back(b.graph);

  size_t count = 0;
  bool stop = false;
  auto yield = [&]() {
    ++count;
    if (max_trees && count > max_trees)
      fail(Err::budget,
           "exhaustive_parse_trees: tree budget of " + std::to_string(max_trees) + " exceeded");
    c.root = static_cast<uint32_t>(c.nodes.size() - 1);
    if (!visit(c)) stop = true;
  };

  // Emits every tree of exactly s nodes on top of the shared arena and
  // calls done() for each; the arena is restored afterwards.
  std::function<void(size_t, const std::function<void()>&)> emit =
      [&](size_t s, const std::function<void()>& done) {
        if (stop) return;
        if (s == 1) {
          CircuitNode leaf;
          leaf.kind = NodeKind::GraphLeaf;
          c.nodes.push_back(std::move(leaf));
          for (size_t b = 0; b < sys.base.size() && !stop; ++b) {
            c.nodes.back().payload = static_cast<uint32_t>(b);
            done();
          }
          c.nodes.pop_back();
          return;
        }
        for (size_t oi = 0; oi < sys.ops.size() && !stop; ++oi) {
          size_t r = static_cast<size_t>(sys.ops[oi].arity());
          if (r < 1 || r > s - 1) continue;
          std::vector<uint32_t> roots(r);
          std::function<void(size_t, size_t)> per_slot = [&](size_t slot, size_t remaining) {
            if (stop) return;
            if (slot + 1 == r) {
              emit(remaining, [&] {
                roots[slot] = static_cast<uint32_t>(c.nodes.size() - 1);
                size_t cb = c.children.size();
                c.children.insert(c.children.end(), roots.begin(), roots.end());
                CircuitNode node;
                node.kind = NodeKind::Op;
                node.op = sys.ops[oi];
                node.child_begin = static_cast<uint32_t>(cb);
                node.child_count = static_cast<uint32_t>(r);
                c.nodes.push_back(std::move(node));
                done();
                c.nodes.pop_back();
                c.children.resize(cb);
              });
              return;
            }
            size_t left = r - slot - 1;
            for (size_t sz = 1; sz + left <= remaining && !stop; ++sz) {
              emit(sz, [&, sz] {
                roots[slot] = static_cast<uint32_t>(c.nodes.size() - 1);
                per_slot(slot + 1, remaining - sz);
              });
            }
          };
          per_slot(0, s - 1);
        }
      };

  for (size_t s = 1; s <= size_max && !stop; ++s) emit(s, yield);
}

}  // namespace hc
