#include "tiny_graph.hpp"

#include <bit>

namespace hc {

std::optional<TinyGraph> TinyGraph::from_graph(const ColoredGraph& g) {
  if (g.n > kMaxN || g.k > 255) return std::nullopt;
  TinyGraph t;
  t.n = static_cast<uint8_t>(g.n);
  t.k = g.k;
  for (uint32_t v = 0; v < g.n; ++v) t.color[v] = static_cast<uint8_t>(g.color[v]);
  for (auto [u, v] : g.edges) {
    t.adj[u - 1] |= 1u << (v - 1);
    t.adj[v - 1] |= 1u << (u - 1);
  }
  return t;
}

ColoredGraph TinyGraph::to_graph() const {
  ColoredGraph g;
  g.n = n;
  g.k = k;
  g.color.assign(n, 0);
  for (uint32_t v = 0; v < n; ++v) g.color[v] = color[v];
  for (uint32_t u = 0; u < n; ++u) {
    uint32_t row = adj[u] >> (u + 1) << (u + 1);  // keep v > u
    while (row) {
      uint32_t v = static_cast<uint32_t>(std::countr_zero(row));
      row &= row - 1;
      g.edges.push_back({u + 1, v + 1});
    }
  }
  return g;
}

std::optional<TinyGraph> tiny_union(const TinyGraph& a, const TinyGraph& b) {
  if (a.n + b.n > TinyGraph::kMaxN) return std::nullopt;
  TinyGraph t;
  t.n = static_cast<uint8_t>(a.n + b.n);
  t.k = a.k;
  for (uint32_t v = 0; v < a.n; ++v) {
    t.adj[v] = a.adj[v];
    t.color[v] = a.color[v];
  }
  for (uint32_t v = 0; v < b.n; ++v) {
    t.adj[a.n + v] = b.adj[v] << a.n;
    t.color[a.n + v] = b.color[v];
  }
  return t;
}

std::optional<TinyGraph> tiny_join(const TinyGraph& a, const TinyGraph& b) {
  auto t = tiny_union(a, b);
  if (!t) return std::nullopt;
  uint32_t lo = a.n == 32 ? ~0u : (1u << a.n) - 1;
  uint32_t hi = (t->n == 32 ? ~0u : (1u << t->n) - 1) & ~lo;
  for (uint32_t v = 0; v < a.n; ++v) t->adj[v] |= hi;
  for (uint32_t v = a.n; v < t->n; ++v) t->adj[v] |= lo;
  return t;
}

std::optional<TinyGraph> tiny_tensor(const TinyGraph& a, const TinyGraph& b) {
  uint32_t n = static_cast<uint32_t>(a.n) * b.n;
  if (n > TinyGraph::kMaxN) return std::nullopt;
  TinyGraph t;
  t.n = static_cast<uint8_t>(n);
  t.k = 0;
  for (uint32_t u1 = 0; u1 < a.n; ++u1)
    for (uint32_t u2 = 0; u2 < b.n; ++u2) {
      uint32_t row = 0;
      for (uint32_t v1 = 0; v1 < a.n; ++v1) {
        if (!((a.adj[u1] >> v1) & 1u)) continue;
        row |= b.adj[u2] << (v1 * b.n);
      }
      t.adj[u1 * b.n + u2] = row;
    }
  return t;
}

std::optional<TinyGraph> tiny_cartesian(const TinyGraph& a, const TinyGraph& b) {
  uint32_t n = static_cast<uint32_t>(a.n) * b.n;
  if (n > TinyGraph::kMaxN) return std::nullopt;
  TinyGraph t;
  t.n = static_cast<uint8_t>(n);
  t.k = 0;
  for (uint32_t u1 = 0; u1 < a.n; ++u1)
    for (uint32_t u2 = 0; u2 < b.n; ++u2) {
      uint32_t row = b.adj[u2] << (u1 * b.n);
      for (uint32_t v1 = 0; v1 < a.n; ++v1)
        if ((a.adj[u1] >> v1) & 1u) row |= 1u << (v1 * b.n + u2);
      t.adj[u1 * b.n + u2] = row;
    }
  return t;
}

std::optional<TinyGraph> tiny_subst(const TinyGraph& tmpl, std::span<const TinyGraph> parts) {
  uint32_t total = 0;
  for (const auto& p : parts) total += p.n;
  if (parts.size() != tmpl.n || total > TinyGraph::kMaxN) return std::nullopt;
  std::array<uint32_t, TinyGraph::kMaxN + 1> offset{};
  for (size_t idx = 0; idx < parts.size(); ++idx) offset[idx + 1] = offset[idx] + parts[idx].n;

  TinyGraph t;
  t.n = static_cast<uint8_t>(total);
  t.k = parts.empty() ? 0 : parts[0].k;
  std::array<uint32_t, TinyGraph::kMaxN> block{};  // vertex mask per part
  for (size_t idx = 0; idx < parts.size(); ++idx) {
    const TinyGraph& p = parts[idx];
    uint32_t off = offset[idx];
    for (uint32_t v = 0; v < p.n; ++v) {
      t.adj[off + v] = p.adj[v] << off;
      t.color[off + v] = p.color[v];
      block[idx] |= 1u << (off + v);
    }
  }
  for (uint32_t a = 0; a < tmpl.n; ++a) {
    uint32_t row = tmpl.adj[a];
    while (row) {
      uint32_t b = static_cast<uint32_t>(std::countr_zero(row));
      row &= row - 1;
      for (uint32_t v = offset[a]; v < offset[a + 1]; ++v) t.adj[v] |= block[b];
    }
  }
  return t;
}

TinyGraph tiny_fuse(const TinyGraph& g, uint16_t i) {
  uint32_t members = 0;
  for (uint32_t v = 0; v < g.n; ++v)
    if (g.color[v] == i) members |= 1u << v;
  if (members == 0) return g;

  // Map old vertex -> new slot; the fused vertex sits where the first
  // member was.
  std::array<uint8_t, TinyGraph::kMaxN> map{};
  uint32_t fused = 0;
  uint8_t next = 0;
  bool seen = false;
  for (uint32_t v = 0; v < g.n; ++v) {
    if ((members >> v) & 1u) {
      if (!seen) {
        fused = next++;
        seen = true;
      }
      map[v] = static_cast<uint8_t>(fused);
    } else {
      map[v] = next++;
    }
  }
  TinyGraph t;
  t.n = next;
  t.k = g.k;
  for (uint32_t v = 0; v < g.n; ++v)
    if (!((members >> v) & 1u)) t.color[map[v]] = g.color[v];
  t.color[fused] = static_cast<uint8_t>(i);
  for (uint32_t u = 0; u < g.n; ++u) {
    uint32_t row = g.adj[u];
    while (row) {
      uint32_t v = static_cast<uint32_t>(std::countr_zero(row));
      row &= row - 1;
      uint32_t a = map[u], b = map[v];
      if (a == b) continue;
      t.adj[a] |= 1u << b;
      t.adj[b] |= 1u << a;
    }
  }
  return t;
}

TinyGraph tiny_recolor(const TinyGraph& g, uint16_t i, uint16_t j) {
  TinyGraph t = g;
  for (uint32_t v = 0; v < g.n; ++v)
    if (t.color[v] == i) t.color[v] = static_cast<uint8_t>(j);
  return t;
}

TinyGraph tiny_eta(const TinyGraph& g, uint16_t i, uint16_t j) {
  uint32_t mi = 0, mj = 0;
  for (uint32_t v = 0; v < g.n; ++v) {
    if (g.color[v] == i) mi |= 1u << v;
    if (g.color[v] == j) mj |= 1u << v;
  }
  TinyGraph t = g;
  for (uint32_t v = 0; v < g.n; ++v) {
    if ((mi >> v) & 1u) t.adj[v] |= mj;
    if ((mj >> v) & 1u) t.adj[v] |= mi;
  }
  return t;
}

bool tiny_connected(const TinyGraph& g, bool empty_connected) {
  if (g.n == 0) return empty_connected;
  uint32_t all = g.n == 32 ? ~0u : (1u << g.n) - 1;
  uint32_t seen = 1u;
  for (;;) {
    uint32_t grow = seen;
    uint32_t frontier = seen;
    while (frontier) {
      uint32_t v = static_cast<uint32_t>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      grow |= g.adj[v];
    }
    if (grow == seen) break;
    seen = grow;
  }
  return seen == all;
}

bool tiny_bipartite(const TinyGraph& g) {
  std::array<int8_t, TinyGraph::kMaxN> side{};
  side.fill(-1);
  for (uint32_t start = 0; start < g.n; ++start) {
    if (side[start] != -1) continue;
    side[start] = 0;
    uint32_t stack = 1u << start;
    while (stack) {
      uint32_t v = static_cast<uint32_t>(std::countr_zero(stack));
      stack &= stack - 1;
      uint32_t row = g.adj[v];
      while (row) {
        uint32_t u = static_cast<uint32_t>(std::countr_zero(row));
        row &= row - 1;
        if (side[u] == -1) {
          side[u] = static_cast<int8_t>(1 - side[v]);
          stack |= 1u << u;
        } else if (side[u] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace hc
