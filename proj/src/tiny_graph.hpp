#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "graph.hpp"

namespace hc {

// Fixed-capacity bitset representation of a colored graph with at most 32
// vertices. Matrix filling applies millions of small operations; this
// avoids heap traffic entirely. Falls back to ColoredGraph above the cap.
struct TinyGraph {
  static constexpr uint32_t kMaxN = 32;

  uint8_t n = 0;
  uint16_t k = 0;
  std::array<uint32_t, kMaxN> adj{};    // symmetric adjacency rows
  std::array<uint8_t, kMaxN> color{};   // 0 = uncolored

  static std::optional<TinyGraph> from_graph(const ColoredGraph& g);
  ColoredGraph to_graph() const;
};

// Each returns nullopt when the result would exceed kMaxN vertices.
std::optional<TinyGraph> tiny_union(const TinyGraph& a, const TinyGraph& b);
std::optional<TinyGraph> tiny_join(const TinyGraph& a, const TinyGraph& b);
std::optional<TinyGraph> tiny_tensor(const TinyGraph& a, const TinyGraph& b);
std::optional<TinyGraph> tiny_cartesian(const TinyGraph& a, const TinyGraph& b);
std::optional<TinyGraph> tiny_subst(const TinyGraph& tmpl, std::span<const TinyGraph> parts);
TinyGraph tiny_fuse(const TinyGraph& g, uint16_t i);
TinyGraph tiny_recolor(const TinyGraph& g, uint16_t i, uint16_t j);
TinyGraph tiny_eta(const TinyGraph& g, uint16_t i, uint16_t j);

bool tiny_connected(const TinyGraph& g, bool empty_connected);
bool tiny_bipartite(const TinyGraph& g);

}  // namespace hc
