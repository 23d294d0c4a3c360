#include "canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "error.hpp"

namespace hc {

std::string CanonicalForm::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

namespace {

// Encodes the graph as seen through permutation perm (perm[pos] = original
// vertex index, 0-based): header, colors in new order, then the packed
// upper-triangle adjacency bits.
std::string encode(const ColoredGraph& g, const std::vector<uint32_t>& adj,
                   const std::vector<int>& perm) {
  std::string out;
  uint32_t n = g.n;
  out.push_back(static_cast<char>(n));
  out.push_back(static_cast<char>(g.k & 0xff));
  out.push_back(static_cast<char>(g.k >> 8));
  for (uint32_t i = 0; i < n; ++i) {
    uint16_t c = g.color[perm[i]];
    out.push_back(static_cast<char>(c & 0xff));
    out.push_back(static_cast<char>(c >> 8));
  }
  unsigned acc = 0;
  int nbits = 0;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j) {
      acc = (acc << 1) | ((adj[perm[i]] >> perm[j]) & 1u);
      if (++nbits == 8) {
        out.push_back(static_cast<char>(acc));
        acc = 0;
        nbits = 0;
      }
    }
  if (nbits > 0) out.push_back(static_cast<char>(acc << (8 - nbits)));
  return out;
}

}  // namespace

CanonicalForm canonical_form(const ColoredGraph& g, int max_vertices) {
  if (static_cast<int>(g.n) > max_vertices)
    fail(Err::bound, "canonical_form: graph has " + std::to_string(g.n) +
                         " vertices, bound is " + std::to_string(max_vertices));
  if (g.n > 32) fail(Err::bound, "canonical_form: vertex count exceeds encoding limit");

  uint32_t n = g.n;
  std::vector<uint32_t> adj(n, 0);
  for (auto [u, v] : g.edges) {
    adj[u - 1] |= 1u << (v - 1);
    adj[v - 1] |= 1u << (u - 1);
  }

  // Iterated refinement: group vertices by (color, then neighbor-cell
  // multiset) until stable. Cell order is fixed by the sorted keys, which
  // are isomorphism-invariant, so restricting the search to permutations
  // that list cells in this order still yields a canonical certificate.
  std::vector<int> cell(n, 0);
  {
    std::vector<std::pair<std::vector<int>, int>> keyed(n);
    for (uint32_t v = 0; v < n; ++v) keyed[v] = {{static_cast<int>(g.color[v])}, static_cast<int>(v)};
    auto assign_cells = [&](std::vector<std::pair<std::vector<int>, int>>& keys) {
      std::sort(keys.begin(), keys.end());
      int c = -1;
      for (size_t idx = 0; idx < keys.size(); ++idx) {
        if (idx == 0 || keys[idx].first != keys[idx - 1].first) ++c;
        cell[keys[idx].second] = c;
      }
      return c + 1;
    };
    int cells = assign_cells(keyed);
    for (;;) {
      std::vector<std::pair<std::vector<int>, int>> next(n);
      for (uint32_t v = 0; v < n; ++v) {
        std::vector<int> key{cell[v]};
        std::vector<int> nb;
        for (uint32_t u = 0; u < n; ++u)
          if ((adj[v] >> u) & 1u) nb.push_back(cell[u]);
        std::sort(nb.begin(), nb.end());
        key.insert(key.end(), nb.begin(), nb.end());
        next[v] = {std::move(key), static_cast<int>(v)};
      }
      int cells2 = assign_cells(next);
      if (cells2 == cells) break;
      cells = cells2;
    }
  }

  // Vertices grouped by cell, cells in index order.
  int num_cells = n == 0 ? 0 : *std::max_element(cell.begin(), cell.end()) + 1;
  std::vector<std::vector<int>> groups(num_cells);
  for (uint32_t v = 0; v < n; ++v) groups[cell[v]].push_back(static_cast<int>(v));

  std::string best;
  std::vector<int> perm;
  perm.reserve(n);
  // Depth-first product of per-cell permutations.
  auto search = [&](auto&& self, size_t gi) -> void {
    if (gi == groups.size()) {
      std::string cand = encode(g, adj, perm);
      if (best.empty() || cand < best) best = std::move(cand);
      return;
    }
    std::vector<int>& grp = groups[gi];
    std::sort(grp.begin(), grp.end());
    do {
      size_t mark = perm.size();
      perm.insert(perm.end(), grp.begin(), grp.end());
      self(self, gi + 1);
      perm.resize(mark);
    } while (std::next_permutation(grp.begin(), grp.end()));
  };
  search(search, 0);
  if (n == 0) best = encode(g, adj, perm);

  return CanonicalForm{std::move(best)};
}

bool isomorphic(const ColoredGraph& g, const ColoredGraph& h, int max_vertices) {
  if (g.n != h.n || g.k != h.k || g.edges.size() != h.edges.size()) return false;
  return canonical_form(g, max_vertices) == canonical_form(h, max_vertices);
}

}  // namespace hc
