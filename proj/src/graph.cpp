#include "graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "error.hpp"

namespace hc {

namespace {

void check_color_index(const ColoredGraph& g, uint16_t i, const char* op) {
  if (i < 1 || i > g.k)
    fail(Err::domain, std::string(op) + ": color index " + std::to_string(i) +
                          " out of range 1.." + std::to_string(g.k));
}

void check_same_k(const ColoredGraph& g, const ColoredGraph& h, const char* op) {
  if (g.k != h.k)
    fail(Err::domain, std::string(op) + ": color-count mismatch (" +
                          std::to_string(g.k) + " vs " + std::to_string(h.k) + ")");
}

void check_uncolored(const ColoredGraph& g, const char* op) {
  if (g.k != 0)
    fail(Err::domain, std::string(op) + ": colored input rejected (k must be 0)");
}

}  // namespace

ColoredGraph empty_graph(uint16_t k) {
  ColoredGraph g;
  g.k = k;
  return g;
}

ColoredGraph single_vertex(uint16_t k, uint16_t color) {
  ColoredGraph g;
  g.n = 1;
  g.k = k;
  g.color = {color};
  if (color > k) fail(Err::domain, "single_vertex: color out of range");
  return g;
}

ColoredGraph complete_graph(uint32_t n, uint16_t k) {
  ColoredGraph g;
  g.n = n;
  g.k = k;
  g.color.assign(n, 0);
  for (uint32_t u = 1; u <= n; ++u)
    for (uint32_t v = u + 1; v <= n; ++v) g.edges.push_back({u, v});
  return g;
}

ColoredGraph path_graph(uint32_t n, uint16_t k) {
  ColoredGraph g;
  g.n = n;
  g.k = k;
  g.color.assign(n, 0);
  for (uint32_t u = 1; u + 1 <= n; ++u) g.edges.push_back({u, u + 1});
  return g;
}

ColoredGraph edgeless_graph(uint32_t n, uint16_t k) {
  ColoredGraph g;
  g.n = n;
  g.k = k;
  g.color.assign(n, 0);
  return g;
}

ColoredGraph cycle_graph(uint32_t n, uint16_t k) {
  ColoredGraph g = path_graph(n, k);
  if (n >= 3) g.edges.push_back({1, n});
  normalize_edges(g);
  return g;
}

void normalize_edges(ColoredGraph& g) {
  for (auto& e : g.edges) {
    if (e.first == e.second) fail(Err::domain, "self-loop rejected");
    if (e.first > e.second) std::swap(e.first, e.second);
    if (e.first < 1 || e.second > g.n) fail(Err::domain, "edge endpoint out of range");
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
}

ColoredGraph disjoint_union(const ColoredGraph& g, const ColoredGraph& h) {
  check_same_k(g, h, "disjoint_union");
  ColoredGraph out;
  out.n = g.n + h.n;
  out.k = g.k;
  out.color = g.color;
  out.color.insert(out.color.end(), h.color.begin(), h.color.end());
  out.edges = g.edges;
  out.edges.reserve(g.edges.size() + h.edges.size());
  for (auto [u, v] : h.edges) out.edges.push_back({u + g.n, v + g.n});
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

ColoredGraph join_graphs(const ColoredGraph& g, const ColoredGraph& h) {
  check_same_k(g, h, "join");
  ColoredGraph out = disjoint_union(g, h);
  out.edges.reserve(out.edges.size() + size_t(g.n) * h.n);
  for (uint32_t u = 1; u <= g.n; ++u)
    for (uint32_t v = g.n + 1; v <= g.n + h.n; ++v) out.edges.push_back({u, v});
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

// Vertex (a,b) of a product is numbered (a-1)*h.n + b.
ColoredGraph tensor_product(const ColoredGraph& g, const ColoredGraph& h) {
  check_uncolored(g, "tensor_product");
  check_uncolored(h, "tensor_product");
  ColoredGraph out;
  out.n = g.n * h.n;
  out.k = 0;
  out.color.assign(out.n, 0);
  for (auto [u1, v1] : g.edges)
    for (auto [u2, v2] : h.edges) {
      // The edge predicate is symmetric in each factor, so each pair of
      // factor edges contributes two product edges.
      out.edges.push_back({(u1 - 1) * h.n + u2, (v1 - 1) * h.n + v2});
      out.edges.push_back({(u1 - 1) * h.n + v2, (v1 - 1) * h.n + u2});
    }
  normalize_edges(out);
  return out;
}

ColoredGraph cartesian_product(const ColoredGraph& g, const ColoredGraph& h) {
  check_uncolored(g, "cartesian_product");
  check_uncolored(h, "cartesian_product");
  ColoredGraph out;
  out.n = g.n * h.n;
  out.k = 0;
  out.color.assign(out.n, 0);
  for (uint32_t a = 1; a <= g.n; ++a)
    for (auto [u2, v2] : h.edges) out.edges.push_back({(a - 1) * h.n + u2, (a - 1) * h.n + v2});
  for (auto [u1, v1] : g.edges)
    for (uint32_t b = 1; b <= h.n; ++b) out.edges.push_back({(u1 - 1) * h.n + b, (v1 - 1) * h.n + b});
  normalize_edges(out);
  return out;
}

ColoredGraph fuse(const ColoredGraph& g, uint16_t i) {
  check_color_index(g, i, "fuse");
  size_t class_size = g.color_class_size(i);
  if (class_size == 0) return g;

  // New labels: class members map to one fused vertex, placed where the
  // first member was; remaining vertices keep their relative order.
  std::vector<uint32_t> map(g.n + 1, 0);
  uint32_t fused = 0;
  uint32_t next = 1;
  for (uint32_t v = 1; v <= g.n; ++v) {
    if (g.color[v - 1] == i) {
      if (fused == 0) fused = next++;
      map[v] = fused;
    } else {
      map[v] = next++;
    }
  }
  ColoredGraph out;
  out.n = g.n - static_cast<uint32_t>(class_size) + 1;
  out.k = g.k;
  out.color.assign(out.n, 0);
  for (uint32_t v = 1; v <= g.n; ++v)
    if (g.color[v - 1] != i) out.color[map[v] - 1] = g.color[v - 1];
  out.color[fused - 1] = i;
  for (auto [u, v] : g.edges) {
    uint32_t a = map[u], b = map[v];
    if (a == b) continue;  // intra-class edge vanishes
    out.edges.push_back({a, b});
  }
  normalize_edges(out);
  return out;
}

ColoredGraph recolor(const ColoredGraph& g, uint16_t i, uint16_t j) {
  check_color_index(g, i, "recolor");
  check_color_index(g, j, "recolor");
  ColoredGraph out = g;
  for (auto& c : out.color)
    if (c == i) c = j;
  return out;
}

ColoredGraph add_bicolor_edges(const ColoredGraph& g, uint16_t i, uint16_t j) {
  check_color_index(g, i, "eta");
  check_color_index(g, j, "eta");
  if (i == j) fail(Err::domain, "eta: color indices must differ");
  ColoredGraph out = g;
  for (uint32_t u = 1; u <= g.n; ++u) {
    if (g.color[u - 1] != i) continue;
    for (uint32_t v = 1; v <= g.n; ++v) {
      if (g.color[v - 1] != j) continue;
      out.edges.push_back({std::min(u, v), std::max(u, v)});
    }
  }
  normalize_edges(out);
  return out;
}

ColoredGraph substitute(const ColoredGraph& tmpl, std::span<const ColoredGraph> parts) {
  check_uncolored(tmpl, "substitute");
  if (parts.size() != tmpl.n)
    fail(Err::domain, "substitute: arity mismatch (template has " + std::to_string(tmpl.n) +
                          " vertices, got " + std::to_string(parts.size()) + " parts)");
  uint16_t k = parts.empty() ? 0 : parts[0].k;
  for (const auto& p : parts) check_same_k(parts[0], p, "substitute");

  std::vector<uint32_t> offset(parts.size() + 1, 0);
  for (size_t i = 0; i < parts.size(); ++i) offset[i + 1] = offset[i] + parts[i].n;

  ColoredGraph out;
  out.n = offset[parts.size()];
  out.k = k;
  out.color.reserve(out.n);
  for (const auto& p : parts) out.color.insert(out.color.end(), p.color.begin(), p.color.end());
  for (size_t i = 0; i < parts.size(); ++i)
    for (auto [u, v] : parts[i].edges) out.edges.push_back({u + offset[i], v + offset[i]});
  for (auto [a, b] : tmpl.edges)
    for (uint32_t u = offset[a - 1] + 1; u <= offset[a]; ++u)
      for (uint32_t v = offset[b - 1] + 1; v <= offset[b]; ++v)
        out.edges.push_back({std::min(u, v), std::max(u, v)});
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

ColoredGraph induced_subgraph(const ColoredGraph& g, std::span<const uint32_t> vertices) {
  std::vector<uint32_t> s(vertices.begin(), vertices.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<uint32_t> map(g.n + 1, 0);
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > g.n) fail(Err::domain, "induced_subgraph: vertex out of range");
    map[s[i]] = static_cast<uint32_t>(i + 1);
  }
  ColoredGraph out;
  out.n = static_cast<uint32_t>(s.size());
  out.k = g.k;
  out.color.reserve(s.size());
  for (uint32_t v : s) out.color.push_back(g.color[v - 1]);
  for (auto [u, v] : g.edges)
    if (map[u] && map[v]) out.edges.push_back({std::min(map[u], map[v]), std::max(map[u], map[v])});
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

namespace {

uint64_t parse_u64(std::string_view tok, const char* what, int line_no) {
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(Err::parse, "graph text line " + std::to_string(line_no) + ": bad " + what + " '" +
                         std::string(tok) + "'");
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

ColoredGraph parse_graph(std::string_view text) {
  ColoredGraph g;
  bool saw_header = false;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find_first_of("\n;", pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (!saw_header) {
      if (toks[0] != "graph" || toks.size() != 3)
        fail(Err::parse, "graph text line " + std::to_string(line_no) +
                             ": expected header 'graph n=<N> k=<K>'");
      if (toks[1].substr(0, 2) != "n=" || toks[2].substr(0, 2) != "k=")
        fail(Err::parse, "graph text line " + std::to_string(line_no) + ": malformed header");
      g.n = static_cast<uint32_t>(parse_u64(toks[1].substr(2), "vertex count", line_no));
      uint64_t k = parse_u64(toks[2].substr(2), "color count", line_no);
      if (k > 0xffff) fail(Err::parse, "color count too large");
      g.k = static_cast<uint16_t>(k);
      g.color.assign(g.n, 0);
      saw_header = true;
      continue;
    }
    if (toks[0] == "e") {
      if (toks.size() != 3)
        fail(Err::parse, "graph text line " + std::to_string(line_no) + ": expected 'e <u> <v>'");
      uint32_t u = static_cast<uint32_t>(parse_u64(toks[1], "vertex", line_no));
      uint32_t v = static_cast<uint32_t>(parse_u64(toks[2], "vertex", line_no));
      if (u == v) fail(Err::parse, "graph text line " + std::to_string(line_no) + ": self-loop");
      if (u < 1 || u > g.n || v < 1 || v > g.n)
        fail(Err::parse, "graph text line " + std::to_string(line_no) + ": vertex out of range");
      auto e = std::make_pair(std::min(u, v), std::max(u, v));
      if (std::find(g.edges.begin(), g.edges.end(), e) != g.edges.end())
        fail(Err::parse, "graph text line " + std::to_string(line_no) + ": duplicate edge");
      g.edges.push_back(e);
    } else if (toks[0] == "c") {
      if (toks.size() != 3)
        fail(Err::parse, "graph text line " + std::to_string(line_no) + ": expected 'c <v> <i>'");
      uint32_t v = static_cast<uint32_t>(parse_u64(toks[1], "vertex", line_no));
      uint32_t c = static_cast<uint32_t>(parse_u64(toks[2], "color", line_no));
      if (v < 1 || v > g.n)
        fail(Err::parse, "graph text line " + std::to_string(line_no) + ": vertex out of range");
      if (c < 1 || c > g.k)
        fail(Err::parse, "graph text line " + std::to_string(line_no) + ": color out of range");
      if (g.color[v - 1] != 0)
        fail(Err::parse, "graph text line " + std::to_string(line_no) + ": vertex already colored");
      g.color[v - 1] = static_cast<uint16_t>(c);
    } else {
      fail(Err::parse,
           "graph text line " + std::to_string(line_no) + ": unknown directive '" +
               std::string(toks[0]) + "'");
    }
  }
  if (!saw_header) fail(Err::parse, "graph text: missing header");
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

namespace {

std::string render_with_sep(const ColoredGraph& g, char sep, bool trailing) {
  std::ostringstream out;
  out << "graph n=" << g.n << " k=" << g.k;
  auto edges = g.edges;
  std::sort(edges.begin(), edges.end());
  for (auto [u, v] : edges) out << sep << "e " << u << ' ' << v;
  for (uint32_t v = 1; v <= g.n; ++v)
    if (g.color[v - 1] != 0) out << sep << "c " << v << ' ' << g.color[v - 1];
  if (trailing) out << sep;
  return out.str();
}

}  // namespace

std::string render_graph(const ColoredGraph& g) { return render_with_sep(g, '\n', true); }

std::string render_graph_inline(const ColoredGraph& g) { return render_with_sep(g, ';', false); }

}  // namespace hc
