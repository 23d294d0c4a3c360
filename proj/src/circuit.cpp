#include "circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "error.hpp"
#include "system.hpp"

namespace hc {

int OpKind::arity() const {
  switch (tag) {
    case OpTag::Union:
    case OpTag::Join:
    case OpTag::Tensor:
    case OpTag::Cartesian:
      return 2;
    case OpTag::Fuse:
    case OpTag::Recolor:
    case OpTag::Eta:
      return 1;
    case OpTag::Subst:
      return tmpl ? static_cast<int>(tmpl->n) : 0;
  }
  return 0;
}

std::string OpKind::signature() const {
  switch (tag) {
    case OpTag::Union:
      return "union";
    case OpTag::Join:
      return "join";
    case OpTag::Tensor:
      return "tensor";
    case OpTag::Cartesian:
      return "cartesian";
    case OpTag::Fuse:
      return "fuse:" + std::to_string(i);
    case OpTag::Recolor:
      return "recolor:" + std::to_string(i) + ":" + std::to_string(j);
    case OpTag::Eta:
      return "eta:" + std::to_string(i) + ":" + std::to_string(j);
    case OpTag::Subst: {
      std::string sig = "subst:" + std::to_string(tmpl ? tmpl->n : 0) + ":";
      bool first = true;
      if (tmpl)
        for (auto [u, v] : tmpl->edges) {
          if (!first) sig.push_back(',');
          sig += std::to_string(u) + "-" + std::to_string(v);
          first = false;
        }
      return sig;
    }
  }
  return "?";
}

bool OpKind::operator==(const OpKind& other) const {
  if (tag != other.tag || i != other.i || j != other.j) return false;
  if (tmpl == other.tmpl) return true;
  if (!tmpl || !other.tmpl) return false;
  return *tmpl == *other.tmpl;
}

OpKind op_union() { return {OpTag::Union, 0, 0, nullptr}; }
OpKind op_join() { return {OpTag::Join, 0, 0, nullptr}; }
OpKind op_tensor() { return {OpTag::Tensor, 0, 0, nullptr}; }
OpKind op_cartesian() { return {OpTag::Cartesian, 0, 0, nullptr}; }
OpKind op_fuse(uint16_t i) { return {OpTag::Fuse, i, 0, nullptr}; }
OpKind op_recolor(uint16_t i, uint16_t j) { return {OpTag::Recolor, i, j, nullptr}; }
OpKind op_eta(uint16_t i, uint16_t j) { return {OpTag::Eta, i, j, nullptr}; }

OpKind op_subst(ColoredGraph tmpl) {
  if (tmpl.k != 0) fail(Err::domain, "subst template must be uncolored");
  return {OpTag::Subst, 0, 0, std::make_shared<const ColoredGraph>(std::move(tmpl))};
}

OpKind parse_op_signature(std::string_view sig) {
  auto take_int = [&](std::string_view part) -> uint16_t {
    uint32_t v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || p != part.data() + part.size() || v == 0 || v > 0xffff)
      fail(Err::parse, "bad op signature '" + std::string(sig) + "'");
    return static_cast<uint16_t>(v);
  };
  if (sig == "union") return op_union();
  if (sig == "join") return op_join();
  if (sig == "tensor") return op_tensor();
  if (sig == "cartesian") return op_cartesian();
  auto next_field = [&](std::string_view& rest) {
    size_t p = rest.find(':');
    std::string_view f = rest.substr(0, p);
    rest = p == std::string_view::npos ? std::string_view{} : rest.substr(p + 1);
    return f;
  };
  std::string_view rest = sig;
  std::string_view head = next_field(rest);
  if (head == "fuse") return op_fuse(take_int(rest));
  if (head == "recolor" || head == "eta") {
    std::string_view a = next_field(rest);
    return head == "recolor" ? op_recolor(take_int(a), take_int(rest))
                             : op_eta(take_int(a), take_int(rest));
  }
  if (head == "subst") {
    std::string_view nv = next_field(rest);
    ColoredGraph tmpl = edgeless_graph(take_int(nv), 0);
    if (!rest.empty()) {
      size_t pos = 0;
      while (pos <= rest.size()) {
        size_t comma = rest.find(',', pos);
        std::string_view pair =
            rest.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        size_t dash = pair.find('-');
        if (dash == std::string_view::npos)
          fail(Err::parse, "bad op signature '" + std::string(sig) + "'");
        tmpl.edges.push_back({take_int(pair.substr(0, dash)), take_int(pair.substr(dash + 1))});
        pos = comma == std::string_view::npos ? rest.size() + 1 : comma + 1;
      }
    }
    normalize_edges(tmpl);
    return op_subst(std::move(tmpl));
  }
  fail(Err::parse, "unknown op signature '" + std::string(sig) + "'");
}

ColoredGraph apply_op(const OpKind& op, std::span<const ColoredGraph> args) {
  if (static_cast<int>(args.size()) != op.arity())
    fail(Err::domain, "operation " + op.signature() + " expects " + std::to_string(op.arity()) +
                          " arguments, got " + std::to_string(args.size()));
  switch (op.tag) {
    case OpTag::Union:
      return disjoint_union(args[0], args[1]);
    case OpTag::Join:
      return join_graphs(args[0], args[1]);
    case OpTag::Tensor:
      return tensor_product(args[0], args[1]);
    case OpTag::Cartesian:
      return cartesian_product(args[0], args[1]);
    case OpTag::Fuse:
      return fuse(args[0], op.i);
    case OpTag::Recolor:
      return recolor(args[0], op.i, op.j);
    case OpTag::Eta:
      return add_bicolor_edges(args[0], op.i, op.j);
    case OpTag::Subst:
      return substitute(*op.tmpl, args);
  }
  fail(Err::internal, "unhandled op tag");
}

Circuit Circuit::free_leaf() {
  Circuit c;
  c.nodes.push_back({NodeKind::FreeLeaf, {}, 0, 0, 0});
  c.root = 0;
  return c;
}

Circuit Circuit::leaf(ColoredGraph g) {
  Circuit c;
  c.graphs.push_back(std::move(g));
  c.nodes.push_back({NodeKind::GraphLeaf, {}, 0, 0, 0});
  c.root = 0;
  return c;
}

Circuit Circuit::named_leaf(std::string name) {
  Circuit c;
  c.names.push_back(std::move(name));
  c.nodes.push_back({NodeKind::NamedLeaf, {}, 0, 0, 0});
  c.root = 0;
  return c;
}

Circuit Circuit::op(OpKind kind, std::vector<Circuit> parts) {
  if (static_cast<int>(parts.size()) != kind.arity())
    fail(Err::domain, "operation " + kind.signature() + " expects " +
                          std::to_string(kind.arity()) + " children, got " +
                          std::to_string(parts.size()));
  Circuit c;
  std::vector<uint32_t> roots;
  for (Circuit& part : parts) {
    uint32_t node_off = static_cast<uint32_t>(c.nodes.size());
    uint32_t child_off = static_cast<uint32_t>(c.children.size());
    uint32_t graph_off = static_cast<uint32_t>(c.graphs.size());
    uint32_t name_off = static_cast<uint32_t>(c.names.size());
    for (CircuitNode node : part.nodes) {
      node.child_begin += child_off;
      if (node.kind == NodeKind::GraphLeaf) node.payload += graph_off;
      if (node.kind == NodeKind::NamedLeaf) node.payload += name_off;
      c.nodes.push_back(std::move(node));
    }
    for (uint32_t ch : part.children) c.children.push_back(ch + node_off);
    for (auto& g : part.graphs) c.graphs.push_back(std::move(g));
    for (auto& nm : part.names) c.names.push_back(std::move(nm));
    roots.push_back(part.root + node_off);
  }
  CircuitNode node;
  node.kind = NodeKind::Op;
  node.op = std::move(kind);
  node.child_begin = static_cast<uint32_t>(c.children.size());
  node.child_count = static_cast<uint32_t>(roots.size());
  c.children.insert(c.children.end(), roots.begin(), roots.end());
  c.nodes.push_back(std::move(node));
  c.root = static_cast<uint32_t>(c.nodes.size() - 1);
  return c;
}

size_t tree_size(const Circuit& c) { return c.nodes.size(); }

size_t free_leaf_count(const Circuit& c) {
  size_t count = 0;
  for (const auto& node : c.nodes)
    if (node.kind == NodeKind::FreeLeaf) ++count;
  return count;
}

Circuit subtree_circuit(const Circuit& c, uint32_t root) {
  if (root >= c.nodes.size()) fail(Err::internal, "subtree_circuit: root out of range");
  std::vector<uint32_t> keep;
  std::vector<uint32_t> stack{root};
  while (!stack.empty()) {
    uint32_t v = stack.back();
    stack.pop_back();
    keep.push_back(v);
    const CircuitNode& node = c.nodes[v];
    for (uint32_t ci = 0; ci < node.child_count; ++ci)
      stack.push_back(c.children[node.child_begin + ci]);
  }
  // Ascending original order keeps children before parents.
  std::sort(keep.begin(), keep.end());
  std::vector<uint32_t> remap(c.nodes.size(), 0);
  for (size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<uint32_t>(i);

  Circuit out;
  for (uint32_t old : keep) {
    CircuitNode node = c.nodes[old];
    if (node.kind == NodeKind::GraphLeaf) {
      out.graphs.push_back(c.graphs[node.payload]);
      node.payload = static_cast<uint32_t>(out.graphs.size() - 1);
    } else if (node.kind == NodeKind::NamedLeaf) {
      out.names.push_back(c.names[node.payload]);
      node.payload = static_cast<uint32_t>(out.names.size() - 1);
    } else if (node.kind == NodeKind::Op) {
      uint32_t begin = static_cast<uint32_t>(out.children.size());
      for (uint32_t ci = 0; ci < node.child_count; ++ci)
        out.children.push_back(remap[c.children[node.child_begin + ci]]);
      node.child_begin = begin;
    }
    out.nodes.push_back(std::move(node));
  }
  out.root = remap[root];
  return out;
}

Circuit substitute_free(const Circuit& c, const ColoredGraph& a) {
  Circuit out = c;
  uint32_t gi = 0;
  bool added = false;
  for (auto& node : out.nodes) {
    if (node.kind != NodeKind::FreeLeaf) continue;
    if (!added) {
      gi = static_cast<uint32_t>(out.graphs.size());
      out.graphs.push_back(a);
      added = true;
    }
    node.kind = NodeKind::GraphLeaf;
    node.payload = gi;
  }
  return out;
}

uint64_t default_vertex_budget() {
  static uint64_t budget = [] {
    if (const char* env = std::getenv("HC_BUDGET_VERTICES")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<uint64_t>(v);
    }
    return static_cast<uint64_t>(10'000'000);
  }();
  return budget;
}

namespace {

// Projected size of an op result, used to refuse runaway decodes before
// allocating them.
struct SizeEstimate {
  uint64_t vertices = 0;
  uint64_t edges = 0;
};

SizeEstimate estimate_op(const OpKind& op, std::span<const ColoredGraph> args) {
  SizeEstimate est;
  switch (op.tag) {
    case OpTag::Union:
      est.vertices = uint64_t(args[0].n) + args[1].n;
      est.edges = args[0].edges.size() + args[1].edges.size();
      break;
    case OpTag::Join:
      est.vertices = uint64_t(args[0].n) + args[1].n;
      est.edges = args[0].edges.size() + args[1].edges.size() + uint64_t(args[0].n) * args[1].n;
      break;
    case OpTag::Tensor:
      est.vertices = uint64_t(args[0].n) * args[1].n;
      est.edges = 2 * uint64_t(args[0].edges.size()) * args[1].edges.size();
      break;
    case OpTag::Cartesian:
      est.vertices = uint64_t(args[0].n) * args[1].n;
      est.edges =
          uint64_t(args[0].n) * args[1].edges.size() + uint64_t(args[1].n) * args[0].edges.size();
      break;
    case OpTag::Fuse:
    case OpTag::Recolor:
      est.vertices = args[0].n;
      est.edges = args[0].edges.size();
      break;
    case OpTag::Eta:
      est.vertices = args[0].n;
      est.edges =
          args[0].edges.size() + args[0].color_class_size(op.i) * args[0].color_class_size(op.j);
      break;
    case OpTag::Subst: {
      for (const auto& a : args) {
        est.vertices += a.n;
        est.edges += a.edges.size();
      }
      if (op.tmpl)
        for (auto [u, v] : op.tmpl->edges)
          est.edges += uint64_t(args[u - 1].n) * args[v - 1].n;
      break;
    }
  }
  return est;
}

}  // namespace

ColoredGraph decode(const Circuit& c, const DecodeOptions& opts) {
  if (c.nodes.empty()) fail(Err::domain, "decode: empty circuit");
  uint64_t budget = opts.budget_vertices ? opts.budget_vertices : default_vertex_budget();
  uint64_t edge_cap = budget > UINT64_MAX / 8 ? UINT64_MAX : budget * 8;
  uint64_t produced = 0;

  auto charge = [&](uint64_t vertices, uint64_t edges) {
    produced += vertices;
    if (produced > budget)
      fail(Err::budget, "decode: vertex budget of " + std::to_string(budget) + " exceeded");
    if (edges > edge_cap)
      fail(Err::budget, "decode: edge cap of " + std::to_string(edge_cap) + " exceeded");
  };

  std::vector<ColoredGraph> values(c.nodes.size());
  for (uint32_t idx = 0; idx <= c.root; ++idx) {
    const CircuitNode& node = c.nodes[idx];
    switch (node.kind) {
      case NodeKind::FreeLeaf:
        fail(Err::domain, "decode: circuit has a free leaf");
      case NodeKind::GraphLeaf:
        charge(c.graphs[node.payload].n, c.graphs[node.payload].edges.size());
        values[idx] = c.graphs[node.payload];
        break;
      case NodeKind::NamedLeaf: {
        if (!opts.system)
          fail(Err::domain, "decode: named leaf '@" + c.names[node.payload] +
                                "' but no system provided");
        const ColoredGraph* base = opts.system->find_base(c.names[node.payload]);
        if (!base)
          fail(Err::domain, "decode: unknown base structure '@" + c.names[node.payload] + "'");
        charge(base->n, base->edges.size());
        values[idx] = *base;
        break;
      }
      case NodeKind::Op: {
        std::vector<ColoredGraph> args;
        args.reserve(node.child_count);
        for (uint32_t ci = 0; ci < node.child_count; ++ci) {
          uint32_t child = c.children[node.child_begin + ci];
          if (child >= idx) fail(Err::internal, "decode: circuit arena is not topologically ordered");
          args.push_back(std::move(values[child]));
        }
        SizeEstimate est = estimate_op(node.op, args);
        charge(est.vertices, est.edges);
        values[idx] = apply_op(node.op, args);
        break;
      }
    }
  }
  return std::move(values[c.root]);
}

namespace {

struct Token {
  enum Type { LParen, RParen, Atom, String, End } type = End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= text_.size()) {
      tok.type = Token::End;
      return tok;
    }
    char ch = text_[pos_];
    if (ch == '(') {
      advance();
      tok.type = Token::LParen;
      return tok;
    }
    if (ch == ')') {
      advance();
      tok.type = Token::RParen;
      return tok;
    }
    if (ch == '"') {
      advance();
      tok.type = Token::String;
      std::string out;
      for (;;) {
        if (pos_ >= text_.size()) err(tok, "unterminated string");
        char c = text_[pos_];
        advance();
        if (c == '"') break;
        if (c == '\\') {
          if (pos_ >= text_.size()) err(tok, "unterminated escape");
          char esc = text_[pos_];
          advance();
          if (esc == 'n')
            out.push_back('\n');
          else if (esc == '"')
            out.push_back('"');
          else if (esc == '\\')
            out.push_back('\\');
          else
            err(tok, std::string("unknown escape '\\") + esc + "'");
        } else {
          out.push_back(c);
        }
      }
      tok.text = std::move(out);
      return tok;
    }
    tok.type = Token::Atom;
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == ')' || c == '"' || c == ';' || c == ' ' || c == '\t' || c == '\n' ||
          c == '\r')
        break;
      out.push_back(c);
      advance();
    }
    tok.text = std::move(out);
    return tok;
  }

  [[noreturn]] void err(const Token& tok, const std::string& message) const {
    fail(Err::parse, "circuit parse error at line " + std::to_string(tok.line) + " col " +
                         std::to_string(tok.col) + ": " + message);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

struct Frame {
  std::string head;
  Token head_tok;
  std::vector<uint16_t> params;   // fuse/recolor/eta color indices
  bool has_tmpl = false;
  uint32_t tmpl_graph = 0;        // graphs index of subst template
  bool leaf_done = false;
  std::vector<uint32_t> child_roots;
};

uint16_t parse_color_param(Lexer& lex, const Token& tok, int max_color) {
  uint32_t v = 0;
  auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (ec != std::errc() || p != tok.text.data() + tok.text.size() || v == 0)
    lex.err(tok, "expected a positive color index, got '" + tok.text + "'");
  if (max_color > 0 && v > static_cast<uint32_t>(max_color))
    lex.err(tok, "color index " + std::to_string(v) + " out of range 1.." +
                     std::to_string(max_color));
  if (v > 0xffff) lex.err(tok, "color index too large");
  return static_cast<uint16_t>(v);
}

int frame_arity(const Frame& f, const Circuit& c) {
  if (f.head == "leaf") return 0;
  if (f.head == "union" || f.head == "join" || f.head == "tensor" || f.head == "cartesian")
    return 2;
  if (f.head == "fuse" || f.head == "recolor" || f.head == "eta") return 1;
  if (f.head == "subst") return static_cast<int>(c.graphs[f.tmpl_graph].n);
  return -1;
}

}  // namespace

Circuit parse_circuit(std::string_view text, int max_color) {
  Lexer lex(text);
  Circuit c;
  std::vector<Frame> stack;
  int completed_root = -1;

  auto emit_leaf = [&](NodeKind kind, uint32_t payload) -> uint32_t {
    CircuitNode node;
    node.kind = kind;
    node.payload = payload;
    c.nodes.push_back(std::move(node));
    return static_cast<uint32_t>(c.nodes.size() - 1);
  };

  auto attach = [&](uint32_t root, const Token& tok) {
    if (stack.empty()) {
      if (completed_root >= 0) lex.err(tok, "multiple top-level expressions");
      completed_root = static_cast<int>(root);
    } else {
      stack.back().child_roots.push_back(root);
    }
  };

  for (;;) {
    Token tok = lex.next();
    if (tok.type == Token::End) break;

    if (tok.type == Token::LParen) {
      Token head = lex.next();
      if (head.type != Token::Atom) lex.err(head, "expected an operation name after '('");
      static const char* known[] = {"leaf",      "union", "join", "tensor",
                                    "cartesian", "fuse",  "recolor", "eta", "subst"};
      bool ok = false;
      for (const char* k : known) ok = ok || head.text == k;
      if (!ok) lex.err(head, "unknown form '" + head.text + "'");
      Frame f;
      f.head = head.text;
      f.head_tok = head;
      // Leading parameters are consumed here; children follow.
      if (f.head == "fuse" || f.head == "recolor" || f.head == "eta") {
        int want = f.head == "fuse" ? 1 : 2;
        for (int p = 0; p < want; ++p) {
          Token num = lex.next();
          if (num.type != Token::Atom) lex.err(num, "expected a color index");
          f.params.push_back(parse_color_param(lex, num, max_color));
        }
        if (f.head == "eta" && f.params[0] == f.params[1])
          lex.err(f.head_tok, "eta requires two distinct colors");
      } else if (f.head == "subst") {
        Token tmpl = lex.next();
        if (tmpl.type != Token::String) lex.err(tmpl, "expected a template graph string");
        ColoredGraph g;
        try {
          g = parse_graph(tmpl.text);
        } catch (const Error& e) {
          lex.err(tmpl, std::string("bad template: ") + e.what());
        }
        if (g.k != 0) lex.err(tmpl, "subst template must be uncolored");
        f.has_tmpl = true;
        f.tmpl_graph = static_cast<uint32_t>(c.graphs.size());
        c.graphs.push_back(std::move(g));
      } else if (f.head == "leaf") {
        Token arg = lex.next();
        if (arg.type == Token::String) {
          ColoredGraph g;
          try {
            g = parse_graph(arg.text);
          } catch (const Error& e) {
            lex.err(arg, std::string("bad graph: ") + e.what());
          }
          if (max_color > 0 && g.k > max_color)
            lex.err(arg, "leaf has more colors than the system allows");
          uint32_t gi = static_cast<uint32_t>(c.graphs.size());
          c.graphs.push_back(std::move(g));
          f.child_roots.push_back(emit_leaf(NodeKind::GraphLeaf, gi));
        } else if (arg.type == Token::Atom && !arg.text.empty() && arg.text[0] == '@') {
          if (arg.text.size() == 1) lex.err(arg, "empty base-structure name");
          uint32_t ni = static_cast<uint32_t>(c.names.size());
          c.names.push_back(arg.text.substr(1));
          f.child_roots.push_back(emit_leaf(NodeKind::NamedLeaf, ni));
        } else {
          lex.err(arg, "leaf expects a graph string or @name");
        }
        f.leaf_done = true;
      }
      stack.push_back(std::move(f));
      continue;
    }

    if (tok.type == Token::RParen) {
      if (stack.empty()) lex.err(tok, "unmatched ')'");
      Frame f = std::move(stack.back());
      stack.pop_back();
      uint32_t root;
      if (f.head == "leaf") {
        if (f.child_roots.size() != 1) lex.err(tok, "leaf expects exactly one payload");
        root = f.child_roots[0];
      } else {
        int want = frame_arity(f, c);
        if (static_cast<int>(f.child_roots.size()) != want)
          lex.err(f.head_tok, f.head + " expects " + std::to_string(want) + " children, got " +
                                  std::to_string(f.child_roots.size()));
        CircuitNode node;
        node.kind = NodeKind::Op;
        if (f.head == "union")
          node.op = op_union();
        else if (f.head == "join")
          node.op = op_join();
        else if (f.head == "tensor")
          node.op = op_tensor();
        else if (f.head == "cartesian")
          node.op = op_cartesian();
        else if (f.head == "fuse")
          node.op = op_fuse(f.params[0]);
        else if (f.head == "recolor")
          node.op = op_recolor(f.params[0], f.params[1]);
        else if (f.head == "eta")
          node.op = op_eta(f.params[0], f.params[1]);
        else
          node.op = op_subst(c.graphs[f.tmpl_graph]);
        node.child_begin = static_cast<uint32_t>(c.children.size());
        node.child_count = static_cast<uint32_t>(f.child_roots.size());
        c.children.insert(c.children.end(), f.child_roots.begin(), f.child_roots.end());
        c.nodes.push_back(std::move(node));
        root = static_cast<uint32_t>(c.nodes.size() - 1);
      }
      attach(root, tok);
      continue;
    }

    if (tok.type == Token::Atom) {
      if (!stack.empty() && stack.back().leaf_done)
        lex.err(tok, "leaf takes exactly one payload");
      if (tok.text == "x") {
        attach(emit_leaf(NodeKind::FreeLeaf, 0), tok);
      } else {
        lex.err(tok, "unexpected atom '" + tok.text + "'");
      }
      continue;
    }

    lex.err(tok, "unexpected string");
  }

  if (!stack.empty())
    fail(Err::parse, "circuit parse error: unclosed '(' for form '" + stack.back().head + "'");
  if (completed_root < 0) fail(Err::parse, "circuit parse error: empty input");
  c.root = static_cast<uint32_t>(completed_root);
  return c;
}

namespace {

std::string escape_string(const std::string& raw) {
  std::string out;
  out.reserve(raw.size() + 8);
  for (char ch : raw) {
    if (ch == '\n')
      out += "\\n";
    else if (ch == '"')
      out += "\\\"";
    else if (ch == '\\')
      out += "\\\\";
    else
      out.push_back(ch);
  }
  return out;
}

}  // namespace

std::string render_circuit(const Circuit& c) {
  // Iterative rendering: work items are either nodes or literal pieces.
  struct Item {
    bool literal;
    uint32_t node = 0;
    std::string text;
  };
  std::string out;
  std::vector<Item> work;
  work.push_back({false, c.root, {}});
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    if (item.literal) {
      out += item.text;
      continue;
    }
    const CircuitNode& node = c.nodes[item.node];
    switch (node.kind) {
      case NodeKind::FreeLeaf:
        out += "x";
        break;
      case NodeKind::GraphLeaf:
        out += "(leaf \"" + escape_string(render_graph(c.graphs[node.payload])) + "\")";
        break;
      case NodeKind::NamedLeaf:
        out += "(leaf @" + c.names[node.payload] + ")";
        break;
      case NodeKind::Op: {
        out.push_back('(');
        switch (node.op.tag) {
          case OpTag::Union:
            out += "union";
            break;
          case OpTag::Join:
            out += "join";
            break;
          case OpTag::Tensor:
            out += "tensor";
            break;
          case OpTag::Cartesian:
            out += "cartesian";
            break;
          case OpTag::Fuse:
            out += "fuse " + std::to_string(node.op.i);
            break;
          case OpTag::Recolor:
            out += "recolor " + std::to_string(node.op.i) + " " + std::to_string(node.op.j);
            break;
          case OpTag::Eta:
            out += "eta " + std::to_string(node.op.i) + " " + std::to_string(node.op.j);
            break;
          case OpTag::Subst:
            out += "subst \"" + escape_string(render_graph(*node.op.tmpl)) + "\"";
            break;
        }
        work.push_back({true, 0, ")"});
        for (uint32_t ci = node.child_count; ci > 0; --ci) {
          work.push_back({false, c.children[node.child_begin + ci - 1], {}});
          work.push_back({true, 0, " "});
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace hc
