#include "system.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "enumerate.hpp"
#include "error.hpp"

namespace hc {

const ColoredGraph* InductiveSystem::find_base(std::string_view base_name) const {
  for (const auto& b : base)
    if (b.name == base_name) return &b.graph;
  return nullptr;
}

std::optional<size_t> InductiveSystem::find_op(const OpKind& op) const {
  for (size_t i = 0; i < ops.size(); ++i)
    if (ops[i] == op) return i;
  return std::nullopt;
}

std::optional<size_t> InductiveSystem::find_op_signature(std::string_view sig) const {
  for (size_t i = 0; i < ops.size(); ++i)
    if (ops[i].signature() == sig) return i;
  return std::nullopt;
}

InductiveSystem make_treewidth_system(int k) {
  if (k < 1 || k > 8) fail(Err::domain, "tree-width system: k must be in 1..8");
  InductiveSystem sys;
  sys.name = "tw" + std::to_string(k);
  sys.k = static_cast<uint16_t>(k);
  StructurePool pool = enum_graphs(k + 1, k);
  for (size_t i = 0; i < pool.size(); ++i)
    sys.base.push_back({"a" + std::to_string(i), pool.graphs[i]});
  sys.ops.push_back(op_union());
  for (int i = 1; i <= k; ++i) sys.ops.push_back(op_fuse(static_cast<uint16_t>(i)));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) sys.ops.push_back(op_recolor(static_cast<uint16_t>(i), static_cast<uint16_t>(j)));
  return sys;
}

InductiveSystem make_cliquewidth_system(int k) {
  if (k < 1 || k > 255) fail(Err::domain, "clique-width system: k must be in 1..255");
  InductiveSystem sys;
  sys.name = "cw" + std::to_string(k);
  sys.k = static_cast<uint16_t>(k);
  for (int c = 1; c <= k; ++c)
    sys.base.push_back({"v" + std::to_string(c),
                        single_vertex(static_cast<uint16_t>(k), static_cast<uint16_t>(c))});
  sys.ops.push_back(op_union());
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) sys.ops.push_back(op_recolor(static_cast<uint16_t>(i), static_cast<uint16_t>(j)));
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      sys.ops.push_back(op_eta(static_cast<uint16_t>(i), static_cast<uint16_t>(j)));
  return sys;
}

InductiveSystem make_modularwidth_system(int k) {
  if (k < 1 || k > 6) fail(Err::domain, "modular-width system: k must be in 1..6");
  InductiveSystem sys;
  sys.name = "mw" + std::to_string(k);
  sys.k = 0;
  sys.base.push_back({"v", single_vertex(0, 0)});
  sys.ops.push_back(op_union());
  sys.ops.push_back(op_join());
  StructurePool pool = enum_graphs(k, 0);
  for (size_t i = 0; i < pool.size(); ++i)
    if (pool.graphs[i].n == static_cast<uint32_t>(k)) sys.ops.push_back(op_subst(pool.graphs[i]));
  return sys;
}

InductiveSystem make_union_system() {
  InductiveSystem sys;
  sys.name = "union";
  sys.k = 0;
  sys.base.push_back({"empty", empty_graph(0)});
  sys.base.push_back({"k1", single_vertex(0, 0)});
  sys.ops.push_back(op_union());
  return sys;
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    lines.emplace_back(line);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

uint16_t to_color(const std::string& tok, int line_no) {
  uint32_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || v == 0 || v > 0xffff)
    fail(Err::parse, "system file line " + std::to_string(line_no) + ": bad color index '" + tok +
                         "'");
  return static_cast<uint16_t>(v);
}

}  // namespace

InductiveSystem parse_system(std::string_view text) {
  InductiveSystem sys;
  bool saw_header = false;
  auto lines = split_lines(text);

  // Base blocks span multiple lines; collect until the next keyword.
  std::string pending_base_name;
  std::string pending_base_text;
  auto flush_base = [&](int line_no) {
    if (pending_base_name.empty()) return;
    ColoredGraph g;
    try {
      g = parse_graph(pending_base_text);
    } catch (const Error& e) {
      fail(Err::parse, "system file: base '" + pending_base_name + "' near line " +
                           std::to_string(line_no) + ": " + e.what());
    }
    if (g.k != sys.k)
      fail(Err::parse, "system file: base '" + pending_base_name + "' has k=" +
                           std::to_string(g.k) + " but the system declares k=" +
                           std::to_string(sys.k));
    if (sys.find_base(pending_base_name))
      fail(Err::parse, "system file: duplicate base name '" + pending_base_name + "'");
    sys.base.push_back({pending_base_name, std::move(g)});
    pending_base_name.clear();
    pending_base_text.clear();
  };

  for (size_t idx = 0; idx < lines.size(); ++idx) {
    int line_no = static_cast<int>(idx + 1);
    auto toks = tokens_of(lines[idx]);
    if (toks.empty()) continue;

    if (toks[0] == "system") {
      if (saw_header) fail(Err::parse, "system file: duplicate header");
      if (toks.size() != 3 || toks[2].substr(0, 2) != "k=")
        fail(Err::parse, "system file line " + std::to_string(line_no) +
                             ": expected 'system <name> k=<K>'");
      sys.name = toks[1];
      uint32_t k = 0;
      std::string kk = toks[2].substr(2);
      auto [p, ec] = std::from_chars(kk.data(), kk.data() + kk.size(), k);
      if (ec != std::errc() || p != kk.data() + kk.size() || k > 0xffff)
        fail(Err::parse, "system file line " + std::to_string(line_no) + ": bad color count");
      sys.k = static_cast<uint16_t>(k);
      saw_header = true;
      continue;
    }
    if (!saw_header)
      fail(Err::parse, "system file line " + std::to_string(line_no) +
                           ": content before 'system' header");

    if (toks[0] == "base") {
      flush_base(line_no);
      if (toks.size() < 2)
        fail(Err::parse, "system file line " + std::to_string(line_no) + ": base needs a name");
      pending_base_name = toks[1];
      std::string rest;
      for (size_t t = 2; t < toks.size(); ++t) {
        if (!rest.empty()) rest += ' ';
        rest += toks[t];
      }
      pending_base_text = rest;
      continue;
    }

    if (toks[0] == "op") {
      flush_base(line_no);
      if (toks.size() < 2)
        fail(Err::parse, "system file line " + std::to_string(line_no) + ": op needs a kind");
      const std::string& kind = toks[1];
      auto expect = [&](size_t n) {
        if (toks.size() != n)
          fail(Err::parse,
               "system file line " + std::to_string(line_no) + ": malformed op '" + kind + "'");
      };
      if (kind == "union") {
        expect(2);
        sys.ops.push_back(op_union());
      } else if (kind == "join") {
        expect(2);
        sys.ops.push_back(op_join());
      } else if (kind == "tensor") {
        expect(2);
        sys.ops.push_back(op_tensor());
      } else if (kind == "cartesian") {
        expect(2);
        sys.ops.push_back(op_cartesian());
      } else if (kind == "fuse") {
        expect(3);
        uint16_t i = to_color(toks[2], line_no);
        if (i > sys.k)
          fail(Err::parse, "system file line " + std::to_string(line_no) + ": color out of range");
        sys.ops.push_back(op_fuse(i));
      } else if (kind == "recolor" || kind == "eta") {
        expect(4);
        uint16_t i = to_color(toks[2], line_no);
        uint16_t j = to_color(toks[3], line_no);
        if (i > sys.k || j > sys.k)
          fail(Err::parse, "system file line " + std::to_string(line_no) + ": color out of range");
        if (kind == "eta") {
          if (i == j)
            fail(Err::parse,
                 "system file line " + std::to_string(line_no) + ": eta needs distinct colors");
          sys.ops.push_back(op_eta(i, j));
        } else {
          sys.ops.push_back(op_recolor(i, j));
        }
      } else if (kind == "subst") {
        std::string rest;
        for (size_t t = 2; t < toks.size(); ++t) {
          if (!rest.empty()) rest += ' ';
          rest += toks[t];
        }
        ColoredGraph tmpl;
        try {
          tmpl = parse_graph(rest);
        } catch (const Error& e) {
          fail(Err::parse, "system file line " + std::to_string(line_no) +
                               ": bad subst template: " + e.what());
        }
        sys.ops.push_back(op_subst(std::move(tmpl)));
      } else {
        fail(Err::parse,
             "system file line " + std::to_string(line_no) + ": unknown op kind '" + kind + "'");
      }
      continue;
    }

    if (!pending_base_name.empty()) {
      if (!pending_base_text.empty()) pending_base_text += '\n';
      pending_base_text += lines[idx];
      continue;
    }
    fail(Err::parse, "system file line " + std::to_string(line_no) + ": unexpected content '" +
                         toks[0] + "'");
  }
  flush_base(static_cast<int>(lines.size()));
  if (!saw_header) fail(Err::parse, "system file: missing 'system' header");
  if (sys.base.empty()) fail(Err::parse, "system file: no base structures");
  if (sys.ops.empty()) fail(Err::parse, "system file: no operations");
  return sys;
}

std::string render_system(const InductiveSystem& sys) {
  std::ostringstream out;
  out << "system " << sys.name << " k=" << sys.k << "\n";
  for (const auto& b : sys.base) out << "base " << b.name << " " << render_graph(b.graph);
  for (const auto& op : sys.ops) {
    switch (op.tag) {
      case OpTag::Union:
        out << "op union\n";
        break;
      case OpTag::Join:
        out << "op join\n";
        break;
      case OpTag::Tensor:
        out << "op tensor\n";
        break;
      case OpTag::Cartesian:
        out << "op cartesian\n";
        break;
      case OpTag::Fuse:
        out << "op fuse " << op.i << "\n";
        break;
      case OpTag::Recolor:
        out << "op recolor " << op.i << " " << op.j << "\n";
        break;
      case OpTag::Eta:
        out << "op eta " << op.i << " " << op.j << "\n";
        break;
      case OpTag::Subst:
        out << "op subst " << render_graph_inline(*op.tmpl) << "\n";
        break;
    }
  }
  return out.str();
}

InductiveSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::io, "cannot open system file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

InductiveSystem resolve_system(const std::string& ref) {
  std::error_code ec;
  if (std::filesystem::exists(ref, ec)) return load_system_file(ref);
  auto parse_builtin = [&](std::string_view prefix) -> int {
    if (ref.size() <= prefix.size() || ref.substr(0, prefix.size()) != prefix) return -1;
    int v = 0;
    auto [p, err2] = std::from_chars(ref.data() + prefix.size(), ref.data() + ref.size(), v);
    if (err2 != std::errc() || p != ref.data() + ref.size()) return -1;
    return v;
  };
  if (ref == "union") return make_union_system();
  if (int k = parse_builtin("tw"); k > 0) return make_treewidth_system(k);
  if (int k = parse_builtin("cw"); k > 0) return make_cliquewidth_system(k);
  if (int k = parse_builtin("mw"); k > 0) return make_modularwidth_system(k);
  fail(Err::io, "system '" + ref + "' is neither a file nor a builtin name "
                "(builtins: tw<k>, cw<k>, mw<k>, union)");
}

}  // namespace hc
