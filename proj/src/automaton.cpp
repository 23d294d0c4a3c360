#include "automaton.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "canonical.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace hc {

// Everything needed to compute the truncated row of a structure, shared by
// compile and by post-load cache refills.
struct Automaton::RowEngine {
  StructurePool pool;
  ContextChainSet chains;
  CompiledContexts ctx;
  PropertyOracle prop;
  size_t words = 0;
  std::vector<std::vector<uint64_t>> class_rows;

  std::vector<uint64_t> row_of(const InductiveSystem& sys, const ColoredGraph& g) const {
    std::vector<uint64_t> row(words, 0);
    context_row(sys, ctx, prop, g, row.data(), ctx.size());
    return row;
  }
};

Automaton::Automaton() = default;
Automaton::Automaton(Automaton&&) noexcept = default;
Automaton& Automaton::operator=(Automaton&&) noexcept = default;
Automaton::~Automaton() = default;

namespace {

// Representative ordering: fewest vertices first, then certificate when
// available, then the rendered text.
std::string repr_key(const ColoredGraph& g) {
  std::string key;
  key.push_back(static_cast<char>(std::min<uint32_t>(g.n, 255)));
  if (g.n <= static_cast<uint32_t>(kDefaultCanonBound))
    key += canonical_form(g).bytes;
  else
    key += render_graph(g);
  return key;
}

uint64_t row_hash(const std::vector<uint64_t>& row) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (uint64_t w : row) {
    h ^= w;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Circuit inline_leaf_circuit(const ColoredGraph& g) { return Circuit::leaf(g); }

constexpr uint64_t kReprVertexCap = 100'000;

}  // namespace

Automaton compile(const InductiveSystem& sys, const PropertyOracle& prop, int pool_bound,
                  int depth_bound, const CompileOptions& opts) {
  Automaton aut;
  aut.system = sys;
  aut.property_expr = prop.name();

  auto engine = std::make_unique<Automaton::RowEngine>();
  engine->pool = enum_graphs(pool_bound, sys.k);
  engine->chains = enum_context_chains(sys, engine->pool, depth_bound, opts.max_contexts);
  engine->ctx = compile_context_chains(sys, engine->pool, engine->chains);
  engine->prop = prop;
  engine->words = (engine->ctx.size() + 63) / 64;

  std::vector<std::vector<uint64_t>>& rows = engine->class_rows;
  std::multimap<uint64_t, uint32_t> by_hash;
  auto find_class = [&](const std::vector<uint64_t>& row) -> std::optional<uint32_t> {
    auto [lo, hi] = by_hash.equal_range(row_hash(row));
    for (auto it = lo; it != hi; ++it)
      if (rows[it->second] == row) return it->second;
    return std::nullopt;
  };

  auto add_class = [&](std::vector<uint64_t> row, Circuit repr, ColoredGraph repr_graph) {
    if (aut.classes.size() >= opts.class_cap)
      fail(Err::unsaturated, "compile: rank not saturated at these bounds (class cap " +
                                 std::to_string(opts.class_cap) + " reached; raise the pool or "
                                 "depth bounds)");
    uint32_t id = static_cast<uint32_t>(aut.classes.size());
    AutomatonClass cls;
    cls.accept = row.empty() ? false : (row[0] & 1);
    cls.repr = std::move(repr);
    cls.repr_graph = std::move(repr_graph);
    aut.classes.push_back(std::move(cls));
    by_hash.emplace(row_hash(row), id);
    rows.push_back(std::move(row));
    return id;
  };

  // Seed classes from the base structures.
  {
    std::vector<std::vector<uint64_t>> base_rows(sys.base.size());
    parallel_for(sys.base.size(), opts.workers, [&](size_t lo, size_t hi) {
      for (size_t i = lo; i < hi; ++i) base_rows[i] = engine->row_of(sys, sys.base[i].graph);
    });
    for (size_t i = 0; i < sys.base.size(); ++i) {
      const ColoredGraph& g = sys.base[i].graph;
      auto existing = find_class(base_rows[i]);
      uint32_t id = existing ? *existing
                             : add_class(std::move(base_rows[i]), inline_leaf_circuit(g), g);
      aut.base_class_by_index.push_back(id);
      if (g.n <= static_cast<uint32_t>(kDefaultCanonBound))
        aut.base_class_by_cert.emplace(canonical_form(g).bytes, id);
    }
  }

  // Close under the operations. Every evaluated tuple becomes a
  // transition; tuples whose row is new found a class for the next round.
  std::map<std::pair<uint16_t, std::vector<uint32_t>>, uint32_t> transitions;
  size_t candidates_total = 0;
  for (;;) {
    struct Candidate {
      uint16_t op;
      std::vector<uint32_t> tuple;
      ColoredGraph combined;
      std::vector<uint64_t> row;
    };
    std::vector<Candidate> batch;
    size_t class_count = aut.classes.size();
    for (size_t oi = 0; oi < sys.ops.size(); ++oi) {
      size_t r = static_cast<size_t>(sys.ops[oi].arity());
      if (r < 1) continue;
      std::vector<uint32_t> tuple(r, 0);
      for (;;) {
        if (!transitions.count({static_cast<uint16_t>(oi), tuple})) {
          Candidate cand;
          cand.op = static_cast<uint16_t>(oi);
          cand.tuple = tuple;
          batch.push_back(std::move(cand));
        }
        // Next tuple, lexicographic with the rightmost position fastest.
        size_t pos = r;
        bool carried = true;
        while (carried && pos > 0) {
          --pos;
          if (++tuple[pos] < class_count)
            carried = false;
          else
            tuple[pos] = 0;
        }
        if (carried) break;
      }
    }
    if (batch.empty()) break;
    candidates_total += batch.size();
    if (candidates_total > opts.max_candidates)
      fail(Err::budget, "compile: candidate budget exceeded (" +
                            std::to_string(candidates_total) + " combinations); bounds too large");

    parallel_for(batch.size(), opts.workers, [&](size_t lo, size_t hi) {
      for (size_t i = lo; i < hi; ++i) {
        Candidate& cand = batch[i];
        std::vector<ColoredGraph> args;
        args.reserve(cand.tuple.size());
        uint64_t vertices = 0;
        for (uint32_t cls : cand.tuple) {
          args.push_back(aut.classes[cls].repr_graph);
          vertices += args.back().n;
        }
        if (vertices > kReprVertexCap)
          fail(Err::budget, "compile: representative combination too large");
        cand.combined = apply_op(sys.ops[cand.op], args);
        if (cand.combined.n > kReprVertexCap)
          fail(Err::budget, "compile: representative combination too large");
        cand.row = engine->row_of(sys, cand.combined);
      }
    });

    for (Candidate& cand : batch) {
      auto existing = find_class(cand.row);
      uint32_t target;
      if (existing) {
        target = *existing;
        // Keep the minimal decode as the class representative.
        if (repr_key(cand.combined) < repr_key(aut.classes[target].repr_graph)) {
          std::vector<Circuit> parts;
          for (uint32_t cls : cand.tuple) parts.push_back(aut.classes[cls].repr);
          aut.classes[target].repr = Circuit::op(sys.ops[cand.op], std::move(parts));
          aut.classes[target].repr_graph = std::move(cand.combined);
        }
      } else {
        std::vector<Circuit> parts;
        for (uint32_t cls : cand.tuple) parts.push_back(aut.classes[cls].repr);
        target = add_class(std::move(cand.row), Circuit::op(sys.ops[cand.op], std::move(parts)),
                           std::move(cand.combined));
      }
      transitions.emplace(std::make_pair(cand.op, std::move(cand.tuple)), target);
    }
  }

  // Dense tables for unary and binary operations; the rest stays sparse.
  size_t C = aut.classes.size();
  aut.table1.assign(sys.ops.size(), {});
  aut.table2.assign(sys.ops.size(), {});
  for (size_t oi = 0; oi < sys.ops.size(); ++oi) {
    int r = sys.ops[oi].arity();
    if (r == 1) aut.table1[oi].assign(C, Automaton::kNoEntry);
    if (r == 2) aut.table2[oi].assign(C * C, Automaton::kNoEntry);
  }
  for (const auto& [key, target] : transitions) {
    const auto& [oi, tuple] = key;
    if (tuple.size() == 1)
      aut.table1[oi][tuple[0]] = target;
    else if (tuple.size() == 2)
      aut.table2[oi][size_t(tuple[0]) * C + tuple[1]] = target;
    else
      aut.sparse->entries.emplace(key, target);
  }

  aut.provenance.pool_bound = pool_bound;
  aut.provenance.depth = depth_bound;
  aut.provenance.distinct_rows = C;
  {
    BitMatrix m(C, engine->ctx.size());
    for (size_t i = 0; i < C; ++i)
      std::copy(rows[i].begin(), rows[i].end(), m.row(i));
    aut.provenance.rank = gf2_rank(m);
  }
  aut.provenance.saturated = true;

  aut.engine = std::move(engine);
  return aut;
}

namespace {

// Builds (or returns) the row engine for cache refills on a loaded
// automaton: re-enumerates the compile-time contexts and recomputes every
// class row from its representative.
Automaton::RowEngine& ensure_engine(const Automaton& aut) {
  std::lock_guard<std::mutex> lock(*aut.engine_mutex);
  if (aut.engine) {
    if (aut.engine->class_rows.size() == aut.classes.size()) return *aut.engine;
  }
  auto engine = std::make_unique<Automaton::RowEngine>();
  engine->pool = enum_graphs(aut.provenance.pool_bound, aut.system.k);
  engine->chains = enum_context_chains(aut.system, engine->pool, aut.provenance.depth);
  engine->ctx = compile_context_chains(aut.system, engine->pool, engine->chains);
  engine->prop = parse_property(aut.property_expr, aut.conventions);
  engine->words = (engine->ctx.size() + 63) / 64;
  engine->class_rows.resize(aut.classes.size());
  for (size_t i = 0; i < aut.classes.size(); ++i)
    engine->class_rows[i] = engine->row_of(aut.system, aut.classes[i].repr_graph);
  aut.engine = std::move(engine);
  return *aut.engine;
}

uint32_t refill_transition(const Automaton& aut, uint16_t oi,
                           const std::vector<uint32_t>& tuple) {
  Automaton::RowEngine& engine = ensure_engine(aut);
  std::vector<ColoredGraph> args;
  for (uint32_t cls : tuple) args.push_back(aut.classes[cls].repr_graph);
  ColoredGraph combined = apply_op(aut.system.ops[oi], args);
  std::vector<uint64_t> row = engine.row_of(aut.system, combined);
  for (size_t i = 0; i < engine.class_rows.size(); ++i)
    if (engine.class_rows[i] == row) return static_cast<uint32_t>(i);
  fail(Err::unsaturated,
       "evaluate: combination " + aut.system.ops[oi].signature() +
           " leads outside the compiled classes; the automaton is under-saturated");
}

}  // namespace

EvalTrace evaluate_tree(const Automaton& aut, const Circuit& t) {
  if (t.nodes.empty()) fail(Err::domain, "evaluate: empty circuit");
  EvalTrace trace;
  trace.nodes = t.nodes.size();
  trace.classes.assign(t.nodes.size(), 0);
  size_t C = aut.classes.size();

  for (uint32_t idx = 0; idx <= t.root; ++idx) {
    const CircuitNode& node = t.nodes[idx];
    switch (node.kind) {
      case NodeKind::FreeLeaf:
        fail(Err::domain, "evaluate: tree has a free leaf");
      case NodeKind::NamedLeaf: {
        const std::string& name = t.names[node.payload];
        size_t bi = SIZE_MAX;
        for (size_t i = 0; i < aut.system.base.size(); ++i)
          if (aut.system.base[i].name == name) {
            bi = i;
            break;
          }
        if (bi == SIZE_MAX)
          fail(Err::domain, "evaluate: leaf '@" + name + "' is not a base structure");
        trace.classes[idx] = aut.base_class_by_index[bi];
        break;
      }
      case NodeKind::GraphLeaf: {
        const ColoredGraph& g = t.graphs[node.payload];
        if (g.n > static_cast<uint32_t>(kDefaultCanonBound))
          fail(Err::domain, "evaluate: leaf graph too large to match a base structure");
        auto it = aut.base_class_by_cert.find(canonical_form(g).bytes);
        if (it == aut.base_class_by_cert.end())
          fail(Err::domain, "evaluate: leaf graph is not a base structure of system '" +
                                aut.system.name + "'");
        trace.classes[idx] = it->second;
        break;
      }
      case NodeKind::Op: {
        auto oi = aut.system.find_op(node.op);
        if (!oi)
          fail(Err::domain, "evaluate: operation " + node.op.signature() +
                                " is not part of system '" + aut.system.name + "'");
        uint32_t target = Automaton::kNoEntry;
        ++trace.lookups;
        if (node.child_count == 1) {
          uint32_t a = trace.classes[t.children[node.child_begin]];
          if (!aut.table1[*oi].empty()) target = aut.table1[*oi][a];
        } else if (node.child_count == 2) {
          uint32_t a = trace.classes[t.children[node.child_begin]];
          uint32_t b = trace.classes[t.children[node.child_begin + 1]];
          if (!aut.table2[*oi].empty()) target = aut.table2[*oi][size_t(a) * C + b];
        } else {
          std::vector<uint32_t> tuple(node.child_count);
          for (uint32_t ci = 0; ci < node.child_count; ++ci)
            tuple[ci] = trace.classes[t.children[node.child_begin + ci]];
          std::pair<uint16_t, std::vector<uint32_t>> key{static_cast<uint16_t>(*oi), tuple};
          {
            std::lock_guard<std::mutex> lock(aut.sparse->mutex);
            auto it = aut.sparse->entries.find(key);
            if (it != aut.sparse->entries.end()) target = it->second;
          }
          if (target == Automaton::kNoEntry) {
            target = refill_transition(aut, static_cast<uint16_t>(*oi), tuple);
            std::lock_guard<std::mutex> lock(aut.sparse->mutex);
            aut.sparse->entries.emplace(std::move(key), target);
          }
        }
        if (target == Automaton::kNoEntry)
          fail(Err::unsaturated, "evaluate: missing transition for " + node.op.signature() +
                                     "; the automaton is under-saturated");
        trace.classes[idx] = target;
        break;
      }
    }
  }
  trace.accept = aut.classes[trace.classes[t.root]].accept;
  return trace;
}

// ---------------------------------------------------------------------
// Serialization.

namespace {

std::string inline_graph(const ColoredGraph& g) { return render_graph_inline(g); }

std::vector<std::string> line_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

uint64_t parse_num(const std::string& tok, const char* what) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    fail(Err::parse, std::string("automaton file: bad ") + what + " '" + tok + "'");
  return v;
}

}  // namespace

void save_automaton(const Automaton& aut, const std::string& path) {
  std::ostringstream out;
  out << "automaton v1 system=" << aut.system.name << " classes=" << aut.classes.size() << "\n";
  out << "k " << aut.system.k << "\n";
  out << "convention empty-connected=" << (aut.conventions.empty_connected ? 1 : 0)
      << " proper-subsets=" << (aut.conventions.proper_subsets ? 1 : 0) << "\n";
  out << "property " << aut.property_expr << "\n";
  for (const auto& op : aut.system.ops) out << "op " << op.signature() << "\n";
  for (size_t i = 0; i < aut.system.base.size(); ++i)
    out << "base " << aut.system.base[i].name << " " << aut.base_class_by_index[i] << " "
        << inline_graph(aut.system.base[i].graph) << "\n";
  for (size_t i = 0; i < aut.classes.size(); ++i)
    out << "class " << i << " accept " << (aut.classes[i].accept ? 1 : 0) << " repr "
        << render_circuit(aut.classes[i].repr) << "\n";

  size_t C = aut.classes.size();
  for (size_t oi = 0; oi < aut.system.ops.size(); ++oi) {
    std::string sig = aut.system.ops[oi].signature();
    if (!aut.table1[oi].empty())
      for (size_t a = 0; a < C; ++a)
        if (aut.table1[oi][a] != Automaton::kNoEntry)
          out << "tr " << sig << " " << a << " -> " << aut.table1[oi][a] << "\n";
    if (!aut.table2[oi].empty())
      for (size_t a = 0; a < C; ++a)
        for (size_t b = 0; b < C; ++b)
          if (aut.table2[oi][a * C + b] != Automaton::kNoEntry)
            out << "tr " << sig << " " << a << " " << b << " -> " << aut.table2[oi][a * C + b]
                << "\n";
  }
  {
    std::lock_guard<std::mutex> lock(aut.sparse->mutex);
    for (const auto& [key, target] : aut.sparse->entries) {
      out << "tr " << aut.system.ops[key.first].signature();
      for (uint32_t c : key.second) out << " " << c;
      out << " -> " << target << "\n";
    }
  }
  out << "provenance rank=" << aut.provenance.rank << " pool=" << aut.provenance.pool_bound
      << " depth=" << aut.provenance.depth << "\n";

  std::ofstream file(path, std::ios::binary);
  if (!file) fail(Err::io, "cannot write automaton file '" + path + "'");
  file << out.str();
  if (!file) fail(Err::io, "failed writing automaton file '" + path + "'");
}

Automaton load_automaton(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) fail(Err::io, "cannot open automaton file '" + path + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  std::string text = buf.str();

  Automaton aut;
  size_t declared_classes = 0;
  bool saw_header = false, saw_provenance = false;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto loc = [&] { return "automaton file line " + std::to_string(line_no) + ": "; };
    auto toks = line_tokens(line);
    if (toks.empty()) continue;

    if (toks[0] == "automaton") {
      if (toks.size() != 4 || toks[1] != "v1" || toks[2].substr(0, 7) != "system=" ||
          toks[3].substr(0, 8) != "classes=")
        fail(Err::parse, loc() + "malformed header");
      aut.system.name = toks[2].substr(7);
      declared_classes = parse_num(toks[3].substr(8), "class count");
      saw_header = true;
      continue;
    }
    if (!saw_header) fail(Err::parse, loc() + "content before header");
    if (saw_provenance) fail(Err::parse, loc() + "content after provenance");

    if (toks[0] == "k") {
      if (toks.size() != 2) fail(Err::parse, loc() + "malformed k line");
      aut.system.k = static_cast<uint16_t>(parse_num(toks[1], "color count"));
    } else if (toks[0] == "convention") {
      if (toks.size() != 3 || toks[1].substr(0, 16) != "empty-connected=" ||
          toks[2].substr(0, 15) != "proper-subsets=")
        fail(Err::parse, loc() + "malformed convention line");
      aut.conventions.empty_connected = parse_num(toks[1].substr(16), "flag") != 0;
      aut.conventions.proper_subsets = parse_num(toks[2].substr(15), "flag") != 0;
    } else if (toks[0] == "property") {
      if (toks.size() < 2) fail(Err::parse, loc() + "malformed property line");
      std::string expr;
      for (size_t i = 1; i < toks.size(); ++i) {
        if (i > 1) expr += " ";
        expr += toks[i];
      }
      aut.property_expr = expr;
    } else if (toks[0] == "op") {
      if (toks.size() != 2) fail(Err::parse, loc() + "malformed op line");
      aut.system.ops.push_back(parse_op_signature(toks[1]));
    } else if (toks[0] == "base") {
      if (toks.size() < 4) fail(Err::parse, loc() + "malformed base line");
      uint32_t cls = static_cast<uint32_t>(parse_num(toks[2], "class id"));
      std::string gtext;
      for (size_t i = 3; i < toks.size(); ++i) {
        if (i > 3) gtext += " ";
        gtext += toks[i];
      }
      ColoredGraph g = parse_graph(gtext);
      aut.system.base.push_back({toks[1], g});
      aut.base_class_by_index.push_back(cls);
      if (g.n <= static_cast<uint32_t>(kDefaultCanonBound))
        aut.base_class_by_cert.emplace(canonical_form(g).bytes, cls);
    } else if (toks[0] == "class") {
      if (toks.size() < 6 || toks[2] != "accept" || toks[4] != "repr")
        fail(Err::parse, loc() + "malformed class line");
      uint32_t id = static_cast<uint32_t>(parse_num(toks[1], "class id"));
      if (id != aut.classes.size()) fail(Err::parse, loc() + "class ids must be consecutive");
      size_t repr_at = line.find(" repr ");
      AutomatonClass cls;
      cls.accept = parse_num(toks[3], "accept bit") != 0;
      cls.repr = parse_circuit(line.substr(repr_at + 6));
      if (free_leaf_count(cls.repr) != 0)
        fail(Err::parse, loc() + "class representative must be closed");
      cls.repr_graph = decode(cls.repr);
      aut.classes.push_back(std::move(cls));
    } else if (toks[0] == "tr") {
      if (toks.size() < 5 || toks[toks.size() - 2] != "->")
        fail(Err::parse, loc() + "malformed transition line");
      auto oi = aut.system.find_op_signature(toks[1]);
      if (!oi) fail(Err::parse, loc() + "transition for unknown op '" + toks[1] + "'");
      std::vector<uint32_t> tuple;
      for (size_t i = 2; i + 2 < toks.size(); ++i)
        tuple.push_back(static_cast<uint32_t>(parse_num(toks[i], "class id")));
      uint32_t target = static_cast<uint32_t>(parse_num(toks.back(), "class id"));
      if (static_cast<int>(tuple.size()) != aut.system.ops[*oi].arity())
        fail(Err::parse, loc() + "transition arity mismatch");
      size_t C = declared_classes;
      for (uint32_t c : tuple)
        if (c >= C) fail(Err::parse, loc() + "transition class id out of range");
      if (target >= C) fail(Err::parse, loc() + "transition target out of range");
      if (aut.table1.size() != aut.system.ops.size()) {
        aut.table1.assign(aut.system.ops.size(), {});
        aut.table2.assign(aut.system.ops.size(), {});
        for (size_t k = 0; k < aut.system.ops.size(); ++k) {
          int r = aut.system.ops[k].arity();
          if (r == 1) aut.table1[k].assign(C, Automaton::kNoEntry);
          if (r == 2) aut.table2[k].assign(C * C, Automaton::kNoEntry);
        }
      }
      if (tuple.size() == 1)
        aut.table1[*oi][tuple[0]] = target;
      else if (tuple.size() == 2)
        aut.table2[*oi][size_t(tuple[0]) * C + tuple[1]] = target;
      else
        aut.sparse->entries.emplace(
            std::make_pair(static_cast<uint16_t>(*oi), std::move(tuple)), target);
    } else if (toks[0] == "provenance") {
      if (toks.size() != 4 || toks[1].substr(0, 5) != "rank=" || toks[2].substr(0, 5) != "pool=" ||
          toks[3].substr(0, 6) != "depth=")
        fail(Err::parse, loc() + "malformed provenance line");
      aut.provenance.rank = static_cast<int>(parse_num(toks[1].substr(5), "rank"));
      aut.provenance.pool_bound = static_cast<int>(parse_num(toks[2].substr(5), "pool bound"));
      aut.provenance.depth = static_cast<int>(parse_num(toks[3].substr(6), "depth"));
      aut.provenance.distinct_rows = aut.classes.size();
      aut.provenance.saturated = true;
      saw_provenance = true;
    } else {
      fail(Err::parse, loc() + "unknown directive '" + toks[0] + "'");
    }
  }
  if (!saw_header) fail(Err::parse, "automaton file: missing header");
  if (!saw_provenance) fail(Err::parse, "automaton file: missing provenance (truncated file?)");
  if (aut.classes.size() != declared_classes)
    fail(Err::parse, "automaton file: expected " + std::to_string(declared_classes) +
                         " classes, found " + std::to_string(aut.classes.size()));
  if (aut.table1.size() != aut.system.ops.size()) {
    aut.table1.assign(aut.system.ops.size(), {});
    aut.table2.assign(aut.system.ops.size(), {});
  }
  for (uint32_t cls : aut.base_class_by_index)
    if (cls >= aut.classes.size())
      fail(Err::parse, "automaton file: base class id out of range");
  return aut;
}

bool automata_equal(const Automaton& a, const Automaton& b) {
  if (a.system.name != b.system.name || a.system.k != b.system.k) return false;
  if (a.property_expr != b.property_expr) return false;
  if (a.conventions.empty_connected != b.conventions.empty_connected ||
      a.conventions.proper_subsets != b.conventions.proper_subsets)
    return false;
  if (a.provenance.rank != b.provenance.rank ||
      a.provenance.pool_bound != b.provenance.pool_bound ||
      a.provenance.depth != b.provenance.depth)
    return false;
  if (a.classes.size() != b.classes.size()) return false;
  for (size_t i = 0; i < a.classes.size(); ++i) {
    if (a.classes[i].accept != b.classes[i].accept) return false;
    if (render_circuit(a.classes[i].repr) != render_circuit(b.classes[i].repr)) return false;
  }
  if (a.system.ops.size() != b.system.ops.size()) return false;
  for (size_t i = 0; i < a.system.ops.size(); ++i)
    if (!(a.system.ops[i] == b.system.ops[i])) return false;
  if (a.base_class_by_index != b.base_class_by_index) return false;
  if (a.table1 != b.table1 || a.table2 != b.table2) return false;
  std::lock_guard<std::mutex> la(a.sparse->mutex);
  std::lock_guard<std::mutex> lb(b.sparse->mutex);
  return a.sparse->entries == b.sparse->entries;
}

}  // namespace hc
