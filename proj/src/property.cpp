#include "property.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <span>

#include "canonical.hpp"
#include "error.hpp"

namespace hc {

bool is_connected(const ColoredGraph& g, bool empty_connected) {
  if (g.n == 0) return empty_connected;
  std::vector<std::vector<uint32_t>> adj(g.n);
  for (auto [u, v] : g.edges) {
    adj[u - 1].push_back(v - 1);
    adj[v - 1].push_back(u - 1);
  }
  std::vector<bool> seen(g.n, false);
  std::vector<uint32_t> stack{0};
  seen[0] = true;
  uint32_t visited = 1;
  while (!stack.empty()) {
    uint32_t v = stack.back();
    stack.pop_back();
    for (uint32_t u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        ++visited;
        stack.push_back(u);
      }
  }
  return visited == g.n;
}

bool is_bipartite(const ColoredGraph& g) {
  std::vector<std::vector<uint32_t>> adj(g.n);
  for (auto [u, v] : g.edges) {
    adj[u - 1].push_back(v - 1);
    adj[v - 1].push_back(u - 1);
  }
  std::vector<int8_t> side(g.n, -1);
  for (uint32_t start = 0; start < g.n; ++start) {
    if (side[start] != -1) continue;
    side[start] = 0;
    std::vector<uint32_t> stack{start};
    while (!stack.empty()) {
      uint32_t v = stack.back();
      stack.pop_back();
      for (uint32_t u : adj[v]) {
        if (side[u] == -1) {
          side[u] = static_cast<int8_t>(1 - side[v]);
          stack.push_back(u);
        } else if (side[u] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

PropertyOracle::PropertyOracle(std::string name, Pred pred)
    : name_(std::move(name)), pred_(std::move(pred)) {}

PropertyOracle::PropertyOracle(std::string name, Pred pred, TinyPred tiny)
    : name_(std::move(name)), pred_(std::move(pred)), tiny_(std::move(tiny)) {}

bool PropertyOracle::operator()(const ColoredGraph& g) const {
  if (!pred_) fail(Err::internal, "property oracle '" + name_ + "' has no predicate");
  if (memo_ && g.n <= static_cast<uint32_t>(kDefaultCanonBound)) {
    std::string key = canonical_form(g).bytes;
    {
      std::lock_guard<std::mutex> lock(memo_->mutex);
      auto it = memo_->verdicts.find(key);
      if (it != memo_->verdicts.end()) return it->second;
    }
    bool v = pred_(g);
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->verdicts[key] = v;  // last write wins; verdicts are idempotent
    return v;
  }
  return pred_(g);
}

bool PropertyOracle::eval_tiny(const TinyGraph& g) const {
  if (tiny_) return tiny_(g);
  return (*this)(g.to_graph());
}

void PropertyOracle::enable_memo(bool on) {
  memo_ = on ? std::make_shared<Memo>() : nullptr;
}

bool OrderSetSpec::contains(uint64_t n) const {
  bool exc = std::find(exceptions.begin(), exceptions.end(), n) != exceptions.end();
  bool tail = false;
  if (modulus > 0)
    tail = std::find(residues.begin(), residues.end(), n % modulus) != residues.end();
  return exc != tail;
}

OrderSetSpec OrderSetSpec::parse(std::string_view text) {
  OrderSetSpec spec;
  size_t pos = 0;
  auto read_int = [&]() -> uint64_t {
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc() || p == text.data() + pos)
      fail(Err::parse, "order-set spec '" + std::string(text) + "': expected a number at offset " +
                           std::to_string(pos));
    pos = static_cast<size_t>(p - text.data());
    return v;
  };
  if (pos < text.size() && text[pos] == '{') {
    ++pos;
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
    } else {
      for (;;) {
        spec.exceptions.push_back(read_int());
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == '}') {
          ++pos;
          break;
        }
        fail(Err::parse, "order-set spec '" + std::string(text) + "': expected ',' or '}'");
      }
    }
  }
  if (pos < text.size()) {
    if (text[pos] != '+')
      fail(Err::parse, "order-set spec '" + std::string(text) + "': expected '+<m>Z+<r>' tail");
    ++pos;
    spec.modulus = read_int();
    if (spec.modulus == 0)
      fail(Err::parse, "order-set spec '" + std::string(text) + "': modulus must be positive");
    if (pos >= text.size() || text[pos] != 'Z')
      fail(Err::parse, "order-set spec '" + std::string(text) + "': expected 'Z'");
    ++pos;
    while (pos < text.size()) {
      if (text[pos] != '+')
        fail(Err::parse, "order-set spec '" + std::string(text) + "': expected '+<r>'");
      ++pos;
      uint64_t r = read_int();
      if (r >= spec.modulus)
        fail(Err::parse, "order-set spec '" + std::string(text) + "': residue out of range");
      spec.residues.push_back(r);
    }
    if (spec.residues.empty())
      fail(Err::parse, "order-set spec '" + std::string(text) + "': tail needs a residue");
  }
  std::sort(spec.exceptions.begin(), spec.exceptions.end());
  spec.exceptions.erase(std::unique(spec.exceptions.begin(), spec.exceptions.end()),
                        spec.exceptions.end());
  std::sort(spec.residues.begin(), spec.residues.end());
  spec.residues.erase(std::unique(spec.residues.begin(), spec.residues.end()),
                      spec.residues.end());
  return spec;
}

std::string OrderSetSpec::render() const {
  std::string out;
  if (!exceptions.empty() || modulus == 0) {
    out += "{";
    for (size_t i = 0; i < exceptions.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(exceptions[i]);
    }
    out += "}";
  }
  if (modulus > 0) {
    out += "+" + std::to_string(modulus) + "Z";
    for (uint64_t r : residues) out += "+" + std::to_string(r);
  }
  return out;
}

PropertyOracle connected_oracle(const Conventions& conv) {
  bool ec = conv.empty_connected;
  return PropertyOracle(
      "connected", [ec](const ColoredGraph& g) { return is_connected(g, ec); },
      [ec](const TinyGraph& g) { return tiny_connected(g, ec); });
}

PropertyOracle bipartite_oracle() {
  return PropertyOracle(
      "bipartite", [](const ColoredGraph& g) { return is_bipartite(g); },
      [](const TinyGraph& g) { return tiny_bipartite(g); });
}

PropertyOracle empty_oracle() {
  return PropertyOracle(
      "empty", [](const ColoredGraph& g) { return g.n == 0; },
      [](const TinyGraph& g) { return g.n == 0; });
}

PropertyOracle const_oracle(bool value) {
  return PropertyOracle(
      value ? "true" : "false", [value](const ColoredGraph&) { return value; },
      [value](const TinyGraph&) { return value; });
}

PropertyOracle conn_of_order(const OrderSetSpec& spec, const Conventions& conv) {
  bool ec = conv.empty_connected;
  return PropertyOracle(
      "conn_of_order:" + spec.render(),
      [spec, ec](const ColoredGraph& g) { return is_connected(g, ec) && spec.contains(g.n); },
      [spec, ec](const TinyGraph& g) { return tiny_connected(g, ec) && spec.contains(g.n); });
}

// ---------------------------------------------------------------------
// Boolean formulas over property slots.

class Formula {
 public:
  enum class Kind { Slot, Const, Not, And, Or };
  Kind kind;
  size_t slot = 0;
  bool value = false;
  std::vector<FormulaPtr> parts;

  bool eval(std::span<const bool> inputs) const {
    switch (kind) {
      case Kind::Slot:
        if (slot >= inputs.size()) fail(Err::domain, "formula slot out of range");
        return inputs[slot];
      case Kind::Const:
        return value;
      case Kind::Not:
        return !parts[0]->eval(inputs);
      case Kind::And:
        for (const auto& p : parts)
          if (!p->eval(inputs)) return false;
        return true;
      case Kind::Or:
        for (const auto& p : parts)
          if (p->eval(inputs)) return true;
        return false;
    }
    fail(Err::internal, "unhandled formula kind");
  }

  size_t slot_count() const {
    size_t m = kind == Kind::Slot ? slot + 1 : 0;
    for (const auto& p : parts) m = std::max(m, p->slot_count());
    return m;
  }
};

FormulaPtr f_slot(size_t index) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Slot;
  f->slot = index;
  return f;
}

FormulaPtr f_const(bool value) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Const;
  f->value = value;
  return f;
}

FormulaPtr f_not(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Not;
  f->parts.push_back(std::move(a));
  return f;
}

FormulaPtr f_and(std::vector<FormulaPtr> parts) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::And;
  f->parts = std::move(parts);
  return f;
}

FormulaPtr f_or(std::vector<FormulaPtr> parts) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Or;
  f->parts = std::move(parts);
  return f;
}

size_t formula_slot_count(const FormulaPtr& f) { return f ? f->slot_count() : 0; }

PropertyOracle combine(const FormulaPtr& formula, std::vector<PropertyOracle> slots) {
  if (!formula) fail(Err::invalid_argument, "combine: null formula");
  if (formula->slot_count() > slots.size())
    fail(Err::domain, "combine: formula references slot " +
                          std::to_string(formula->slot_count() - 1) + " but only " +
                          std::to_string(slots.size()) + " oracles given");
  if (slots.size() > 64) fail(Err::domain, "combine: at most 64 slots supported");
  std::string name = "combine(";
  for (size_t i = 0; i < slots.size(); ++i) {
    if (i) name += ",";
    name += slots[i].name();
  }
  name += ")";
  auto shared = std::make_shared<std::vector<PropertyOracle>>(std::move(slots));
  return PropertyOracle(
      std::move(name),
      [formula, shared](const ColoredGraph& g) {
        bool buf[64];
        size_t n = std::min<size_t>(shared->size(), 64);
        for (size_t i = 0; i < n; ++i) buf[i] = (*shared)[i](g);
        return formula->eval(std::span<const bool>(buf, n));
      },
      [formula, shared](const TinyGraph& g) {
        bool buf[64];
        size_t n = std::min<size_t>(shared->size(), 64);
        for (size_t i = 0; i < n; ++i) buf[i] = (*shared)[i].eval_tiny(g);
        return formula->eval(std::span<const bool>(buf, n));
      });
}

// ---------------------------------------------------------------------
// Property expressions.

namespace {

struct ExprParser {
  std::string_view text;
  size_t pos = 0;
  const Conventions& conv;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  [[noreturn]] void err(const std::string& message) {
    fail(Err::parse, "property expression '" + std::string(text) + "' at offset " +
                         std::to_string(pos) + ": " + message);
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) err("expected a property name");
    return std::string(text.substr(start, pos - start));
  }

  PropertyOracle parse() {
    PropertyOracle p = expr();
    skip_ws();
    if (pos != text.size()) err("trailing input");
    return p;
  }

  PropertyOracle expr() {
    std::string head = ident();
    skip_ws();
    if (head == "and" || head == "or" || head == "not") {
      if (pos >= text.size() || text[pos] != '(') err("expected '(' after '" + head + "'");
      ++pos;
      std::vector<PropertyOracle> args;
      for (;;) {
        args.push_back(expr());
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        err("expected ',' or ')'");
      }
      if (head == "not") {
        if (args.size() != 1) err("not() takes exactly one argument");
        return combine(f_not(f_slot(0)), std::move(args));
      }
      std::vector<FormulaPtr> slots;
      for (size_t i = 0; i < args.size(); ++i) slots.push_back(f_slot(i));
      FormulaPtr f = head == "and" ? f_and(std::move(slots)) : f_or(std::move(slots));
      return combine(f, std::move(args));
    }
    if (head == "connected") return connected_oracle(conv);
    if (head == "bipartite") return bipartite_oracle();
    if (head == "empty") return empty_oracle();
    if (head == "true") return const_oracle(true);
    if (head == "false") return const_oracle(false);
    if (head == "conn_of_order") {
      if (pos >= text.size() || text[pos] != ':') err("expected ':' after conn_of_order");
      ++pos;
      size_t start = pos;
      int depth = 0;
      while (pos < text.size()) {
        char c = text[pos];
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (depth == 0 && (c == ',' || c == ')')) break;
        ++pos;
      }
      OrderSetSpec spec = OrderSetSpec::parse(text.substr(start, pos - start));
      return conn_of_order(spec, conv);
    }
    err("unknown property '" + head + "'");
  }
};

}  // namespace

PropertyOracle parse_property(std::string_view expr, const Conventions& conv) {
  ExprParser parser{expr, 0, conv};
  return parser.parse();
}

PolyResult poly_eval(const ColoredGraph& g, const PropertyOracle& prop, double x,
                     const Conventions& conv) {
  if (g.n > 20)
    fail(Err::bound, "poly_eval: graph has " + std::to_string(g.n) + " vertices, bound is 20");
  PolyResult res;
  res.coeffs.assign(g.n + 1, 0);
  uint32_t subsets = 1u << g.n;
  std::vector<uint32_t> verts;
  for (uint32_t mask = 0; mask < subsets; ++mask) {
    if (conv.proper_subsets && g.n > 0 && mask == subsets - 1) continue;
    verts.clear();
    for (uint32_t v = 0; v < g.n; ++v)
      if ((mask >> v) & 1u) verts.push_back(v + 1);
    if (prop(induced_subgraph(g, verts))) ++res.coeffs[verts.size()];
  }
  double value = 0.0;
  for (size_t s = 0; s < res.coeffs.size(); ++s)
    value += static_cast<double>(res.coeffs[s]) * std::pow(x, static_cast<double>(s));
  res.value = value;
  return res;
}

}  // namespace hc
