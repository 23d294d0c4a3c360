#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graph.hpp"
#include "tiny_graph.hpp"

namespace hc {

// Global conventions consumed by the oracles: whether the empty graph
// counts as connected, and whether the polynomial's subset sum skips the
// full vertex set.
struct Conventions {
  bool empty_connected = true;
  bool proper_subsets = false;
};

bool is_connected(const ColoredGraph& g, bool empty_connected = true);
bool is_bipartite(const ColoredGraph& g);

// Isomorphism-invariant 0/1 graph property. Carries a fast predicate for
// the 32-vertex bitset representation alongside the general one; an
// optional memo layer caches verdicts by certificate for small graphs.
class PropertyOracle {
 public:
  using Pred = std::function<bool(const ColoredGraph&)>;
  using TinyPred = std::function<bool(const TinyGraph&)>;

  PropertyOracle() = default;
  PropertyOracle(std::string name, Pred pred);
  PropertyOracle(std::string name, Pred pred, TinyPred tiny);

  const std::string& name() const { return name_; }
  bool operator()(const ColoredGraph& g) const;
  bool eval_tiny(const TinyGraph& g) const;

  // Read-through cache keyed on certificates; verdicts are idempotent so
  // concurrent fills may race benignly. Only graphs within the
  // canonicalization bound are cached.
  void enable_memo(bool on = true);

 private:
  std::string name_;
  Pred pred_;
  TinyPred tiny_;
  struct Memo {
    std::mutex mutex;
    std::unordered_map<std::string, bool> verdicts;
  };
  std::shared_ptr<Memo> memo_;
};

// Finite description of a set of naturals: membership of n is
// (n in exceptions) XOR (modulus > 0 and n mod modulus in residues).
struct OrderSetSpec {
  std::vector<uint64_t> exceptions;
  uint64_t modulus = 0;
  std::vector<uint64_t> residues;

  bool contains(uint64_t n) const;
  // Syntax: optional {a,b,...} exception set, optional +<m>Z+<r>[+<r>...]
  // periodic tail, e.g. "{3,5}+2Z+0" or "+2Z+1" or "{1,2,3}".
  static OrderSetSpec parse(std::string_view text);
  std::string render() const;
};

PropertyOracle connected_oracle(const Conventions& conv = {});
PropertyOracle bipartite_oracle();
PropertyOracle empty_oracle();
PropertyOracle const_oracle(bool value);
// Connected graphs whose order lies in the given set.
PropertyOracle conn_of_order(const OrderSetSpec& spec, const Conventions& conv = {});

// Boolean formula over m property slots.
class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;
FormulaPtr f_slot(size_t index);
FormulaPtr f_const(bool value);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(std::vector<FormulaPtr> parts);
FormulaPtr f_or(std::vector<FormulaPtr> parts);
size_t formula_slot_count(const FormulaPtr& f);  // 1 + highest slot index, 0 if none

// Verdict = formula evaluated on the slot oracles' verdicts.
PropertyOracle combine(const FormulaPtr& formula, std::vector<PropertyOracle> slots);

// Expression syntax used by the CLI and the automaton files:
//   connected | bipartite | empty | true | false
//   conn_of_order:<spec>
//   and(e1,e2,...) | or(e1,e2,...) | not(e)
PropertyOracle parse_property(std::string_view expr, const Conventions& conv = {});

// Subset-sum graph polynomial: coefficient s counts the vertex subsets of
// size s whose induced subgraph satisfies the property; value is the
// polynomial evaluated at x. proper_subsets drops the full vertex set.
struct PolyResult {
  std::vector<uint64_t> coeffs;
  double value = 0.0;
};
PolyResult poly_eval(const ColoredGraph& g, const PropertyOracle& prop, double x,
                     const Conventions& conv = {});

}  // namespace hc
