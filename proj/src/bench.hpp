#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "automaton.hpp"

namespace hc {

struct BenchRow {
  size_t tree_size = 0;
  double eval_median_seconds = 0.0;
  double baseline_seconds = 0.0;
  bool baseline_skipped = false;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::string csv() const;
};

// Evaluation timing on seeded random trees of 10^3..10^6 nodes: median of
// `runs` timed evaluations per size, plus one naive-baseline measurement
// (decode + direct property) where the decode budget permits; otherwise
// the baseline is marked skipped.
BenchResult run_bench(const Automaton& aut, uint64_t seed, int runs = 5);

}  // namespace hc
