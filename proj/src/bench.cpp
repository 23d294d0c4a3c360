#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"

namespace hc {

std::string BenchResult::csv() const {
  std::ostringstream out;
  out << "size,eval_median_seconds,baseline_seconds\n";
  for (const auto& row : rows) {
    out << row.tree_size << "," << row.eval_median_seconds << ",";
    if (row.baseline_skipped)
      out << "skipped";
    else
      out << row.baseline_seconds;
    out << "\n";
  }
  return out.str();
}

namespace {

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

BenchResult run_bench(const Automaton& aut, uint64_t seed, int runs) {
  if (runs < 5) runs = 5;
  BenchResult result;
  PropertyOracle prop = parse_property(aut.property_expr, aut.conventions);

  for (size_t size : {size_t(1000), size_t(10'000), size_t(100'000), size_t(1'000'000)}) {
    // The trees only feed the table-driven evaluator, which never decodes,
    // so their generation is not held to the decode budget.
    Circuit tree = gen_parse_tree(aut.system, size, mix_seed(seed, size), UINT64_MAX / 4);

    BenchRow row;
    row.tree_size = tree_size(tree);

    evaluate_tree(aut, tree);  // warm-up
    // Repeat tiny evaluations so each timed block is long enough to trust.
    size_t reps = std::max<size_t>(1, 200'000 / size);
    std::vector<double> times;
    for (int r = 0; r < runs; ++r) {
      double t0 = now_seconds();
      for (size_t rep = 0; rep < reps; ++rep) evaluate_tree(aut, tree);
      double t1 = now_seconds();
      times.push_back((t1 - t0) / static_cast<double>(reps));
    }
    std::sort(times.begin(), times.end());
    row.eval_median_seconds = times[times.size() / 2];

    try {
      DecodeOptions opts;
      opts.system = &aut.system;
      double t0 = now_seconds();
      ColoredGraph g = decode(tree, opts);
      bool direct = prop(g);
      double t1 = now_seconds();
      (void)direct;
      row.baseline_seconds = t1 - t0;
    } catch (const Error& e) {
      if (e.code() != Err::budget) throw;
      row.baseline_skipped = true;
    }
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace hc
