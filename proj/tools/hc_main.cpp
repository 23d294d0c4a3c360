// Command-line frontend. Links only the shared C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hc.h"

namespace {

struct Options {
  std::string system;
  std::string prop = "connected";
  std::string out;
  std::string tree;
  std::string automaton;
  int n = 4;
  int depth = 2;
  uint64_t seed = 0;
  int workers = 1;
  int empty_connected = 1;
  bool proper_subsets = false;
};

int fail_domain(const std::string& where) {
  std::cerr << "hc: " << where << ": " << hc_last_error_message() << "\n";
  return 1;
}

int write_output(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) {
    std::cerr << "hc: cannot write '" << opt.out << "'\n";
    return 1;
  }
  file << text;
  return file ? 0 : 1;
}

// RAII wrappers around the C handles.
template <typename T, void (*Free)(T*)>
using handle = std::unique_ptr<T, decltype([](T* p) { Free(p); })>;
using graph_ptr = handle<hc_graph, hc_graph_free>;
using system_ptr = handle<hc_system, hc_system_free>;
using property_ptr = handle<hc_property, hc_property_free>;
using pool_ptr = handle<hc_pool, hc_pool_free>;
using matrix_ptr = handle<hc_matrix, hc_matrix_free>;
using circuit_ptr = handle<hc_circuit, hc_circuit_free>;
using automaton_ptr = handle<hc_automaton, hc_automaton_free>;

struct string_ptr {
  char* s = nullptr;
  ~string_ptr() { hc_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

system_ptr open_system(const Options& opt, int& rc) {
  hc_system* sys = nullptr;
  if (hc_system_open(opt.system.c_str(), &sys) != HC_OK) {
    rc = fail_domain("system '" + opt.system + "'");
    return system_ptr{};
  }
  rc = 0;
  return system_ptr{sys};
}

property_ptr open_property(const Options& opt, int& rc) {
  hc_property* prop = nullptr;
  if (hc_property_parse(opt.prop.c_str(), opt.empty_connected, opt.proper_subsets ? 1 : 0,
                        &prop) != HC_OK) {
    rc = fail_domain("property '" + opt.prop + "'");
    return property_ptr{};
  }
  rc = 0;
  return property_ptr{prop};
}

int cmd_rank(const Options& opt) {
  int rc = 0;
  system_ptr sys = open_system(opt, rc);
  if (!sys) return rc;
  property_ptr prop = open_property(opt, rc);
  if (!prop) return rc;
  string_ptr text;
  if (hc_saturation_profile(sys.get(), prop.get(), opt.n, opt.depth, opt.workers, &text.s) !=
      HC_OK)
    return fail_domain("rank");
  return write_output(opt, text.str());
}

int cmd_matrix(const Options& opt) {
  int rc = 0;
  system_ptr sys = open_system(opt, rc);
  if (!sys) return rc;
  property_ptr prop = open_property(opt, rc);
  if (!prop) return rc;
  uint32_t colors = 0;
  hc_system_info(sys.get(), nullptr, &colors, nullptr, nullptr);
  hc_pool* pool_raw = nullptr;
  if (hc_pool_build(static_cast<uint32_t>(opt.n), colors, &pool_raw) != HC_OK)
    return fail_domain("pool");
  pool_ptr pool{pool_raw};
  hc_matrix* m_raw = nullptr;
  if (hc_circuit_matrix_build(sys.get(), prop.get(), pool.get(), opt.depth, opt.workers,
                              &m_raw) != HC_OK)
    return fail_domain("matrix");
  matrix_ptr m{m_raw};
  string_ptr text;
  if (hc_matrix_dump(m.get(), &text.s) != HC_OK) return fail_domain("matrix dump");
  return write_output(opt, text.str());
}

int cmd_compile(const Options& opt) {
  int rc = 0;
  system_ptr sys = open_system(opt, rc);
  if (!sys) return rc;
  property_ptr prop = open_property(opt, rc);
  if (!prop) return rc;
  hc_automaton* aut_raw = nullptr;
  if (hc_compile(sys.get(), prop.get(), opt.n, opt.depth, opt.workers, opt.empty_connected,
                 opt.proper_subsets ? 1 : 0, &aut_raw) != HC_OK)
    return fail_domain("compile");
  automaton_ptr aut{aut_raw};
  if (!opt.out.empty() && hc_automaton_save(aut.get(), opt.out.c_str()) != HC_OK)
    return fail_domain("save");
  size_t classes = 0;
  int rank = 0, pool_bound = 0, depth = 0;
  hc_automaton_info(aut.get(), &classes, &rank, &pool_bound, &depth);
  std::cout << "classes " << classes << " rank " << rank << " pool " << pool_bound << " depth "
            << depth << "\n";
  return 0;
}

int cmd_eval(const Options& opt) {
  hc_automaton* aut_raw = nullptr;
  if (hc_automaton_load(opt.automaton.c_str(), &aut_raw) != HC_OK)
    return fail_domain("automaton '" + opt.automaton + "'");
  automaton_ptr aut{aut_raw};
  std::ifstream file(opt.tree, std::ios::binary);
  if (!file) {
    std::cerr << "hc: cannot open tree file '" << opt.tree << "'\n";
    return 1;
  }
  std::stringstream buf;
  buf << file.rdbuf();
  std::string text = buf.str();
  hc_circuit* tree_raw = nullptr;
  if (hc_circuit_parse(text.c_str(), &tree_raw) != HC_OK)
    return fail_domain("tree '" + opt.tree + "'");
  circuit_ptr tree{tree_raw};
  int accept = 0;
  uint64_t nodes = 0;
  if (hc_evaluate(aut.get(), tree.get(), &accept, &nodes) != HC_OK) return fail_domain("eval");
  std::ostringstream out;
  out << "accept " << accept << "\n";
  return write_output(opt, out.str());
}

int cmd_gen(const Options& opt) {
  int rc = 0;
  system_ptr sys = open_system(opt, rc);
  if (!sys) return rc;
  hc_circuit* tree_raw = nullptr;
  if (hc_gen_tree(sys.get(), static_cast<uint64_t>(opt.n), opt.seed, &tree_raw) != HC_OK)
    return fail_domain("gen");
  circuit_ptr tree{tree_raw};
  string_ptr text;
  if (hc_circuit_render(tree.get(), &text.s) != HC_OK) return fail_domain("render");
  return write_output(opt, text.str() + "\n");
}

int cmd_bench(const Options& opt) {
  hc_automaton* aut_raw = nullptr;
  if (hc_automaton_load(opt.automaton.c_str(), &aut_raw) != HC_OK)
    return fail_domain("automaton '" + opt.automaton + "'");
  automaton_ptr aut{aut_raw};
  string_ptr csv;
  if (hc_bench(aut.get(), opt.seed, 5, &csv.s) != HC_OK) return fail_domain("bench");
  return write_output(opt, csv.str());
}

int cmd_selftest(const Options& opt) {
  string_ptr report;
  int ok = 0;
  if (hc_selftest(opt.seed, opt.workers, opt.empty_connected, opt.proper_subsets ? 1 : 0,
                  &report.s, &ok) != HC_OK)
    return fail_domain("selftest");
  int rc = write_output(opt, report.str());
  if (rc != 0) return rc;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hc — rank experiments on graph properties and compiled tree automata"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool with_system) {
    if (with_system)
      cmd->add_option("--system", opt.system, "system file path or builtin (tw<k>, cw<k>, mw<k>, union)")
          ->required();
    cmd->add_option("--prop", opt.prop, "property expression");
    cmd->add_option("--n", opt.n, "pool vertex bound (tree size for gen)");
    cmd->add_option("--depth", opt.depth, "context nesting depth");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--workers", opt.workers, "worker threads");
    cmd->add_option("--out", opt.out, "output file (default stdout)");
    cmd->add_option("--empty-connected", opt.empty_connected,
                    "whether the empty graph counts as connected (0|1)");
    cmd->add_flag("--proper-subsets", opt.proper_subsets,
                  "exclude the full vertex set from the polynomial sum");
  };

  CLI::App* rank = app.add_subcommand("rank", "rank reports for every truncation up to --n/--depth");
  add_common(rank, true);
  CLI::App* matrix = app.add_subcommand("matrix", "dump the circuit matrix as 0/1 rows");
  add_common(matrix, true);
  CLI::App* compile = app.add_subcommand("compile", "compile a property into a tree automaton");
  add_common(compile, true);
  CLI::App* eval = app.add_subcommand("eval", "evaluate a parse tree with a compiled automaton");
  add_common(eval, false);
  eval->add_option("--automaton", opt.automaton, "automaton file")->required();
  eval->add_option("--tree", opt.tree, "parse-tree (.fct) file")->required();
  CLI::App* gen = app.add_subcommand("gen", "generate a seeded random parse tree of --n nodes");
  add_common(gen, true);
  CLI::App* bench = app.add_subcommand("bench", "evaluation timing table (CSV)");
  add_common(bench, false);
  bench->add_option("--automaton", opt.automaton, "automaton file")->required();
  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in rank suite");
  add_common(selftest, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2
  }

  if (rank->parsed()) return cmd_rank(opt);
  if (matrix->parsed()) return cmd_matrix(opt);
  if (compile->parsed()) return cmd_compile(opt);
  if (eval->parsed()) return cmd_eval(opt);
  if (gen->parsed()) return cmd_gen(opt);
  if (bench->parsed()) return cmd_bench(opt);
  if (selftest->parsed()) return cmd_selftest(opt);
  return 2;
}
