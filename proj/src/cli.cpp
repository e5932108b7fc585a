#include "ccsg/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ccsg/graph.hpp"
#include "ccsg/verify.hpp"

namespace ccsg {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadParameter("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadParameter("cannot write " + path);
  out << text;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const BadParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

void RunConfig::validate() const {
  if (coclass < 0) throw BadParameter("--coclass must be >= 0");
  if (generators < 1) throw BadParameter("--generators must be >= 1");
  if (max_order < 1) throw BadParameter("--max-order must be >= 1");
  PrimeField check(static_cast<unsigned>(prime));  // throws if not prime
  (void)check;
}

int cmd_census(const RunConfig& cfg) {
  return guarded([&] {
    cfg.validate();
    Timer timer;
    Census census;
    census.coclass = cfg.coclass;
    census.generators = cfg.generators;
    census.max_order = cfg.max_order;
    census.by_order.resize(cfg.max_order + 1);
    if (cfg.generators <= cfg.coclass + 1) {
      census = build_census(cfg.coclass, cfg.generators, cfg.max_order,
                            cfg.workers);
    }
    // generator counts above coclass+1 match no semigroup: empty census
    std::string text = census_to_jsonl(census);
    if (cfg.out_path.empty()) {
      std::cout << text;
    } else {
      write_file(cfg.out_path, text);
    }
    std::size_t total = 0;
    for (const auto& bucket : census.by_order) total += bucket.size();
    std::cerr << "census: " << total << " tables up to order " << cfg.max_order
              << " in " << timer.seconds() << "s\n";
    return 0;
  });
}

int cmd_graph(const RunConfig& cfg) {
  return guarded([&] {
    cfg.validate();
    Timer timer;
    CoclassGraph g = build_graph(cfg.coclass, cfg.prime, cfg.generators,
                                 cfg.max_order, cfg.workers);
    std::string text = export_json(g);
    if (cfg.out_path.empty()) {
      std::cout << text;
    } else {
      write_file(cfg.out_path, text);
    }
    if (!cfg.dot_path.empty()) write_file(cfg.dot_path, export_dot(g));
    std::cerr << "graph: " << g.vertices.size() << " vertices in "
              << timer.seconds() << "s\n";
    return 0;
  });
}

int cmd_analyze(const RunConfig& cfg) {
  return guarded([&] {
    if (cfg.graph_path.empty()) throw BadParameter("--graph is required");
    CoclassGraph g = parse_graph_json(read_file(cfg.graph_path));
    int horizon = cfg.horizon >= 0 ? cfg.horizon : g.max_dim();
    std::vector<PeriodicityReport> reports;
    for (int root : maximal_coclass_trees(g, horizon)) {
      try {
        reports.push_back(detect_periodicity(g, root, cfg.max_defect,
                                             cfg.max_period, cfg.degree_bound,
                                             horizon));
      } catch (const NoPeriodFound& e) {
        PeriodicityReport miss;
        miss.tree_root = root;
        miss.horizon = horizon;
        miss.strong = false;
        miss.unresolved.push_back(root);
        reports.push_back(miss);
        std::cerr << "tree " << root << ": " << e.what() << "\n";
      }
    }
    std::string text = export_reports_json(g.params, reports);
    if (cfg.out_path.empty()) {
      std::cout << text;
    } else {
      write_file(cfg.out_path, text);
    }
    std::cerr << "analyze: " << reports.size() << " coclass trees\n";
    return 0;
  });
}

int cmd_verify(const RunConfig& cfg) {
  try {
    cfg.validate();
  } catch (const BadParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    bool ok = run_acceptance(std::cout, cfg.workers);
    return ok ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_export(const RunConfig& cfg) {
  return guarded([&] {
    if (cfg.graph_path.empty()) throw BadParameter("--graph is required");
    CoclassGraph g = parse_graph_json(read_file(cfg.graph_path));
    std::string text = export_dot(g);
    if (cfg.out_path.empty()) {
      std::cout << text;
    } else {
      write_file(cfg.out_path, text);
    }
    return 0;
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"census, coclass graphs and periodicity analysis for finite "
               "nilpotent semigroups over prime fields"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--workers", cfg.workers,
                    "worker threads (0 = hardware)");
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
  };

  auto* census = app.add_subcommand("census", "enumerate semigroups");
  census->add_option("--coclass", cfg.coclass, "coclass r")->required();
  census->add_option("--generators", cfg.generators, "generator count d")
      ->required();
  census->add_option("--max-order", cfg.max_order, "largest order")->required();
  add_common(census);

  auto* graph = app.add_subcommand("graph", "build a coclass graph");
  graph->add_option("--coclass", cfg.coclass, "coclass r")->required();
  graph->add_option("--prime", cfg.prime, "field characteristic p")->required();
  graph->add_option("--generators", cfg.generators, "generator count d")
      ->required();
  graph->add_option("--max-order", cfg.max_order, "largest order")->required();
  graph->add_option("--dot", cfg.dot_path, "also write a DOT rendering");
  add_common(graph);

  auto* analyze = app.add_subcommand("analyze", "periodicity reports");
  analyze->add_option("--graph", cfg.graph_path, "graph JSON file")->required();
  analyze->add_option("--horizon", cfg.horizon, "alive horizon (default max)");
  analyze->add_option("--max-defect", cfg.max_defect, "defect bound");
  analyze->add_option("--max-period", cfg.max_period, "period bound");
  analyze->add_option("--degree-bound", cfg.degree_bound,
                      "polynomial degree bound");
  add_common(analyze);

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");

  auto* exp = app.add_subcommand("export", "re-render a graph as DOT");
  exp->add_option("--graph", cfg.graph_path, "graph JSON file")->required();
  exp->add_option("--out", cfg.out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (census->parsed()) return cmd_census(cfg);
  if (graph->parsed()) return cmd_graph(cfg);
  if (analyze->parsed()) return cmd_analyze(cfg);
  if (verify->parsed()) return cmd_verify(cfg);
  if (exp->parsed()) return cmd_export(cfg);
  return 1;
}

}  // namespace ccsg
