#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bcevs/cover.hpp"
#include "bcevs/exact_solver.hpp"
#include "bcevs/experiment.hpp"
#include "bcevs/generators.hpp"
#include "bcevs/io.hpp"
#include "bcevs/kernel.hpp"
#include "bcevs/oracle.hpp"
#include "bcevs/tree_solver.hpp"

using namespace bcevs;

namespace {

enum Exit : int { Ok = 0, BadInput = 1, Refused = 2, OverBudget = 3, Invalid = 4 };

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_file(path, text);
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoul(item));
  return out;
}

// Solves every component of a forest with the tree DP and stitches the
// witnesses together.
SolveResult solve_forest(const BipartiteGraph& g) {
  SolveResult total;
  for (const auto& comp : connected_components(g)) {
    const auto [sub, old] = g.induced(comp);
    if (!is_tree(sub)) throw GraphError("input is not a forest");
    auto r = TreeSolver(sub).solve();
    total.value += r.value;
    total.stats.nodes += r.stats.nodes;
    total.stats.time_ms += r.stats.time_ms;
    for (const auto& op : r.witness) {
      const auto& d = std::get<EdgeDelete>(op);
      total.witness.push_back(EdgeDelete{g.flat(old[d.a]), g.flat(old[d.b])});
    }
  }
  return total;
}

struct SolveArgs {
  std::string input, output, mode = "bcevs", side = "B", solver = "exact";
  std::optional<std::size_t> k;
  bool pruning = false, exclusive = false;
};

int cmd_solve(const SolveArgs& a) {
  const auto file = read_bcg(read_file(a.input));
  const auto& g = file.graph;
  const Mode mode = parse_mode(a.mode, a.side);
  const auto k = a.k ? a.k : file.k;

  SolveOutcome out;
  if (a.solver == "tree") {
    out.status = SolveStatus::Solved;
    out.result = solve_forest(g);
    if (k && out.result->value > *k) {
      out.status = SolveStatus::ExceedsBudget;
      out.message = "optimum " + std::to_string(out.result->value) + " exceeds budget " + std::to_string(*k);
    }
  } else if (a.solver == "oracle") {
    OracleOptions o;
    o.packing_prune = a.pruning;
    o.exclusive_splits = a.exclusive;
    out = oracle_search(g, k, mode, o);
  } else if (a.solver == "exact") {
    if (a.pruning || a.exclusive)
      std::cerr << "note: --pruning and --exclusive-splits only affect --solver oracle\n";
    ExactOptions o;
    o.budget = k;
    o.split_side = mode.split_side;
    out = mode.one_sided() ? solve_bceovs(g, o) : solve_bcevs(g, o);
  } else {
    std::cerr << "error: unknown solver '" << a.solver << "'\n";
    return BadInput;
  }

  switch (out.status) {
    case SolveStatus::Refused:
      std::cerr << out.message << '\n';
      return Refused;
    case SolveStatus::ExceedsBudget:
      std::cerr << "budget exceeded: " << out.message << '\n';
      return OverBudget;
    case SolveStatus::Solved:
      break;
  }
  emit(a.output, solution_to_json(g, mode, out.get()).dump(2) + "\n");
  return Ok;
}

struct KernelArgs {
  std::string input, output, report, side = "B";
  std::optional<std::size_t> k;
};

int cmd_kernelize(const KernelArgs& a) {
  const auto file = read_bcg(read_file(a.input));
  const auto k = a.k ? a.k : file.k;
  if (!k) {
    std::cerr << "error: kernelize needs a budget (--k or a 'c k' line)\n";
    return BadInput;
  }
  const auto out = kernelize({file.graph, *k, parse_mode("bceovs", a.side)});
  const auto report = kernel_report_to_json(out).dump(2) + "\n";
  if (!a.output.empty()) write_file(a.output, write_bcg(out.instance.graph, *k, {"kernel " + to_string(out.kind)}));
  if (a.report.empty()) std::cout << report;
  else write_file(a.report, report);
  return Ok;
}

struct GenerateArgs {
  std::string kind, output, map, truth, cnf;
  std::vector<std::string> args;
  std::string a_parts = "2,2", b_parts = "2,2";
  std::size_t splits = 1, noise = 0;
  double density = 0.5;
  std::uint64_t seed = 1;
};

int cmd_generate(const GenerateArgs& a) {
  std::vector<std::size_t> sizes;
  auto need = [&](std::size_t count) {
    if (a.args.size() != count)
      throw std::invalid_argument("generate " + a.kind + " takes " + std::to_string(count) + " size argument(s)");
    for (const auto& text : a.args) {
      std::size_t used = 0;
      const auto v = std::stoul(text, &used);
      if (used != text.size()) throw std::invalid_argument("size '" + text + "' is not a number");
      sizes.push_back(v);
    }
  };
  if (a.kind == "sat") {
    auto cnf = a.cnf;
    if (cnf.empty() && a.args.size() == 1) cnf = a.args[0];
    if (cnf.empty() || a.args.size() > 1) throw std::invalid_argument("generate sat takes one CNF file");
    const auto inst = sat_to_instance(parse_dimacs_cnf(read_file(cnf)));
    emit(a.output, write_bcg(inst.instance.graph, inst.instance.k));
    if (!a.map.empty()) write_file(a.map, reduction_map_to_json(inst.map).dump(2) + "\n");
    return Ok;
  }
  BipartiteGraph g;
  if (a.kind == "cycle") need(1), g = cycle_graph(sizes[0]);
  else if (a.kind == "path") need(1), g = path_graph(sizes[0]);
  else if (a.kind == "star") need(1), g = star_graph(sizes[0]);
  else if (a.kind == "biclique") need(2), g = biclique_graph(sizes[0], sizes[1]);
  else if (a.kind == "figure1") need(0), g = figure1_graph();
  else if (a.kind == "tree") need(1), g = random_tree(sizes[0], a.seed);
  else if (a.kind == "random") need(2), g = random_bipartite(sizes[0], sizes[1], a.density, a.seed);
  else if (a.kind == "planted") {
    need(0);
    const auto p = random_planted(parse_sizes(a.a_parts), parse_sizes(a.b_parts), a.splits, a.noise, a.seed);
    g = p.graph;
    if (!a.truth.empty()) write_file(a.truth, cover_to_json(p.truth.sets).dump(2) + "\n");
  } else {
    std::cerr << "error: unknown kind '" << a.kind << "'\n";
    return BadInput;
  }
  emit(a.output, write_bcg(g));
  return Ok;
}

struct VerifyArgs {
  std::string graph, solution, mode, side;
  bool exclusive = false;
};

int cmd_verify(const VerifyArgs& a) {
  const auto g = read_bcg(read_file(a.graph)).graph;
  const auto sol = solution_from_json(g, nlohmann::json::parse(read_file(a.solution)));
  std::optional<Mode> mode = sol.mode;
  if (!a.mode.empty()) mode = parse_mode(a.mode, a.side.empty() ? "B" : a.side);
  else if (mode && !a.side.empty()) mode = parse_mode("bceovs", a.side);
  if (!mode) {
    std::cerr << "error: no mode given and none recorded in the solution\n";
    return BadInput;
  }
  const auto v = validate_solution(g, sol.operations, *mode, {a.exclusive});
  if (!v.ok) {
    std::cout << "invalid";
    if (v.failing_index) std::cout << " at operation " << *v.failing_index;
    std::cout << ": " << v.reason << " (" << v.message << ")\n";
    return Invalid;
  }
  if (sol.value && *sol.value != sol.operations.size()) {
    std::cout << "invalid: value-mismatch (value " << *sol.value << " but " << sol.operations.size()
              << " operations)\n";
    return Invalid;
  }
  std::cout << "valid: " << sol.operations.size() << " operations, " << to_string(*mode) << '\n';
  return Ok;
}

struct ExperimentArgs {
  ExperimentConfig config;
  std::string mode = "bcevs", side = "B", output;
};

int cmd_experiment(ExperimentArgs a) {
  a.config.mode = parse_mode(a.mode, a.side);
  emit(a.output, run_experiment(a.config));
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bicluster editing with vertex splitting: exact solvers, kernel and generators"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Compute an optimal operation sequence");
  s->add_option("graph", solve.input, "Graph file (bcg)")->required();
  s->add_option("--mode", solve.mode, "bcevs or bceovs")->check(CLI::IsMember({"bcevs", "bceovs"}));
  s->add_option("--split-side", solve.side, "Side that may split in bceovs")->check(CLI::IsMember({"A", "B"}));
  s->add_option("--k", solve.k, "Budget");
  s->add_option("--solver", solve.solver, "exact, tree or oracle")
      ->check(CLI::IsMember({"exact", "tree", "oracle"}));
  s->add_flag("--pruning", solve.pruning, "Oracle: prune with the geodesic packing bound");
  s->add_flag("--exclusive-splits", solve.exclusive, "Oracle: split parts may not overlap");
  s->add_option("-o,--output", solve.output, "Solution JSON (default stdout)");

  KernelArgs kern;
  auto* k = app.add_subcommand("kernelize", "Reduce a one-sided instance");
  k->add_option("graph", kern.input, "Graph file (bcg)")->required();
  k->add_option("--k", kern.k, "Budget");
  k->add_option("--split-side", kern.side, "Side that may split")->check(CLI::IsMember({"A", "B"}));
  k->add_option("-o,--output", kern.output, "Reduced graph file");
  k->add_option("--report", kern.report, "Report JSON (default stdout)");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write an instance");
  g->add_option("kind", gen.kind, "sat, cycle, path, star, biclique, figure1, tree, random, planted")
      ->required();
  g->add_option("args", gen.args, "Sizes, or the CNF file for sat");
  g->add_option("--cnf", gen.cnf, "DIMACS CNF input for sat (same as the positional file)");
  g->add_option("--map", gen.map, "sat: write the vertex map JSON here");
  g->add_option("--truth", gen.truth, "planted: write the planted cover JSON here");
  g->add_option("--a-parts", gen.a_parts, "planted: A-sizes of the bicliques, comma separated");
  g->add_option("--b-parts", gen.b_parts, "planted: B-sizes of the bicliques, comma separated");
  g->add_option("--splits", gen.splits, "planted: B-vertices merged into a second biclique");
  g->add_option("--noise", gen.noise, "planted: random edge flips");
  g->add_option("--density", gen.density, "random: edge probability");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("-o,--output", gen.output, "Graph file (default stdout)");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check a solution file");
  v->add_option("graph", ver.graph, "Graph file (bcg)")->required();
  v->add_option("solution", ver.solution, "Solution JSON")->required();
  v->add_option("--mode", ver.mode, "bcevs or bceovs (default: from the solution)")
      ->check(CLI::IsMember({"bcevs", "bceovs"}));
  v->add_option("--split-side", ver.side, "Side that may split in bceovs")->check(CLI::IsMember({"A", "B"}));
  v->add_flag("--exclusive-splits", ver.exclusive, "Reject splits whose parts overlap");

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "Solve a family of instances and print CSV");
  e->add_option("--family", exp.config.family, "cycle, path, tree, trees, planted, random")
      ->check(CLI::IsMember({"cycle", "path", "tree", "trees", "planted", "random"}));
  e->add_option("--from", exp.config.from, "Smallest size");
  e->add_option("--to", exp.config.to, "Largest size");
  e->add_option("--step", exp.config.step, "Size step");
  e->add_option("--count", exp.config.count, "Instances per size for random families");
  e->add_option("--mode", exp.mode, "bcevs or bceovs")->check(CLI::IsMember({"bcevs", "bceovs"}));
  e->add_option("--split-side", exp.side, "Side that may split in bceovs")->check(CLI::IsMember({"A", "B"}));
  e->add_option("--seed", exp.config.seed, "Random seed");
  e->add_flag("--omit-timing", exp.config.omit_timing, "Drop the time column for reproducible output");
  e->add_option("-o,--output", exp.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? Ok : BadInput;
  }

  try {
    if (s->parsed()) return cmd_solve(solve);
    if (k->parsed()) return cmd_kernelize(kern);
    if (g->parsed()) return cmd_generate(gen);
    if (v->parsed()) return cmd_verify(ver);
    if (e->parsed()) return cmd_experiment(exp);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return BadInput;
  }
  return BadInput;
}
