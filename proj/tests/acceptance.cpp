// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bcevs/cover.hpp"
#include "bcevs/exact_solver.hpp"
#include "bcevs/generators.hpp"
#include "bcevs/kernel.hpp"
#include "bcevs/oracle.hpp"
#include "bcevs/tree_solver.hpp"
#include "oracles.hpp"

using namespace bcevs;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Every optimum computed anywhere below goes through here so the last two
// criteria see all of them.
struct Tally {
  std::size_t bound_checked = 0, bound_bad = 0;
  std::size_t order_checked = 0, order_bad = 0;
  std::string first_bound_bad, first_order_bad;

  void optimum(const BipartiteGraph& g, std::size_t value, const char* what) {
    ++bound_checked;
    const auto lb = geodesic_packing_bound(g);
    if (lb > value && bound_bad++ == 0)
      first_bound_bad = std::string(what) + ": bound " + std::to_string(lb) + " > " + std::to_string(value);
  }
  void pair(std::size_t two_sided, std::size_t one_sided, const char* what) {
    ++order_checked;
    if (two_sided > one_sided && order_bad++ == 0)
      first_order_bad = std::string(what) + ": " + std::to_string(two_sided) + " > " + std::to_string(one_sided);
  }
};

Tally tally;
int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::optional<std::size_t> bcevs_value(const BipartiteGraph& g, const ExactOptions& o = {}) {
  const auto out = solve_bcevs(g, o);
  if (!out.solved() || !validate_solution(g, out.get().witness, Mode::bcevs()) ||
      out.get().witness.size() != out.get().value)
    return std::nullopt;
  tally.optimum(g, out.get().value, "bcevs");
  return out.get().value;
}

std::optional<std::size_t> bceovs_value(const BipartiteGraph& g, Side side = Side::B) {
  ExactOptions o;
  o.split_side = side;
  const auto out = solve_bceovs(g, o);
  if (!out.solved() || !validate_solution(g, out.get().witness, Mode::bceovs(side)) ||
      out.get().witness.size() != out.get().value)
    return std::nullopt;
  tally.optimum(g, out.get().value, "bceovs");
  return out.get().value;
}

std::optional<std::size_t> oracle_value(const BipartiteGraph& g, const Mode& mode) {
  const auto out = oracle_search(g, std::nullopt, mode);
  if (!out.solved() || !validate_solution(g, out.get().witness, mode)) return std::nullopt;
  tally.optimum(g, out.get().value, "oracle");
  return out.get().value;
}

std::string show(std::optional<std::size_t> v) { return v ? std::to_string(*v) : "none"; }

void criterion_1() {
  std::ostringstream d;
  bool pass = true;

  const auto c6 = cycle_graph(6);
  const auto v6 = bcevs_value(c6);
  const auto o6 = oracle_value(c6, Mode::bcevs());
  pass &= v6 == 2u && o6 == 2u;
  d << "C6=" << show(v6) << " oracle=" << show(o6);

  const auto c12 = cycle_graph(12);
  auto t0 = Clock::now();
  const auto v12 = bcevs_value(c12);
  const auto s12 = seconds_since(t0);
  pass &= v12 == 4u && s12 < 60;
  d << "; C12=" << show(v12) << " in " << s12 << "s";

  // Larger inputs need a budget. The deepening stops at the first feasible
  // cost, so a value of 6 under budget 6 is the optimum.
  const auto c18 = cycle_graph(18);
  ExactOptions six;
  six.budget = 6;
  t0 = Clock::now();
  const auto v18 = bcevs_value(c18, six);
  const auto s18 = seconds_since(t0);
  pass &= v18 == 6u && s18 < 60;
  d << "; C18=" << show(v18) << " in " << s18 << "s";
  six.budget = 5;
  const bool five_fails = solve_bcevs(c18, six).status == SolveStatus::ExceedsBudget;
  pass &= five_fails;
  d << " (budget 5 " << (five_fails ? "infeasible" : "FEASIBLE") << ")";

  for (const auto* g : {&c6, &c12, &c18}) {
    const auto one = bceovs_value(*g);
    const auto two = g == &c18 ? v18 : g == &c12 ? v12 : v6;
    if (one && two) tally.pair(*two, *one, "cycle");
  }
  report(1, pass, d.str());
}

void criterion_2() {
  const auto f = figure1_graph();
  const auto two = bcevs_value(f);
  const auto one_b = bceovs_value(f, Side::B);
  const auto one_a = bceovs_value(f, Side::A);
  if (two && one_b) tally.pair(*two, *one_b, "figure1");
  if (two && one_a) tally.pair(*two, *one_a, "figure1");
  report(2, two == 2u && one_b == 3u && one_a == 3u,
         "bcevs=" + show(two) + " bceovs(B)=" + show(one_b) + " bceovs(A)=" + show(one_a));
}

void criterion_3() {
  std::size_t ok = 0;
  std::string first_bad;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t m = 1 + (seed - 1) % 5;
    const std::size_t vars = std::min<std::size_t>(3 * m, 3 + seed % 5);
    const auto f = random_cnf(vars, m, seed * 101);
    const auto& g = sat_to_instance(f).instance.graph;
    std::size_t maxdeg = 0;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) maxdeg = std::max(maxdeg, g.degree(g.ref(v)));
    const bool good = g.vertex_count() == 19 * m && !oracle::has_odd_cycle(g) && maxdeg == 3;
    if (good) ++ok;
    else if (first_bad.empty())
      first_bad = " first failure: m=" + std::to_string(m) + " n=" + std::to_string(g.vertex_count()) +
                  " maxdeg=" + std::to_string(maxdeg);
  }
  report(3, ok == 20, std::to_string(ok) + "/20 formulas with 19m vertices, bipartite, max degree 3" + first_bad);
}

void criterion_4() {
  std::size_t ok = 0;
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 1 + t % 5;
    std::vector<bool> assignment(3 + rng() % std::min<std::size_t>(5, 3 * m - 2));
    for (std::size_t i = 0; i < assignment.size(); ++i) assignment[i] = rng() % 2;
    const auto f = random_satisfiable_cnf(assignment, m, rng());
    const auto s = sat_to_instance(f);
    const auto seq = assignment_to_sequence(s.map, assignment);
    const auto& g = s.instance.graph;
    if (f.satisfied_by(assignment) && seq.size() == 8 * m && validate_solution(g, seq, Mode::bcevs()) &&
        validate_solution(g, seq, Mode::bceovs(Side::B)))
      ++ok;
  }
  report(4, ok == 20, std::to_string(ok) + "/20 witnesses of length 8m valid in both modes");
}

std::vector<BipartiteGraph> small_instances() {
  std::vector<BipartiteGraph> out;
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b)
      for (std::uint32_t mask = 0; mask < (1u << (a * b)); ++mask) out.push_back(oracle::graph_from_mask(a, b, mask));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 7;  // 2..8
    const std::size_t a = 1 + rng() % (n - 1);
    const double density = 0.25 + 0.5 * static_cast<double>(rng() % 1000) / 1000.0;
    out.push_back(random_bipartite(a, n - a, density, rng()));
  }
  return out;
}

void criteria_5_and_6() {
  const auto instances = small_instances();
  std::size_t ok5 = 0, ok6 = 0;
  std::string bad5, bad6;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& g = instances[i];

    const auto one = solve_bceovs(g);
    const auto ref1 = oracle_value(g, Mode::bceovs(Side::B));
    bool good = one.solved() && ref1 && one.get().value == *ref1 &&
                validate_solution(g, one.get().witness, Mode::bceovs(Side::B)) && one.get().witness_cover &&
                cover_cost(g, APartitioningCover{*one.get().witness_cover}).total == *ref1;
    if (good) {
      ++ok5;
      tally.optimum(g, one.get().value, "bceovs");
    } else if (bad5.empty()) {
      bad5 = " first failure: instance " + std::to_string(i);
    }

    const auto two = solve_bcevs(g);
    const auto ref2 = oracle_value(g, Mode::bcevs());
    good = two.solved() && ref2 && two.get().value == *ref2 &&
           validate_solution(g, two.get().witness, Mode::bcevs()) && two.get().witness_cover &&
           bicover_cost(g, BiclusterCover{*two.get().witness_cover}) == *ref2;
    if (good) {
      ++ok6;
      tally.optimum(g, two.get().value, "bcevs");
    } else if (bad6.empty()) {
      bad6 = " first failure: instance " + std::to_string(i);
    }
    if (one.solved() && two.solved()) tally.pair(two.get().value, one.get().value, "small");
  }
  const auto total = std::to_string(instances.size());
  report(5, ok5 == instances.size(), std::to_string(ok5) + "/" + total + " cover optimum = one-sided oracle" + bad5);
  report(6, ok6 == instances.size(), std::to_string(ok6) + "/" + total + " bicover optimum = two-sided oracle" + bad6);
}

void criterion_7() {
  std::vector<BipartiteGraph> trees;
  for (std::size_t n = 1; n <= 9; ++n)
    for (auto& t : all_free_trees(n)) trees.push_back(std::move(t));
  const auto free_count = trees.size();
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) trees.push_back(random_tree(2 + rng() % 13, rng()));

  const auto t0 = Clock::now();
  std::size_t ok = 0;
  std::string bad;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const auto& t = trees[i];
    const auto r = solve_tree(t);
    tally.optimum(t, r.value, "tree");
    const auto two = oracle_value(t, Mode::bcevs());
    const auto one = oracle_value(t, Mode::bceovs(Side::A));
    if (two && one) tally.pair(*two, *one, "tree");
    if (two == r.value && one == r.value && is_deletion_only(r.witness) && r.witness.size() == r.value &&
        validate_solution(t, r.witness, Mode::bceovs(Side::A)))
      ++ok;
    else if (bad.empty())
      bad = " first failure: tree " + std::to_string(i) + " dp=" + std::to_string(r.value) + " oracle=" + show(two) +
            "/" + show(one);
  }
  const auto secs = seconds_since(t0);
  std::ostringstream d;
  d << ok << "/" << trees.size() << " trees (" << free_count << " free, 100 random) agree, " << secs << "s" << bad;
  report(7, ok == trees.size() && secs < 600, d.str());
}

BipartiteGraph kernel_instance(std::mt19937_64& rng, int t) {
  switch (t % 4) {
    case 0: {
      const std::size_t n = 2 + rng() % 11;
      const std::size_t a = 1 + rng() % (n - 1);
      return random_bipartite(a, n - a, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0, rng());
    }
    case 1: {
      // planted bicliques give twin classes and biclique components
      std::vector<std::size_t> ap, bp;
      std::size_t n = 0;
      while (n < 8) {
        ap.push_back(1 + rng() % 3);
        bp.push_back(1 + rng() % 3);
        n += ap.back() + bp.back();
      }
      if (n > 12) {
        ap.pop_back();
        bp.pop_back();
      }
      return random_planted(ap, bp, rng() % 3, rng() % 3, rng()).graph;
    }
    case 2:
      return random_tree(4 + rng() % 9, rng());
    default:
      return path_graph(4 + rng() % 9);
  }
}

void criterion_8() {
  std::mt19937_64 rng(8);
  std::size_t ok = 0, reduced = 0, trivial_yes = 0, trivial_no = 0;
  std::string bad;
  auto decide = [](const BipartiteGraph& g, std::size_t k) -> std::optional<bool> {
    ExactOptions o;
    o.budget = k;
    const auto out = solve_bceovs(g, o);
    if (out.status == SolveStatus::Refused) return std::nullopt;
    return out.solved();
  };
  for (int t = 0; t < 200; ++t) {
    const auto g = kernel_instance(rng, t);
    const std::size_t k = rng() % 4;
    const auto out = kernelize({g, k, Mode::bceovs(Side::B)});
    std::optional<bool> reduced_answer;
    bool bounded = true;
    switch (out.kind) {
      case KernelOutcome::Kind::TrivialYes: reduced_answer = true, ++trivial_yes; break;
      case KernelOutcome::Kind::TrivialNo: reduced_answer = false, ++trivial_no; break;
      case KernelOutcome::Kind::Reduced:
        ++reduced;
        reduced_answer = decide(out.instance.graph, k);
        for (const auto& comp : connected_components(out.instance.graph))
          bounded &= comp.size() <= kernel_component_bound(k);
        break;
    }
    const auto original = decide(g, k);
    if (original && reduced_answer && *original == *reduced_answer && bounded) ++ok;
    else if (bad.empty())
      bad = " first failure: instance " + std::to_string(t);
  }
  std::ostringstream d;
  d << ok << "/200 answers preserved and components bounded (" << reduced << " reduced, " << trivial_yes
    << " trivial-yes, " << trivial_no << " trivial-no)" << bad;
  report(8, ok == 200, d.str());
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criteria_5_and_6();
  criterion_7();
  criterion_8();
  report(9, tally.bound_checked > 0 && tally.bound_bad == 0,
         std::to_string(tally.bound_checked - tally.bound_bad) + "/" + std::to_string(tally.bound_checked) +
             " optima at or above the packing bound" +
             (tally.first_bound_bad.empty() ? "" : " first failure: " + tally.first_bound_bad));
  report(10, tally.order_checked > 0 && tally.order_bad == 0,
         std::to_string(tally.order_checked - tally.order_bad) + "/" + std::to_string(tally.order_checked) +
             " instances with bcevs <= bceovs" +
             (tally.first_order_bad.empty() ? "" : " first failure: " + tally.first_order_bad));
  std::printf("total %.1fs, %d failing\n", seconds_since(t0), failures);
  return failures == 0 ? 0 : 1;
}
