#include <random>

#include "bcevs/cover.hpp"
#include "bcevs/exact_solver.hpp"
#include "bcevs/generators.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bcevs;

namespace {

std::size_t max_degree(const BipartiteGraph& g) {
  std::size_t d = 0;
  for (std::uint32_t f = 0; f < g.vertex_count(); ++f) d = std::max(d, g.degree(g.ref(f)));
  return d;
}

Literal pos(std::uint32_t v) { return {v, true}; }
Literal neg(std::uint32_t v) { return {v, false}; }

}  // namespace

TEST_CASE("DIMACS parsing") {
  const auto f = parse_dimacs_cnf("c demo\np cnf 3 2\n1 -2 3 0\n-1 2\n-3 0\n");
  CHECK(f.variable_count == 3);
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[1][2] == neg(2));
  CHECK(parse_dimacs_cnf(write_dimacs_cnf(f)).clauses == f.clauses);

  const auto headerless = parse_dimacs_cnf("1 2 3 0\n");
  CHECK(headerless.variable_count == 3);

  auto line_of = [](const char* text) {
    try {
      parse_dimacs_cnf(text);
    } catch (const CnfError& e) {
      return e.line();
    }
    return std::size_t{999};
  };
  CHECK(line_of("p cnf 3 1\n1 2 0\n") == 2);
  CHECK(line_of("p cnf 3 1\n1 2 2 0\n") == 2);
  CHECK(line_of("p cnf 3 1\n1 2 x 0\n") == 2);
  CHECK(line_of("p cnf 2 1\n1 2 3 0\n") == 2);
  CHECK(line_of("p cnf 3 1\n\n1 2 3\n") == 3);
  CHECK(line_of("p cnf 3\n") == 1);
}

TEST_CASE("occurrence order alternates signs for two-and-two variables") {
  const auto f = CnfFormula::from_clauses(
      4, {{pos(0), pos(1), pos(2)}, {pos(0), neg(1), pos(3)}, {neg(0), pos(1), neg(2)}, {neg(0), neg(3), pos(2)}});
  CHECK(f.occurrences[0] == std::vector<std::size_t>{0, 2, 1, 3});
  CHECK(f.occurrences[3] == std::vector<std::size_t>{1, 3});
  CHECK(f.satisfied_by({true, true, false, false}));
  CHECK_FALSE(f.satisfied_by({false, false, false, true}));
  CHECK_THROWS_AS(CnfFormula::from_clauses(2, {{pos(0), pos(1), pos(2)}}), CnfError);
}

TEST_CASE("reduction of one clause") {
  const auto f = CnfFormula::from_clauses(3, {{pos(0), neg(1), pos(2)}});
  const auto s = sat_to_instance(f);
  const auto& g = s.instance.graph;
  CHECK(g.vertex_count() == 19);
  CHECK(g.edge_count() == 21);
  CHECK(s.instance.k == 8);
  CHECK(s.map.link_position[0] == std::array<std::uint32_t, 3>{1, 3, 1});
  for (std::size_t i = 0; i < 3; ++i) {
    const auto v = s.map.cycles[f.clauses[0][i].var][s.map.link_position[0][i] - 1];
    CHECK(g.adjacent(s.map.clause_vertex[0], v));
  }
  const auto seq = assignment_to_sequence(s.map, {true, true, false});
  CHECK(sequence_cost(seq) == 8);
  CHECK(validate_solution(g, seq, Mode::bcevs()).ok);
  CHECK(validate_solution(g, seq, Mode::bceovs(Side::B)).ok);

  // x0=false, x1=true, x2=false satisfies nothing: one more deletion
  const auto bad = assignment_to_sequence(s.map, {false, true, false});
  CHECK(bad.size() == 9);
  CHECK(validate_solution(g, bad, Mode::bcevs()).ok);
}

TEST_CASE("reduction shape on random formulas") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t m = 1 + seed % 5, vars = std::min<std::size_t>(3 * m, 3 + seed % 4);
    const auto f = random_cnf(vars, m, seed);
    const auto s = sat_to_instance(f);
    const auto& g = s.instance.graph;
    CHECK(g.vertex_count() == 19 * m);
    CHECK(g.edge_count() == 21 * m);
    CHECK(max_degree(g) <= 3);
    CHECK_FALSE(oracle::has_odd_cycle(g));
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(s.map.link_position[c][i] % 6 == (f.clauses[c][i].positive ? 1u : 3u));
  }
}

TEST_CASE("satisfying assignments give witnesses of length 8m") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 30; ++t) {
    std::vector<bool> assignment(3 + rng() % 4);
    for (std::size_t i = 0; i < assignment.size(); ++i) assignment[i] = rng() % 2;
    const std::size_t m = std::max<std::size_t>(1 + rng() % 6, (assignment.size() + 2) / 3);
    const auto f = random_satisfiable_cnf(assignment, m, rng());
    CHECK(f.satisfied_by(assignment));
    for (std::uint32_t v = 0; v < f.variable_count; ++v) CHECK(f.occurrence_count(v) > 0);
    const auto s = sat_to_instance(f);
    const auto seq = assignment_to_sequence(s.map, assignment);
    CHECK(seq.size() == 8 * m);
    CHECK(is_deletion_only(seq));
    CHECK(validate_solution(s.instance.graph, seq, Mode::bcevs()).ok);
    CHECK(validate_solution(s.instance.graph, seq, Mode::bceovs(Side::B)).ok);
  }
}

TEST_CASE("families") {
  CHECK(path_graph(5).edge_count() == 4);
  CHECK(path_graph(5).a_count() == 3);
  CHECK(cycle_graph(8).edge_count() == 8);
  CHECK_THROWS_AS(cycle_graph(7), GraphError);
  CHECK_THROWS_AS(cycle_graph(2), GraphError);
  CHECK(star_graph(4).edge_count() == 4);
  CHECK(biclique_graph(3, 4).edge_count() == 12);
  CHECK(family(FamilyKind::Cycle, 6) == cycle_graph(6));
  CHECK(family(FamilyKind::Biclique, 2, 5) == biclique_graph(2, 5));
  const auto f = figure1_graph();
  CHECK(f.vertex_count() == 10);
  CHECK(f.edge_count() == 12);
}

TEST_CASE("random generators are deterministic") {
  CHECK(random_tree(12, 5) == random_tree(12, 5));
  CHECK(random_bipartite(5, 6, 0.4, 9) == random_bipartite(5, 6, 0.4, 9));
  CHECK(random_cnf(4, 3, 2).clauses == random_cnf(4, 3, 2).clauses);
  const auto p = random_planted({2, 3}, {2, 2}, 1, 2, 77);
  const auto q = random_planted({2, 3}, {2, 2}, 1, 2, 77);
  CHECK(p.graph == q.graph);
  CHECK(p.truth == q.truth);
}

TEST_CASE("random trees are trees") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 1 + seed % 15;
    const auto t = random_tree(n, seed);
    CHECK(t.vertex_count() == n);
    CHECK(t.edge_count() == n - 1);
    CHECK(connected_components(t).size() == 1);
  }
}

TEST_CASE("planted covers bound the optimum") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto p = random_planted({2, 2, 1}, {2, 1, 2}, seed % 3, seed % 2, seed);
    CHECK_NOTHROW(check_cover(p.graph, p.truth));
    const auto cost = cover_cost(p.graph, p.truth).total;
    CHECK(cost <= (seed % 3) + (seed % 2));
    const auto out = solve_bceovs(p.graph);
    REQUIRE(out.solved());
    CHECK(out.get().value <= cost);
  }
}
