#include <random>

#include "bcevs/exact_solver.hpp"
#include "bcevs/generators.hpp"
#include "bcevs/oracle.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bcevs;

TEST_CASE("known optima") {
  CHECK(oracle_search(path_graph(4), 1, Mode::bcevs()).get().value == 1);
  CHECK(oracle_search(cycle_graph(6), 2, Mode::bcevs()).get().value == 2);
  // P3 is already a biclique; P4 needs one operation whichever side splits
  CHECK(oracle_search(path_graph(3), 1, Mode::bceovs(Side::B)).get().value == 0);
  CHECK(oracle_search(path_graph(4), 1, Mode::bceovs(Side::A)).get().value == 1);
  CHECK(oracle_search(path_graph(4), 1, Mode::bceovs(Side::B)).get().value == 1);
  CHECK(oracle_search(figure1_graph(), std::nullopt, Mode::bcevs()).get().value == 2);
  CHECK(oracle_search(figure1_graph(), std::nullopt, Mode::bceovs(Side::B)).get().value == 3);
}

TEST_CASE("status handling") {
  CHECK(oracle_search(cycle_graph(6), 1, Mode::bcevs()).status == SolveStatus::ExceedsBudget);
  OracleOptions small;
  small.max_vertices = 5;
  CHECK(oracle_search(cycle_graph(6), 2, Mode::bcevs(), small).status == SolveStatus::Refused);
  CHECK(oracle_search(path_graph(4), 20, Mode::bcevs()).status == SolveStatus::Refused);
}

TEST_CASE("witnesses are valid and options agree") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 60; ++t) {
    const auto g = random_bipartite(1 + rng() % 4, 1 + rng() % 4, 0.5, rng());
    for (auto mode : {Mode::bcevs(), Mode::bceovs(Side::A), Mode::bceovs(Side::B)}) {
      const auto plain = oracle_search(g, std::nullopt, mode);
      REQUIRE(plain.solved());
      CHECK(validate_solution(g, plain.get().witness, mode).ok);
      CHECK(plain.get().witness.size() == plain.get().value);
      OracleOptions o;
      o.packing_prune = true;
      o.memo = false;
      CHECK(oracle_search(g, std::nullopt, mode, o).get().value == plain.get().value);
      o.exclusive_splits = true;
      const auto excl = oracle_search(g, std::nullopt, mode, o);
      REQUIRE(excl.solved());
      CHECK(excl.get().value >= plain.get().value);
      CHECK(validate_solution(g, excl.get().witness, mode, {true}).ok);
    }
  }
}

TEST_CASE("agrees with the unrestricted sequence search") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 60; ++t) {
    const auto g = random_bipartite(1 + rng() % 3, 1 + rng() % 3, 0.5, rng());
    const auto two = oracle_search(g, std::nullopt, Mode::bcevs()).get().value;
    CHECK(oracle::bcevs_sequence_min(g, two) == two);
    const auto one = oracle_search(g, std::nullopt, Mode::bceovs(Side::B)).get().value;
    CHECK(oracle::bceovs_sequence_min(g, one) == one);
  }
}
