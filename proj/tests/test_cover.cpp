#include <random>

#include "bcevs/cover.hpp"
#include "bcevs/generators.hpp"
#include "doctest.h"

using namespace bcevs;

namespace {

VertexRef A(std::uint32_t i) { return {Side::A, i}; }
VertexRef B(std::uint32_t i) { return {Side::B, i}; }

// a1,a2 ~ {b1,b2}; a3 ~ {b1..b4}; a4 ~ {b3,b4} (0-based below).
BipartiteGraph cost_example() {
  return BipartiteGraph(4, 4, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}});
}

APartitioningCover cost_example_cover() {
  return {{{A(0), A(1), B(0), B(1)}, {A(2), B(0), B(1)}, {A(3), B(2), B(3)}}};
}

APartitioningCover random_cover(const BipartiteGraph& g, std::mt19937_64& rng) {
  const std::size_t parts = 1 + rng() % std::max<std::size_t>(1, g.a_count());
  std::vector<VertexSet> sets(parts);
  for (std::uint32_t a = 0; a < g.a_count(); ++a) sets[rng() % parts].push_back(A(a));
  std::erase_if(sets, [](const VertexSet& s) { return s.empty(); });
  std::vector<VertexSet> alone;
  for (std::uint32_t b = 0; b < g.b_count(); ++b) {
    bool placed = false;
    for (auto& s : sets)
      if (rng() % 3 == 0) s.push_back(B(b)), placed = true;
    if (!placed) {
      if (!sets.empty() && rng() % 2) sets[rng() % sets.size()].push_back(B(b));
      else alone.push_back({B(b)});
    }
  }
  for (auto& s : alone) sets.push_back(s);
  return {sets};
}

}  // namespace

TEST_CASE("cost example") {
  const auto g = cost_example();
  const auto c = cost_example_cover();
  check_cover(g, c);
  const auto cost = cover_cost(g, c);
  CHECK(cost.total == 4);
  CHECK(cost.b_costs[0] == 1);
  CHECK(cost.b_costs[1] == 1);
  CHECK(cost.a_costs[2] == 2);
  CHECK(cost.a_costs[0] + cost.a_costs[1] + cost.a_costs[3] == 0);

  const auto seq = cover_to_sequence(g, c);
  CHECK(seq.size() == 4);
  CHECK(validate_solution(g, seq, Mode::bceovs(Side::B)).ok);
}

TEST_CASE("biclique union and its component cover") {
  const BipartiteGraph g(3, 4, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 3}});
  const auto c = component_cover(g);
  CHECK(cover_cost(g, c).total == 0);
  CHECK(cover_to_sequence(g, c).empty());
  CHECK(cover_cost(g, sequence_to_cover(g, {})).total == 0);
}

TEST_CASE("P4 split into two edges") {
  const auto p4 = path_graph(4);  // a0 b0 a1 b1
  const APartitioningCover c{{{A(0), B(0)}, {A(1), B(1)}}};
  CHECK(cover_cost(p4, c).total == 1);
  const auto seq = cover_to_sequence(p4, c);
  REQUIRE(seq.size() == 1);
  CHECK(seq[0] == Operation{EdgeDelete{1, 2}});
  CHECK(bicover_cost(p4, as_bicluster_cover(c)) == 1);
}

TEST_CASE("cover checks") {
  const auto p4 = path_graph(4);
  CHECK_THROWS_AS(check_cover(p4, APartitioningCover{{{A(0), B(0)}, {A(0), A(1), B(1)}}}), CoverError);
  CHECK_THROWS_AS(check_cover(p4, APartitioningCover{{{A(0), A(1), B(0)}}}), CoverError);
  CHECK_THROWS_AS(check_cover(p4, APartitioningCover{{{A(0), B(0)}, {}, {A(1), B(1)}}}), CoverError);
  CHECK_NOTHROW(check_cover(p4, BiclusterCover{{{A(0), B(0)}, {A(0), A(1), B(1)}}}));
}

TEST_CASE("reading covers back from sequences") {
  const auto f = figure1_graph();
  const OperationSequence seq{Split{8, {0, 2}, {3, 4}}, EdgeDelete{0, 7}, EdgeDelete{0, 10}};
  const auto c = sequence_to_cover(f, seq);
  check_cover(f, c);
  CHECK(cover_cost(f, c).total <= 3);

  auto redundant = seq;
  redundant.push_back(EdgeDelete{1, 5});
  redundant.push_back(EdgeAdd{1, 5});
  CHECK(cover_cost(f, sequence_to_cover(f, redundant)).total < redundant.size());
}

TEST_CASE("twin adaptation") {
  const auto g = cost_example();
  const auto c = cost_example_cover();
  CHECK(is_twin_adapted(g, c.sets));
  CHECK(canonical_sets(twin_adapt(g, c).sets) == canonical_sets(c.sets));

  const auto k22 = biclique_graph(2, 2);
  const APartitioningCover diag{{{A(0), B(0)}, {A(1), B(1)}}};
  CHECK(cover_cost(k22, diag).total == 2);
  CHECK_FALSE(is_twin_adapted(k22, diag.sets));
  const auto merged = twin_adapt(k22, diag);
  CHECK(merged.sets.size() == 1);
  CHECK(cover_cost(k22, merged).total == 0);

  // C6 has only singleton twin classes
  const auto c6 = cycle_graph(6);
  const APartitioningCover any{{{A(0), B(0), B(2)}, {A(1), A(2), B(1)}}};
  CHECK(is_twin_adapted(c6, any.sets));
  CHECK(canonical_sets(twin_adapt(c6, any).sets) == canonical_sets(any.sets));
}

TEST_CASE("random covers: sequences, twin adaptation and the two-sided view") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    auto g = random_bipartite(1 + rng() % 5, 1 + rng() % 5, 0.5, rng());
    if (t % 3 == 0) {
      // duplicate some vertices so there are twins to merge
      auto edges = g.edges();
      for (auto [a, b] : g.edges())
        if (a == 0) edges.emplace_back(g.a_count(), b);
      g = build_graph(g.a_count() + 1, g.b_count(), edges);
    }
    const auto c = random_cover(g, rng);
    REQUIRE_NOTHROW(check_cover(g, c));
    const auto cost = cover_cost(g, c).total;

    const auto seq = cover_to_sequence(g, c);
    CHECK(seq.size() == cost);
    CHECK(validate_solution(g, seq, Mode::bceovs(Side::B)).ok);
    CHECK(cover_cost(g, sequence_to_cover(g, seq)).total <= cost);

    const auto adapted = twin_adapt(g, c);
    CHECK_NOTHROW(check_cover(g, adapted));
    CHECK(is_twin_adapted(g, adapted.sets));
    CHECK(cover_cost(g, adapted).total <= cost);

    CHECK(bicover_cost(g, as_bicluster_cover(c)) == cost);
  }
}

TEST_CASE("two-sided covers") {
  const auto f = figure1_graph();
  const BiclusterCover hubs{{{A(0), A(1), B(0), B(1)}, {A(0), A(2), B(2), B(3)}, {B(3), A(3), A(4), B(4)}}};
  CHECK(bicover_cost(f, hubs) == 2);
  const auto seq = bicover_to_sequence(f, hubs);
  CHECK(seq.size() == 2);
  CHECK(validate_solution(f, seq, Mode::bcevs()).ok);
  CHECK_FALSE(validate_solution(f, seq, Mode::bceovs(Side::B)).ok);

  const BipartiteGraph almost(2, 2, {{0, 0}, {0, 1}, {1, 0}});
  const auto add = bicover_to_sequence(almost, {{{A(0), A(1), B(0), B(1)}}});
  REQUIRE(add.size() == 1);
  CHECK(std::holds_alternative<EdgeAdd>(add[0]));

  const BipartiteGraph unions(2, 3, {{0, 0}, {0, 1}, {1, 2}});
  CHECK(bicover_to_sequence(unions, as_bicluster_cover(component_cover(unions))).empty());
}

TEST_CASE("random two-sided covers produce sequences of their cost") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const auto g = random_bipartite(1 + rng() % 4, 1 + rng() % 4, 0.5, rng());
    const std::size_t k = 1 + rng() % 3;
    std::vector<VertexSet> sets(k);
    for (std::uint32_t f = 0; f < g.vertex_count(); ++f) {
      bool placed = false;
      for (auto& s : sets)
        if (rng() % 3 == 0) s.push_back(g.ref(f)), placed = true;
      if (!placed) sets[rng() % k].push_back(g.ref(f));
    }
    std::erase_if(sets, [](const VertexSet& s) { return s.empty(); });
    sets = canonical_sets(sets);
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    const BiclusterCover c{sets};
    REQUIRE_NOTHROW(check_cover(g, c));
    const auto seq = bicover_to_sequence(g, c);
    CHECK(seq.size() == bicover_cost(g, c));
    CHECK(validate_solution(g, seq, Mode::bcevs()).ok);
  }
}
