#include <random>
#include <set>

#include "bcevs/generators.hpp"
#include "bcevs/graph.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bcevs;

namespace {

// Distance by BFS over flat ids, written out again so the library's BFS is
// checked against something.
std::vector<int> bfs(const BipartiteGraph& g, std::uint32_t s) {
  std::vector<int> d(g.vertex_count(), -1);
  std::vector<std::uint32_t> q{s};
  d[s] = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto r = g.ref(q[i]);
    for (auto x : g.neighbors(r)) {
      const auto w = g.flat({opposite(r.side), x});
      if (d[w] < 0) d[w] = d[q[i]] + 1, q.push_back(w);
    }
  }
  return d;
}

std::size_t brute_p4_count(const BipartiteGraph& g) {
  std::size_t count = 0;
  for (std::uint32_t u = 0; u < g.vertex_count(); ++u) {
    const auto d = bfs(g, u);
    for (std::uint32_t v = u + 1; v < g.vertex_count(); ++v) {
      if (d[v] != 3) continue;
      // Count middle pairs b-c with u-b-c-v a path.
      const auto ru = g.ref(u), rv = g.ref(v);
      for (auto b : g.neighbors(ru))
        for (auto c : g.neighbors(rv))
          if (g.adjacent({opposite(ru.side), b}, {opposite(rv.side), c})) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("construction and edge dedup") {
  const BipartiteGraph k22(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(k22.edge_count() == 4);
  const BipartiteGraph empty(0, 0, {});
  CHECK(empty.vertex_count() == 0);
  CHECK(empty.edge_count() == 0);
  const BipartiteGraph star(1, 2, {{0, 0}, {0, 1}, {0, 1}});
  CHECK(star.edge_count() == 2);
  CHECK_THROWS_AS(BipartiteGraph(1, 1, {{0, 1}}), GraphError);
  CHECK_THROWS_AS(BipartiteGraph(1, 1, {{1, 0}}), GraphError);
}

TEST_CASE("flat ids put A first") {
  const auto g = biclique_graph(2, 3);
  CHECK(g.flat({Side::A, 1}) == 1);
  CHECK(g.flat({Side::B, 0}) == 2);
  for (std::uint32_t f = 0; f < g.vertex_count(); ++f) CHECK(g.flat(g.ref(f)) == f);
  CHECK(to_string(VertexRef{Side::B, 2}) == "b3");
}

TEST_CASE("induced subgraph and transpose") {
  const auto p = path_graph(5);  // a0 b0 a1 b1 a2
  const auto [sub, old] = p.induced({{Side::A, 1}, {Side::B, 0}, {Side::B, 1}});
  CHECK(sub.a_count() == 1);
  CHECK(sub.b_count() == 2);
  CHECK(sub.edge_count() == 2);
  CHECK(old[0] == VertexRef{Side::A, 1});
  const auto t = p.transposed();
  CHECK(t.a_count() == p.b_count());
  CHECK(t.transposed() == p);
  for (auto [a, b] : p.edges()) CHECK(t.has_edge(b, a));
}

TEST_CASE("components") {
  CHECK(connected_components(biclique_graph(2, 2)).size() == 1);
  CHECK(connected_components(BipartiteGraph(2, 2, {{0, 0}, {1, 1}})).size() == 2);
  CHECK(connected_components(BipartiteGraph()).empty());
  const auto comps = connected_components(BipartiteGraph(2, 3, {{1, 2}, {0, 0}}));
  REQUIRE(comps.size() == 3);
  CHECK(comps[0].front() == VertexRef{Side::A, 0});
  CHECK(comps[2] == VertexSet{{Side::B, 1}});
}

TEST_CASE("distance") {
  const auto p4 = path_graph(4);
  CHECK(distance(p4, {Side::A, 0}, {Side::B, 1}) == 3);
  CHECK(distance(p4, {Side::A, 1}, {Side::A, 1}) == 0);
  const BipartiteGraph two(2, 2, {{0, 0}, {1, 1}});
  CHECK_FALSE(distance(two, {Side::A, 0}, {Side::B, 1}).has_value());
}

TEST_CASE("conflict geodesics") {
  const auto p4 = path_graph(4);
  const auto geo = find_conflict_geodesic(p4);
  REQUIRE(geo);
  CHECK((*geo)[0] == VertexRef{Side::A, 0});
  CHECK((*geo)[3] == VertexRef{Side::B, 1});
  CHECK_FALSE(find_conflict_geodesic(biclique_graph(2, 3)));
  const auto c6 = cycle_graph(6);
  const auto g6 = find_conflict_geodesic(c6);
  REQUIRE(g6);
  CHECK(distance(c6, (*g6)[0], (*g6)[3]) == 3);
  CHECK(all_conflict_geodesics(c6).size() == 6);
}

TEST_CASE("conflict geodesic listing matches brute force") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    const auto g = random_bipartite(1 + rng() % 5, 1 + rng() % 5, 0.45, rng());
    const auto all = all_conflict_geodesics(g);
    CHECK(all.size() == brute_p4_count(g));
    for (const auto& p : all) CHECK(distance(g, p[0], p[3]) == 3);
    CHECK(is_biclique_union(g) == all.empty());
  }
}

TEST_CASE("twin classes") {
  const auto k23 = twin_classes(biclique_graph(2, 3));
  CHECK(k23.classes.size() == 2);
  CHECK(k23.class_count(Side::A) == 1);
  CHECK(twin_classes(cycle_graph(6)).classes.size() == 6);
  CHECK(twin_classes(path_graph(4)).classes.size() == 4);
}

TEST_CASE("twin classes group exactly the equal neighbourhoods") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    const auto g = random_bipartite(1 + rng() % 6, 1 + rng() % 6, 0.5, rng());
    const auto tw = twin_classes(g);
    for (std::uint32_t u = 0; u < g.vertex_count(); ++u)
      for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        const auto ru = g.ref(u), rv = g.ref(v);
        if (ru.side != rv.side) {
          CHECK(tw.class_of[u] != tw.class_of[v]);
          continue;
        }
        CHECK((tw.class_of[u] == tw.class_of[v]) == (g.neighbors(ru) == g.neighbors(rv)));
      }
  }
}

TEST_CASE("biclique unions") {
  // K_{2,3} + K_{1,1} + an isolated vertex
  const BipartiteGraph g(4, 4, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 3}});
  CHECK(is_biclique_union(g));
  CHECK_FALSE(is_biclique_union(path_graph(4)));
  CHECK_FALSE(is_biclique_union(cycle_graph(6)));
}

TEST_CASE("packing bound") {
  CHECK(geodesic_packing_bound(cycle_graph(12)) == 4);
  CHECK(geodesic_packing_bound(biclique_graph(3, 4)) == 0);
  CHECK(geodesic_packing_bound(path_graph(4)) == 1);
}

TEST_CASE("packed geodesics share no edge and no inner vertex") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 80; ++t) {
    const auto g = random_bipartite(2 + rng() % 6, 2 + rng() % 6, 0.4, rng());
    const auto pack = geodesic_packing(g);
    CHECK(pack.size() == geodesic_packing_bound(g));
    std::set<std::pair<VertexRef, VertexRef>> edges, ends;
    std::set<VertexRef> inner;
    for (const auto& p : pack) {
      CHECK(distance(g, p[0], p[3]) == 3);
      CHECK(ends.insert(std::minmax(p[0], p[3])).second);
      for (int i = 0; i < 3; ++i) CHECK(edges.insert(std::minmax(p[i], p[i + 1])).second);
      for (int i = 1; i < 3; ++i) CHECK(inner.insert(p[i]).second);
    }
    if (g.vertex_count() <= 9) CHECK(geodesic_packing_bound(g) <= oracle::one_sided_cover_min(g));
  }
}
