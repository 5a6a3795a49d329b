#include "bcevs/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace bcevs {

char side_char(Side s) { return s == Side::A ? 'A' : 'B'; }

std::string to_string(const VertexRef& v) {
  return std::string(1, v.side == Side::A ? 'a' : 'b') + std::to_string(v.index + 1);
}

BipartiteGraph::BipartiteGraph(std::size_t a_count, std::size_t b_count,
                               std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  build(a_count, b_count, edges);
}

BipartiteGraph::BipartiteGraph(
    std::size_t a_count, std::size_t b_count,
    std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> edges) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> list(edges);
  build(a_count, b_count, list);
}

void BipartiteGraph::build(std::size_t a_count, std::size_t b_count,
                           std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  a_adj_.assign(a_count, {});
  b_adj_.assign(b_count, {});
  for (const auto& [a, b] : edges) {
    if (a >= a_count || b >= b_count) {
      throw GraphError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") out of range for sides of size " + std::to_string(a_count) + " and " +
                       std::to_string(b_count));
    }
    a_adj_[a].push_back(b);
    b_adj_[b].push_back(a);
  }
  edge_count_ = 0;
  for (auto& n : a_adj_) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
    edge_count_ += n.size();
  }
  for (auto& n : b_adj_) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
}

const std::vector<std::uint32_t>& BipartiteGraph::neighbors(VertexRef v) const {
  return v.side == Side::A ? a_adj_.at(v.index) : b_adj_.at(v.index);
}

bool BipartiteGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
  if (a >= a_count() || b >= b_count()) return false;
  const auto& n = a_adj_[a];
  return std::binary_search(n.begin(), n.end(), b);
}

bool BipartiteGraph::adjacent(VertexRef u, VertexRef v) const {
  if (u.side == v.side) return false;
  return u.side == Side::A ? has_edge(u.index, v.index) : has_edge(v.index, u.index);
}

EdgeList BipartiteGraph::edges() const {
  EdgeList out;
  out.reserve(edge_count_);
  for (std::uint32_t a = 0; a < a_adj_.size(); ++a)
    for (auto b : a_adj_[a]) out.emplace_back(a, b);
  return out;
}

std::uint32_t BipartiteGraph::flat(VertexRef v) const {
  return v.side == Side::A ? v.index : static_cast<std::uint32_t>(a_count()) + v.index;
}

VertexRef BipartiteGraph::ref(std::uint32_t flat_id) const {
  if (flat_id < a_count()) return {Side::A, flat_id};
  return {Side::B, flat_id - static_cast<std::uint32_t>(a_count())};
}

std::pair<BipartiteGraph, VertexSet> BipartiteGraph::induced(const VertexSet& keep) const {
  VertexSet sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::int64_t> a_new(a_count(), -1), b_new(b_count(), -1);
  std::uint32_t na = 0, nb = 0;
  for (const auto& v : sorted) {
    if (!contains(v)) throw GraphError("induced: vertex " + to_string(v) + " out of range");
    if (v.side == Side::A) a_new[v.index] = na++;
    else b_new[v.index] = nb++;
  }
  EdgeList edges_out;
  for (std::uint32_t a = 0; a < a_count(); ++a) {
    if (a_new[a] < 0) continue;
    for (auto b : a_adj_[a])
      if (b_new[b] >= 0)
        edges_out.emplace_back(static_cast<std::uint32_t>(a_new[a]),
                               static_cast<std::uint32_t>(b_new[b]));
  }
  return {BipartiteGraph(na, nb, edges_out), sorted};
}

BipartiteGraph BipartiteGraph::transposed() const {
  EdgeList swapped;
  swapped.reserve(edge_count_);
  for (const auto& [a, b] : edges()) swapped.emplace_back(b, a);
  return BipartiteGraph(b_count(), a_count(), swapped);
}

BipartiteGraph build_graph(std::size_t a_count, std::size_t b_count, const EdgeList& edges) {
  return BipartiteGraph(a_count, b_count, edges);
}

namespace {

// Flat-id adjacency, handy for traversals that do not care about sides.
std::vector<std::uint32_t> flat_neighbors(const BipartiteGraph& g, std::uint32_t f) {
  const VertexRef v = g.ref(f);
  std::vector<std::uint32_t> out;
  for (auto u : g.neighbors(v)) out.push_back(g.flat({opposite(v.side), u}));
  return out;
}

}  // namespace

std::vector<VertexSet> connected_components(const BipartiteGraph& g) {
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  std::vector<bool> seen(n, false);
  std::vector<VertexSet> out;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    std::deque<std::uint32_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      auto f = queue.front();
      queue.pop_front();
      comp.push_back(g.ref(f));
      for (auto u : flat_neighbors(g, f)) {
        if (!seen[u]) {
          seen[u] = true;
          queue.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::optional<std::size_t> distance(const BipartiteGraph& g, VertexRef u, VertexRef v) {
  if (!g.contains(u) || !g.contains(v)) throw GraphError("distance: vertex out of range");
  const auto n = g.vertex_count();
  std::vector<std::int64_t> dist(n, -1);
  const auto src = g.flat(u), dst = g.flat(v);
  dist[src] = 0;
  std::deque<std::uint32_t> queue{src};
  while (!queue.empty()) {
    auto f = queue.front();
    queue.pop_front();
    if (f == dst) return static_cast<std::size_t>(dist[f]);
    for (auto w : flat_neighbors(g, f)) {
      if (dist[w] < 0) {
        dist[w] = dist[f] + 1;
        queue.push_back(w);
      }
    }
  }
  return std::nullopt;
}

namespace {

// Calls visit(a, b, c, d) on every induced P4 in lexicographic flat order;
// stops when visit returns false.
template <typename Visit>
void for_each_p4(const BipartiteGraph& g, Visit&& visit) {
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::uint32_t f = 0; f < n; ++f) adj[f] = flat_neighbors(g, f);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (auto b : adj[a]) {
      for (auto c : adj[b]) {
        if (c == a) continue;
        for (auto d : adj[c]) {
          if (d == b) continue;
          if (std::binary_search(adj[a].begin(), adj[a].end(), d)) continue;
          if (!visit(a, b, c, d)) return;
        }
      }
    }
  }
}

}  // namespace

std::optional<Geodesic> find_conflict_geodesic(const BipartiteGraph& g) {
  std::optional<Geodesic> found;
  for_each_p4(g, [&](auto a, auto b, auto c, auto d) {
    found = Geodesic{g.ref(a), g.ref(b), g.ref(c), g.ref(d)};
    return false;
  });
  return found;
}

std::vector<Geodesic> all_conflict_geodesics(const BipartiteGraph& g) {
  std::vector<Geodesic> out;
  for_each_p4(g, [&](auto a, auto b, auto c, auto d) {
    if (a < d) out.push_back({g.ref(a), g.ref(b), g.ref(c), g.ref(d)});
    return true;
  });
  return out;
}

std::size_t TwinClassDecomposition::class_count(Side s) const {
  return static_cast<std::size_t>(std::count_if(
      classes.begin(), classes.end(), [s](const VertexSet& c) { return c.front().side == s; }));
}

TwinClassDecomposition twin_classes(const BipartiteGraph& g) {
  // Hash buckets keyed on the sorted neighborhood; std::map compares the keys
  // directly, so equal hashes never merge distinct neighborhoods.
  TwinClassDecomposition out;
  out.class_of.assign(g.vertex_count(), 0);
  std::map<std::pair<Side, std::vector<std::uint32_t>>, std::size_t> index;
  for (std::uint32_t f = 0; f < g.vertex_count(); ++f) {
    const VertexRef v = g.ref(f);
    auto key = std::make_pair(v.side, g.neighbors(v));
    auto [it, inserted] = index.try_emplace(std::move(key), out.classes.size());
    if (inserted) out.classes.emplace_back();
    out.classes[it->second].push_back(v);
    out.class_of[f] = it->second;
  }
  return out;
}

bool is_biclique_union(const BipartiteGraph& g) {
  for (const auto& comp : connected_components(g)) {
    std::size_t na = 0, nb = 0;
    for (const auto& v : comp) (v.side == Side::A ? na : nb)++;
    for (const auto& v : comp) {
      const std::size_t want = v.side == Side::A ? nb : na;
      if (g.degree(v) != want) return false;
    }
  }
  return true;
}

namespace {

using Pair = std::pair<std::uint32_t, std::uint32_t>;

Pair unordered(std::uint32_t u, std::uint32_t v) { return u < v ? Pair{u, v} : Pair{v, u}; }

bool compatible(const BipartiteGraph& g, const Geodesic& x, const Geodesic& y) {
  auto edges_of = [&](const Geodesic& p) {
    return std::array<Pair, 3>{unordered(g.flat(p[0]), g.flat(p[1])),
                               unordered(g.flat(p[1]), g.flat(p[2])),
                               unordered(g.flat(p[2]), g.flat(p[3]))};
  };
  for (const auto& e : edges_of(x))
    for (const auto& f : edges_of(y))
      if (e == f) return false;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      if (x[i] == y[j]) return false;
  return unordered(g.flat(x[0]), g.flat(x[3])) != unordered(g.flat(y[0]), g.flat(y[3]));
}

}  // namespace

std::vector<Geodesic> geodesic_packing(const BipartiteGraph& g) {
  const auto all = all_conflict_geodesics(g);
  const std::size_t n = all.size();
  std::vector<std::vector<std::size_t>> clash(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!compatible(g, all[i], all[j])) {
        clash[i].push_back(j);
        clash[j].push_back(i);
      }
  // Min-degree greedy: repeatedly take the live candidate with the fewest live
  // clashes (ties by enumeration order), then drop it and its clashes.
  std::vector<bool> live(n, true);
  std::vector<std::size_t> live_degree(n);
  for (std::size_t i = 0; i < n; ++i) live_degree[i] = clash[i].size();
  std::vector<Geodesic> chosen;
  for (;;) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i)
      if (live[i] && (best == n || live_degree[i] < live_degree[best])) best = i;
    if (best == n) break;
    chosen.push_back(all[best]);
    std::vector<std::size_t> removed{best};
    for (auto j : clash[best])
      if (live[j]) removed.push_back(j);
    for (auto r : removed) live[r] = false;
    for (auto r : removed)
      for (auto j : clash[r])
        if (live[j]) --live_degree[j];
  }
  return chosen;
}

std::size_t geodesic_packing_bound(const BipartiteGraph& g) { return geodesic_packing(g).size(); }

}  // namespace bcevs
