#include "bcevs/oracle.hpp"

#include <array>
#include <bit>
#include <chrono>
#include <unordered_map>

namespace bcevs {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(std::uint32_t i) { return Mask{1} << i; }

template <class F>
void for_each_bit(Mask m, F&& f) {
  while (m) {
    f(static_cast<std::uint32_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

struct State {
  std::vector<Mask> adj;  // by copy id; dead copies have no neighbors
  Mask alive = 0;
  Mask a_side = 0;
};

struct StateHash {
  std::size_t operator()(const State& s) const {
    std::size_t h = std::hash<Mask>{}(s.alive);
    for (auto m : s.adj) h = h * 1000003u ^ std::hash<Mask>{}(m);
    return h;
  }
};

struct StateEq {
  bool operator()(const State& x, const State& y) const {
    return x.alive == y.alive && x.adj == y.adj;
  }
};

struct Search {
  const BipartiteGraph* g = nullptr;
  Mode mode;
  OracleOptions options;
  std::uint64_t nodes = 0;
  OperationSequence path;
  std::unordered_map<State, std::size_t, StateHash, StateEq> failed;  // largest failing budget

  bool may_split(const State& s, std::uint32_t v) const {
    return mode.may_split((s.a_side & bit(v)) ? Side::A : Side::B);
  }

  std::optional<std::array<std::uint32_t, 4>> conflict(const State& s) const {
    for (std::uint32_t a = 0; a < s.adj.size(); ++a) {
      if (!(s.alive & bit(a))) continue;
      for (Mask mb = s.adj[a]; mb; mb &= mb - 1) {
        const auto b = static_cast<std::uint32_t>(std::countr_zero(mb));
        for (Mask mc = s.adj[b] & ~bit(a); mc; mc &= mc - 1) {
          const auto c = static_cast<std::uint32_t>(std::countr_zero(mc));
          const Mask md = s.adj[c] & ~bit(b) & ~s.adj[a] & ~(bit(a + 1) - 1);
          if (md) return std::array{a, b, c, static_cast<std::uint32_t>(std::countr_zero(md))};
        }
      }
    }
    return std::nullopt;
  }

  BipartiteGraph snapshot(const State& s) const {
    std::vector<std::uint32_t> pos(s.adj.size(), 0);
    std::uint32_t na = 0, nb = 0;
    for_each_bit(s.alive, [&](std::uint32_t v) { pos[v] = (s.a_side & bit(v)) ? na++ : nb++; });
    EdgeList edges;
    for_each_bit(s.alive & s.a_side, [&](std::uint32_t a) {
      for_each_bit(s.adj[a], [&](std::uint32_t b) { edges.emplace_back(pos[a], pos[b]); });
    });
    return BipartiteGraph(na, nb, edges);
  }

  static void toggle(State& s, std::uint32_t u, std::uint32_t v) {
    s.adj[u] ^= bit(v);
    s.adj[v] ^= bit(u);
  }

  Operation edge_op(const State& s, std::uint32_t u, std::uint32_t v, bool add) const {
    const auto a = (s.a_side & bit(u)) ? u : v;
    const auto b = a == u ? v : u;
    if (add) return EdgeAdd{a, b};
    return EdgeDelete{a, b};
  }

  bool recurse(const State& next, std::size_t budget, Operation op) {
    path.push_back(std::move(op));
    if (dfs(next, budget)) return true;
    path.pop_back();
    return false;
  }

  // Splits v with `first` only in n1 and `second` only in n2; the remaining
  // neighbors go to n1, n2 or both.
  bool split_branches(const State& s, std::size_t budget, std::uint32_t v, std::uint32_t first,
                      std::uint32_t second) {
    std::vector<std::uint32_t> rest;
    for_each_bit(s.adj[v] & ~bit(first) & ~bit(second), [&](std::uint32_t u) { rest.push_back(u); });
    const std::uint32_t choices = options.exclusive_splits ? 2 : 3;
    std::vector<std::uint32_t> pick(rest.size(), 0);
    const auto c1 = static_cast<std::uint32_t>(s.adj.size());
    const auto c2 = c1 + 1;
    if (c2 >= 64) return false;
    while (true) {
      Mask n1 = bit(first), n2 = bit(second);
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (pick[i] != 1) n1 |= bit(rest[i]);
        if (pick[i] != 0) n2 |= bit(rest[i]);
      }
      State next = s;
      for_each_bit(s.adj[v], [&](std::uint32_t u) { next.adj[u] &= ~bit(v); });
      next.adj[v] = 0;
      next.alive &= ~bit(v);
      next.adj.push_back(n1);
      next.adj.push_back(n2);
      next.alive |= bit(c1) | bit(c2);
      if (s.a_side & bit(v)) next.a_side |= bit(c1) | bit(c2);
      for_each_bit(n1, [&](std::uint32_t u) { next.adj[u] |= bit(c1); });
      for_each_bit(n2, [&](std::uint32_t u) { next.adj[u] |= bit(c2); });
      Split op{v, {}, {}};
      for_each_bit(n1, [&](std::uint32_t u) { op.n1.push_back(u); });
      for_each_bit(n2, [&](std::uint32_t u) { op.n2.push_back(u); });
      if (recurse(next, budget - 1, std::move(op))) return true;
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == choices) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    return false;
  }

  bool dfs(const State& s, std::size_t budget) {
    ++nodes;
    const auto p = conflict(s);
    if (!p) return true;
    if (budget == 0) return false;
    if (options.memo) {
      auto it = failed.find(s);
      if (it != failed.end() && it->second >= budget) return false;
    }
    if (options.packing_prune && geodesic_packing_bound(snapshot(s)) > budget) return false;

    const auto [a, b, c, d] = *p;
    const std::array<std::pair<std::uint32_t, std::uint32_t>, 3> dels{{{a, b}, {b, c}, {c, d}}};
    for (const auto& [u, v] : dels) {
      State next = s;
      toggle(next, u, v);
      if (recurse(next, budget - 1, edge_op(s, u, v, false))) return true;
    }
    {
      State next = s;
      toggle(next, a, d);
      if (recurse(next, budget - 1, edge_op(s, a, d, true))) return true;
    }
    if (may_split(s, b) && split_branches(s, budget, b, a, c)) return true;
    if (may_split(s, c) && split_branches(s, budget, c, b, d)) return true;

    if (options.memo) {
      if (failed.size() > 4'000'000) failed.clear();
      auto& slot = failed[s];
      slot = std::max(slot, budget);
    }
    return false;
  }
};

}  // namespace

SolveOutcome oracle_search(const BipartiteGraph& g, std::optional<std::size_t> budget,
                           const Mode& mode, const OracleOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out;
  const std::size_t k = budget.value_or(options.max_budget);
  if (g.vertex_count() > options.max_vertices || k > options.max_budget ||
      g.vertex_count() + 2 * k > 64) {
    out.status = SolveStatus::Refused;
    out.message = "refused: instance too large for the oracle (" +
                  std::to_string(g.vertex_count()) + " vertices, budget " + std::to_string(k) +
                  "; limits " + std::to_string(options.max_vertices) + " and " +
                  std::to_string(options.max_budget) + ")";
    return out;
  }
  State s;
  s.adj.assign(g.vertex_count(), 0);
  for (const auto& [a, b] : g.edges()) {
    const auto fb = g.flat({Side::B, b});
    s.adj[a] |= bit(fb);
    s.adj[fb] |= bit(a);
  }
  for (std::uint32_t f = 0; f < g.vertex_count(); ++f) {
    s.alive |= bit(f);
    if (g.ref(f).side == Side::A) s.a_side |= bit(f);
  }
  Search search;
  search.g = &g;
  search.mode = mode;
  search.options = options;
  for (std::size_t depth = 0; depth <= k; ++depth) {
    if (!search.dfs(s, depth)) continue;
    out.stats = {search.nodes,
                 std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                     .count()};
    SolveResult r;
    r.value = depth;
    r.witness = search.path;
    r.stats = out.stats;
    out.status = SolveStatus::Solved;
    out.result = std::move(r);
    return out;
  }
  out.stats = {search.nodes,
               std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                   .count()};
  out.status = SolveStatus::ExceedsBudget;
  out.message = "no solution within budget " + std::to_string(k);
  return out;
}

}  // namespace bcevs
