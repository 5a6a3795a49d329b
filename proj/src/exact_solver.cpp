#include "bcevs/exact_solver.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <limits>
#include <numeric>

namespace bcevs {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::Refused: return "refused";
    case SolveStatus::ExceedsBudget: return "exceeds budget";
  }
  return "?";
}

const SolveResult& SolveOutcome::get() const {
  if (!result) throw std::logic_error("no solution: " + to_string(status) + " " + message);
  return *result;
}

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr Mask bit(std::uint32_t i) { return Mask{1} << i; }

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <class F>
void for_each_bit(Mask m, F&& f) {
  while (m) {
    f(static_cast<std::uint32_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

std::vector<Mask> adjacency_masks(const BipartiteGraph& g) {
  std::vector<Mask> adj(g.vertex_count(), 0);
  for (const auto& [a, b] : g.edges()) {
    const auto fb = g.flat({Side::B, b});
    adj[a] |= bit(fb);
    adj[fb] |= bit(a);
  }
  return adj;
}

BipartiteGraph graph_from_masks(std::size_t a_count, std::size_t b_count,
                                const std::vector<Mask>& adj) {
  EdgeList edges;
  for (std::uint32_t a = 0; a < a_count; ++a)
    for_each_bit(adj[a], [&](std::uint32_t fb) {
      edges.emplace_back(a, fb - static_cast<std::uint32_t>(a_count));
    });
  return BipartiteGraph(a_count, b_count, edges);
}

VertexSet mask_to_set(const BipartiteGraph& g, Mask m) {
  VertexSet out;
  for_each_bit(m, [&](std::uint32_t f) { out.push_back(g.ref(f)); });
  return out;
}

std::vector<VertexSet> swap_sides(std::vector<VertexSet> sets) {
  for (auto& s : sets)
    for (auto& v : s) v.side = opposite(v.side);
  return canonical_sets(std::move(sets));
}

// ---------------------------------------------------------------------------
// One-sided search over partitions of A-twin-classes.

struct PartitionSearch {
  std::size_t a_classes = 0;
  std::vector<std::size_t> a_size;
  std::vector<std::size_t> b_size;
  std::vector<std::vector<char>> adjacent;  // [a class][b class]

  std::vector<std::size_t> part_of;
  std::size_t parts = 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best_part_of;
  std::uint64_t nodes = 0;

  // Cost of one B-vertex of class j given the first `assigned` classes, and
  // the parts it joins.
  std::size_t b_cost(std::size_t j, std::size_t assigned, std::vector<std::size_t>* chosen) const {
    std::vector<long> in(parts, 0), out(parts, 0);
    for (std::size_t i = 0; i < assigned; ++i) {
      if (adjacent[i][j]) out[part_of[i]] += static_cast<long>(a_size[i]);
      else in[part_of[i]] += static_cast<long>(a_size[i]);
    }
    std::vector<std::size_t> order(parts);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return in[x] - out[x] < in[y] - out[y];
    });
    const long base = std::accumulate(out.begin(), out.end(), 0L);
    long best_cost = base;
    std::size_t best_j = 0;
    long prefix = 0;
    for (std::size_t t = 1; t <= parts; ++t) {
      prefix += in[order[t - 1]] - out[order[t - 1]];
      const long cost = base + static_cast<long>(t) - 1 + prefix;
      if (cost < best_cost) {
        best_cost = cost;
        best_j = t;
      }
    }
    if (chosen) {
      chosen->assign(order.begin(), order.begin() + static_cast<long>(best_j));
      std::sort(chosen->begin(), chosen->end());
    }
    return static_cast<std::size_t>(best_cost);
  }

  std::size_t partial_cost(std::size_t assigned) const {
    std::size_t total = 0;
    for (std::size_t j = 0; j < b_size.size(); ++j) total += b_size[j] * b_cost(j, assigned, nullptr);
    return total;
  }

  void dfs(std::size_t i) {
    ++nodes;
    if (best == 0) return;
    const auto cost = partial_cost(i);
    if (cost >= best) return;
    if (i == a_classes) {
      best = cost;
      best_part_of = part_of;
      return;
    }
    for (std::size_t p = 0; p <= parts; ++p) {
      part_of[i] = p;
      const bool fresh = p == parts;
      if (fresh) ++parts;
      dfs(i + 1);
      if (fresh) --parts;
    }
  }
};

}  // namespace

SolveOutcome solve_bceovs(const BipartiteGraph& g, const ExactOptions& options) {
  const auto start = Clock::now();
  if (options.split_side == Side::A) {
    ExactOptions inner = options;
    inner.split_side = Side::B;
    auto out = solve_bceovs(g.transposed(), inner);
    if (out.result) {
      out.result->witness = transpose_sequence(out.result->witness, g);
      if (out.result->witness_cover) out.result->witness_cover = swap_sides(*out.result->witness_cover);
    }
    return out;
  }

  const auto tc = twin_classes(g);
  std::vector<std::size_t> a_cls, b_cls;
  for (std::size_t c = 0; c < tc.classes.size(); ++c)
    (tc.classes[c].front().side == Side::A ? a_cls : b_cls).push_back(c);
  SolveOutcome out;
  if (a_cls.size() > options.max_classes) {
    out.status = SolveStatus::Refused;
    out.message = "refused: instance too large (" + std::to_string(a_cls.size()) +
                  " twin classes on the partition side, limit " +
                  std::to_string(options.max_classes) + ")";
    return out;
  }

  PartitionSearch search;
  search.a_classes = a_cls.size();
  for (auto c : a_cls) search.a_size.push_back(tc.classes[c].size());
  for (auto c : b_cls) search.b_size.push_back(tc.classes[c].size());
  search.adjacent.assign(a_cls.size(), std::vector<char>(b_cls.size(), 0));
  for (std::size_t i = 0; i < a_cls.size(); ++i)
    for (std::size_t j = 0; j < b_cls.size(); ++j)
      search.adjacent[i][j] = g.adjacent(tc.classes[a_cls[i]].front(), tc.classes[b_cls[j]].front());
  search.part_of.assign(a_cls.size(), 0);
  if (options.budget) search.best = *options.budget + 1;
  search.dfs(0);

  out.stats = {search.nodes, elapsed_ms(start)};
  if (search.best_part_of.size() != a_cls.size() ||
      (options.budget && search.best > *options.budget)) {
    out.status = SolveStatus::ExceedsBudget;
    out.message = "no solution within budget " + std::to_string(options.budget.value_or(0));
    return out;
  }

  // Rebuild the cover from the best partition.
  search.part_of = search.best_part_of;
  search.parts = a_cls.empty() ? 0 : *std::max_element(search.part_of.begin(), search.part_of.end()) + 1;
  std::vector<VertexSet> sets(search.parts);
  for (std::size_t i = 0; i < a_cls.size(); ++i)
    for (const auto& v : tc.classes[a_cls[i]]) sets[search.part_of[i]].push_back(v);
  for (std::size_t j = 0; j < b_cls.size(); ++j) {
    std::vector<std::size_t> chosen;
    search.b_cost(j, a_cls.size(), &chosen);
    for (const auto& v : tc.classes[b_cls[j]]) {
      if (chosen.empty()) sets.push_back({v});
      for (auto p : chosen) sets[p].push_back(v);
    }
  }
  APartitioningCover cover{canonical_sets(std::move(sets))};
  SolveResult result;
  result.value = search.best;
  result.witness = cover_to_sequence(g, cover);
  result.witness_cover = cover.sets;
  result.stats = out.stats;
  out.status = SolveStatus::Solved;
  out.result = std::move(result);
  return out;
}

// ---------------------------------------------------------------------------
// Split-only covers.

namespace {

struct SplitSearch {
  std::vector<Mask> adj;
  Mask a_mask = 0;
  Mask no_split = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // flat ids

  std::vector<Mask> sets;
  std::vector<std::size_t> mult;
  std::size_t cost = 0;
  std::size_t limit = 0;  // accept covers with cost <= limit
  bool found = false;
  std::vector<Mask> best_sets;
  bool stop = false;

  bool fits(Mask set, std::uint32_t v) const {
    if (set & bit(v)) return true;
    const Mask opposite_side = (a_mask & bit(v)) ? (set & ~a_mask) : (set & a_mask);
    return (opposite_side & ~adj[v]) == 0;
  }

  // Extra cost of putting v into one more set; nullopt when forbidden.
  std::optional<std::size_t> join_cost(Mask set, std::uint32_t v) const {
    if (set & bit(v)) return 0;
    if (mult[v] == 0) return 0;
    if (no_split & bit(v)) return std::nullopt;
    return 1;
  }

  void dfs(std::size_t e) {
    while (e < edges.size()) {
      const auto [a, b] = edges[e];
      const Mask pair = bit(a) | bit(b);
      if (std::none_of(sets.begin(), sets.end(), [&](Mask s) { return (s & pair) == pair; })) break;
      ++e;
    }
    if (e == edges.size()) {
      found = true;
      best_sets = sets;
      limit = cost == 0 ? 0 : cost - 1;
      if (cost == 0) stop = true;
      return;
    }
    const auto [a, b] = edges[e];
    auto try_set = [&](std::size_t idx, Mask base) {
      // Adding a first keeps the biclique test simple: b must then see a too.
      Mask grown = base;
      if (!fits(grown, a)) return;
      const auto ca = join_cost(grown, a);
      if (!ca) return;
      grown |= bit(a);
      if (!fits(grown, b)) return;
      const auto cb = join_cost(grown, b);
      if (!cb) return;
      if (cost + *ca + *cb > limit) return;
      const bool new_a = !(base & bit(a)), new_b = !(base & bit(b));
      const bool fresh = idx == sets.size();
      cost += *ca + *cb;
      if (new_a) ++mult[a];
      if (new_b) ++mult[b];
      if (fresh) sets.push_back(grown | bit(b));
      else sets[idx] = grown | bit(b);
      dfs(e + 1);
      if (fresh) sets.pop_back();
      else sets[idx] = base;
      if (new_a) --mult[a];
      if (new_b) --mult[b];
      cost -= *ca + *cb;
    };
    for (std::size_t i = 0; i < sets.size() && !stop; ++i) try_set(i, sets[i]);
    if (!stop) try_set(sets.size(), 0);
  }
};

}  // namespace

std::optional<SplitCover> min_split_biclique_cover(const BipartiteGraph& g,
                                                   std::size_t split_budget,
                                                   std::optional<Side> split_side) {
  if (g.vertex_count() > 64) throw SizeGuardError("split cover search is limited to 64 vertices");
  SplitSearch s;
  s.adj = adjacency_masks(g);
  for (std::uint32_t a = 0; a < g.a_count(); ++a) s.a_mask |= bit(a);
  if (split_side) {
    for (std::uint32_t f = 0; f < g.vertex_count(); ++f)
      if (g.ref(f).side != *split_side) s.no_split |= bit(f);
  }
  for (const auto& [a, b] : g.edges()) s.edges.emplace_back(a, g.flat({Side::B, b}));
  s.mult.assign(g.vertex_count(), 0);
  s.limit = split_budget;
  s.dfs(0);
  if (!s.found) return std::nullopt;

  SplitCover out;
  std::vector<std::size_t> mult(g.vertex_count(), 0);
  for (auto m : s.best_sets) {
    out.sets.push_back(mask_to_set(g, m));
    for_each_bit(m, [&](std::uint32_t f) { ++mult[f]; });
  }
  for (std::uint32_t f = 0; f < g.vertex_count(); ++f) {
    if (mult[f] == 0) out.sets.push_back({g.ref(f)});
    else out.splits += mult[f] - 1;
  }
  out.sets = canonical_sets(std::move(out.sets));
  return out;
}

// ---------------------------------------------------------------------------
// Two-sided search.

namespace {

using Path4 = std::array<std::uint32_t, 4>;

struct ConflictSearch {
  std::size_t a_count = 0, b_count = 0;
  std::vector<Mask> adj;
  std::vector<Mask> edited;
  Mask marked = 0;
  std::vector<Path4> accepted;
  std::size_t edits = 0, marks = 0;
  std::uint64_t nodes = 0;
  std::optional<SplitCover> leaf_cover;

  bool is_accepted(const Path4& p) const {
    return std::find(accepted.begin(), accepted.end(), p) != accepted.end();
  }

  // First induced P4 (by flat ids) that still needs a decision.
  std::optional<Path4> open_conflict() const {
    const auto n = static_cast<std::uint32_t>(adj.size());
    for (std::uint32_t a = 0; a < n; ++a) {
      std::optional<Path4> found;
      for_each_bit(adj[a], [&](std::uint32_t b) {
        if (found) return;
        for_each_bit(adj[b] & ~bit(a), [&](std::uint32_t c) {
          if (found) return;
          for_each_bit(adj[c] & ~bit(b) & ~adj[a], [&](std::uint32_t d) {
            if (found || d < a) return;
            const Path4 p{a, b, c, d};
            const bool fresh = !(marked & (bit(b) | bit(c)));
            if (fresh || !is_accepted(p)) found = p;
          });
        });
      });
      if (found) return found;
    }
    return std::nullopt;
  }

  void toggle(std::uint32_t u, std::uint32_t v) {
    adj[u] ^= bit(v);
    adj[v] ^= bit(u);
    edited[u] ^= bit(v);
    edited[v] ^= bit(u);
  }

  bool dfs(std::size_t k) {
    ++nodes;
    const auto p = open_conflict();
    if (!p) {
      leaf_cover = min_split_biclique_cover(graph_from_masks(a_count, b_count, adj), k - edits);
      return leaf_cover.has_value();
    }
    const auto [a, b, c, d] = *p;
    if (edits + marks < k) {
      const std::array<std::pair<std::uint32_t, std::uint32_t>, 4> pairs{
          {{a, b}, {b, c}, {c, d}, {a, d}}};
      for (const auto& [u, v] : pairs) {
        if (edited[u] & bit(v)) continue;
        toggle(u, v);
        ++edits;
        const bool ok = dfs(k);
        --edits;
        if (ok) return true;
        toggle(u, v);
      }
    }
    if (!(marked & (bit(b) | bit(c)))) {
      if (edits + marks >= k) return false;
      for (auto v : {b, c}) {
        marked |= bit(v);
        ++marks;
        const bool ok = dfs(k);
        --marks;
        marked &= ~bit(v);
        if (ok) return true;
      }
      return false;
    }
    accepted.push_back(*p);
    const bool ok = dfs(k);
    accepted.pop_back();
    return ok;
  }
};

SolveResult bicover_result(const BipartiteGraph& g, std::vector<VertexSet> sets, std::size_t value) {
  BiclusterCover cover{canonical_sets(std::move(sets))};
  SolveResult r;
  r.value = value;
  r.witness = bicover_to_sequence(g, cover);
  r.witness_cover = cover.sets;
  return r;
}

}  // namespace

SolveOutcome solve_bcevs(const BipartiteGraph& g, const ExactOptions& options) {
  const auto start = Clock::now();
  SolveOutcome out;
  const auto n = g.vertex_count();
  if (n > 64 || (n > options.max_vertices &&
                 (!options.budget || *options.budget > options.max_budget))) {
    out.status = SolveStatus::Refused;
    out.message = "refused: instance too large (" + std::to_string(n) + " vertices; limit " +
                  std::to_string(options.max_vertices) + " unless the budget is at most " +
                  std::to_string(options.max_budget) + ")";
    return out;
  }
  ConflictSearch s;
  s.a_count = g.a_count();
  s.b_count = g.b_count();
  s.adj = adjacency_masks(g);
  s.edited.assign(n, 0);
  // Deleting every edge always works, so the loop ends by k = |E|.
  const std::size_t limit = std::min(options.budget.value_or(g.edge_count()), g.edge_count());
  for (std::size_t k = 0; k <= limit; ++k) {
    if (!s.dfs(k)) continue;
    std::vector<VertexSet> sets = s.leaf_cover->sets;
    out.stats = {s.nodes, elapsed_ms(start)};
    out.status = SolveStatus::Solved;
    out.result = bicover_result(g, std::move(sets), k);
    out.result->stats = out.stats;
    return out;
  }
  out.stats = {s.nodes, elapsed_ms(start)};
  out.status = SolveStatus::ExceedsBudget;
  out.message = "no solution within budget " + std::to_string(limit);
  return out;
}

SolveOutcome min_bicover_exhaustive(const BipartiteGraph& g, std::size_t max_cost) {
  const auto start = Clock::now();
  SolveOutcome out;
  if (g.vertex_count() > 64) {
    out.status = SolveStatus::Refused;
    out.message = "refused: instance too large";
    return out;
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t a = 0; a < g.a_count(); ++a)
    for (std::uint32_t b = 0; b < g.b_count(); ++b) pairs.emplace_back(a, b);
  const auto base = adjacency_masks(g);
  std::size_t best = max_cost + 1;
  std::vector<VertexSet> best_sets;
  std::uint64_t nodes = 0;

  for (std::size_t e = 0; e < best && e <= pairs.size(); ++e) {
    std::vector<std::size_t> pick(e);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      ++nodes;
      auto adj = base;
      for (auto i : pick) {
        const auto [a, b] = pairs[i];
        const auto fb = static_cast<std::uint32_t>(g.a_count()) + b;
        adj[a] ^= bit(fb);
        adj[fb] ^= bit(a);
      }
      if (auto c = min_split_biclique_cover(graph_from_masks(g.a_count(), g.b_count(), adj),
                                            best - 1 - e)) {
        best = e + c->splits;
        best_sets = c->sets;
        if (best == e) break;
      }
      // Next e-combination in lexicographic order.
      std::size_t i = e;
      while (i > 0 && pick[i - 1] == pairs.size() - e + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < e; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  out.stats = {nodes, elapsed_ms(start)};
  if (best > max_cost) {
    out.status = SolveStatus::ExceedsBudget;
    out.message = "no solution within budget " + std::to_string(max_cost);
    return out;
  }
  out.status = SolveStatus::Solved;
  out.result = bicover_result(g, std::move(best_sets), best);
  out.result->stats = out.stats;
  return out;
}

}  // namespace bcevs
