#include "bcevs/cover.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <string>

namespace bcevs {

std::vector<VertexSet> canonical_sets(std::vector<VertexSet> sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

namespace {

// Membership lists per flat id (set indices in increasing order).
std::vector<std::vector<std::size_t>> memberships(const BipartiteGraph& g,
                                                  const std::vector<VertexSet>& sets) {
  std::vector<std::vector<std::size_t>> out(g.vertex_count());
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (const auto& v : sets[i]) out[g.flat(v)].push_back(i);
  return out;
}

void check_common(const BipartiteGraph& g, const std::vector<VertexSet>& sets) {
  std::set<VertexSet> seen;
  for (const auto& raw : sets) {
    if (raw.empty()) throw CoverError("cover contains an empty set");
    VertexSet s = raw;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw CoverError("cover set lists a vertex twice");
    for (const auto& v : s)
      if (!g.contains(v)) throw CoverError("cover names vertex " + to_string(v) + " out of range");
    if (!seen.insert(s).second) throw CoverError("cover contains a duplicate set");
  }
  const auto member = memberships(g, sets);
  for (std::uint32_t f = 0; f < g.vertex_count(); ++f)
    if (member[f].empty()) throw CoverError("vertex " + to_string(g.ref(f)) + " is not covered");
}

bool has_vertex(const VertexSet& sorted, VertexRef v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

void check_cover(const BipartiteGraph& g, const APartitioningCover& c) {
  check_common(g, c.sets);
  const auto member = memberships(g, c.sets);
  for (std::uint32_t a = 0; a < g.a_count(); ++a)
    if (member[a].size() != 1)
      throw CoverError("A-vertex " + to_string({Side::A, a}) + " lies in " +
                       std::to_string(member[a].size()) + " sets");
}

void check_cover(const BipartiteGraph& g, const BiclusterCover& c) { check_common(g, c.sets); }

CoverCostBreakdown cover_cost(const BipartiteGraph& g, const APartitioningCover& c) {
  check_cover(g, c);
  const auto sets = canonical_sets(c.sets);
  const auto member = memberships(g, sets);
  CoverCostBreakdown out;
  out.a_costs.assign(g.a_count(), 0);
  out.b_costs.assign(g.b_count(), 0);
  for (std::uint32_t a = 0; a < g.a_count(); ++a) {
    const auto& x = sets[member[a].front()];
    const auto& n = g.a_neighbors(a);
    std::size_t cost = 0;
    for (const auto& v : x)
      if (v.side == Side::B && !std::binary_search(n.begin(), n.end(), v.index)) ++cost;
    for (auto b : n)
      if (!has_vertex(x, {Side::B, b})) ++cost;
    out.a_costs[a] = cost;
  }
  for (std::uint32_t b = 0; b < g.b_count(); ++b)
    out.b_costs[b] = member[g.flat({Side::B, b})].size() - 1;
  for (auto x : out.a_costs) out.total += x;
  for (auto x : out.b_costs) out.total += x;
  return out;
}

namespace {

// Emits j-1 splits that hand each of the j parts to its own copy. `parts`
// holds copy ids; their union is the current neighborhood of `v`.
void split_chain(CopyId v, const std::vector<std::vector<CopyId>>& parts, CopyId& next,
                 OperationSequence& out, std::vector<CopyId>* copy_per_part = nullptr) {
  CopyId cur = v;
  for (std::size_t t = 0; t + 1 < parts.size(); ++t) {
    std::vector<CopyId> rest;
    for (std::size_t s = t + 1; s < parts.size(); ++s)
      rest.insert(rest.end(), parts[s].begin(), parts[s].end());
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    out.push_back(Split{cur, parts[t], rest});
    if (copy_per_part) copy_per_part->push_back(next);
    cur = next + 1;
    next += 2;
  }
  if (copy_per_part) copy_per_part->push_back(cur);
}

// Edits that turn E into E' where E' links every A/B pair sharing a set.
void emit_edits(const BipartiteGraph& g, const std::vector<VertexSet>& sets,
                OperationSequence& out) {
  const auto member = memberships(g, sets);
  for (std::uint32_t a = 0; a < g.a_count(); ++a) {
    std::set<std::uint32_t> target;
    for (auto i : member[a])
      for (const auto& v : sets[i])
        if (v.side == Side::B) target.insert(v.index);
    const auto& n = g.a_neighbors(a);
    const CopyId ca = a;
    for (auto b : target)
      if (!std::binary_search(n.begin(), n.end(), b))
        out.push_back(EdgeAdd{ca, g.flat({Side::B, b})});
    for (auto b : n)
      if (!target.count(b)) out.push_back(EdgeDelete{ca, g.flat({Side::B, b})});
  }
}

}  // namespace

OperationSequence cover_to_sequence(const BipartiteGraph& g, const APartitioningCover& c) {
  check_cover(g, c);
  const auto sets = canonical_sets(c.sets);
  OperationSequence out;
  emit_edits(g, sets, out);
  const auto member = memberships(g, sets);
  auto next = static_cast<CopyId>(g.vertex_count());
  for (std::uint32_t b = 0; b < g.b_count(); ++b) {
    const auto fb = g.flat({Side::B, b});
    if (member[fb].size() < 2) continue;
    std::vector<std::vector<CopyId>> parts;
    for (auto i : member[fb]) {
      std::vector<CopyId> part;
      for (const auto& v : sets[i])
        if (v.side == Side::A) part.push_back(v.index);
      parts.push_back(std::move(part));
    }
    split_chain(fb, parts, next, out);
  }
  return out;
}

APartitioningCover sequence_to_cover(const BipartiteGraph& g, const OperationSequence& seq) {
  EditedGraph eg = apply_sequence(g, seq);
  for (std::uint32_t a = 0; a < g.a_count(); ++a)
    if (eg.copy_count({Side::A, a}) != 1)
      throw CoverError("sequence splits A-vertex " + to_string({Side::A, a}));
  const auto snap = eg.snapshot();
  if (!is_biclique_union(snap.graph))
    throw CoverError("sequence does not produce a union of bicliques");
  std::set<VertexSet> sets;
  for (const auto& comp : connected_components(snap.graph)) {
    VertexSet s;
    for (const auto& v : comp) s.push_back(eg.origin(snap.ids[snap.graph.flat(v)]));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    sets.insert(std::move(s));
  }
  return {std::vector<VertexSet>(sets.begin(), sets.end())};
}

bool is_twin_adapted(const BipartiteGraph& g, const std::vector<VertexSet>& sets) {
  const auto tc = twin_classes(g);
  for (const auto& raw : sets) {
    VertexSet s = raw;
    std::sort(s.begin(), s.end());
    for (const auto& cls : tc.classes) {
      const auto inside = std::count_if(cls.begin(), cls.end(),
                                        [&](const VertexRef& v) { return has_vertex(s, v); });
      if (inside != 0 && static_cast<std::size_t>(inside) != cls.size()) return false;
    }
  }
  return true;
}

APartitioningCover twin_adapt(const BipartiteGraph& g, const APartitioningCover& c) {
  check_cover(g, c);
  std::vector<VertexSet> sets = canonical_sets(c.sets);
  const auto tc = twin_classes(g);

  auto erase_from = [](VertexSet& s, VertexRef v) {
    s.erase(std::remove(s.begin(), s.end(), v), s.end());
  };
  auto add_to = [](VertexSet& s, VertexRef v) {
    if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
  };

  // A-side: every twin joins the set of its cheapest twin. Moving an A-vertex
  // changes only its own cost.
  for (const auto& cls : tc.classes) {
    if (cls.front().side != Side::A || cls.size() < 2) continue;
    const auto costs = cover_cost(g, {sets}).a_costs;
    VertexRef best = cls.front();
    for (const auto& v : cls)
      if (costs[v.index] < costs[best.index]) best = v;
    std::size_t target = 0;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (std::find(sets[i].begin(), sets[i].end(), best) != sets[i].end()) target = i;
    for (const auto& v : cls) {
      if (v == best) continue;
      for (auto& s : sets) erase_from(s, v);
      add_to(sets[target], v);
    }
    // Emptied sets must go before the next cost evaluation.
    std::erase_if(sets, [](const VertexSet& s) { return s.empty(); });
  }

  // B-side: q(b) = (r−1) + additions inside b's sets + deletions outside
  // them; every twin copies the memberships of the minimizer.
  auto q = [&](VertexRef b) {
    const auto& n = g.b_neighbors(b.index);
    std::size_t r = 0, cost = 0;
    std::set<std::uint32_t> covered;
    for (const auto& s : sets) {
      if (std::find(s.begin(), s.end(), b) == s.end()) continue;
      ++r;
      for (const auto& v : s) {
        if (v.side != Side::A) continue;
        covered.insert(v.index);
        if (!std::binary_search(n.begin(), n.end(), v.index)) ++cost;
      }
    }
    for (auto a : n)
      if (!covered.count(a)) ++cost;
    return cost + (r > 0 ? r - 1 : 0);
  };
  for (const auto& cls : tc.classes) {
    if (cls.front().side != Side::B || cls.size() < 2) continue;
    VertexRef best = cls.front();
    std::size_t best_q = q(best);
    for (const auto& v : cls) {
      const auto qv = q(v);
      if (qv < best_q) {
        best = v;
        best_q = qv;
      }
    }
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (std::find(sets[i].begin(), sets[i].end(), best) != sets[i].end()) targets.push_back(i);
    for (const auto& v : cls) {
      if (v == best) continue;
      for (auto& s : sets) erase_from(s, v);
      for (auto i : targets) add_to(sets[i], v);
    }
  }
  std::erase_if(sets, [](const VertexSet& s) { return s.empty(); });
  sets = canonical_sets(std::move(sets));
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return {sets};
}

std::size_t bicover_cost(const BipartiteGraph& g, const BiclusterCover& c) {
  check_cover(g, c);
  const auto member = memberships(g, c.sets);
  std::size_t cost = 0;
  for (const auto& m : member) cost += m.size() - 1;
  for (std::uint32_t a = 0; a < g.a_count(); ++a) {
    std::set<std::uint32_t> target;
    for (auto i : member[a])
      for (const auto& v : c.sets[i])
        if (v.side == Side::B) target.insert(v.index);
    const auto& n = g.a_neighbors(a);
    for (auto b : target)
      if (!std::binary_search(n.begin(), n.end(), b)) ++cost;
    for (auto b : n)
      if (!target.count(b)) ++cost;
  }
  return cost;
}

OperationSequence bicover_to_sequence(const BipartiteGraph& g, const BiclusterCover& c) {
  check_cover(g, c);
  const auto sets = canonical_sets(c.sets);
  OperationSequence out;
  emit_edits(g, sets, out);
  const auto member = memberships(g, sets);
  auto next = static_cast<CopyId>(g.vertex_count());

  // copy_of[a][t] is the copy of A-vertex a that ends up in its t-th set.
  std::vector<std::vector<CopyId>> copy_of(g.a_count());
  for (std::uint32_t a = 0; a < g.a_count(); ++a) {
    std::vector<std::vector<CopyId>> parts;
    for (auto i : member[a]) {
      std::vector<CopyId> part;
      for (const auto& v : sets[i])
        if (v.side == Side::B) part.push_back(g.flat(v));
      parts.push_back(std::move(part));
    }
    split_chain(a, parts, next, out, &copy_of[a]);
  }
  auto copy_in = [&](std::uint32_t a, std::size_t set_index) {
    const auto& m = member[a];
    const auto pos = std::find(m.begin(), m.end(), set_index) - m.begin();
    return copy_of[a][static_cast<std::size_t>(pos)];
  };
  for (std::uint32_t b = 0; b < g.b_count(); ++b) {
    const auto fb = g.flat({Side::B, b});
    if (member[fb].size() < 2) continue;
    std::vector<std::vector<CopyId>> parts;
    for (auto i : member[fb]) {
      std::vector<CopyId> part;
      for (const auto& v : sets[i])
        if (v.side == Side::A) part.push_back(copy_in(v.index, i));
      std::sort(part.begin(), part.end());
      parts.push_back(std::move(part));
    }
    split_chain(fb, parts, next, out);
  }
  return out;
}

BiclusterCover as_bicluster_cover(const APartitioningCover& c) { return {c.sets}; }

APartitioningCover component_cover(const BipartiteGraph& g) {
  return {connected_components(g)};
}

}  // namespace bcevs
