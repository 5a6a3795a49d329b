#include "bcevs/edit_model.hpp"

#include <algorithm>
#include <iterator>

namespace bcevs {

std::string to_string(const Mode& m) {
  if (m.kind == Mode::Kind::Bcevs) return "bcevs";
  return std::string("bceovs(") + side_char(m.split_side) + ")";
}

EditedGraph::EditedGraph(const BipartiteGraph& g) : original_count_(g.vertex_count()) {
  const auto n = g.vertex_count();
  origin_.reserve(n);
  adj_.resize(n);
  for (std::uint32_t f = 0; f < n; ++f) {
    const VertexRef v = g.ref(f);
    origin_.push_back(v);
    for (auto u : g.neighbors(v)) adj_[f].push_back(g.flat({opposite(v.side), u}));
    original_flat_.push_back(f);
  }
  alive_.assign(n, true);
  copies_.assign(n, 1);
}

void EditedGraph::fail(const std::string& reason, const std::string& message) const {
  throw SequenceError(0, reason, message);
}

bool EditedGraph::adjacent(CopyId u, CopyId v) const {
  if (!alive(u) || !alive(v)) return false;
  const auto& n = adj_[u];
  return std::binary_search(n.begin(), n.end(), v);
}

namespace {

std::string name(CopyId c) { return "#" + std::to_string(c); }

std::vector<CopyId> sorted_unique(std::vector<CopyId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void insert_sorted(std::vector<CopyId>& v, CopyId x) {
  v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void erase_sorted(std::vector<CopyId>& v, CopyId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

void EditedGraph::apply(const Operation& op, const SplitPolicy& policy) {
  auto check_pair = [&](CopyId a, CopyId b) {
    if (!known(a) || !known(b)) fail("unknown-copy", "operation names an unknown copy");
    if (!alive_[a] || !alive_[b]) fail("dead-copy", "operation names a copy that was split");
    if (side(a) != Side::A || side(b) != Side::B)
      fail("wrong-side", "edge operation must name an A-copy then a B-copy");
  };
  if (const auto* add = std::get_if<EdgeAdd>(&op)) {
    check_pair(add->a, add->b);
    if (adjacent(add->a, add->b))
      fail("present-edge", "edge " + name(add->a) + "-" + name(add->b) + " already present");
    insert_sorted(adj_[add->a], add->b);
    insert_sorted(adj_[add->b], add->a);
  } else if (const auto* del = std::get_if<EdgeDelete>(&op)) {
    check_pair(del->a, del->b);
    if (!adjacent(del->a, del->b))
      fail("missing-edge", "edge " + name(del->a) + "-" + name(del->b) + " not present");
    erase_sorted(adj_[del->a], del->b);
    erase_sorted(adj_[del->b], del->a);
  } else {
    const auto& split = std::get<Split>(op);
    const CopyId v = split.v;
    if (!known(v)) fail("unknown-copy", "split names an unknown copy");
    if (!alive_[v]) fail("dead-copy", "split names a copy that was already split");
    auto n1 = sorted_unique(split.n1);
    auto n2 = sorted_unique(split.n2);
    std::vector<CopyId> both;
    std::set_union(n1.begin(), n1.end(), n2.begin(), n2.end(), std::back_inserter(both));
    if (both != adj_[v]) fail("split-union", "n1 and n2 must cover exactly N(" + name(v) + ")");
    if (policy.exclusive) {
      std::vector<CopyId> common;
      std::set_intersection(n1.begin(), n1.end(), n2.begin(), n2.end(),
                            std::back_inserter(common));
      if (!common.empty()) fail("exclusive", "exclusive split with overlapping parts");
    }
    const CopyId c1 = next_id(), c2 = c1 + 1;
    for (CopyId part = 0; part < 2; ++part) {
      origin_.push_back(origin_[v]);
      original_flat_.push_back(original_flat_[v]);
      alive_.push_back(true);
      adj_.push_back(part == 0 ? n1 : n2);
    }
    for (auto u : adj_[v]) erase_sorted(adj_[u], v);
    for (auto u : n1) insert_sorted(adj_[u], c1);
    for (auto u : n2) insert_sorted(adj_[u], c2);
    adj_[v].clear();
    alive_[v] = false;
    ++copies_[original_flat_[v]];
    ++splits_;
  }
}

std::vector<CopyId> EditedGraph::live_copies() const {
  std::vector<CopyId> out;
  for (CopyId c = 0; c < origin_.size(); ++c)
    if (alive_[c]) out.push_back(c);
  return out;
}

std::size_t EditedGraph::copy_count(VertexRef original) const {
  for (std::size_t f = 0; f < original_count_; ++f)
    if (origin_[f] == original) return copies_[f];
  return 0;
}

std::size_t EditedGraph::edge_count() const {
  std::size_t twice = 0;
  for (CopyId c = 0; c < origin_.size(); ++c)
    if (alive_[c]) twice += adj_[c].size();
  return twice / 2;
}

EditedGraph::Snapshot EditedGraph::snapshot() const {
  std::vector<CopyId> a_ids, b_ids;
  for (auto c : live_copies()) (side(c) == Side::A ? a_ids : b_ids).push_back(c);
  std::vector<std::uint32_t> pos(origin_.size(), 0);
  for (std::uint32_t i = 0; i < a_ids.size(); ++i) pos[a_ids[i]] = i;
  for (std::uint32_t i = 0; i < b_ids.size(); ++i) pos[b_ids[i]] = i;
  EdgeList edges;
  for (auto a : a_ids)
    for (auto b : adj_[a]) edges.emplace_back(pos[a], pos[b]);
  Snapshot out{BipartiteGraph(a_ids.size(), b_ids.size(), edges), a_ids};
  out.ids.insert(out.ids.end(), b_ids.begin(), b_ids.end());
  return out;
}

EditedGraph apply_sequence(const BipartiteGraph& g, const OperationSequence& seq,
                           const SplitPolicy& policy) {
  EditedGraph eg(g);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    try {
      eg.apply(seq[i], policy);
    } catch (const SequenceError& e) {
      throw SequenceError(i, e.reason(),
                          "operation " + std::to_string(i) + ": " + std::string(e.what()));
    }
  }
  return eg;
}

Validation validate_solution(const BipartiteGraph& g, const OperationSequence& seq,
                             const Mode& mode, const SplitPolicy& policy) {
  EditedGraph eg(g);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (const auto* split = std::get_if<Split>(&seq[i])) {
      if (eg.known(split->v) && !mode.may_split(eg.side(split->v))) {
        return {false, "split-side", i,
                "operation " + std::to_string(i) + ": " + to_string(mode) +
                    " forbids splitting side " + side_char(eg.side(split->v))};
      }
    }
    try {
      eg.apply(seq[i], policy);
    } catch (const SequenceError& e) {
      return {false, e.reason(), i, "operation " + std::to_string(i) + ": " + e.what()};
    }
  }
  if (!is_biclique_union(eg.snapshot().graph))
    return {false, "not-biclique-union", std::nullopt,
            "result is not a disjoint union of bicliques"};
  return {true, "", std::nullopt, "ok"};
}

std::size_t sequence_cost(const OperationSequence& seq) { return seq.size(); }

bool is_deletion_only(const OperationSequence& seq) {
  return std::all_of(seq.begin(), seq.end(),
                     [](const Operation& op) { return std::holds_alternative<EdgeDelete>(op); });
}

OperationSequence transpose_sequence(const OperationSequence& seq, const BipartiteGraph& g) {
  const auto a = static_cast<CopyId>(g.a_count());
  const auto b = static_cast<CopyId>(g.b_count());
  auto map = [&](CopyId id) -> CopyId {
    if (id < b) return a + id;
    if (id < a + b) return id - b;
    return id;
  };
  auto map_all = [&](std::vector<CopyId> ids) {
    for (auto& id : ids) id = map(id);
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  OperationSequence out;
  out.reserve(seq.size());
  for (const auto& op : seq) {
    if (const auto* add = std::get_if<EdgeAdd>(&op)) {
      out.push_back(EdgeAdd{map(add->b), map(add->a)});
    } else if (const auto* del = std::get_if<EdgeDelete>(&op)) {
      out.push_back(EdgeDelete{map(del->b), map(del->a)});
    } else {
      const auto& s = std::get<Split>(op);
      out.push_back(Split{map(s.v), map_all(s.n1), map_all(s.n2)});
    }
  }
  return out;
}

}  // namespace bcevs
