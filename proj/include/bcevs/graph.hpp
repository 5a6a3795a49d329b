#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bcevs {

enum class Side : std::uint8_t { A, B };

constexpr Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }
char side_char(Side s);

struct VertexRef {
  Side side = Side::A;
  std::uint32_t index = 0;

  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

std::string to_string(const VertexRef& v);

using VertexSet = std::vector<VertexRef>;
using EdgeList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two-sided graph with edges only between A and B. Vertices also have a flat
// id: A-vertices occupy [0, a_count), B-vertices [a_count, a_count+b_count).
// The flat order is the tie-breaking order used everywhere.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  // Throws GraphError on out-of-range endpoints. Duplicate edges are dropped.
  BipartiteGraph(std::size_t a_count, std::size_t b_count,
                 std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);
  BipartiteGraph(std::size_t a_count, std::size_t b_count,
                 std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t a_count() const { return a_adj_.size(); }
  std::size_t b_count() const { return b_adj_.size(); }
  std::size_t count(Side s) const { return s == Side::A ? a_count() : b_count(); }
  std::size_t vertex_count() const { return a_count() + b_count(); }
  std::size_t edge_count() const { return edge_count_; }

  // Sorted indices of the neighbors, which live on the opposite side.
  const std::vector<std::uint32_t>& neighbors(VertexRef v) const;
  const std::vector<std::uint32_t>& a_neighbors(std::uint32_t a) const { return a_adj_.at(a); }
  const std::vector<std::uint32_t>& b_neighbors(std::uint32_t b) const { return b_adj_.at(b); }
  std::size_t degree(VertexRef v) const { return neighbors(v).size(); }
  bool has_edge(std::uint32_t a, std::uint32_t b) const;
  bool adjacent(VertexRef u, VertexRef v) const;
  bool contains(VertexRef v) const { return v.index < count(v.side); }

  // (A-index, B-index) pairs in lexicographic order.
  EdgeList edges() const;

  std::uint32_t flat(VertexRef v) const;
  VertexRef ref(std::uint32_t flat_id) const;

  // Subgraph induced by `keep`; the i-th output vertex on each side is the
  // i-th kept vertex of that side in sorted order. Returns the old refs too.
  std::pair<BipartiteGraph, VertexSet> induced(const VertexSet& keep) const;
  // Swaps the roles of A and B.
  BipartiteGraph transposed() const;

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  void build(std::size_t a_count, std::size_t b_count,
             std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

  std::vector<std::vector<std::uint32_t>> a_adj_;
  std::vector<std::vector<std::uint32_t>> b_adj_;
  std::size_t edge_count_ = 0;
};

BipartiteGraph build_graph(std::size_t a_count, std::size_t b_count, const EdgeList& edges);

// Components ordered by their smallest flat id; vertices inside sorted.
std::vector<VertexSet> connected_components(const BipartiteGraph& g);

// nullopt stands for infinity.
std::optional<std::size_t> distance(const BipartiteGraph& g, VertexRef u, VertexRef v);

using Geodesic = std::array<VertexRef, 4>;

// Lexicographically smallest (by flat id) path a-b-c-d whose endpoints are at
// distance 3, i.e. an induced P4.
std::optional<Geodesic> find_conflict_geodesic(const BipartiteGraph& g);

// Every induced P4, each listed once (oriented with flat(a) < flat(d)).
std::vector<Geodesic> all_conflict_geodesics(const BipartiteGraph& g);

struct TwinClassDecomposition {
  std::vector<VertexSet> classes;        // ordered by smallest flat id
  std::vector<std::size_t> class_of;     // indexed by flat id

  std::size_t class_count(Side s) const;
};

TwinClassDecomposition twin_classes(const BipartiteGraph& g);

bool is_biclique_union(const BipartiteGraph& g);

// Greedy packing of conflict geodesics that pairwise share no edge and no
// inner vertex and have distinct endpoint pairs. Each such geodesic needs its
// own operation, so the size is a lower bound on the optimum.
std::size_t geodesic_packing_bound(const BipartiteGraph& g);
std::vector<Geodesic> geodesic_packing(const BipartiteGraph& g);

}  // namespace bcevs
