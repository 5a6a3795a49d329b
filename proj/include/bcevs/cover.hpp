#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bcevs/edit_model.hpp"
#include "bcevs/graph.hpp"

namespace bcevs {

class CoverError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Set system over A ∪ B whose nonempty A-restrictions partition A. Sets
// without A-vertices are allowed and hold B-vertices that end up in a
// degenerate biclique of their own.
struct APartitioningCover {
  std::vector<VertexSet> sets;
  friend bool operator==(const APartitioningCover&, const APartitioningCover&) = default;
};

// Two-sided variant: no partition constraint on either side.
struct BiclusterCover {
  std::vector<VertexSet> sets;
  friend bool operator==(const BiclusterCover&, const BiclusterCover&) = default;
};

struct CoverCostBreakdown {
  std::vector<std::size_t> a_costs;
  std::vector<std::size_t> b_costs;
  std::size_t total = 0;
};

// Sorts every set and the list of sets; canonical form used for comparisons.
std::vector<VertexSet> canonical_sets(std::vector<VertexSet> sets);

// Throws CoverError describing the first violated invariant.
void check_cover(const BipartiteGraph& g, const APartitioningCover& c);
void check_cover(const BipartiteGraph& g, const BiclusterCover& c);

CoverCostBreakdown cover_cost(const BipartiteGraph& g, const APartitioningCover& c);

// Edits per A-vertex first (additions, then deletions), then j-1 splits for
// every B-vertex lying in j sets. Length equals cover_cost(g, c).total.
OperationSequence cover_to_sequence(const BipartiteGraph& g, const APartitioningCover& c);

// Reads the final bicliques of a one-sided solution (splits on B only) back as
// an A-partitioning cover. Throws SequenceError / CoverError on bad input.
APartitioningCover sequence_to_cover(const BipartiteGraph& g, const OperationSequence& seq);

bool is_twin_adapted(const BipartiteGraph& g, const std::vector<VertexSet>& sets);

// Returns a twin-adapted cover whose cost does not exceed cost(c).
APartitioningCover twin_adapt(const BipartiteGraph& g, const APartitioningCover& c);

// Σ_v (multiplicity(v) − 1) + |E Δ E'|, E' being the pairs that share a set.
std::size_t bicover_cost(const BipartiteGraph& g, const BiclusterCover& c);

// Edits on the original graph, then splits of A-vertices, then of B-vertices.
// Length equals bicover_cost(g, c).
OperationSequence bicover_to_sequence(const BipartiteGraph& g, const BiclusterCover& c);

BiclusterCover as_bicluster_cover(const APartitioningCover& c);

// One set per connected component; a zero-cost cover when g is already a
// union of bicliques.
APartitioningCover component_cover(const BipartiteGraph& g);

}  // namespace bcevs
