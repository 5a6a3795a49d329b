#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcevs/cover.hpp"
#include "bcevs/edit_model.hpp"
#include "bcevs/graph.hpp"

namespace bcevs {

class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverStats {
  std::uint64_t nodes = 0;
  double time_ms = 0.0;
};

struct SolveResult {
  std::size_t value = 0;
  OperationSequence witness;
  std::optional<std::vector<VertexSet>> witness_cover;
  SolverStats stats;
};

enum class SolveStatus : std::uint8_t { Solved, Refused, ExceedsBudget };

std::string to_string(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::Refused;
  std::optional<SolveResult> result;  // set iff status == Solved
  std::string message;
  SolverStats stats;

  bool solved() const { return status == SolveStatus::Solved; }
  // Throws std::logic_error unless solved.
  const SolveResult& get() const;
};

struct ExactOptions {
  std::optional<std::size_t> budget;
  Side split_side = Side::B;  // one-sided solver only
  // Partition search refuses more A-twin-classes than this.
  std::size_t max_classes = 12;
  // Two-sided search refuses graphs above max_vertices unless a budget of at
  // most max_budget is given.
  std::size_t max_vertices = 14;
  std::size_t max_budget = 6;
};

// Minimum-cost A-partitioning cover, searched over partitions of A-twin-classes
// (splits on options.split_side, partition on the other side).
SolveOutcome solve_bceovs(const BipartiteGraph& g, const ExactOptions& options = {});

// Two-sided optimum: edits chosen by branching on conflict paths, remaining
// conflicts settled by min_split_biclique_cover.
SolveOutcome solve_bcevs(const BipartiteGraph& g, const ExactOptions& options = {});

struct SplitCover {
  std::size_t splits = 0;  // Σ (multiplicity − 1)
  std::vector<VertexSet> sets;
};

// Cheapest cover of the vertices and edges of g by bicliques of g, if its
// cost is at most split_budget. With split_side set, vertices on the other
// side must lie in exactly one set. Throws SizeGuardError above 64 vertices.
std::optional<SplitCover> min_split_biclique_cover(const BipartiteGraph& g,
                                                   std::size_t split_budget,
                                                   std::optional<Side> split_side = std::nullopt);

// Reference two-sided solver: edit sets by increasing size, each checked with
// min_split_biclique_cover. Exponential in the number of vertex pairs.
SolveOutcome min_bicover_exhaustive(const BipartiteGraph& g, std::size_t max_cost);

}  // namespace bcevs
