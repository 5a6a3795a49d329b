#pragma once

#include <cstddef>
#include <optional>

#include "bcevs/edit_model.hpp"
#include "bcevs/exact_solver.hpp"
#include "bcevs/graph.hpp"

namespace bcevs {

struct OracleOptions {
  // Prune with geodesic_packing_bound; only safe if that bound is admissible.
  bool packing_prune = false;
  bool exclusive_splits = false;
  bool memo = true;
  std::size_t max_vertices = 14;
  std::size_t max_budget = 8;
};

// Brute force over operation sequences: iterative deepening that branches on
// the first conflict path a-b-c-d (delete ab, bc or cd, add ad, split b with a
// and c apart, split c with b and d apart). A null budget means max_budget.
SolveOutcome oracle_search(const BipartiteGraph& g, std::optional<std::size_t> budget,
                           const Mode& mode, const OracleOptions& options = {});

}  // namespace bcevs
