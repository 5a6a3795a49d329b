#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bcevs/exact_solver.hpp"
#include "bcevs/graph.hpp"

namespace bcevs {

bool is_tree(const BipartiteGraph& g);

// Postorder numbering 1..n that visits deeper child subtrees first (ties by
// flat id). Arrays indexed by number have an unused slot 0.
struct TreeNumbering {
  std::vector<std::uint32_t> number_of;  // by flat id
  std::vector<std::uint32_t> vertex_at;  // by number: flat id
  std::vector<std::uint32_t> parent;     // by number; 0 for the root
  std::vector<std::uint32_t> phi;        // by number: smallest descendant
  std::vector<std::vector<std::uint32_t>> children;  // by number, in visiting order

  std::size_t size() const { return number_of.size(); }
  std::uint32_t root() const { return static_cast<std::uint32_t>(size()); }
};

// Throws GraphError when the input is not a tree.
TreeNumbering number_tree(const BipartiteGraph& tree, VertexRef root);

enum class TreeChoice : std::uint8_t {
  Star,          // already a star, nothing to do
  SimpleCut,     // y has one other neighbor z: delete yz
  CutParent,     // delete xy
  CutChildren,   // delete every edge from y except xy
};

struct TreeDPTable {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> memo;
  std::map<std::pair<std::uint32_t, std::uint32_t>, TreeChoice> choice;
};

class TreeSolver {
 public:
  // Roots the tree at `root` (flat id 0 by default). Throws GraphError when
  // the input is not a tree.
  explicit TreeSolver(const BipartiteGraph& tree, std::optional<VertexRef> root = std::nullopt);
  ~TreeSolver();
  TreeSolver(const TreeSolver&) = delete;
  TreeSolver& operator=(const TreeSolver&) = delete;

  // Value of T[i,j] (numbers, inclusive). Throws std::invalid_argument unless
  // T[i,j] is connected.
  std::size_t interval_value(std::uint32_t i, std::uint32_t j);

  // Optimum with a deletion-only witness.
  SolveResult solve();

  const TreeNumbering& numbering() const;
  // Every connected interval met so far.
  const TreeDPTable& table() const;
  // Distinct subproblems evaluated so far.
  std::size_t states() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SolveResult solve_tree(const BipartiteGraph& tree);

}  // namespace bcevs
