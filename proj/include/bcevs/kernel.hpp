#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bcevs/edit_model.hpp"
#include "bcevs/graph.hpp"

namespace bcevs {

// An instance derived from another; vertex_map[f] is the original vertex
// behind flat id f of the derived graph.
struct Reduction {
  Instance instance;
  std::vector<VertexRef> vertex_map;
};

struct KernelReport {
  std::size_t original_vertices = 0;
  std::size_t original_edges = 0;
  std::size_t reduced_vertices = 0;
  std::size_t reduced_edges = 0;
  std::size_t removed_biclique_vertices = 0;
  std::size_t removed_twin_vertices = 0;
  std::size_t components = 0;
  std::string certificate;  // "none", "trivial-yes", "path"
};

struct KernelOutcome {
  enum class Kind { Reduced, TrivialNo, TrivialYes };
  Kind kind = Kind::Reduced;
  // Reduced: the kernel. TrivialNo: a path on 4(k+1) vertices, itself a no
  // instance. TrivialYes: the empty graph.
  Instance instance;
  std::vector<VertexRef> vertex_map;  // Reduced only
  std::string reason;
  KernelReport report;
};

std::string to_string(KernelOutcome::Kind kind);

// Per-component vertex bound on a reduced instance.
std::size_t kernel_component_bound(std::size_t k);

Reduction remove_biclique_components(const Instance& inst);

// Keeps the k+1 lowest-index vertices of every larger twin class.
Reduction cap_twin_classes(const Instance& inst);

struct BoundCheck {
  bool pass = true;
  std::optional<std::size_t> component;  // index into connected_components
  std::string reason;
};

// Per connected component: too many twin classes on either side forces a cost
// above k. The partition side is the side that is not split.
BoundCheck bound_check(const Instance& inst);

// Instances must be one-sided; throws std::invalid_argument otherwise.
KernelOutcome kernelize(const Instance& inst);

}  // namespace bcevs
