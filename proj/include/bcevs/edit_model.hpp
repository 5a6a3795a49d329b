#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bcevs/graph.hpp"

namespace bcevs {

// Vertices of an edited graph. The original vertices keep their flat ids;
// every split retires the split copy and allocates two fresh ids, the first
// for the n1 side and the second for the n2 side.
using CopyId = std::uint32_t;

struct EdgeAdd {
  CopyId a = 0;  // copy on side A
  CopyId b = 0;  // copy on side B
  friend bool operator==(const EdgeAdd&, const EdgeAdd&) = default;
};

struct EdgeDelete {
  CopyId a = 0;
  CopyId b = 0;
  friend bool operator==(const EdgeDelete&, const EdgeDelete&) = default;
};

struct Split {
  CopyId v = 0;
  std::vector<CopyId> n1;
  std::vector<CopyId> n2;
  friend bool operator==(const Split&, const Split&) = default;
};

using Operation = std::variant<EdgeAdd, EdgeDelete, Split>;
using OperationSequence = std::vector<Operation>;

struct Mode {
  enum class Kind : std::uint8_t { Bcevs, Bceovs };
  Kind kind = Kind::Bcevs;
  Side split_side = Side::B;  // meaningful for Bceovs only

  static Mode bcevs() { return {Kind::Bcevs, Side::B}; }
  static Mode bceovs(Side split_side = Side::B) { return {Kind::Bceovs, split_side}; }

  bool one_sided() const { return kind == Kind::Bceovs; }
  bool may_split(Side s) const { return kind == Kind::Bcevs || s == split_side; }

  friend bool operator==(const Mode&, const Mode&) = default;
};

std::string to_string(const Mode& m);

struct Instance {
  BipartiteGraph graph;
  std::size_t k = 0;
  Mode mode = Mode::bceovs();
};

struct SplitPolicy {
  bool exclusive = false;  // forbid n1 and n2 from overlapping
};

class SequenceError : public std::runtime_error {
 public:
  SequenceError(std::size_t index, std::string reason, const std::string& what)
      : std::runtime_error(what), index_(index), reason_(std::move(reason)) {}

  std::size_t index() const { return index_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t index_;
  std::string reason_;
};

class EditedGraph {
 public:
  explicit EditedGraph(const BipartiteGraph& g);

  // Applies one operation; throws SequenceError (index 0) when it is not
  // legal in the current graph.
  void apply(const Operation& op, const SplitPolicy& policy = {});

  std::size_t original_vertex_count() const { return original_count_; }
  CopyId next_id() const { return static_cast<CopyId>(origin_.size()); }
  bool known(CopyId c) const { return c < origin_.size(); }
  bool alive(CopyId c) const { return known(c) && alive_[c]; }
  Side side(CopyId c) const { return origin_.at(c).side; }
  VertexRef origin(CopyId c) const { return origin_.at(c); }
  const std::vector<CopyId>& neighbors(CopyId c) const { return adj_.at(c); }
  bool adjacent(CopyId u, CopyId v) const;

  std::vector<CopyId> live_copies() const;
  std::size_t copy_count(VertexRef original) const;
  std::size_t split_count() const { return splits_; }
  std::size_t edge_count() const;

  // The live copies as a plain graph; ids[f] is the copy behind flat id f.
  struct Snapshot {
    BipartiteGraph graph;
    std::vector<CopyId> ids;
  };
  Snapshot snapshot() const;

 private:
  void fail(const std::string& reason, const std::string& message) const;

  std::size_t original_count_ = 0;
  std::vector<VertexRef> origin_;
  std::vector<bool> alive_;
  std::vector<std::vector<CopyId>> adj_;  // sorted
  std::vector<std::size_t> copies_;       // live copies per original flat id
  std::vector<std::uint32_t> original_flat_;
  std::size_t splits_ = 0;
};

// Throws SequenceError carrying the failing operation index.
EditedGraph apply_sequence(const BipartiteGraph& g, const OperationSequence& seq,
                           const SplitPolicy& policy = {});

struct Validation {
  bool ok = false;
  std::string reason;  // machine-readable, empty when ok
  std::optional<std::size_t> failing_index;
  std::string message;

  explicit operator bool() const { return ok; }
};

Validation validate_solution(const BipartiteGraph& g, const OperationSequence& seq,
                             const Mode& mode, const SplitPolicy& policy = {});

std::size_t sequence_cost(const OperationSequence& seq);

bool is_deletion_only(const OperationSequence& seq);

// Rewrites a sequence written against g.transposed() into one against g.
OperationSequence transpose_sequence(const OperationSequence& seq, const BipartiteGraph& g);

}  // namespace bcevs
