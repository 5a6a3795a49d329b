#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bcevs/cover.hpp"
#include "bcevs/edit_model.hpp"
#include "bcevs/exact_solver.hpp"
#include "bcevs/generators.hpp"
#include "bcevs/graph.hpp"
#include "bcevs/kernel.hpp"

namespace bcevs {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Graph text format:
//   c <comment>          (a "c k <int>" comment carries the budget)
//   p bcg <nA> <nB> <m>
//   e <a> <b>            (1-based, m lines)
struct GraphFile {
  BipartiteGraph graph;
  std::optional<std::size_t> k;
};

GraphFile read_bcg(std::string_view text);
std::string write_bcg(const BipartiteGraph& g, std::optional<std::size_t> k = std::nullopt,
                      const std::vector<std::string>& comments = {});

// Names used in solution files: "a1", "b3" for original vertices and
// "<orig>#<t>" for the t-th copy created by the sequence (t from 1).
std::vector<std::string> copy_names(const BipartiteGraph& g, const OperationSequence& seq);

nlohmann::json operations_to_json(const BipartiteGraph& g, const OperationSequence& seq);
OperationSequence operations_from_json(const BipartiteGraph& g, const nlohmann::json& ops);

struct SolutionFile {
  std::optional<Mode> mode;
  std::optional<std::size_t> value;
  OperationSequence operations;
};

nlohmann::json solution_to_json(const BipartiteGraph& g, const Mode& mode, const SolveResult& r);
SolutionFile solution_from_json(const BipartiteGraph& g, const nlohmann::json& j);

nlohmann::json cover_to_json(const std::vector<VertexSet>& sets);
std::vector<VertexSet> cover_from_json(const nlohmann::json& j);

nlohmann::json kernel_report_to_json(const KernelOutcome& k);
nlohmann::json reduction_map_to_json(const ReductionMap& map);

Mode parse_mode(std::string_view mode, std::string_view split_side = "B");

std::string read_file(const std::string& path);  // "-" reads stdin
void write_file(const std::string& path, const std::string& text);

}  // namespace bcevs
