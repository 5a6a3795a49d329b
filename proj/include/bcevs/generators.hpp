#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bcevs/cover.hpp"
#include "bcevs/edit_model.hpp"
#include "bcevs/graph.hpp"

namespace bcevs {

struct Literal {
  std::uint32_t var = 0;  // 0-based
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

class CnfError : public std::invalid_argument {
 public:
  CnfError(std::size_t line, const std::string& what)
      : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct CnfFormula {
  std::size_t variable_count = 0;
  std::vector<Clause> clauses;
  // Per variable, the clauses it occurs in. Clause order, except that a
  // variable with two positive and two negative occurrences alternates +,−,+,−.
  std::vector<std::vector<std::size_t>> occurrences;

  // Validates the clauses and builds the occurrence lists.
  static CnfFormula from_clauses(std::size_t variable_count, std::vector<Clause> clauses);

  bool satisfied_by(const std::vector<bool>& assignment) const;
  std::size_t occurrence_count(std::uint32_t var) const { return occurrences.at(var).size(); }
};

// DIMACS CNF; the "p cnf" header is optional, clauses end with 0.
CnfFormula parse_dimacs_cnf(std::string_view text);
std::string write_dimacs_cnf(const CnfFormula& f);

struct ReductionMap {
  std::size_t a_count = 0;
  // cycles[v][p-1] is cycle vertex v_p.
  std::vector<std::vector<VertexRef>> cycles;
  std::vector<VertexRef> clause_vertex;
  // Cycle position (1-based) of the variable-clause vertex of each literal.
  std::vector<std::array<std::uint32_t, 3>> link_position;
  CnfFormula formula;

  CopyId copy_id(VertexRef v) const;
};

struct SatInstance {
  Instance instance;  // one-sided, k = 8m
  ReductionMap map;
};

// Cycle vertices with even position and the clause vertices form side A, odd
// positions side B. Throws CnfError for a variable without occurrences.
SatInstance sat_to_instance(const CnfFormula& f);

// Deletions only: two per cycle triple, two per satisfied clause, three per
// unsatisfied clause.
OperationSequence assignment_to_sequence(const ReductionMap& map, const std::vector<bool>& assignment);

// Three 4-cycles glued at two hubs; bcevs = 2 and bceovs = 3.
BipartiteGraph figure1_graph();

enum class FamilyKind { Path, Cycle, Star, Biclique };

// Path and cycle vertices alternate A(0), B(0), A(1), B(1), ...
BipartiteGraph path_graph(std::size_t n);
BipartiteGraph cycle_graph(std::size_t n);       // n even and at least 4
BipartiteGraph star_graph(std::size_t leaves);   // K_{1,leaves}, center on A
BipartiteGraph biclique_graph(std::size_t p, std::size_t q);
BipartiteGraph family(FamilyKind kind, std::size_t p, std::size_t q = 0);

struct PlantedInstance {
  BipartiteGraph graph;
  APartitioningCover truth;  // cost = overlap_splits + noise_edits
};

PlantedInstance random_planted(const std::vector<std::size_t>& a_parts,
                               const std::vector<std::size_t>& b_parts, std::size_t overlap_splits,
                               std::size_t noise_edits, std::uint64_t seed);

// Uniform labelled tree on n vertices (Prüfer code), 2-coloured from vertex 0.
BipartiteGraph random_tree(std::size_t n, std::uint64_t seed);

// One representative per isomorphism class of trees on n vertices (n <= 10).
std::vector<BipartiteGraph> all_free_trees(std::size_t n);

// Each (a, b) pair is an edge with the given probability.
BipartiteGraph random_bipartite(std::size_t a_count, std::size_t b_count, double density,
                                std::uint64_t seed);

// Random 3-CNF over `variables` variables where every variable occurs.
CnfFormula random_cnf(std::size_t variables, std::size_t clauses, std::uint64_t seed);

// Random 3-CNF satisfied by `assignment`, every variable occurring.
CnfFormula random_satisfiable_cnf(const std::vector<bool>& assignment, std::size_t clauses,
                                  std::uint64_t seed);

}  // namespace bcevs
