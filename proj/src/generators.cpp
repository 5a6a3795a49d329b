#include "bcevs/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace bcevs {

CnfFormula CnfFormula::from_clauses(std::size_t variable_count, std::vector<Clause> clauses) {
  CnfFormula f;
  f.variable_count = variable_count;
  f.occurrences.assign(variable_count, {});
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto& cl = clauses[c];
    for (std::size_t i = 0; i < 3; ++i) {
      if (cl[i].var >= variable_count)
        throw CnfError(0, "clause " + std::to_string(c + 1) + " uses variable " +
                              std::to_string(cl[i].var + 1) + " beyond " + std::to_string(variable_count));
      for (std::size_t j = 0; j < i; ++j)
        if (cl[i].var == cl[j].var)
          throw CnfError(0, "clause " + std::to_string(c + 1) + " repeats variable " +
                                std::to_string(cl[i].var + 1));
      f.occurrences[cl[i].var].push_back(c);
    }
  }
  f.clauses = std::move(clauses);

  auto sign = [&](std::uint32_t v, std::size_t c) {
    for (const auto& l : f.clauses[c])
      if (l.var == v) return l.positive;
    return false;
  };
  for (std::uint32_t v = 0; v < variable_count; ++v) {
    auto& occ = f.occurrences[v];
    if (occ.size() != 4) continue;
    std::vector<std::size_t> pos, neg;
    for (auto c : occ) (sign(v, c) ? pos : neg).push_back(c);
    if (pos.size() == 2 && neg.size() == 2) occ = {pos[0], neg[0], pos[1], neg[1]};
  }
  return f;
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(),
                       [&](const Literal& l) { return assignment.at(l.var) == l.positive; });
  });
}

CnfFormula parse_dimacs_cnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0, declared_vars = 0, max_var = 0;
  bool header = false;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == '%') continue;
    if (tok == "p") {
      std::string kind;
      std::size_t clause_count = 0;
      if (header) throw CnfError(line_no, "duplicate header");
      if (!(ls >> kind >> declared_vars >> clause_count) || kind != "cnf")
        throw CnfError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      header = true;
      continue;
    }
    ls.clear();
    ls.seekg(0);
    long lit = 0;
    while (ls >> tok) {
      std::size_t used = 0;
      try {
        lit = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw CnfError(line_no, "unexpected token '" + tok + "'");
      if (pending.empty()) pending_line = line_no;
      if (lit == 0) {
        if (pending.size() != 3)
          throw CnfError(pending_line, "clause has " + std::to_string(pending.size()) +
                                           " literals, expected 3");
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < i; ++j)
            if (pending[i].var == pending[j].var)
              throw CnfError(pending_line, "clause repeats variable " + std::to_string(pending[i].var + 1));
        clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      const auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      if (header && var > declared_vars)
        throw CnfError(line_no, "variable " + std::to_string(var) + " exceeds declared count " +
                                    std::to_string(declared_vars));
      max_var = std::max(max_var, var);
      pending.push_back({static_cast<std::uint32_t>(var - 1), lit > 0});
    }
  }
  if (!pending.empty()) throw CnfError(pending_line, "clause not terminated by 0");
  return CnfFormula::from_clauses(header ? declared_vars : max_var, std::move(clauses));
}

std::string write_dimacs_cnf(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (const auto& l : c) out << (l.positive ? "" : "-") << l.var + 1 << ' ';
    out << "0\n";
  }
  return out.str();
}

CopyId ReductionMap::copy_id(VertexRef v) const {
  return v.side == Side::A ? v.index : static_cast<CopyId>(a_count + v.index);
}

SatInstance sat_to_instance(const CnfFormula& f) {
  SatInstance out;
  auto& map = out.map;
  map.formula = f;
  std::uint32_t na = 0, nb = 0;
  for (std::uint32_t v = 0; v < f.variable_count; ++v) {
    const auto d = f.occurrence_count(v);
    if (d == 0) throw CnfError(0, "variable " + std::to_string(v + 1) + " occurs in no clause");
    std::vector<VertexRef> cycle;
    for (std::size_t p = 1; p <= 6 * d; ++p)
      cycle.push_back(p % 2 == 0 ? VertexRef{Side::A, na++} : VertexRef{Side::B, nb++});
    map.cycles.push_back(std::move(cycle));
  }
  for (std::size_t c = 0; c < f.clauses.size(); ++c) map.clause_vertex.push_back({Side::A, na++});
  map.a_count = na;

  EdgeList edges;
  auto link = [&](VertexRef x, VertexRef y) {
    if (x.side == Side::A) edges.emplace_back(x.index, y.index);
    else edges.emplace_back(y.index, x.index);
  };
  for (const auto& cycle : map.cycles)
    for (std::size_t p = 0; p < cycle.size(); ++p) link(cycle[p], cycle[(p + 1) % cycle.size()]);

  map.link_position.assign(f.clauses.size(), {0, 0, 0});
  for (std::uint32_t v = 0; v < f.variable_count; ++v) {
    const auto& occ = f.occurrences[v];
    for (std::size_t j = 0; j < occ.size(); ++j) {
      const auto c = occ[j];
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& lit = f.clauses[c][i];
        if (lit.var != v) continue;
        const auto p = static_cast<std::uint32_t>(6 * j + (lit.positive ? 1 : 3));
        map.link_position[c][i] = p;
        link(map.clause_vertex[c], map.cycles[v][p - 1]);
      }
    }
  }
  out.instance = {build_graph(na, nb, edges), 8 * f.clauses.size(), Mode::bceovs()};
  return out;
}

OperationSequence assignment_to_sequence(const ReductionMap& map, const std::vector<bool>& assignment) {
  const auto& f = map.formula;
  if (assignment.size() != f.variable_count)
    throw std::invalid_argument("assignment covers " + std::to_string(assignment.size()) + " of " +
                                std::to_string(f.variable_count) + " variables");
  OperationSequence out;
  auto del = [&](VertexRef x, VertexRef y) {
    if (x.side != Side::A) std::swap(x, y);
    out.push_back(EdgeDelete{map.copy_id(x), map.copy_id(y)});
  };
  // Cuts every cycle into paths of three with each variable-clause vertex of a
  // true literal in the middle.
  for (std::uint32_t v = 0; v < f.variable_count; ++v) {
    const auto& cycle = map.cycles[v];
    const std::size_t len = cycle.size(), first = assignment[v] ? 2 : 1;
    for (std::size_t i = 0; i < len / 3; ++i) {
      const auto p = first + 3 * i;  // delete v_p v_{p+1}
      del(cycle[(p - 1) % len], cycle[p % len]);
    }
  }
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    const auto& cl = f.clauses[c];
    std::size_t keep = 3;
    for (std::size_t i = 0; i < 3 && keep == 3; ++i)
      if (assignment[cl[i].var] == cl[i].positive) keep = i;
    for (std::size_t i = 0; i < 3; ++i)
      if (i != keep) del(map.clause_vertex[c], map.cycles[cl[i].var][map.link_position[c][i] - 1]);
  }
  return out;
}

BipartiteGraph figure1_graph() {
  // a0 and b3 are the hubs; {a0,a1,b0,b1}, {a0,a2,b2,b3} and {a3,a4,b3,b4}
  // are the three 4-cycles.
  return BipartiteGraph(5, 5, {{1, 0}, {0, 0}, {0, 1}, {1, 1}, {0, 2}, {0, 3},
                               {2, 2}, {2, 3}, {3, 3}, {4, 3}, {3, 4}, {4, 4}});
}

namespace {

// Position t of an alternating walk: A(t/2) for even t, B(t/2) for odd t.
void walk_edge(EdgeList& edges, std::size_t s, std::size_t t) {
  if (s % 2 == 1) std::swap(s, t);
  edges.emplace_back(static_cast<std::uint32_t>(s / 2), static_cast<std::uint32_t>(t / 2));
}

}  // namespace

BipartiteGraph path_graph(std::size_t n) {
  EdgeList edges;
  for (std::size_t t = 0; t + 1 < n; ++t) walk_edge(edges, t, t + 1);
  return build_graph((n + 1) / 2, n / 2, edges);
}

BipartiteGraph cycle_graph(std::size_t n) {
  if (n % 2 != 0) throw GraphError("cycle of odd length " + std::to_string(n) + " is not bipartite");
  if (n < 4) throw GraphError("cycle needs at least 4 vertices");
  EdgeList edges;
  for (std::size_t t = 0; t < n; ++t) walk_edge(edges, t, (t + 1) % n);
  return build_graph(n / 2, n / 2, edges);
}

BipartiteGraph star_graph(std::size_t leaves) { return biclique_graph(1, leaves); }

BipartiteGraph biclique_graph(std::size_t p, std::size_t q) {
  EdgeList edges;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < q; ++b) edges.emplace_back(a, b);
  return build_graph(p, q, edges);
}

BipartiteGraph family(FamilyKind kind, std::size_t p, std::size_t q) {
  switch (kind) {
    case FamilyKind::Path: return path_graph(p);
    case FamilyKind::Cycle: return cycle_graph(p);
    case FamilyKind::Star: return star_graph(p);
    case FamilyKind::Biclique: return biclique_graph(p, q);
  }
  throw std::invalid_argument("unknown family");
}

PlantedInstance random_planted(const std::vector<std::size_t>& a_parts,
                               const std::vector<std::size_t>& b_parts, std::size_t overlap_splits,
                               std::size_t noise_edits, std::uint64_t seed) {
  if (a_parts.size() != b_parts.size())
    throw std::invalid_argument("a_parts and b_parts must have the same length");
  std::mt19937_64 rng(seed);
  const auto parts = a_parts.size();
  const auto na = std::accumulate(a_parts.begin(), a_parts.end(), std::size_t{0});
  const auto nb = std::accumulate(b_parts.begin(), b_parts.end(), std::size_t{0});

  std::vector<VertexSet> sets(parts);
  std::vector<std::size_t> home(nb);
  std::uint32_t a = 0, b = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    for (std::size_t t = 0; t < a_parts[i]; ++t) sets[i].push_back({Side::A, a++});
    for (std::size_t t = 0; t < b_parts[i]; ++t) {
      home[b] = i;
      sets[i].push_back({Side::B, b++});
    }
  }
  // Candidate merges: a B-vertex joins a biclique other than its own.
  std::vector<std::pair<std::uint32_t, std::size_t>> merges;
  for (std::uint32_t v = 0; v < nb; ++v)
    for (std::size_t i = 0; i < parts; ++i)
      if (i != home[v] && a_parts[i] > 0) merges.emplace_back(v, i);
  if (overlap_splits > merges.size())
    throw std::invalid_argument("overlap_splits exceeds the " + std::to_string(merges.size()) +
                                " possible merges");
  std::shuffle(merges.begin(), merges.end(), rng);
  merges.resize(overlap_splits);
  for (const auto& [v, i] : merges) sets[i].push_back({Side::B, v});

  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& s : sets)
    for (const auto& x : s)
      for (const auto& y : s)
        if (x.side == Side::A && y.side == Side::B) edges.emplace(x.index, y.index);

  if (noise_edits > na * nb)
    throw std::invalid_argument("noise_edits exceeds the number of vertex pairs");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t x = 0; x < na; ++x)
    for (std::uint32_t y = 0; y < nb; ++y) pairs.emplace_back(x, y);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  for (std::size_t t = 0; t < noise_edits; ++t)
    if (!edges.erase(pairs[t])) edges.insert(pairs[t]);

  PlantedInstance out;
  out.graph = build_graph(na, nb, EdgeList(edges.begin(), edges.end()));
  std::vector<VertexSet> truth;
  for (auto& s : sets)
    if (!s.empty()) truth.push_back(std::move(s));
  out.truth = {canonical_sets(std::move(truth))};
  return out;
}

namespace {

// Two-colours a tree from vertex 0 and numbers each side in vertex order.
BipartiteGraph two_coloured(const std::vector<std::vector<std::size_t>>& adj) {
  const auto n = adj.size();
  std::vector<int> colour(n, -1);
  colour[0] = 0;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto u : adj[v])
      if (colour[u] < 0) {
        colour[u] = 1 - colour[v];
        stack.push_back(u);
      }
  }
  std::vector<std::uint32_t> index(n);
  std::uint32_t na = 0, nb = 0;
  for (std::size_t v = 0; v < n; ++v) index[v] = colour[v] == 0 ? na++ : nb++;
  EdgeList edges;
  for (std::size_t v = 0; v < n; ++v)
    for (auto u : adj[v])
      if (colour[v] == 0) edges.emplace_back(index[v], index[u]);
  return build_graph(na, nb, edges);
}

}  // namespace

BipartiteGraph random_tree(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("a tree needs at least one vertex");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> adj(n);
  if (n == 2) {
    adj[0].push_back(1);
    adj[1].push_back(0);
  } else if (n > 2) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> code(n - 2), degree(n, 1);
    for (auto& x : code) ++degree[x = pick(rng)];
    for (auto x : code) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      adj[leaf].push_back(x);
      adj[x].push_back(leaf);
      --degree[leaf];
      --degree[x];
    }
    std::vector<std::size_t> last;
    for (std::size_t v = 0; v < n; ++v)
      if (degree[v] == 1) last.push_back(v);
    adj[last[0]].push_back(last[1]);
    adj[last[1]].push_back(last[0]);
  }
  return two_coloured(adj);
}

namespace {

// Canonical parenthesis string of the subtree below v.
std::string ahu(const std::vector<std::vector<std::size_t>>& adj, std::size_t v, std::size_t from) {
  std::vector<std::string> kids;
  for (auto u : adj[v])
    if (u != from) kids.push_back(ahu(adj, u, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  return out + ")";
}

// Rooted at the centre (the smaller string of the two centres if there are two).
std::string free_tree_code(const std::vector<std::vector<std::size_t>>& adj) {
  const auto n = adj.size();
  std::vector<std::size_t> degree(n), layer;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = adj[v].size();
    if (degree[v] <= 1) layer.push_back(v);
  }
  std::size_t left = n;
  while (left > 2) {
    left -= layer.size();
    std::vector<std::size_t> next;
    for (auto v : layer)
      for (auto u : adj[v])
        if (--degree[u] == 1) next.push_back(u);
    layer = std::move(next);
  }
  std::string best;
  for (auto c : layer) {
    auto code = ahu(adj, c, n);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

}  // namespace

std::vector<BipartiteGraph> all_free_trees(std::size_t n) {
  if (n == 0 || n > 10) throw std::invalid_argument("all_free_trees supports 1 <= n <= 10");
  // Every tree has a labelling where each vertex i > 0 hangs below some j < i.
  std::vector<BipartiteGraph> out;
  std::set<std::string> seen;
  std::vector<std::size_t> parent(n, 0);
  while (true) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t v = 1; v < n; ++v) {
      adj[v].push_back(parent[v]);
      adj[parent[v]].push_back(v);
    }
    if (seen.insert(free_tree_code(adj)).second) out.push_back(two_coloured(adj));
    std::size_t v = n;
    while (v > 1 && parent[v - 1] + 1 == v - 1) parent[--v] = 0;
    if (v <= 1) break;
    ++parent[v - 1];
  }
  return out;
}

BipartiteGraph random_bipartite(std::size_t a_count, std::size_t b_count, double density,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  EdgeList edges;
  for (std::uint32_t a = 0; a < a_count; ++a)
    for (std::uint32_t b = 0; b < b_count; ++b)
      if (coin(rng)) edges.emplace_back(a, b);
  return build_graph(a_count, b_count, edges);
}

CnfFormula random_cnf(std::size_t variables, std::size_t clauses, std::uint64_t seed) {
  if (variables < 3 || variables > 3 * clauses)
    throw std::invalid_argument("need 3 <= variables <= 3 * clauses");
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> unused(variables);
  std::iota(unused.begin(), unused.end(), 0);
  std::shuffle(unused.begin(), unused.end(), rng);
  std::uniform_int_distribution<std::uint32_t> any(0, static_cast<std::uint32_t>(variables - 1));
  std::bernoulli_distribution coin(0.5);
  std::vector<Clause> out;
  for (std::size_t c = 0; c < clauses; ++c) {
    // Spread the variables not yet used over the remaining clauses.
    const auto left = clauses - c;
    auto take = (unused.size() + left - 1) / left;
    take = std::min<std::size_t>(take, 3);
    std::vector<std::uint32_t> vars(unused.end() - static_cast<long>(take), unused.end());
    unused.resize(unused.size() - take);
    while (vars.size() < 3) {
      const auto v = any(rng);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::shuffle(vars.begin(), vars.end(), rng);
    out.push_back({Literal{vars[0], coin(rng)}, Literal{vars[1], coin(rng)}, Literal{vars[2], coin(rng)}});
  }
  return CnfFormula::from_clauses(variables, std::move(out));
}

CnfFormula random_satisfiable_cnf(const std::vector<bool>& assignment, std::size_t clauses,
                                  std::uint64_t seed) {
  auto f = random_cnf(assignment.size(), clauses, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> slot(0, 2);
  auto cl = f.clauses;
  for (auto& c : cl) {
    const bool sat = std::any_of(c.begin(), c.end(),
                                 [&](const Literal& l) { return assignment[l.var] == l.positive; });
    if (!sat) {
      auto& l = c[slot(rng)];
      l.positive = assignment[l.var];
    }
  }
  return CnfFormula::from_clauses(f.variable_count, std::move(cl));
}

}  // namespace bcevs
