#include "bcevs/io.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace bcevs {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::size_t to_count(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  long long v = -1;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0) parse_fail(line, "expected a non-negative integer, got '" + tok + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

GraphFile read_bcg(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0, na = 0, nb = 0, m = 0;
  bool header = false;
  std::optional<std::size_t> k;
  EdgeList edges;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "c") {
      if (tok.size() == 3 && tok[1] == "k") k = to_count(tok[2], line_no);
      continue;
    }
    if (tok[0] == "p") {
      if (header) parse_fail(line_no, "duplicate header");
      if (tok.size() != 5 || tok[1] != "bcg") parse_fail(line_no, "expected 'p bcg <nA> <nB> <m>'");
      na = to_count(tok[2], line_no);
      nb = to_count(tok[3], line_no);
      m = to_count(tok[4], line_no);
      header = true;
      continue;
    }
    if (tok[0] == "e") {
      if (!header) parse_fail(line_no, "edge before header");
      if (tok.size() != 3) parse_fail(line_no, "expected 'e <a> <b>'");
      const auto a = to_count(tok[1], line_no), b = to_count(tok[2], line_no);
      if (a < 1 || a > na) parse_fail(line_no, "A-index " + tok[1] + " out of range 1.." + std::to_string(na));
      if (b < 1 || b > nb) parse_fail(line_no, "B-index " + tok[2] + " out of range 1.." + std::to_string(nb));
      const std::pair<std::uint32_t, std::uint32_t> e(static_cast<std::uint32_t>(a - 1),
                                                      static_cast<std::uint32_t>(b - 1));
      if (!seen.insert(e).second) parse_fail(line_no, "duplicate edge");
      edges.push_back(e);
      continue;
    }
    parse_fail(line_no, "unknown line type '" + tok[0] + "'");
  }
  if (!header) throw ParseError("missing 'p bcg' header");
  if (edges.size() != m)
    throw ParseError("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  return {build_graph(na, nb, edges), k};
}

std::string write_bcg(const BipartiteGraph& g, std::optional<std::size_t> k,
                      const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "c " << c << '\n';
  if (k) out << "c k " << *k << '\n';
  out << "p bcg " << g.a_count() << ' ' << g.b_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [a, b] : g.edges()) out << "e " << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

std::vector<std::string> copy_names(const BipartiteGraph& g, const OperationSequence& seq) {
  std::vector<std::string> names;
  for (std::uint32_t f = 0; f < g.vertex_count(); ++f) names.push_back(to_string(g.ref(f)));
  std::vector<std::string> origin = names;
  std::size_t counter = 0;
  for (const auto& op : seq) {
    const auto* s = std::get_if<Split>(&op);
    if (!s) continue;
    const auto base = s->v < origin.size() ? origin[s->v] : std::string("?");
    for (int t = 0; t < 2; ++t) {
      names.push_back(base + "#" + std::to_string(++counter));
      origin.push_back(base);
    }
  }
  return names;
}

namespace {

std::string name_of(const std::vector<std::string>& names, CopyId c) {
  return c < names.size() ? names[c] : "#" + std::to_string(c);
}

json id_list(const std::vector<std::string>& names, const std::vector<CopyId>& ids) {
  json out = json::array();
  for (auto c : ids) out.push_back(name_of(names, c));
  return out;
}

// Resolves names against the copies known so far.
struct NameTable {
  std::map<std::string, CopyId> ids;
  std::vector<std::string> names;

  CopyId lookup(const json& j, std::size_t op) const {
    if (!j.is_string()) throw ParseError("operation " + std::to_string(op) + ": vertex names must be strings");
    const auto it = ids.find(j.get<std::string>());
    if (it == ids.end())
      throw ParseError("operation " + std::to_string(op) + ": unknown vertex '" + j.get<std::string>() + "'");
    return it->second;
  }
  void add(const std::string& name) {
    ids.emplace(name, static_cast<CopyId>(names.size()));
    names.push_back(name);
  }
};

}  // namespace

json operations_to_json(const BipartiteGraph& g, const OperationSequence& seq) {
  const auto names = copy_names(g, seq);
  json ops = json::array();
  auto next = static_cast<CopyId>(g.vertex_count());
  for (const auto& op : seq) {
    if (const auto* add = std::get_if<EdgeAdd>(&op)) {
      ops.push_back({{"op", "add"}, {"a", name_of(names, add->a)}, {"b", name_of(names, add->b)}});
    } else if (const auto* del = std::get_if<EdgeDelete>(&op)) {
      ops.push_back({{"op", "delete"}, {"a", name_of(names, del->a)}, {"b", name_of(names, del->b)}});
    } else {
      const auto& s = std::get<Split>(op);
      ops.push_back({{"op", "split"},
                     {"v", name_of(names, s.v)},
                     {"n1", id_list(names, s.n1)},
                     {"n2", id_list(names, s.n2)},
                     {"copies", {name_of(names, next), name_of(names, next + 1)}}});
      next += 2;
    }
  }
  return ops;
}

OperationSequence operations_from_json(const BipartiteGraph& g, const json& ops) {
  if (!ops.is_array()) throw ParseError("operations must be an array");
  NameTable table;
  for (std::uint32_t f = 0; f < g.vertex_count(); ++f) table.add(to_string(g.ref(f)));
  std::vector<std::string> origin = table.names;
  std::size_t counter = 0;
  OperationSequence out;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& o = ops[i];
    if (!o.is_object() || !o.contains("op") || !o["op"].is_string())
      throw ParseError("operation " + std::to_string(i) + ": missing \"op\"");
    const auto kind = o["op"].get<std::string>();
    auto field = [&](const char* key) -> const json& {
      if (!o.contains(key)) throw ParseError("operation " + std::to_string(i) + ": missing \"" + key + "\"");
      return o[key];
    };
    if (kind == "add" || kind == "delete") {
      const auto a = table.lookup(field("a"), i), b = table.lookup(field("b"), i);
      if (kind == "add") out.push_back(EdgeAdd{a, b});
      else out.push_back(EdgeDelete{a, b});
    } else if (kind == "split") {
      Split s;
      s.v = table.lookup(field("v"), i);
      for (const auto& x : field("n1")) s.n1.push_back(table.lookup(x, i));
      for (const auto& x : field("n2")) s.n2.push_back(table.lookup(x, i));
      const auto base = origin[s.v];
      std::vector<std::string> fresh;
      for (int t = 0; t < 2; ++t) fresh.push_back(base + "#" + std::to_string(++counter));
      if (o.contains("copies")) {
        const auto& c = o["copies"];
        if (!c.is_array() || c.size() != 2 || c[0] != fresh[0] || c[1] != fresh[1])
          throw ParseError("operation " + std::to_string(i) + ": copies must be [\"" + fresh[0] + "\", \"" +
                           fresh[1] + "\"]");
      }
      for (const auto& name : fresh) {
        table.add(name);
        origin.push_back(base);
      }
      out.push_back(std::move(s));
    } else {
      throw ParseError("operation " + std::to_string(i) + ": unknown op '" + kind + "'");
    }
  }
  return out;
}

json solution_to_json(const BipartiteGraph& g, const Mode& mode, const SolveResult& r) {
  json j;
  j["mode"] = mode.kind == Mode::Kind::Bcevs ? "bcevs" : "bceovs";
  if (mode.one_sided()) j["split_side"] = std::string(1, side_char(mode.split_side));
  j["value"] = r.value;
  j["operations"] = operations_to_json(g, r.witness);
  j["stats"] = {{"nodes", r.stats.nodes}, {"time_ms", r.stats.time_ms}};
  return j;
}

SolutionFile solution_from_json(const BipartiteGraph& g, const json& j) {
  SolutionFile out;
  if (j.is_array()) {
    out.operations = operations_from_json(g, j);
    return out;
  }
  if (!j.is_object() || !j.contains("operations")) throw ParseError("solution needs an \"operations\" array");
  if (j.contains("mode"))
    out.mode = parse_mode(j["mode"].get<std::string>(), j.value("split_side", std::string("B")));
  if (j.contains("value")) out.value = j["value"].get<std::size_t>();
  out.operations = operations_from_json(g, j["operations"]);
  return out;
}

json cover_to_json(const std::vector<VertexSet>& sets) {
  json out = json::array();
  for (const auto& s : sets) {
    json js = json::array();
    for (const auto& v : s) js.push_back({{"side", std::string(1, side_char(v.side))}, {"index", v.index + 1}});
    out.push_back(js);
  }
  return {{"sets", out}};
}

std::vector<VertexSet> cover_from_json(const json& j) {
  const json& sets = j.is_object() ? j.at("sets") : j;
  if (!sets.is_array()) throw ParseError("cover must be a list of sets");
  std::vector<VertexSet> out;
  for (const auto& js : sets) {
    if (!js.is_array()) throw ParseError("cover set must be a list");
    VertexSet s;
    for (const auto& v : js) {
      const auto side = v.at("side").get<std::string>();
      const auto index = v.at("index").get<long long>();
      if ((side != "A" && side != "B") || index < 1) throw ParseError("bad cover vertex " + v.dump());
      s.push_back({side == "A" ? Side::A : Side::B, static_cast<std::uint32_t>(index - 1)});
    }
    out.push_back(std::move(s));
  }
  return out;
}

json kernel_report_to_json(const KernelOutcome& k) {
  const auto& r = k.report;
  return {{"outcome", to_string(k.kind)},
          {"k", k.instance.k},
          {"reason", k.reason},
          {"original", {{"vertices", r.original_vertices}, {"edges", r.original_edges}}},
          {"reduced", {{"vertices", r.reduced_vertices}, {"edges", r.reduced_edges}}},
          {"shrinkage",
           {{"biclique_components", r.removed_biclique_vertices}, {"twin_capping", r.removed_twin_vertices}}},
          {"components", r.components},
          {"certificate", r.certificate}};
}

json reduction_map_to_json(const ReductionMap& map) {
  json vars = json::array();
  for (std::size_t v = 0; v < map.cycles.size(); ++v) {
    json cycle = json::array();
    for (const auto& x : map.cycles[v]) cycle.push_back(to_string(x));
    json occ = json::array();
    for (auto c : map.formula.occurrences[v]) occ.push_back(c + 1);
    vars.push_back({{"variable", v + 1}, {"cycle", cycle}, {"clauses", occ}});
  }
  json clauses = json::array();
  for (std::size_t c = 0; c < map.clause_vertex.size(); ++c) {
    json links = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& lit = map.formula.clauses[c][i];
      links.push_back({{"literal", (lit.positive ? 1 : -1) * static_cast<long long>(lit.var + 1)},
                       {"position", map.link_position[c][i]},
                       {"vertex", to_string(map.cycles[lit.var][map.link_position[c][i] - 1])}});
    }
    clauses.push_back({{"clause", c + 1}, {"vertex", to_string(map.clause_vertex[c])}, {"links", links}});
  }
  return {{"k", 8 * map.clause_vertex.size()}, {"variables", vars}, {"clauses", clauses}};
}

Mode parse_mode(std::string_view mode, std::string_view split_side) {
  Side side;
  if (split_side == "A" || split_side == "a") side = Side::A;
  else if (split_side == "B" || split_side == "b") side = Side::B;
  else throw ParseError("split side must be A or B, got '" + std::string(split_side) + "'");
  if (mode == "bcevs") return Mode::bcevs();
  if (mode == "bceovs") return Mode::bceovs(side);
  throw ParseError("mode must be bcevs or bceovs, got '" + std::string(mode) + "'");
}

std::string read_file(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace bcevs
