#include "bcevs/kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace bcevs {

std::string to_string(KernelOutcome::Kind kind) {
  switch (kind) {
    case KernelOutcome::Kind::Reduced: return "reduced";
    case KernelOutcome::Kind::TrivialNo: return "trivial-no";
    case KernelOutcome::Kind::TrivialYes: return "trivial-yes";
  }
  return "?";
}

std::size_t kernel_component_bound(std::size_t k) {
  const std::size_t k1 = k + 1, k2 = k + 2;
  return (k2 * k2 - 1 + 4 * k1 * k1 * k1 * k1) * k1;
}

namespace {

Reduction keep_only(const Instance& inst, const VertexSet& keep) {
  auto [graph, old] = inst.graph.induced(keep);
  return {{std::move(graph), inst.k, inst.mode}, std::move(old)};
}

std::vector<VertexRef> compose(const std::vector<VertexRef>& outer,
                               const std::vector<VertexRef>& inner, const BipartiteGraph& mid) {
  std::vector<VertexRef> out;
  out.reserve(inner.size());
  for (const auto& v : inner) out.push_back(outer[mid.flat(v)]);
  return out;
}

Instance path_certificate(std::size_t k, const Mode& mode) {
  const auto n = 4 * (k + 1);
  EdgeList edges;
  // Vertex t of the path is A(t/2) for even t and B(t/2) for odd t.
  for (std::uint32_t t = 0; t + 1 < n; ++t) {
    if (t % 2 == 0) edges.emplace_back(t / 2, t / 2);
    else edges.emplace_back((t + 1) / 2, t / 2);
  }
  return {build_graph(n / 2, n / 2, edges), k, mode};
}

}  // namespace

Reduction remove_biclique_components(const Instance& inst) {
  VertexSet keep;
  for (const auto& comp : connected_components(inst.graph)) {
    const auto [sub, old] = inst.graph.induced(comp);
    if (!is_biclique_union(sub)) keep.insert(keep.end(), comp.begin(), comp.end());
  }
  std::sort(keep.begin(), keep.end());
  return keep_only(inst, keep);
}

Reduction cap_twin_classes(const Instance& inst) {
  const auto tc = twin_classes(inst.graph);
  VertexSet keep;
  for (const auto& cls : tc.classes) {
    const auto n = std::min(cls.size(), inst.k + 1);
    keep.insert(keep.end(), cls.begin(), cls.begin() + static_cast<long>(n));
  }
  std::sort(keep.begin(), keep.end());
  return keep_only(inst, keep);
}

BoundCheck bound_check(const Instance& inst) {
  const Side partition = opposite(inst.mode.split_side);
  const std::size_t k1 = inst.k + 1, k2 = inst.k + 2;
  const std::size_t partition_limit = k2 * k2;          // this many classes already cost > k
  const std::size_t split_limit = 4 * k1 * k1 * k1 * k1;  // more than this costs > k
  const auto comps = connected_components(inst.graph);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto [sub, old] = inst.graph.induced(comps[c]);
    const auto tc = twin_classes(sub);
    const auto p = tc.class_count(partition), s = tc.class_count(inst.mode.split_side);
    if (p >= partition_limit)
      return {false, c,
              "component " + std::to_string(c) + " has " + std::to_string(p) + " twin classes on side " +
                  side_char(partition) + " (at least " + std::to_string(partition_limit) + ")"};
    if (s > split_limit)
      return {false, c,
              "component " + std::to_string(c) + " has " + std::to_string(s) + " twin classes on side " +
                  side_char(inst.mode.split_side) + " (more than " + std::to_string(split_limit) + ")"};
  }
  return {};
}

KernelOutcome kernelize(const Instance& inst) {
  if (!inst.mode.one_sided()) throw std::invalid_argument("kernelize needs a one-sided instance");
  KernelOutcome out;
  out.report.original_vertices = inst.graph.vertex_count();
  out.report.original_edges = inst.graph.edge_count();

  const auto stripped = remove_biclique_components(inst);
  out.report.removed_biclique_vertices =
      inst.graph.vertex_count() - stripped.instance.graph.vertex_count();
  if (stripped.instance.graph.vertex_count() == 0) {
    out.kind = KernelOutcome::Kind::TrivialYes;
    out.instance = {BipartiteGraph(), inst.k, inst.mode};
    out.reason = "every component is a biclique";
    out.report.certificate = "trivial-yes";
    return out;
  }

  const auto capped = cap_twin_classes(stripped.instance);
  out.report.removed_twin_vertices =
      stripped.instance.graph.vertex_count() - capped.instance.graph.vertex_count();
  out.report.components = connected_components(capped.instance.graph).size();

  auto no = [&](std::string reason) {
    out.kind = KernelOutcome::Kind::TrivialNo;
    out.instance = path_certificate(inst.k, inst.mode);
    out.reason = std::move(reason);
    out.report.reduced_vertices = out.instance.graph.vertex_count();
    out.report.reduced_edges = out.instance.graph.edge_count();
    out.report.certificate = "path";
    return out;
  };
  if (const auto check = bound_check(capped.instance); !check.pass) return no(check.reason);
  if (out.report.components > inst.k)
    return no(std::to_string(out.report.components) + " components need an operation each, budget " +
              std::to_string(inst.k));

  out.kind = KernelOutcome::Kind::Reduced;
  out.instance = capped.instance;
  out.vertex_map = compose(stripped.vertex_map, capped.vertex_map, stripped.instance.graph);
  out.report.reduced_vertices = out.instance.graph.vertex_count();
  out.report.reduced_edges = out.instance.graph.edge_count();
  out.report.certificate = "none";
  return out;
}

}  // namespace bcevs
