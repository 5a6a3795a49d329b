#include "bcevs/tree_solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <stdexcept>

namespace bcevs {

bool is_tree(const BipartiteGraph& g) {
  const auto n = g.vertex_count();
  return n > 0 && g.edge_count() + 1 == n && connected_components(g).size() == 1;
}

TreeNumbering number_tree(const BipartiteGraph& tree, VertexRef root) {
  if (!is_tree(tree)) throw GraphError("input is not a tree");
  if (!tree.contains(root)) throw GraphError("root " + to_string(root) + " is not a vertex");
  const auto n = static_cast<std::uint32_t>(tree.vertex_count());

  // Parent and height per flat id, from an explicit DFS stack.
  std::vector<std::uint32_t> parent(n, n), height(n, 0), order;
  std::vector<std::vector<std::uint32_t>> kids(n);
  const auto r = tree.flat(root);
  std::vector<std::uint32_t> stack{r};
  parent[r] = r;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto ref = tree.ref(v);
    for (auto u : tree.neighbors(ref)) {
      const auto fu = tree.flat({opposite(ref.side), u});
      if (fu == parent[v]) continue;
      parent[fu] = v;
      kids[v].push_back(fu);
      stack.push_back(fu);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (auto c : kids[*it]) height[*it] = std::max(height[*it], height[c] + 1);
  for (auto& k : kids)
    std::sort(k.begin(), k.end(), [&](std::uint32_t x, std::uint32_t y) {
      return height[x] != height[y] ? height[x] > height[y] : x < y;
    });

  TreeNumbering t;
  t.number_of.assign(n, 0);
  t.vertex_at.assign(n + 1, 0);
  t.parent.assign(n + 1, 0);
  t.phi.assign(n + 1, 0);
  t.children.assign(n + 1, {});
  std::uint32_t next = 1;
  // Iterative postorder: (vertex, index of the next child to visit).
  std::vector<std::pair<std::uint32_t, std::size_t>> walk{{r, 0}};
  while (!walk.empty()) {
    auto& [v, i] = walk.back();
    if (i < kids[v].size()) {
      const auto c = kids[v][i++];
      walk.emplace_back(c, 0);
      continue;
    }
    t.number_of[v] = next;
    t.vertex_at[next] = v;
    ++next;
    walk.pop_back();
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto num = t.number_of[v];
    t.parent[num] = v == r ? 0 : t.number_of[parent[v]];
    for (auto c : kids[v]) t.children[num].push_back(t.number_of[c]);
  }
  for (std::uint32_t num = 1; num <= n; ++num)
    t.phi[num] = t.children[num].empty() ? num : t.phi[t.children[num].front()];
  return t;
}

namespace {

// Vertex set over numbers 1..n.
class NumSet {
 public:
  explicit NumSet(std::size_t n = 0) : words_((n + 64) / 64, 0) {}
  void insert(std::uint32_t v) { words_[v / 64] |= std::uint64_t{1} << (v % 64); }
  void erase(std::uint32_t v) { words_[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }
  bool contains(std::uint32_t v) const { return words_[v / 64] >> (v % 64) & 1; }
  std::size_t size() const {
    std::size_t s = 0;
    for (auto w : words_) s += static_cast<std::size_t>(std::popcount(w));
    return s;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      for (auto w = words_[i]; w; w &= w - 1)
        f(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
  }
  std::uint32_t min() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<std::uint32_t>(i * 64 + std::countr_zero(words_[i]));
    return 0;
  }
  std::uint32_t max() const {
    for (std::size_t i = words_.size(); i-- > 0;)
      if (words_[i]) return static_cast<std::uint32_t>(i * 64 + 63 - std::countl_zero(words_[i]));
    return 0;
  }
  friend bool operator<(const NumSet& x, const NumSet& y) { return x.words_ < y.words_; }

 private:
  std::vector<std::uint64_t> words_;
};

struct Entry {
  std::size_t value = 0;
  TreeChoice choice = TreeChoice::Star;
};

}  // namespace

struct TreeSolver::Impl {
  const BipartiteGraph* tree = nullptr;
  TreeNumbering num;
  std::vector<std::vector<std::uint32_t>> adj;  // by number
  std::vector<std::uint32_t> depth;             // by number
  std::map<NumSet, Entry> memo;
  TreeDPTable table;

  std::size_t n() const { return num.size(); }

  std::vector<std::uint32_t> neighbors_in(std::uint32_t v, const NumSet& s) const {
    std::vector<std::uint32_t> out;
    for (auto u : adj[v])
      if (s.contains(u)) out.push_back(u);
    return out;
  }

  bool is_star(const NumSet& s) const {
    const auto size = s.size();
    if (size <= 2) return true;
    bool star = false;
    s.for_each([&](std::uint32_t v) {
      if (!star && neighbors_in(v, s).size() + 1 == size) star = true;
    });
    return star;
  }

  // The leaf star X = {x} ∪ children of x inside s, and y = parent(x).
  struct Cut {
    std::uint32_t x = 0, y = 0;
    NumSet without_x_star;  // s − X
    NumSet rest;            // s − X − y
    std::vector<std::uint32_t> y_others;  // neighbors of y in rest
  };

  bool s_leaf(std::uint32_t v, const NumSet& s) const {
    return std::none_of(num.children[v].begin(), num.children[v].end(),
                        [&](std::uint32_t c) { return s.contains(c); });
  }

  Cut split(const NumSet& s) const {
    const auto top = s.max();
    auto star_below = [&](std::uint32_t x) {
      return x != top && std::all_of(num.children[x].begin(), num.children[x].end(), [&](std::uint32_t c) {
               return !s.contains(c) || s_leaf(c, s);
             });
    };
    std::uint32_t x = num.parent[s.min()];
    if (!star_below(x)) {
      std::uint32_t leaf = 0;
      s.for_each([&](std::uint32_t v) {
        if (v != top && s_leaf(v, s) && (leaf == 0 || depth[v] > depth[leaf])) leaf = v;
      });
      x = num.parent[leaf];
    }
    Cut out;
    out.x = x;
    out.y = num.parent[x];
    out.without_x_star = s;
    out.without_x_star.erase(x);
    for (auto c : num.children[x]) out.without_x_star.erase(c);
    out.rest = out.without_x_star;
    out.rest.erase(out.y);
    out.y_others = neighbors_in(out.y, out.rest);
    return out;
  }

  // Components of s, each grown from one of the seeds.
  std::vector<NumSet> components_from(const NumSet& s, const std::vector<std::uint32_t>& seeds) const {
    std::vector<NumSet> out;
    for (auto seed : seeds) {
      NumSet comp(n());
      std::vector<std::uint32_t> stack{seed};
      comp.insert(seed);
      while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto u : adj[v])
          if (s.contains(u) && !comp.contains(u)) {
            comp.insert(u);
            stack.push_back(u);
          }
      }
      out.push_back(std::move(comp));
    }
    return out;
  }

  Entry solve(const NumSet& s) {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    Entry e;
    if (!is_star(s)) {
      const auto sp = split(s);
      if (sp.y_others.size() == 1) {
        e = {1 + solve(sp.rest).value, TreeChoice::SimpleCut};
      } else {
        const auto opt1 = 1 + solve(sp.without_x_star).value;
        auto opt2 = sp.y_others.size();
        for (const auto& comp : components_from(sp.rest, sp.y_others)) opt2 += solve(comp).value;
        e = opt2 < opt1 ? Entry{opt2, TreeChoice::CutChildren} : Entry{opt1, TreeChoice::CutParent};
      }
    }
    memo.emplace(s, e);
    const auto lo = s.min(), hi = s.max();
    if (s.size() == static_cast<std::size_t>(hi - lo + 1)) {
      table.memo[{lo, hi}] = e.value;
      table.choice[{lo, hi}] = e.choice;
    }
    return e;
  }

  void witness(const NumSet& s, std::vector<std::pair<std::uint32_t, std::uint32_t>>& cuts) {
    const auto e = solve(s);
    if (e.choice == TreeChoice::Star) return;
    const auto sp = split(s);
    switch (e.choice) {
      case TreeChoice::SimpleCut:
        cuts.emplace_back(sp.y, sp.y_others.front());
        witness(sp.rest, cuts);
        break;
      case TreeChoice::CutParent:
        cuts.emplace_back(sp.x, sp.y);
        witness(sp.without_x_star, cuts);
        break;
      case TreeChoice::CutChildren:
        for (auto u : sp.y_others) cuts.emplace_back(sp.y, u);
        for (const auto& comp : components_from(sp.rest, sp.y_others)) witness(comp, cuts);
        break;
      case TreeChoice::Star:
        break;
    }
  }
};

TreeSolver::TreeSolver(const BipartiteGraph& tree, std::optional<VertexRef> root)
    : impl_(std::make_unique<Impl>()) {
  impl_->tree = &tree;
  impl_->num = number_tree(tree, root.value_or(tree.vertex_count() ? tree.ref(0) : VertexRef{}));
  const auto n = impl_->n();
  impl_->adj.assign(n + 1, {});
  impl_->depth.assign(n + 1, 0);
  for (std::uint32_t v = 1; v <= n; ++v) {
    if (const auto p = impl_->num.parent[v]) {
      impl_->adj[v].push_back(p);
      impl_->adj[p].push_back(v);
    }
  }
  for (auto v = static_cast<std::uint32_t>(n); v >= 1; --v)
    if (const auto p = impl_->num.parent[v]) impl_->depth[v] = impl_->depth[p] + 1;
}

TreeSolver::~TreeSolver() = default;

std::size_t TreeSolver::interval_value(std::uint32_t i, std::uint32_t j) {
  if (i < 1 || j > impl_->n() || i > j) throw std::invalid_argument("interval out of range");
  NumSet s(impl_->n());
  for (auto v = i; v <= j; ++v) s.insert(v);
  if (impl_->components_from(s, {i}).front().size() != s.size())
    throw std::invalid_argument("T[" + std::to_string(i) + "," + std::to_string(j) + "] is not connected");
  return impl_->solve(s).value;
}

SolveResult TreeSolver::solve() {
  const auto start = std::chrono::steady_clock::now();
  const auto n = static_cast<std::uint32_t>(impl_->n());
  NumSet all(n);
  for (std::uint32_t v = 1; v <= n; ++v) all.insert(v);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cuts;
  SolveResult r;
  r.value = impl_->solve(all).value;
  impl_->witness(all, cuts);
  const auto& g = *impl_->tree;
  for (auto [u, v] : cuts) {
    auto fu = impl_->num.vertex_at[u], fv = impl_->num.vertex_at[v];
    if (g.ref(fu).side != Side::A) std::swap(fu, fv);
    r.witness.push_back(EdgeDelete{fu, fv});
  }
  r.stats.nodes = impl_->memo.size();
  r.stats.time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

const TreeNumbering& TreeSolver::numbering() const { return impl_->num; }
const TreeDPTable& TreeSolver::table() const { return impl_->table; }
std::size_t TreeSolver::states() const { return impl_->memo.size(); }

SolveResult solve_tree(const BipartiteGraph& tree) { return TreeSolver(tree).solve(); }

}  // namespace bcevs
