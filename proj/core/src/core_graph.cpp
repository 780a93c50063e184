#include "cogrowth/core_graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "cogrowth/error.hpp"

namespace cogrowth {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidGraph, "invalid core graph: " + what);
}

/// Vertex order of a depth-first preorder walk from `root`, trying arcs in
/// the letter order.
std::vector<VertexId> preorder(const CoreGraph& g, VertexId root) {
  const int letters = g.alphabet().letter_count();
  std::vector<VertexId> order;
  std::set<VertexId> seen{root};
  std::vector<std::pair<VertexId, int>> stack{{root, 0}};
  order.push_back(root);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next == letters) {
      stack.pop_back();
      continue;
    }
    const Letter l = Letter::from_index(next++);
    if (auto w = g.step(v, l); w && seen.insert(*w).second) {
      order.push_back(*w);
      stack.emplace_back(*w, 0);
    }
  }
  return order;
}

/// Edge list renumbered by preorder from `root`, sorted.
std::vector<Edge> canonical_edges(const CoreGraph& g, VertexId root) {
  const auto order = preorder(g, root);
  std::map<VertexId, VertexId> number;
  for (std::size_t i = 0; i < order.size(); ++i) number[order[i]] = static_cast<VertexId>(i + 1);
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    edges.push_back({number.at(e.origin), e.label, number.at(e.terminus)});
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // keep the smaller id as representative so the root (0) stays put
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

// --------------------------------------------------------------- CoreGraph

CoreGraph::CoreGraph(Alphabet alphabet, VertexId root, std::vector<VertexId> vertices,
                     std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)),
      root_(root),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (vertices_.empty()) invalid("no vertices");
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    invalid("duplicate vertex id");
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) index_[vertices_[i]] = static_cast<int>(i);
  if (!index_.contains(root_)) invalid("root is not a vertex");
  std::sort(edges_.begin(), edges_.end());

  const int letters = alphabet_.letter_count();
  step_.assign(vertices_.size() * letters, -1);
  for (const Edge& e : edges_) {
    if (!index_.contains(e.origin) || !index_.contains(e.terminus)) {
      invalid("edge endpoint is not a vertex");
    }
    if (e.label < 1 || e.label > alphabet_.rank()) invalid("edge label out of range");
    const Letter x(e.label, 1);
    int& fwd = step_[idx(e.origin) * letters + x.index()];
    int& bwd = step_[idx(e.terminus) * letters + x.inverse().index()];
    if (fwd != -1 || bwd != -1) {
      throw Error(ErrorCode::FoldingViolation,
                  "graph is not folded at label " + alphabet_.name(e.label));
    }
    fwd = idx(e.terminus);
    bwd = idx(e.origin);
  }

  for (VertexId v : vertices_) {
    const int degree = labels(v).size();
    const int required = v != root_ ? 2 : (vertices_.size() > 1 ? 1 : 0);
    if (degree < required) {
      invalid("vertex " + std::to_string(v) + " has extended degree " + std::to_string(degree));
    }
  }
  if (preorder(*this, root_).size() != vertices_.size()) invalid("graph is not connected");
}

std::optional<VertexId> CoreGraph::step(VertexId v, Letter l) const {
  auto it = index_.find(v);
  if (it == index_.end() || l.generator() > alphabet_.rank()) return std::nullopt;
  const int target = step_[it->second * alphabet_.letter_count() + l.index()];
  if (target < 0) return std::nullopt;
  return vertices_[target];
}

LetterSet CoreGraph::labels(VertexId v) const {
  LetterSet out;
  const int letters = alphabet_.letter_count();
  const int row = idx(v) * letters;
  for (int i = 0; i < letters; ++i) {
    if (step_[row + i] >= 0) out.insert(Letter::from_index(i));
  }
  return out;
}

std::vector<Arc> CoreGraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(2 * edges_.size());
  for (VertexId v : vertices_) {
    for (Letter l : labels(v).letters()) out.push_back({v, l, *step(v, l)});
  }
  return out;
}

CoreGraph CoreGraph::canonical() const {
  std::vector<VertexId> ids(vertices_.size());
  std::iota(ids.begin(), ids.end(), 1);
  return CoreGraph(alphabet_, 1, std::move(ids), canonical_edges(*this, root_));
}

// ------------------------------------------------------------- build_core

CoreGraph build_core(std::span<const Word> generators, const Alphabet& alphabet) {
  // Wedge of loops: vertex 0 is the root.
  int vertex_count = 1;
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const Word& w = generators[k];
    if (w.empty()) {
      throw Error(ErrorCode::EmptyGenerator, "generator " + std::to_string(k + 1) + " is empty");
    }
    if (w.max_generator() > alphabet.rank()) {
      throw Error(ErrorCode::Precondition,
                  "generator " + std::to_string(k + 1) + " uses a letter outside the alphabet");
    }
    if (!w.is_cyclically_reduced()) {
      throw Error(ErrorCode::NotCyclicallyReduced,
                  "generator " + std::to_string(k + 1) + " (" + w.format(alphabet) +
                      ") is not cyclically reduced");
    }
    int prev = 0;
    for (std::size_t i = 0; i < w.length(); ++i) {
      const int next = i + 1 == w.length() ? 0 : vertex_count++;
      const Letter l = w[i];
      edges.push_back(l.positive() ? Edge{prev, l.generator(), next}
                                   : Edge{next, l.generator(), prev});
      prev = next;
    }
  }

  // Fold: identify termini (origins) of equally labelled edges sharing an
  // origin (terminus) until the graph is deterministic.
  UnionFind uf(vertex_count);
  for (;;) {
    for (Edge& e : edges) {
      e.origin = uf.find(e.origin);
      e.terminus = uf.find(e.terminus);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    bool merged = false;
    std::map<std::pair<int, int>, int> out;
    std::map<std::pair<int, int>, int> in;
    for (const Edge& e : edges) {
      auto [o, fresh_o] = out.emplace(std::pair{e.origin, e.label}, e.terminus);
      if (!fresh_o && uf.find(o->second) != uf.find(e.terminus)) {
        uf.unite(o->second, e.terminus);
        merged = true;
      }
      auto [t, fresh_t] = in.emplace(std::pair{e.terminus, e.label}, e.origin);
      if (!fresh_t && uf.find(t->second) != uf.find(e.origin)) {
        uf.unite(t->second, e.origin);
        merged = true;
      }
    }
    if (!merged) break;
  }

  // Trim hanging non-root vertices (a no-op for cyclically reduced input).
  std::set<int> alive;
  for (const Edge& e : edges) {
    alive.insert(e.origin);
    alive.insert(e.terminus);
  }
  alive.insert(0);
  for (bool trimmed = true; trimmed;) {
    trimmed = false;
    std::map<int, int> degree;
    for (const Edge& e : edges) {
      ++degree[e.origin];
      ++degree[e.terminus];
    }
    for (int v : alive) {
      if (v != 0 && degree[v] < 2) {
        std::erase_if(edges, [v](const Edge& e) { return e.origin == v || e.terminus == v; });
        alive.erase(v);
        trimmed = true;
        break;
      }
    }
  }

  const int rank = static_cast<int>(edges.size()) - static_cast<int>(alive.size()) + 1;
  if (rank < 2) {
    throw Error(ErrorCode::CyclicOrTrivialSubgroup,
                "generated subgroup has rank " + std::to_string(rank) + " (cyclic or trivial)");
  }
  // Shift ids to be positive before canonical renumbering.
  std::vector<VertexId> vertices;
  for (int v : alive) vertices.push_back(v + 1);
  for (Edge& e : edges) {
    ++e.origin;
    ++e.terminus;
  }
  return CoreGraph(alphabet, 1, std::move(vertices), std::move(edges)).canonical();
}

LabelSets label_sets(const CoreGraph& g) {
  LabelSets out;
  for (VertexId v : g.vertices()) out[v] = g.labels(v);
  return out;
}

bool membership(const CoreGraph& g, const Word& w) {
  VertexId v = g.root();
  for (Letter l : w.letters()) {
    auto next = g.step(v, l);
    if (!next) return false;
    v = *next;
  }
  return v == g.root();
}

// ---------------------------------------------------------------- collapse

std::map<VertexId, VertexId> CollapseData::rename() const {
  std::map<VertexId, VertexId> out;
  for (const Arc& e : e_o) out[e.origin] = e.terminus;
  return out;
}

CollapseData make_collapse_data(const CoreGraph& g, Letter a, std::vector<VertexId> s_o) {
  std::sort(s_o.begin(), s_o.end());
  s_o.erase(std::unique(s_o.begin(), s_o.end()), s_o.end());
  CollapseData cd{a, std::move(s_o), {}, {}, {}};
  for (VertexId v : cd.s_o) {
    auto t = g.step(v, a);
    if (!t) {
      throw Error(ErrorCode::Precondition,
                  "vertex " + std::to_string(v) + " has no " + g.alphabet().format_explicit(a) +
                      "-arc");
    }
    cd.e_o.push_back({v, a, *t});
    cd.s_t.push_back(*t);
    cd.e_t.push_back(cd.e_o.back().reversed());
  }
  return cd;
}

CoreGraph collapse_core(const CoreGraph& g, const CollapseData& cd) {
  if (cd.e_o.empty()) throw Error(ErrorCode::Precondition, "collapse requires |E_o| >= 1");
  const std::size_t n = cd.e_o.size();
  if (cd.s_o.size() != n || cd.s_t.size() != n || cd.e_t.size() != n) {
    throw Error(ErrorCode::Precondition, "collapse data requires |S_o|=|E_o|=|S_t|=|E_t|");
  }
  std::set<Edge> removed;
  for (const Arc& e : cd.e_o) {
    if (e.label != cd.letter || g.step(e.origin, e.label) != e.terminus) {
      throw Error(ErrorCode::Precondition, "E_o contains an arc that is not an a-arc of the core");
    }
    removed.insert(e.edge());
  }
  const auto rename = cd.rename();
  for (const auto& [from, to] : rename) {
    if (rename.contains(to)) {
      throw Error(ErrorCode::Precondition, "S_o and S_t must be disjoint");
    }
  }
  auto image = [&](VertexId v) {
    auto it = rename.find(v);
    return it == rename.end() ? v : it->second;
  };

  std::vector<Edge> edges;
  std::set<std::pair<VertexId, int>> out;
  std::set<std::pair<VertexId, int>> in;
  for (const Edge& e : g.edges()) {
    if (removed.contains(e)) continue;
    const Edge f{image(e.origin), e.label, image(e.terminus)};
    if (!out.emplace(f.origin, f.label).second || !in.emplace(f.terminus, f.label).second) {
      throw Error(ErrorCode::FoldingViolation,
                  "collapse creates a label clash at vertex " +
                      std::to_string(out.contains({f.origin, f.label}) ? f.origin : f.terminus));
    }
    edges.push_back(f);
  }
  std::vector<VertexId> vertices;
  for (VertexId v : g.vertices()) {
    if (!rename.contains(v)) vertices.push_back(v);
  }
  return CoreGraph(g.alphabet(), image(g.root()), std::move(vertices), std::move(edges));
}

bool rooted_isomorphic(const CoreGraph& a, const CoreGraph& b) {
  return a.alphabet() == b.alphabet() && a.vertex_count() == b.vertex_count() &&
         a.edge_count() == b.edge_count() &&
         canonical_edges(a, a.root()) == canonical_edges(b, b.root());
}

bool isomorphic_up_to_root(const CoreGraph& a, const CoreGraph& b) {
  if (rooted_isomorphic(a, b)) return true;
  if (!(a.alphabet() == b.alphabet()) || a.vertex_count() != b.vertex_count() ||
      a.edge_count() != b.edge_count()) {
    return false;
  }
  const auto target = canonical_edges(a, a.root());
  for (VertexId r : b.vertices()) {
    if (canonical_edges(b, r) == target) return true;
  }
  return false;
}

}  // namespace cogrowth
