#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cogrowth/words.hpp"

namespace cogrowth {

using VertexId = int;

/// Positively labelled edge o --x_label--> t of the core.
struct Edge {
  VertexId origin;
  int label;  ///< generator index in [1, m]
  VertexId terminus;

  auto operator<=>(const Edge&) const = default;
};

/// Edge of the extended core: either a core edge or its reverse carrying the
/// inverse label.
struct Arc {
  VertexId origin;
  Letter label;
  VertexId terminus;

  Arc reversed() const { return {terminus, label.inverse(), origin}; }
  /// The underlying positively labelled core edge.
  Edge edge() const {
    return label.positive() ? Edge{origin, label.generator(), terminus}
                            : Edge{terminus, label.generator(), origin};
  }
  auto operator<=>(const Arc&) const = default;
};

/// Per-vertex label sets L_v: x in L_v iff an x-edge leaves v, x^-1 in L_v
/// iff an x-edge enters v. Equivalently the outgoing labels of the extended
/// core at v.
using LabelSets = std::map<VertexId, LetterSet>;

/// Rooted, folded, labelled graph Delta_H. Immutable once constructed.
///
/// Invariants (checked by the constructor):
///  - folded: (origin, label) and (terminus, label) are unique among edges;
///  - connected;
///  - every non-root vertex has extended degree >= 2, the root >= 1.
/// Vertex ids are arbitrary positive integers; build_core numbers them
/// 1..n by depth-first preorder from the root along the letter order,
/// collapse_core keeps the surviving ids.
class CoreGraph {
 public:
  CoreGraph(Alphabet alphabet, VertexId root, std::vector<VertexId> vertices,
            std::vector<Edge> edges);

  const Alphabet& alphabet() const { return alphabet_; }
  VertexId root() const { return root_; }
  std::span<const VertexId> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(VertexId v) const { return index_.contains(v); }

  /// Follow the extended-core arc labelled `l` out of v.
  std::optional<VertexId> step(VertexId v, Letter l) const;

  /// Outgoing labels of v in the extended core.
  LetterSet labels(VertexId v) const;

  /// All arcs of the extended core, sorted by (origin, label).
  std::vector<Arc> arcs() const;

  /// Rank of the subgroup: |E| - |V| + 1.
  int subgroup_rank() const {
    return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + 1;
  }

  /// Copy with vertices renumbered 1..n by depth-first preorder from the root.
  CoreGraph canonical() const;

  bool operator==(const CoreGraph& other) const {
    return alphabet_ == other.alphabet_ && root_ == other.root_ &&
           vertices_ == other.vertices_ && edges_ == other.edges_;
  }

 private:
  int idx(VertexId v) const { return index_.at(v); }

  Alphabet alphabet_;
  VertexId root_;
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::map<VertexId, int> index_;
  std::vector<int> step_;  ///< |V| x 2m table of target indices, -1 if absent
};

/// Wedge of the generator loops at the root, folded to a fixpoint.
///
/// Errors: EmptyGenerator, NotCyclicallyReduced (includes unreduced input),
/// CyclicOrTrivialSubgroup when the folded graph has rank < 2.
CoreGraph build_core(std::span<const Word> generators, const Alphabet& alphabet);

LabelSets label_sets(const CoreGraph& g);

/// True iff the reduced word w labels a root-to-root path of the extended
/// core, i.e. w is an element of H.
bool membership(const CoreGraph& g, const Word& w);

/// The collapse data attached to a chosen Whitehead automorphism (A, a).
struct CollapseData {
  Letter letter;                  ///< a
  std::vector<VertexId> s_o;      ///< vertices in the third trichotomy case
  std::vector<Arc> e_o;           ///< the a-arcs leaving S_o
  std::vector<VertexId> s_t;      ///< their termini
  std::vector<Arc> e_t;           ///< reversed arcs, labelled a^-1

  /// Map o(e) -> t(e) for every e in E_o.
  std::map<VertexId, VertexId> rename() const;
};

/// Collapse data for a given letter and set S_o; E_o, S_t and E_t are derived
/// from the a-arcs leaving S_o. Throws Error(Precondition) if some vertex of
/// S_o has no a-arc.
CollapseData make_collapse_data(const CoreGraph& g, Letter a, std::vector<VertexId> s_o);

/// Contracts every e in E_o, identifying o(e) with t(e) under the name t(e).
/// Throws Precondition for empty/inconsistent data and FoldingViolation if
/// the contraction produces a label clash.
CoreGraph collapse_core(const CoreGraph& g, const CollapseData& cd);

/// Label-preserving isomorphism mapping root to root.
bool rooted_isomorphic(const CoreGraph& a, const CoreGraph& b);

/// Label-preserving isomorphism mapping a's root to some vertex of b.
bool isomorphic_up_to_root(const CoreGraph& a, const CoreGraph& b);

}  // namespace cogrowth
