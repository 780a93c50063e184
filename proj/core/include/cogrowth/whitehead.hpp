#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cogrowth/core_graph.hpp"
#include "cogrowth/words.hpp"

namespace cogrowth {

/// Graph on the 2m letters of the alphabet.
///
/// Edges are unordered letter pairs; parallel edges are merged and their
/// multiplicity is kept as metadata. Connectivity questions only look at the
/// simple graph.
class WhiteheadGraph {
 public:
  explicit WhiteheadGraph(int rank);

  int rank() const { return rank_; }
  int letter_count() const { return 2 * rank_; }

  void add_edge(Letter p, Letter q, int multiplicity = 1);

  /// Pairs (p, q) with p <= q mapped to multiplicity.
  const std::map<std::pair<Letter, Letter>, int>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  int total_multiplicity() const;

  LetterSet neighbours(Letter l) const { return adjacency_[l.index()]; }
  bool isolated(Letter l) const { return adjacency_[l.index()].empty(); }
  bool has_self_loop() const;

  /// Connected component of `start` in the simple graph with `removed`
  /// deleted.
  LetterSet component(Letter start, LetterSet removed = {}) const;

 private:
  int rank_;
  std::map<std::pair<Letter, Letter>, int> edges_;
  std::vector<LetterSet> adjacency_;
};

/// Edge from the inverse of each letter to its successor, cyclically.
/// Throws NotCyclicallyReduced for empty or non-cyclically-reduced input.
WhiteheadGraph whitehead_graph_of_word(const Word& w, int rank);

/// Union over core vertices of the complete graph on L_v.
WhiteheadGraph whitehead_graph_of_core(const LabelSets& ls, int rank);

struct CutVertexReport {
  Letter letter;
  /// 1: the component of a does not contain a^-1;
  /// 2: otherwise, and deleting a disconnects the component of a.
  int configuration;
  /// Components of (component of a) \ {a}, in letter order of their
  /// smallest member.
  std::vector<LetterSet> pieces;
};

/// Every cut vertex, in the global letter order.
std::vector<CutVertexReport> find_cut_vertices(const WhiteheadGraph& wg);

/// Which of the three trichotomy configurations L_v falls in for (A, a):
///   1: L_v and A disjoint;  2: L_v inside A;  3: a in L_v, L_v inside A + {a}.
/// Returns 0 if none and -1 if more than one applies.
int trichotomy_case(LetterSet lv, const WhiteheadAutomorphism& phi);

/// The automorphism (A, a) induced by a cut vertex: A is the union of the
/// components of (component of a) \ {a} that avoid a^-1.
WhiteheadAutomorphism automorphism_for_cut_vertex(const CutVertexReport& report);

enum class ChoiceStatus { Found, NoCutVertex, NoValidAutomorphism };

struct AutomorphismChoice {
  ChoiceStatus status;
  std::optional<WhiteheadAutomorphism> automorphism;
  std::optional<CollapseData> collapse;
  /// The Whitehead graph of H and all its cut vertices, for reporting.
  WhiteheadGraph graph;
  std::vector<CutVertexReport> cut_vertices;
  /// Trichotomy case per vertex for the chosen automorphism.
  std::map<VertexId, int> cases;
};

/// Picks the first cut vertex (letter order) whose induced (A, a) satisfies
/// the trichotomy at every vertex with non-empty S_o, keeps S_o and S_t
/// apart, and collapses to a folded graph with fewer vertices and edges.
///
/// NoCutVertex certifies that H is not a free factor. NoValidAutomorphism
/// asserts nothing about H. Throws Precondition for a one-vertex core.
AutomorphismChoice choose_automorphism(const CoreGraph& g);

struct WordReduction {
  WhiteheadAutomorphism automorphism;
  Word image;  ///< cyclically reduced phi(w)
};

/// Exhaustive search over all 2m * 2^(2m-2) Whitehead automorphisms for one
/// that strictly shortens the cyclic length of w. Among the shortening
/// automorphisms the one with the shortest image wins, ties broken by
/// enumeration order (letter a first, then A as a bit mask).
/// Throws Precondition unless w is cyclically reduced and longer than one
/// letter.
std::optional<WordReduction> reduce_primitive_word(const Word& w, int rank);

}  // namespace cogrowth
