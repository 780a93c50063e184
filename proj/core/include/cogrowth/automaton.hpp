#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cogrowth/core_graph.hpp"
#include "cogrowth/words.hpp"

namespace cogrowth {

/// State (v, l) of B_H: vertex v of the core reached by an arc labelled l.
/// Ordered by (vertex id, letter), which is the old state enumeration.
struct State {
  VertexId vertex;
  Letter letter;

  auto operator<=>(const State&) const = default;
};

/// "(2,x^-1)".
std::string format_state(const State& s, const Alphabet& alphabet);

struct Transition {
  State from;
  Letter label;
  State to;

  auto operator<=>(const Transition&) const = default;
};

/// Deterministic finite automaton over the letters of an alphabet, with
/// states named by (vertex, letter) pairs. Immutable after construction.
///
/// States are kept sorted (OSE order); state indices below refer to that
/// order. The transition table is dense: |Q| x 2m entries, -1 when absent.
class Automaton {
 public:
  /// Throws DeterminismViolation if two transitions share (from, label), and
  /// Precondition if a transition or initial/final state is unknown.
  Automaton(Alphabet alphabet, std::vector<State> states, std::span<const Transition> transitions,
            std::vector<State> initial, std::vector<State> final_states);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return states_.size(); }
  std::span<const State> states() const { return states_; }
  const State& state(std::size_t i) const { return states_[i]; }
  std::optional<std::size_t> find(const State& s) const;
  std::size_t index_of(const State& s) const;

  /// Target index of the transition out of state i labelled l.
  std::optional<std::size_t> next(std::size_t i, Letter l) const;

  std::span<const std::size_t> initial() const { return initial_; }
  std::span<const std::size_t> final_states() const { return final_; }
  bool is_initial(std::size_t i) const;
  bool is_final(std::size_t i) const;

  std::vector<Transition> transitions() const;
  std::size_t transition_count() const;
  std::size_t out_degree(std::size_t i) const;

  /// Predecessors of state i (indices), sorted.
  std::vector<std::size_t> predecessors(std::size_t i) const;

  bool is_ergodic() const;
  bool initial_equals_final() const { return initial_ == final_; }

  /// Copy with every state's vertex renamed through `rename` (others kept).
  /// Throws DeterminismViolation if two states collide.
  Automaton rename_vertices(const std::map<VertexId, VertexId>& rename) const;

 private:
  Alphabet alphabet_;
  std::vector<State> states_;
  std::vector<std::int32_t> table_;
  std::vector<std::size_t> initial_;
  std::vector<std::size_t> final_;
};

/// B_H: states (v, l) with l labelling an extended-core arc into v; from
/// (v, l) the letter l' != l^-1 leads to (v l', l') whenever v has an
/// l'-arc; I = F = states at the root.
Automaton build_automaton(const CoreGraph& g);

/// Number of admissible paths labelled w. The empty word counts 1 by
/// convention.
std::uint64_t accepts(const Automaton& b, const Word& w);

/// One state scheduled for removal, with its neighbourhood in B_H.
struct SState {
  State state;                     ///< (q, a^eps)
  std::vector<State> predecessors; ///< o(e_1), ..., o(e_d)
  std::vector<State> successors;   ///< t(eps_1), ..., t(eps_d')
  std::vector<Letter> successor_labels;

  std::size_t in_degree() const { return predecessors.size(); }
  std::size_t out_degree() const { return successors.size(); }
};

/// S = {(v, a^-1) : v in S_o} + {(v', a) : v' in S_t}.
struct SStateSet {
  Letter letter;  ///< a
  /// Per e in E_o (ordered by origin): (t(e), a) then (o(e), a^-1).
  std::vector<SState> states;
  /// o(e) -> t(e)
  std::map<VertexId, VertexId> rename;

  bool contains(const State& s) const;
  bool empty() const { return states.empty(); }
};

/// Collects S from B_H and collapse data. Throws Precondition when a required
/// state is absent or a degree is zero.
SStateSet make_s_states(const Automaton& b, const CollapseData& cd);

/// Removes every S-state, replacing each two-step path
/// o(e_i) -a^eps-> (q, a^eps) -x-> t(eps_j) by o(e_i) -x-> t(eps_j). For S
/// states at the root, I = F loses (q, a^eps) and gains the o(e_i). Vertex
/// names are finally renamed o(e) -> t(e).
/// Throws Precondition for empty S, DeterminismViolation on label clashes.
Automaton collapse_automaton(const Automaton& b, const SStateSet& s);

/// Canonical encoding of a deterministic automaton: minimum over initial
/// states of the breadth-first relabelling along the letter order.
std::vector<std::int64_t> canonical_form(const Automaton& b);

/// Isomorphism of transition diagrams preserving labels and I, F.
bool isomorphic(const Automaton& a, const Automaton& b);

/// a_1..a_{n_max}: admissible paths of each length divided by k = |I| - 1.
/// Throws NonIntegerCensus on a remainder, CensusOverflow past 2^64,
/// Precondition if |I| < 2.
std::vector<std::uint64_t> word_census(const Automaton& b, int n_max);

}  // namespace cogrowth
