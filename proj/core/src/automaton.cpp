#include "cogrowth/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "cogrowth/error.hpp"

namespace cogrowth {

std::string format_state(const State& s, const Alphabet& alphabet) {
  return "(" + std::to_string(s.vertex) + "," + alphabet.format_explicit(s.letter) + ")";
}

// --------------------------------------------------------------- Automaton

Automaton::Automaton(Alphabet alphabet, std::vector<State> states,
                     std::span<const Transition> transitions, std::vector<State> initial,
                     std::vector<State> final_states)
    : alphabet_(std::move(alphabet)), states_(std::move(states)) {
  std::sort(states_.begin(), states_.end());
  if (std::adjacent_find(states_.begin(), states_.end()) != states_.end()) {
    throw Error(ErrorCode::DeterminismViolation, "duplicate automaton state");
  }
  const int letters = alphabet_.letter_count();
  table_.assign(states_.size() * letters, -1);
  for (const Transition& t : transitions) {
    if (t.label.generator() > alphabet_.rank()) {
      throw Error(ErrorCode::Precondition, "transition label outside the alphabet");
    }
    const std::size_t from = index_of(t.from);
    const std::size_t to = index_of(t.to);
    auto& slot = table_[from * letters + t.label.index()];
    if (slot != -1 && static_cast<std::size_t>(slot) != to) {
      throw Error(ErrorCode::DeterminismViolation,
                  "two transitions labelled " + alphabet_.format_explicit(t.label) + " leave " +
                      format_state(t.from, alphabet_));
    }
    slot = static_cast<std::int32_t>(to);
  }
  auto indices = [this](const std::vector<State>& set) {
    std::vector<std::size_t> out;
    for (const State& s : set) out.push_back(index_of(s));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  initial_ = indices(initial);
  final_ = indices(final_states);
}

std::optional<std::size_t> Automaton::find(const State& s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

std::size_t Automaton::index_of(const State& s) const {
  auto i = find(s);
  if (!i) throw Error(ErrorCode::Precondition, "unknown state " + format_state(s, alphabet_));
  return *i;
}

std::optional<std::size_t> Automaton::next(std::size_t i, Letter l) const {
  if (l.generator() > alphabet_.rank()) return std::nullopt;
  const auto t = table_[i * alphabet_.letter_count() + l.index()];
  if (t < 0) return std::nullopt;
  return static_cast<std::size_t>(t);
}

bool Automaton::is_initial(std::size_t i) const {
  return std::binary_search(initial_.begin(), initial_.end(), i);
}

bool Automaton::is_final(std::size_t i) const {
  return std::binary_search(final_.begin(), final_.end(), i);
}

std::vector<Transition> Automaton::transitions() const {
  std::vector<Transition> out;
  const int letters = alphabet_.letter_count();
  for (std::size_t i = 0; i < states_.size(); ++i) {
    for (int l = 0; l < letters; ++l) {
      if (auto t = table_[i * letters + l]; t >= 0) {
        out.push_back({states_[i], Letter::from_index(l), states_[t]});
      }
    }
  }
  return out;
}

std::size_t Automaton::transition_count() const {
  return static_cast<std::size_t>(std::count_if(table_.begin(), table_.end(), [](auto t) { return t >= 0; }));
}

std::size_t Automaton::out_degree(std::size_t i) const {
  const int letters = alphabet_.letter_count();
  return static_cast<std::size_t>(std::count_if(table_.begin() + i * letters,
                                                table_.begin() + (i + 1) * letters,
                                                [](auto t) { return t >= 0; }));
}

std::vector<std::size_t> Automaton::predecessors(std::size_t i) const {
  std::vector<std::size_t> out;
  const int letters = alphabet_.letter_count();
  for (std::size_t p = 0; p < states_.size(); ++p) {
    for (int l = 0; l < letters; ++l) {
      if (table_[p * letters + l] == static_cast<std::int32_t>(i)) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Automaton::is_ergodic() const {
  if (states_.empty()) return false;
  const int letters = alphabet_.letter_count();
  auto reach = [&](bool forward) {
    std::vector<char> seen(states_.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t s = stack.back();
      stack.pop_back();
      for (std::size_t p = 0; p < states_.size(); ++p) {
        for (int l = 0; l < letters; ++l) {
          const bool edge = forward ? table_[s * letters + l] == static_cast<std::int32_t>(p)
                                    : table_[p * letters + l] == static_cast<std::int32_t>(s);
          if (edge && !seen[p]) {
            seen[p] = 1;
            stack.push_back(p);
          }
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  return reach(true) && reach(false);
}

Automaton Automaton::rename_vertices(const std::map<VertexId, VertexId>& rename) const {
  auto image = [&](State s) {
    if (auto it = rename.find(s.vertex); it != rename.end()) s.vertex = it->second;
    return s;
  };
  std::vector<State> states;
  for (const State& s : states_) states.push_back(image(s));
  std::vector<Transition> transitions;
  for (const Transition& t : this->transitions()) {
    transitions.push_back({image(t.from), t.label, image(t.to)});
  }
  std::vector<State> initial;
  std::vector<State> final_states;
  for (std::size_t i : initial_) initial.push_back(image(states_[i]));
  for (std::size_t i : final_) final_states.push_back(image(states_[i]));
  return Automaton(alphabet_, std::move(states), transitions, std::move(initial),
                   std::move(final_states));
}

// --------------------------------------------------------- build_automaton

Automaton build_automaton(const CoreGraph& g) {
  std::vector<State> states;
  for (const Arc& arc : g.arcs()) states.push_back({arc.terminus, arc.label});
  std::sort(states.begin(), states.end());

  std::vector<Transition> transitions;
  for (const State& s : states) {
    for (Letter l : g.labels(s.vertex).letters()) {
      if (l == s.letter.inverse()) continue;
      transitions.push_back({s, l, State{*g.step(s.vertex, l), l}});
    }
  }
  std::vector<State> initial;
  for (const State& s : states) {
    if (s.vertex == g.root()) initial.push_back(s);
  }
  return Automaton(g.alphabet(), std::move(states), transitions, initial, initial);
}

std::uint64_t accepts(const Automaton& b, const Word& w) {
  if (w.empty()) return 1;
  std::uint64_t count = 0;
  for (std::size_t start : b.initial()) {
    std::optional<std::size_t> s = start;
    for (Letter l : w.letters()) {
      s = b.next(*s, l);
      if (!s) break;
    }
    if (s && b.is_final(*s)) ++count;
  }
  return count;
}

// ---------------------------------------------------------------- collapse

bool SStateSet::contains(const State& s) const {
  return std::any_of(states.begin(), states.end(), [&](const SState& x) { return x.state == s; });
}

SStateSet make_s_states(const Automaton& b, const CollapseData& cd) {
  SStateSet out{cd.letter, {}, cd.rename()};
  std::vector<Arc> arcs = cd.e_o;
  std::sort(arcs.begin(), arcs.end());
  auto describe = [&](const State& st) {
    auto idx = b.find(st);
    if (!idx) {
      throw Error(ErrorCode::Precondition,
                  "S-state " + format_state(st, b.alphabet()) + " is not a state of B_H");
    }
    SState s{st, {}, {}, {}};
    for (std::size_t p : b.predecessors(*idx)) s.predecessors.push_back(b.state(p));
    for (Letter l : b.alphabet().letters()) {
      if (auto t = b.next(*idx, l)) {
        s.successors.push_back(b.state(*t));
        s.successor_labels.push_back(l);
      }
    }
    if (s.predecessors.empty() || s.successors.empty()) {
      throw Error(ErrorCode::Precondition,
                  "S-state " + format_state(st, b.alphabet()) + " has zero in- or out-degree");
    }
    return s;
  };
  for (const Arc& e : arcs) {
    out.states.push_back(describe({e.terminus, cd.letter}));
    out.states.push_back(describe({e.origin, cd.letter.inverse()}));
  }
  return out;
}

Automaton collapse_automaton(const Automaton& b, const SStateSet& s) {
  if (s.empty()) throw Error(ErrorCode::Precondition, "collapse requires a non-empty S");
  std::set<State> removed;
  for (const SState& x : s.states) removed.insert(x.state);

  std::vector<State> states;
  for (const State& q : b.states()) {
    if (!removed.contains(q)) states.push_back(q);
  }
  std::vector<Transition> transitions;
  for (const Transition& t : b.transitions()) {
    if (!removed.contains(t.from) && !removed.contains(t.to)) transitions.push_back(t);
  }
  std::set<std::pair<State, Letter>> used;
  for (const Transition& t : transitions) used.insert({t.from, t.label});

  std::set<State> initial;
  for (std::size_t i : b.initial()) initial.insert(b.state(i));

  for (const SState& x : s.states) {
    for (const State& p : x.predecessors) {
      if (removed.contains(p)) {
        throw Error(ErrorCode::DeterminismViolation,
                    "S-state " + format_state(x.state, b.alphabet()) + " has an S predecessor");
      }
      for (std::size_t j = 0; j < x.successors.size(); ++j) {
        const State& t = x.successors[j];
        const Letter l = x.successor_labels[j];
        if (removed.contains(t)) {
          throw Error(ErrorCode::DeterminismViolation,
                      "S-state " + format_state(x.state, b.alphabet()) + " has an S successor");
        }
        if (!used.insert({p, l}).second) {
          throw Error(ErrorCode::DeterminismViolation,
                      "collapse gives " + format_state(p, b.alphabet()) + " two " +
                          b.alphabet().format_explicit(l) + "-transitions");
        }
        transitions.push_back({p, l, t});
      }
    }
    if (initial.erase(x.state) > 0) {
      initial.insert(x.predecessors.begin(), x.predecessors.end());
    }
  }
  std::vector<State> init(initial.begin(), initial.end());
  Automaton collapsed(b.alphabet(), std::move(states), transitions, init, init);
  return collapsed.rename_vertices(s.rename);
}

// ------------------------------------------------------------- isomorphism

namespace {

std::vector<std::int64_t> encode_from(const Automaton& b, std::size_t start) {
  const int letters = b.alphabet().letter_count();
  std::vector<std::int64_t> number(b.size(), -1);
  std::vector<std::size_t> order{start};
  number[start] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int l = 0; l < letters; ++l) {
      if (auto t = b.next(order[head], Letter::from_index(l)); t && number[*t] < 0) {
        number[*t] = static_cast<std::int64_t>(order.size());
        order.push_back(*t);
      }
    }
  }
  std::vector<std::int64_t> code{static_cast<std::int64_t>(b.size()),
                                 static_cast<std::int64_t>(order.size()), letters};
  for (std::size_t s : order) {
    code.push_back((b.is_initial(s) ? 1 : 0) + (b.is_final(s) ? 2 : 0));
    for (int l = 0; l < letters; ++l) {
      auto t = b.next(s, Letter::from_index(l));
      code.push_back(t ? number[*t] : -1);
    }
  }
  return code;
}

}  // namespace

std::vector<std::int64_t> canonical_form(const Automaton& b) {
  std::vector<std::int64_t> best;
  for (std::size_t start : b.initial()) {
    auto code = encode_from(b, start);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

bool isomorphic(const Automaton& a, const Automaton& b) {
  if (a.size() != b.size() || a.initial().size() != b.initial().size() ||
      a.final_states().size() != b.final_states().size() ||
      a.transition_count() != b.transition_count() ||
      a.alphabet().letter_count() != b.alphabet().letter_count()) {
    return false;
  }
  return canonical_form(a) == canonical_form(b);
}

// ------------------------------------------------------------------ census

std::vector<std::uint64_t> word_census(const Automaton& b, int n_max) {
  if (n_max <= 0) return {};
  if (b.initial().size() < 2) {
    throw Error(ErrorCode::Precondition, "census needs ambiguity k = |I| - 1 >= 1");
  }
  const std::uint64_t k = b.initial().size() - 1;
  const auto transitions = b.transitions();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(transitions.size());
  for (const Transition& t : transitions) edges.emplace_back(b.index_of(t.from), b.index_of(t.to));

  std::vector<std::uint64_t> paths(b.size(), 0);
  for (std::size_t i : b.initial()) paths[i] = 1;
  std::vector<std::uint64_t> out;
  out.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::uint64_t> next(b.size(), 0);
    for (auto [from, to] : edges) {
      if (__builtin_add_overflow(next[to], paths[from], &next[to])) {
        throw Error(ErrorCode::CensusOverflow,
                    "path count exceeds 64 bits at length " + std::to_string(n));
      }
    }
    paths = std::move(next);
    std::uint64_t accepted = 0;
    for (std::size_t i : b.final_states()) {
      if (__builtin_add_overflow(accepted, paths[i], &accepted)) {
        throw Error(ErrorCode::CensusOverflow,
                    "path count exceeds 64 bits at length " + std::to_string(n));
      }
    }
    if (accepted % k != 0) {
      throw Error(ErrorCode::NonIntegerCensus,
                  std::to_string(accepted) + " admissible paths of length " + std::to_string(n) +
                      " is not a multiple of k = " + std::to_string(k));
    }
    out.push_back(accepted / k);
  }
  return out;
}

}  // namespace cogrowth
