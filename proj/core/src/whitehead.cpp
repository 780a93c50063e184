#include "cogrowth/whitehead.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "cogrowth/error.hpp"

namespace cogrowth {

WhiteheadGraph::WhiteheadGraph(int rank) : rank_(rank), adjacency_(2 * rank) {}

void WhiteheadGraph::add_edge(Letter p, Letter q, int multiplicity) {
  if (q < p) std::swap(p, q);
  edges_[{p, q}] += multiplicity;
  adjacency_[p.index()].insert(q);
  adjacency_[q.index()].insert(p);
}

int WhiteheadGraph::total_multiplicity() const {
  int total = 0;
  for (const auto& [pair, count] : edges_) total += count;
  return total;
}

bool WhiteheadGraph::has_self_loop() const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [](const auto& kv) { return kv.first.first == kv.first.second; });
}

LetterSet WhiteheadGraph::component(Letter start, LetterSet removed) const {
  LetterSet seen;
  if (removed.contains(start)) return seen;
  seen.insert(start);
  std::vector<Letter> stack{start};
  while (!stack.empty()) {
    const Letter l = stack.back();
    stack.pop_back();
    for (Letter n : adjacency_[l.index()].minus(removed).minus(seen).letters()) {
      seen.insert(n);
      stack.push_back(n);
    }
  }
  return seen;
}

WhiteheadGraph whitehead_graph_of_word(const Word& w, int rank) {
  if (w.empty() || !w.is_cyclically_reduced()) {
    throw Error(ErrorCode::NotCyclicallyReduced,
                "Whitehead graph of a word needs a non-empty cyclically reduced word");
  }
  WhiteheadGraph wg(rank);
  const std::size_t n = w.length();
  for (std::size_t i = 0; i < n; ++i) {
    wg.add_edge(w[i].inverse(), w[(i + 1) % n]);
  }
  return wg;
}

WhiteheadGraph whitehead_graph_of_core(const LabelSets& ls, int rank) {
  WhiteheadGraph wg(rank);
  for (const auto& [v, labels] : ls) {
    const auto letters = labels.letters();
    for (std::size_t i = 0; i < letters.size(); ++i) {
      for (std::size_t j = i + 1; j < letters.size(); ++j) wg.add_edge(letters[i], letters[j]);
    }
  }
  return wg;
}

std::vector<CutVertexReport> find_cut_vertices(const WhiteheadGraph& wg) {
  std::vector<CutVertexReport> out;
  for (int i = 0; i < wg.letter_count(); ++i) {
    const Letter a = Letter::from_index(i);
    if (wg.isolated(a)) continue;
    const LetterSet comp = wg.component(a);
    const LetterSet removed{a};
    std::vector<LetterSet> pieces;
    LetterSet covered;
    for (Letter n : comp.minus(removed).letters()) {
      if (covered.contains(n)) continue;
      const LetterSet piece = wg.component(n, removed);
      covered = covered | piece;
      pieces.push_back(piece);
    }
    int configuration = 0;
    if (!comp.contains(a.inverse())) {
      configuration = 1;
    } else if (pieces.size() >= 2) {
      configuration = 2;
    }
    if (configuration != 0) out.push_back({a, configuration, std::move(pieces)});
  }
  return out;
}

int trichotomy_case(LetterSet lv, const WhiteheadAutomorphism& phi) {
  const LetterSet a_set{phi.letter()};
  int which = 0;
  int matches = 0;
  if ((lv & phi.set()).empty()) {
    which = 1;
    ++matches;
  }
  if (lv.subset_of(phi.set())) {
    which = 2;
    ++matches;
  }
  if (lv.contains(phi.letter()) && lv.subset_of(phi.set() | a_set)) {
    which = 3;
    ++matches;
  }
  return matches > 1 ? -1 : which;
}

WhiteheadAutomorphism automorphism_for_cut_vertex(const CutVertexReport& report) {
  LetterSet a_set;
  for (const LetterSet& piece : report.pieces) {
    if (!piece.contains(report.letter.inverse())) a_set = a_set | piece;
  }
  return WhiteheadAutomorphism(a_set, report.letter);
}

namespace {

/// Checks every condition the collapse relies on; returns collapse data when
/// the candidate is usable.
std::optional<CollapseData> validate_candidate(const CoreGraph& g, const LabelSets& ls,
                                               const WhiteheadAutomorphism& phi,
                                               std::map<VertexId, int>& cases) {
  cases.clear();
  std::vector<VertexId> s_o;
  for (const auto& [v, lv] : ls) {
    const int c = trichotomy_case(lv, phi);
    if (c <= 0) return std::nullopt;
    cases[v] = c;
    if (c == 3) s_o.push_back(v);
  }
  if (s_o.empty()) return std::nullopt;
  const Letter a = phi.letter();
  CollapseData cd = make_collapse_data(g, a, s_o);
  std::set<VertexId> origins(cd.s_o.begin(), cd.s_o.end());
  for (const Arc& e : cd.e_o) {
    if (origins.contains(e.terminus)) return std::nullopt;
    // The merged vertex must stay folded. Full disjointness of L_o and L_t
    // is too strong: a may also label an arc leaving t(e).
    const LetterSet lo = ls.at(e.origin).minus(LetterSet{a});
    const LetterSet lt = ls.at(e.terminus).minus(LetterSet{a.inverse()});
    if (!(lo & lt).empty()) return std::nullopt;
    if (ls.at(e.origin).contains(a.inverse())) return std::nullopt;
  }
  try {
    CoreGraph collapsed = collapse_core(g, cd);
    if (collapsed.vertex_count() >= g.vertex_count() || collapsed.edge_count() >= g.edge_count()) {
      return std::nullopt;
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return cd;
}

}  // namespace

AutomorphismChoice choose_automorphism(const CoreGraph& g) {
  if (g.vertex_count() <= 1) {
    throw Error(ErrorCode::Precondition, "choose_automorphism needs a core with more than one vertex");
  }
  const LabelSets ls = label_sets(g);
  AutomorphismChoice choice{ChoiceStatus::NoCutVertex, std::nullopt, std::nullopt,
                            whitehead_graph_of_core(ls, g.alphabet().rank()), {}, {}};
  choice.cut_vertices = find_cut_vertices(choice.graph);
  if (choice.cut_vertices.empty()) return choice;

  choice.status = ChoiceStatus::NoValidAutomorphism;
  for (const CutVertexReport& report : choice.cut_vertices) {
    const WhiteheadAutomorphism phi = automorphism_for_cut_vertex(report);
    std::map<VertexId, int> cases;
    if (auto cd = validate_candidate(g, ls, phi, cases)) {
      choice.status = ChoiceStatus::Found;
      choice.automorphism = phi;
      choice.collapse = std::move(cd);
      choice.cases = std::move(cases);
      return choice;
    }
  }
  return choice;
}

std::optional<WordReduction> reduce_primitive_word(const Word& w, int rank) {
  if (!w.is_cyclically_reduced() || w.length() <= 1) {
    throw Error(ErrorCode::Precondition,
                "reduce_primitive_word needs a cyclically reduced word of length >= 2");
  }
  if (rank > 10) {
    throw Error(ErrorCode::Precondition, "exhaustive Whitehead search is limited to rank <= 10");
  }
  const std::size_t start = w.length();
  std::optional<WordReduction> best;
  for (int ai = 0; ai < 2 * rank; ++ai) {
    const Letter a = Letter::from_index(ai);
    std::vector<Letter> others;
    for (int i = 0; i < 2 * rank; ++i) {
      if (Letter::from_index(i).generator() != a.generator()) others.push_back(Letter::from_index(i));
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
      LetterSet a_set;
      for (std::size_t b = 0; b < others.size(); ++b) {
        if (mask & (std::uint64_t{1} << b)) a_set.insert(others[b]);
      }
      const WhiteheadAutomorphism phi(a_set, a);
      Word image = cyclically_reduce(apply_whitehead(phi, w)).core;
      if (image.length() < start && (!best || image.length() < best->image.length())) {
        best = WordReduction{phi, std::move(image)};
      }
    }
  }
  return best;
}

}  // namespace cogrowth
