#include "cogrowth/export.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cogrowth/error.hpp"

namespace cogrowth {

using json = nlohmann::ordered_json;

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

namespace {

/// Rounded to 6 significant digits so the JSON dump stays short.
double r6(double x) { return std::stod(format_real(x)); }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

json letter_set_json(LetterSet set, const Alphabet& alphabet) {
  json out = json::array();
  for (Letter l : set.letters()) out.push_back(alphabet.format_explicit(l));
  return out;
}

json words_json(std::span<const Word> words, const Alphabet& alphabet) {
  json out = json::array();
  for (const Word& w : words) out.push_back(w.format(alphabet));
  return out;
}

json core_json(const CoreGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({{"o", e.origin}, {"label", g.alphabet().name(e.label)}, {"t", e.terminus}});
  }
  json label_sets_json = json::object();
  for (const auto& [v, lv] : label_sets(g)) {
    label_sets_json[std::to_string(v)] = letter_set_json(lv, g.alphabet());
  }
  return {{"alphabet", g.alphabet().names()},
          {"root", g.root()},
          {"vertices", std::vector<VertexId>(g.vertices().begin(), g.vertices().end())},
          {"edges", edges},
          {"label_sets", label_sets_json}};
}

json states_json(std::span<const State> states, const Alphabet& alphabet) {
  json out = json::array();
  for (const State& s : states) out.push_back(format_state(s, alphabet));
  return out;
}

json automaton_json(const Automaton& b) {
  const Alphabet& a = b.alphabet();
  json transitions = json::array();
  for (const Transition& t : b.transitions()) {
    transitions.push_back({{"from", format_state(t.from, a)},
                           {"label", a.format_explicit(t.label)},
                           {"to", format_state(t.to, a)}});
  }
  json initial = json::array();
  for (std::size_t i : b.initial()) initial.push_back(format_state(b.state(i), a));
  json final_states = json::array();
  for (std::size_t i : b.final_states()) final_states.push_back(format_state(b.state(i), a));
  return {{"states", states_json(b.states(), a)},
          {"transitions", transitions},
          {"initial", initial},
          {"final", final_states}};
}

json matrix_json(const AdjacencyMatrix& m, const Alphabet& alphabet) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.size(); ++r) {
    std::vector<int> row(m.entries.row(r).begin(), m.entries.row(r).end());
    rows.push_back(row);
  }
  return {{"ordering", m.ordering.kind == OrderingKind::NSE ? "NSE" : "OSE"},
          {"states", states_json(m.ordering.states, alphabet)},
          {"boundary", m.ordering.boundary},
          {"rows", rows}};
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(r6(v(i)));
  return out;
}

json pf_json(const PFResult& pf, const StateOrdering& ordering, const Alphabet& alphabet,
             double tolerance) {
  return {{"eigenvalue", r6(pf.eigenvalue)},
          {"eigenvector", vector_json(pf.eigenvector)},
          {"states", states_json(ordering.states, alphabet)},
          {"iterations", pf.iterations},
          {"residual", r6(pf.residual)},
          {"tolerance", tolerance}};
}

json rows_json(const std::vector<Eigen::Index>& rows) {
  json out = json::array();
  for (Eigen::Index r : rows) out.push_back(r + 1);
  return out;
}

json certificate_json(const InequalityCertificate& c, const StateOrdering& nse,
                      const Alphabet& alphabet) {
  json bounds = json::array();
  for (const SBound& b : c.s_bounds) {
    bounds.push_back({{"state", format_state(b.state, alphabet)},
                      {"b", r6(b.b)},
                      {"lower", r6(b.lower)},
                      {"upper", r6(b.upper)},
                      {"u", r6(b.value)}});
  }
  return {{"lambda1", r6(c.lambda1)},
          {"u_choice", static_cast<int>(c.choice)},
          {"states", states_json(nse.states, alphabet)},
          {"u", vector_json(c.u)},
          {"Mu", vector_json(c.mu)},
          {"lambda1_u_minus_Mu", vector_json(c.gap)},
          {"strict_rows", rows_json(c.strict_rows)},
          {"designated_rows", rows_json(c.designated_rows)},
          {"s_bounds", bounds}};
}

json choice_json(const AutomorphismChoice& choice, const Alphabet& alphabet) {
  json cuts = json::array();
  for (const CutVertexReport& r : choice.cut_vertices) {
    json pieces = json::array();
    for (LetterSet p : r.pieces) pieces.push_back(letter_set_json(p, alphabet));
    cuts.push_back({{"letter", alphabet.format_explicit(r.letter)},
                    {"configuration", r.configuration},
                    {"pieces", pieces}});
  }
  json edges = json::array();
  for (const auto& [pq, mult] : choice.graph.edges()) {
    edges.push_back({{"p", alphabet.format_explicit(pq.first)},
                     {"q", alphabet.format_explicit(pq.second)},
                     {"multiplicity", mult}});
  }
  json out = {{"whitehead_graph", edges}, {"cut_vertices", cuts}};
  switch (choice.status) {
    case ChoiceStatus::Found: out["status"] = "Found"; break;
    case ChoiceStatus::NoCutVertex:
      out["status"] = "NoCutVertex";
      out["certificate"] = "Whitehead graph of the core has no cut vertex: H is not a free factor";
      break;
    case ChoiceStatus::NoValidAutomorphism: out["status"] = "NoValidAutomorphism"; break;
  }
  if (choice.automorphism) out["automorphism"] = choice.automorphism->format(alphabet);
  if (choice.collapse) {
    const CollapseData& cd = *choice.collapse;
    json e_o = json::array();
    for (const Arc& e : cd.e_o) {
      e_o.push_back({{"o", e.origin}, {"label", alphabet.format_explicit(e.label)}, {"t", e.terminus}});
    }
    out["S_o"] = cd.s_o;
    out["S_t"] = cd.s_t;
    out["E_o"] = e_o;
  }
  if (!choice.cases.empty()) {
    json cases = json::object();
    for (const auto& [v, c] : choice.cases) cases[std::to_string(v)] = c;
    out["cases"] = cases;
  }
  return out;
}

json step_json(const ReductionStep& step, const PipelineConfig& config) {
  const Alphabet& a = step.core_before.alphabet();
  json s_states = json::array();
  for (const SState& x : step.s.states) s_states.push_back(format_state(x.state, a));
  json e_o = json::array();
  for (const Arc& e : step.collapse.e_o) {
    e_o.push_back({{"o", e.origin}, {"label", a.format_explicit(e.label)}, {"t", e.terminus}});
  }
  return {{"generators_before", words_json(step.generators_before, a)},
          {"generators_after", words_json(step.generators_after, a)},
          {"automorphism", step.automorphism.format(a)},
          {"S_o", step.collapse.s_o},
          {"S_t", step.collapse.s_t},
          {"E_o", e_o},
          {"core_before", {{"vertices", step.core_before.vertex_count()},
                           {"edges", step.core_before.edge_count()}}},
          {"core_after", {{"vertices", step.core_after.vertex_count()},
                          {"edges", step.core_after.edge_count()}}},
          {"states_before", step.b_h.size()},
          {"states_after", step.b_phi.size()},
          {"S", s_states},
          {"OSE", states_json(make_ose(step.b_h).states, a)},
          {"NSE", states_json(step.nse.states, a)},
          {"OSE_after", states_json(step.m1.ordering.states, a)},
          {"lambda", r6(step.pf.eigenvalue)},
          {"lambda1", r6(step.pf1.eigenvalue)},
          {"tolerance", config.power.tolerance},
          {"certificate", certificate_json(step.certificate, step.nse, a)}};
}

}  // namespace

std::string core_to_dot(const CoreGraph& g, bool extended) {
  std::ostringstream out;
  out << "digraph core {\n  rankdir=LR;\n";
  for (VertexId v : g.vertices()) {
    out << "  " << v << " [shape=" << (v == g.root() ? "doublecircle" : "circle") << "];\n";
  }
  const Alphabet& a = g.alphabet();
  if (extended) {
    for (const Arc& e : g.arcs()) {
      out << "  " << e.origin << " -> " << e.terminus << " [label=" << quote(a.format_explicit(e.label))
          << "];\n";
    }
  } else {
    for (const Edge& e : g.edges()) {
      out << "  " << e.origin << " -> " << e.terminus << " [label=" << quote(a.name(e.label)) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string core_to_json(const CoreGraph& g) { return core_json(g).dump(2) + "\n"; }

CoreGraph core_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1, e.byte);
  }
  try {
    Alphabet alphabet(j.at("alphabet").get<std::vector<std::string>>());
    std::vector<Edge> edges;
    for (const json& e : j.at("edges")) {
      const std::string label = e.at("label").get<std::string>();
      auto gen = alphabet.find(label);
      if (!gen) throw Error(ErrorCode::Parse, "unknown edge label '" + label + "'");
      edges.push_back({e.at("o").get<VertexId>(), *gen, e.at("t").get<VertexId>()});
    }
    return CoreGraph(std::move(alphabet), j.at("root").get<VertexId>(),
                     j.at("vertices").get<std::vector<VertexId>>(), std::move(edges));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed core JSON: ") + e.what());
  }
}

std::string whitehead_to_dot(const WhiteheadGraph& wg, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "graph whitehead {\n";
  for (Letter l : alphabet.letters()) out << "  " << quote(alphabet.format_explicit(l)) << ";\n";
  for (const auto& [pq, mult] : wg.edges()) {
    out << "  " << quote(alphabet.format_explicit(pq.first)) << " -- "
        << quote(alphabet.format_explicit(pq.second));
    if (mult > 1) out << " [label=" << quote(std::to_string(mult)) << "]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string choice_to_json(const AutomorphismChoice& choice, const Alphabet& alphabet) {
  return choice_json(choice, alphabet).dump(2) + "\n";
}

std::string automaton_to_dot(const Automaton& b, const std::vector<std::pair<State, State>>& dashed) {
  const Alphabet& a = b.alphabet();
  const std::set<std::pair<State, State>> dash(dashed.begin(), dashed.end());
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < b.size(); ++i) {
    const bool accepting = b.is_initial(i) || b.is_final(i);
    out << "  q" << i << " [label=" << quote(format_state(b.state(i), a))
        << ", shape=" << (accepting ? "doublecircle" : "circle") << "];\n";
  }
  for (const Transition& t : b.transitions()) {
    out << "  q" << b.index_of(t.from) << " -> q" << b.index_of(t.to)
        << " [label=" << quote(a.format_explicit(t.label));
    if (dash.contains({t.from, t.to})) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string automaton_to_json(const Automaton& b) { return automaton_json(b).dump(2) + "\n"; }

std::vector<std::pair<State, State>> collapsed_transitions(const SStateSet& s) {
  auto rename = [&](State q) {
    if (auto it = s.rename.find(q.vertex); it != s.rename.end()) q.vertex = it->second;
    return q;
  };
  std::set<std::pair<State, State>> out;
  for (const SState& x : s.states) {
    for (const State& p : x.predecessors) {
      for (const State& t : x.successors) out.emplace(rename(p), rename(t));
    }
  }
  return {out.begin(), out.end()};
}

std::string matrix_to_csv(const AdjacencyMatrix& m, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "state";
  for (const State& s : m.ordering.states) out << "," << quote(format_state(s, alphabet));
  out << "\n";
  for (Eigen::Index r = 0; r < m.size(); ++r) {
    out << quote(format_state(m.ordering.states[r], alphabet));
    for (Eigen::Index c = 0; c < m.size(); ++c) out << "," << m.entries(r, c);
    out << "\n";
  }
  return out.str();
}

std::string matrix_to_text(const AdjacencyMatrix& m, const Alphabet& alphabet) {
  std::vector<std::string> names;
  std::size_t width = 0;
  for (const State& s : m.ordering.states) {
    names.push_back(format_state(s, alphabet));
    width = std::max(width, names.back().size());
  }
  const auto n = static_cast<std::size_t>(m.size());
  const std::size_t split = m.ordering.kind == OrderingKind::NSE ? m.ordering.boundary : n;
  const std::size_t cell = std::to_string(n).size() + 1;
  auto pad = [](const std::string& s, std::size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
  };
  std::ostringstream out;
  std::string header = std::string(width, ' ') + " ";
  for (std::size_t c = 0; c < n; ++c) {
    if (c == split) header += " |";
    header += pad(std::to_string(c + 1), cell);
  }
  out << header << "\n";
  for (std::size_t r = 0; r < n; ++r) {
    if (r == split) out << std::string(header.size(), '-') << "\n";
    std::string line = names[r] + std::string(width - names[r].size(), ' ') + " ";
    for (std::size_t c = 0; c < n; ++c) {
      if (c == split) line += " |";
      line += pad(std::to_string(m.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))),
                  cell);
    }
    out << line << "\n";
  }
  return out.str();
}

std::string matrix_to_json(const AdjacencyMatrix& m, const Alphabet& alphabet) {
  return matrix_json(m, alphabet).dump(2) + "\n";
}

std::string pf_to_json(const PFResult& pf, const StateOrdering& ordering, const Alphabet& alphabet,
                       double tolerance) {
  return pf_json(pf, ordering, alphabet, tolerance).dump(2) + "\n";
}

std::string certificate_to_json(const InequalityCertificate& c, const StateOrdering& nse,
                                const Alphabet& alphabet) {
  return certificate_json(c, nse, alphabet).dump(2) + "\n";
}

std::string step_to_json(const ReductionStep& step, const PipelineConfig& config) {
  return step_json(step, config).dump(2) + "\n";
}

std::string trace_to_json(const ReductionTrace& trace, const Alphabet& alphabet,
                          const PipelineConfig& config) {
  json steps = json::array();
  for (const ReductionStep& s : trace.steps) steps.push_back(step_json(s, config));
  json out = {{"steps", steps}, {"terminal", std::string(to_string(trace.terminal))}};
  if (trace.final_choice) out["final_whitehead"] = choice_json(*trace.final_choice, alphabet);
  if (trace.final_core) out["final_core"] = core_json(*trace.final_core);
  return out.dump(2) + "\n";
}

}  // namespace cogrowth
