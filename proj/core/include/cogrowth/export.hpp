#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cogrowth/automaton.hpp"
#include "cogrowth/core_graph.hpp"
#include "cogrowth/pipeline.hpp"
#include "cogrowth/spectral.hpp"
#include "cogrowth/whitehead.hpp"

// Text renderings of every artifact. Output is deterministic; reals are
// printed with 6 significant digits.
namespace cogrowth {

std::string format_real(double x);

/// Core (one arrow per edge) or extended core (both directions). The root is
/// double-circled.
std::string core_to_dot(const CoreGraph& g, bool extended = false);
std::string core_to_json(const CoreGraph& g);
/// Inverse of core_to_json. Throws Parse on malformed input and the usual
/// CoreGraph validation errors.
CoreGraph core_from_json(const std::string& text);

std::string whitehead_to_dot(const WhiteheadGraph& wg, const Alphabet& alphabet);
std::string choice_to_json(const AutomorphismChoice& choice, const Alphabet& alphabet);

/// I/F states are double-circled; transitions listed in `dashed` (from, to)
/// are drawn dashed.
std::string automaton_to_dot(const Automaton& b,
                             const std::vector<std::pair<State, State>>& dashed = {});
std::string automaton_to_json(const Automaton& b);

/// Transitions of the collapsed automaton that replace two-step paths through
/// S, named after renaming.
std::vector<std::pair<State, State>> collapsed_transitions(const SStateSet& s);

/// Header row of state names, then one row per state.
std::string matrix_to_csv(const AdjacencyMatrix& m, const Alphabet& alphabet);
/// Aligned rows labelled by state; a separator line and column divide the
/// NSE at its boundary.
std::string matrix_to_text(const AdjacencyMatrix& m, const Alphabet& alphabet);
std::string matrix_to_json(const AdjacencyMatrix& m, const Alphabet& alphabet);

std::string pf_to_json(const PFResult& pf, const StateOrdering& ordering, const Alphabet& alphabet,
                       double tolerance);
std::string certificate_to_json(const InequalityCertificate& c, const StateOrdering& nse,
                                const Alphabet& alphabet);

std::string step_to_json(const ReductionStep& step, const PipelineConfig& config);
std::string trace_to_json(const ReductionTrace& trace, const Alphabet& alphabet,
                          const PipelineConfig& config);

}  // namespace cogrowth
