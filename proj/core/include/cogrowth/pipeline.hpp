#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cogrowth/automaton.hpp"
#include "cogrowth/core_graph.hpp"
#include "cogrowth/spectral.hpp"
#include "cogrowth/whitehead.hpp"
#include "cogrowth/words.hpp"

namespace cogrowth {

struct PipelineConfig {
  PowerIterationOptions power;
  CertificateOptions certificate;
};

enum class StepStatus { Reduced, SingleVertex, NoCutVertex, NoValidAutomorphism };

std::string_view to_string(StepStatus status);

/// Every artifact of one reduction step H -> phi(H).
struct ReductionStep {
  std::vector<Word> generators_before;
  /// Cyclically reduced phi-images; empty when the step started from a graph.
  std::vector<Word> generators_after;
  CoreGraph core_before;
  WhiteheadAutomorphism automorphism;
  CollapseData collapse;
  std::map<VertexId, int> cases;
  /// collapse_core output with its original vertex names.
  CoreGraph core_after;
  Automaton b_h;
  SStateSet s;
  /// collapse_automaton output; states carry the names of core_after.
  Automaton b_phi;
  StateOrdering nse;
  AdjacencyMatrix m;
  AdjacencyMatrix m1;
  /// Adjacency of b_phi under its own OSE, assembled directly.
  AdjacencyMatrix m1_direct;
  PFResult pf;
  PFResult pf1;
  InequalityCertificate certificate;
};

struct StepResult {
  StepStatus status;
  /// Absent for a one-vertex core.
  std::optional<AutomorphismChoice> choice;
  std::optional<ReductionStep> step;
};

/// One step from the core of H. Cut-vertex failures are reported through the
/// status, never thrown; numerical failures throw.
StepResult run_step(const CoreGraph& g, std::span<const Word> generators,
                    const PipelineConfig& config = {});

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  StepStatus terminal = StepStatus::SingleVertex;
  std::optional<AutomorphismChoice> final_choice;
  /// Core of the last image, canonically numbered.
  std::optional<CoreGraph> final_core;
};

/// Repeats run_step on the canonical form of each collapsed core until a
/// terminal status. Vertex counts strictly decrease, so this terminates.
ReductionTrace run_reduce(const CoreGraph& g, std::span<const Word> generators,
                          const PipelineConfig& config = {});

/// phi applied to every generator, reduced and cyclically reduced.
std::vector<Word> image_generators(const WhiteheadAutomorphism& phi, std::span<const Word> generators);

}  // namespace cogrowth
