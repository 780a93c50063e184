#include "cogrowth/pipeline.hpp"

#include "cogrowth/error.hpp"

namespace cogrowth {

std::string_view to_string(StepStatus status) {
  switch (status) {
    case StepStatus::Reduced: return "Reduced";
    case StepStatus::SingleVertex: return "SingleVertex";
    case StepStatus::NoCutVertex: return "NoCutVertex";
    case StepStatus::NoValidAutomorphism: return "NoValidAutomorphism";
  }
  return "?";
}

std::vector<Word> image_generators(const WhiteheadAutomorphism& phi,
                                   std::span<const Word> generators) {
  std::vector<Word> out;
  out.reserve(generators.size());
  for (const Word& w : generators) out.push_back(cyclically_reduce(apply_whitehead(phi, w)).core);
  return out;
}

StepResult run_step(const CoreGraph& g, std::span<const Word> generators,
                    const PipelineConfig& config) {
  if (g.vertex_count() <= 1) return {StepStatus::SingleVertex, std::nullopt, std::nullopt};
  AutomorphismChoice choice = choose_automorphism(g);
  if (choice.status == ChoiceStatus::NoCutVertex) {
    return {StepStatus::NoCutVertex, std::move(choice), std::nullopt};
  }
  if (choice.status == ChoiceStatus::NoValidAutomorphism) {
    return {StepStatus::NoValidAutomorphism, std::move(choice), std::nullopt};
  }

  const WhiteheadAutomorphism& phi = *choice.automorphism;
  const CollapseData& cd = *choice.collapse;
  Automaton b_h = build_automaton(g);
  SStateSet s = make_s_states(b_h, cd);
  Automaton b_phi = collapse_automaton(b_h, s);
  StateOrdering nse = make_nse(b_h, s);
  AdjacencyMatrix m = adjacency(b_h, nse);
  decompose(m, s);
  AdjacencyMatrix m1 = derive_m1(m, s);
  AdjacencyMatrix m1_direct = adjacency(b_phi, make_ose(b_phi));
  PFResult pf = pf_eigen(m, config.power);
  PFResult pf1 = pf_eigen(m1, config.power);
  InequalityCertificate cert = certify_inequality(m, m1, s, pf1, config.certificate);

  ReductionStep step{std::vector<Word>(generators.begin(), generators.end()),
                     generators.empty() ? std::vector<Word>{} : image_generators(phi, generators),
                     g,
                     phi,
                     cd,
                     choice.cases,
                     collapse_core(g, cd),
                     std::move(b_h),
                     std::move(s),
                     std::move(b_phi),
                     std::move(nse),
                     std::move(m),
                     std::move(m1),
                     std::move(m1_direct),
                     std::move(pf),
                     std::move(pf1),
                     std::move(cert)};
  return {StepStatus::Reduced, std::move(choice), std::move(step)};
}

ReductionTrace run_reduce(const CoreGraph& g, std::span<const Word> generators,
                          const PipelineConfig& config) {
  ReductionTrace trace;
  CoreGraph current = g;
  std::vector<Word> gens(generators.begin(), generators.end());
  while (true) {
    StepResult r = run_step(current, gens, config);
    if (r.status != StepStatus::Reduced) {
      trace.terminal = r.status;
      trace.final_choice = std::move(r.choice);
      trace.final_core = current;
      return trace;
    }
    if (r.step->core_after.vertex_count() >= current.vertex_count()) {
      throw Error(ErrorCode::Precondition, "reduction step did not shrink the core");
    }
    current = r.step->core_after.canonical();
    gens = r.step->generators_after;
    trace.steps.push_back(std::move(*r.step));
  }
}

}  // namespace cogrowth
