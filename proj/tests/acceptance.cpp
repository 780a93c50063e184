// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance        run all criteria
//   acceptance N      run criterion N only (exit status 1 on failure)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cogrowth/automaton.hpp"
#include "cogrowth/core_graph.hpp"
#include "cogrowth/error.hpp"
#include "cogrowth/pipeline.hpp"
#include "cogrowth/spectral.hpp"
#include "cogrowth/whitehead.hpp"
#include "cogrowth/words.hpp"
#include "commands.hpp"
#include "oracles.hpp"

using namespace cogrowth;

namespace {

constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr std::size_t kCorpusSize = 200;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

const Alphabet& f4() {
  static const Alphabet a = Alphabet::parse("xyzt");
  return a;
}

std::vector<Word> example_gens() { return parse_word_list("yX, yzYzt", f4()); }

std::vector<std::string> names(std::span<const State> states, const Alphabet& a) {
  std::vector<std::string> out;
  for (const State& s : states) out.push_back(format_state(s, a));
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

std::vector<oracle::Instance> full_corpus() {
  std::vector<oracle::Instance> out = oracle::free_factor_corpus(kCorpusSeed, kCorpusSize);
  for (auto& e : oracle::edge_case_corpus()) out.push_back(std::move(e));
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ------------------------------------------------------------------ 1

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const CoreGraph g = build_core(example_gens(), f4());
  o.require(g.vertex_count() == 5, "core has " + std::to_string(g.vertex_count()) + " vertices");

  const std::map<VertexId, std::vector<std::string>> expected_l = {
      {1, {"x", "y", "t^-1"}},
      {2, {"x^-1", "y^-1", "z"}},
      {3, {"y^-1", "z^-1"}},
      {4, {"y", "z"}},
      {5, {"z^-1", "t"}}};
  const LabelSets ls = label_sets(g);
  for (const auto& [v, want] : expected_l) {
    std::vector<std::string> got;
    if (ls.contains(v)) {
      for (Letter l : ls.at(v).letters()) got.push_back(f4().format_explicit(l));
    }
    o.require(got == want, "L_" + std::to_string(v) + " = {" + join(got) + "}");
  }

  const StepResult r = run_step(g, example_gens());
  o.require(r.choice.has_value(), "no Whitehead analysis");
  if (r.choice) {
    bool y_cut = false;
    for (const auto& c : r.choice->cut_vertices) y_cut = y_cut || c.letter == Letter(2, 1);
    o.require(y_cut, "y is not a cut vertex");
  }
  o.require(r.step.has_value(), "reduction step failed");
  if (!r.step) return o;
  const ReductionStep& s = *r.step;
  o.require(s.automorphism.format(f4()) == "({x, t^-1}, y)",
            "phi = " + s.automorphism.format(f4()));
  const std::vector<Word> want_images = parse_word_list("X, zYzt", f4());
  o.require(s.generators_after == want_images, "phi(H) generators differ");
  o.require(join(names(std::vector<State>{s.s.states[0].state, s.s.states[1].state}, f4())) ==
                "(2,y) (1,y^-1)",
            "S differs");
  o.require(s.b_h.size() == 12, "B_H has " + std::to_string(s.b_h.size()) + " states");
  o.require(s.b_phi.size() == 10, "B_phi(H) has " + std::to_string(s.b_phi.size()) + " states");

  const std::string ose = join(names(make_ose(s.b_h).states, f4()));
  o.require(ose ==
                "(1,x^-1) (1,y^-1) (1,t) (2,x) (2,y) (2,z^-1) (3,y) (3,z) (4,y^-1) (4,z^-1) "
                "(5,z) (5,t^-1)",
            "OSE of B_H: " + ose);
  const std::string nse = join(names(s.nse.states, f4()));
  o.require(nse ==
                "(2,x) (1,x^-1) (2,z^-1) (1,t) (3,y) (3,z) (4,y^-1) (4,z^-1) (5,z) (5,t^-1) "
                "(2,y) (1,y^-1)",
            "NSE of B_H: " + nse);
  const std::string ose_phi = join(names(make_ose(s.b_phi).states, f4()));
  o.require(ose_phi ==
                "(2,x) (2,x^-1) (2,z^-1) (2,t) (3,y) (3,z) (4,y^-1) (4,z^-1) (5,z) (5,t^-1)",
            "OSE of B_phi(H): " + ose_phi);
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  o.notes.push_back("runtime " + std::to_string(secs) + " s");
  return o;
}

// ------------------------------------------------------------------ 2

Outcome criterion2() {
  Outcome o;
  static const int expected_m[12][12] = {
      {0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0},
      {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
      {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
      {0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0}};
  const StepResult r = run_step(build_core(example_gens(), f4()), example_gens());
  o.require(r.step.has_value(), "reduction step failed");
  if (!r.step) return o;
  const AdjacencyMatrix& m = r.step->m;
  o.require(m.size() == 12, "M is " + std::to_string(m.size()) + "x" + std::to_string(m.size()));
  int mismatches = 0;
  for (int i = 0; i < 12 && m.size() == 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      if (m.entries(i, j) != expected_m[i][j]) {
        ++mismatches;
        o.require(false, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
  o.notes.push_back(std::to_string(144 - mismatches) + "/144 entries equal");
  return o;
}

// ------------------------------------------------------------------ 3

Outcome criterion3() {
  Outcome o;
  const StepResult r = run_step(build_core(example_gens(), f4()), example_gens());
  o.require(r.step.has_value(), "reduction step failed");
  if (!r.step) return o;
  const double lambda = r.step->pf.eigenvalue;
  const double lambda1 = r.step->pf1.eigenvalue;
  o.require(std::abs(lambda - 1.45) <= 0.005, "lambda = " + std::to_string(lambda));
  o.require(std::abs(lambda1 - 1.64) <= 0.005, "lambda1 = " + std::to_string(lambda1));
  o.notes.push_back("lambda = " + std::to_string(lambda) + ", lambda1 = " + std::to_string(lambda1));

  const double expected_v[10] = {3.12, 4.41, 3.12, 4.41, 2.69, 1, 1.64, 1.64, 2.69, 1};
  const Eigen::VectorXd v = r.step->pf1.eigenvector / r.step->pf1.eigenvector(5);
  std::string got;
  for (int i = 0; i < 10; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.3f", i ? " " : "", v(i));
    got += buf;
    if (std::abs(v(i) - expected_v[i]) > 0.01) {
      o.require(false, "eigenvector entry " + std::to_string(i + 1) + ": " + std::to_string(v(i)) +
                           " vs " + std::to_string(expected_v[i]));
    }
  }
  o.notes.push_back("eigenvector (6th entry = 1): " + got);
  return o;
}

// ------------------------------------------------------------------ 4

Outcome criterion4() {
  Outcome o;
  const StepResult r = run_step(build_core(example_gens(), f4()), example_gens());
  o.require(r.step.has_value(), "reduction step failed");
  if (!r.step) return o;
  const ReductionStep& s = *r.step;
  PFResult scaled = s.pf1;
  scaled.eigenvector /= scaled.eigenvector(5);
  CertificateOptions opts;
  opts.values = std::vector<double>{3.0, 3.0};
  try {
    const InequalityCertificate c = certify_inequality(s.m, s.m1, s.s, scaled, opts);
    std::vector<Eigen::Index> want{0, 1, 2, 3, 10, 11};
    std::string rows;
    for (Eigen::Index j : c.strict_rows) rows += " " + std::to_string(j + 1);
    o.require(c.strict_rows == want, "strict rows:" + rows);
    for (Eigen::Index j = 4; j <= 9; ++j) {
      o.require(std::abs(c.gap(j)) <= 1e-9,
                "row " + std::to_string(j + 1) + " slack " + std::to_string(c.gap(j)));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "bounds (%.2f, %.2f) and (%.2f, %.2f); strict rows%s",
                  c.s_bounds[0].lower, c.s_bounds[0].upper, c.s_bounds[1].lower,
                  c.s_bounds[1].upper, rows.c_str());
    o.notes.push_back(buf);
  } catch (const Error& e) {
    o.require(false, e.what());
  }
  return o;
}

// ------------------------------------------------------------------ 5

std::uint64_t sampled_ambiguity_failures(const CoreGraph& g, const Automaton& b,
                                         const std::vector<Word>& gens, std::mt19937_64& rng,
                                         std::size_t samples) {
  const LetterSet root_labels = g.labels(g.root());
  const std::uint64_t k = static_cast<std::uint64_t>(root_labels.size()) - 1;
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(1, 6);
  std::uint64_t failures = 0;
  std::size_t done = 0;
  while (done < samples) {
    Word w;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      Word g1 = gens[pick(rng)];
      if (rng() & 1) g1 = g1.inverse();
      w = reduce(w * g1);
    }
    if (w.empty()) continue;
    ++done;
    if (accepts(b, w) != k) ++failures;
  }
  return failures;
}

Outcome criterion5() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kCorpusSeed + 5);
  std::size_t instances = 0;
  std::size_t steps = 0;
  for (const auto& inst : full_corpus()) {
    ++instances;
    try {
      const CoreGraph g = build_core(inst.gens, inst.alphabet);
      const ReductionTrace trace = run_reduce(g, inst.gens);
      o.require(trace.terminal == StepStatus::SingleVertex,
                inst.name + ": terminal " + std::string(to_string(trace.terminal)));
      // Automaton properties, for H and every image along the trace.
      std::vector<std::pair<CoreGraph, std::vector<Word>>> subgroups{{g, inst.gens}};
      for (const auto& s : trace.steps) {
        subgroups.emplace_back(s.core_after.canonical(), s.generators_after);
      }
      for (const auto& [core, gens] : subgroups) {
        const Automaton b = build_automaton(core);
        o.require(b.is_ergodic(), inst.name + ": B_H not ergodic");
        o.require(b.initial_equals_final(), inst.name + ": I != F");
        o.require(b.initial().size() == core.labels(core.root()).size(),
                  inst.name + ": |I| != deg(root)");
        const auto bad = sampled_ambiguity_failures(core, b, gens, rng, 500);
        o.require(bad == 0, inst.name + ": " + std::to_string(bad) + " words with wrong ambiguity");
      }
      for (const ReductionStep& s : trace.steps) {
        ++steps;
        o.require(isomorphic(s.b_phi, build_automaton(s.core_after)),
                  inst.name + ": collapsed automaton differs from B of the collapsed core");
        o.require(s.m1.entries == s.m1_direct.entries &&
                      s.m1.ordering.states == s.m1_direct.ordering.states,
                  inst.name + ": derive_m1 differs from direct adjacency");
        const BlockDecomposition d = decompose(s.m, s.s);
        const auto strict = strict_positions(s.nse, s.s);
        const std::set<std::pair<Eigen::Index, Eigen::Index>> strict_set(strict.begin(), strict.end());
        bool dominated = true;
        for (Eigen::Index i = 0; i < d.m_prime.rows(); ++i) {
          for (Eigen::Index j = 0; j < d.m_prime.cols(); ++j) {
            const bool want_strict = strict_set.contains({i, j});
            const int a = d.m_prime(i, j);
            const int b1 = s.m1.entries(i, j);
            dominated = dominated && (want_strict ? a < b1 : a <= b1);
          }
        }
        o.require(dominated, inst.name + ": M' <= M_1 fails or not strict where required");
        o.require(s.pf1.eigenvalue - s.pf.eigenvalue > 1e-8,
                  inst.name + ": lambda1 - lambda = " +
                      std::to_string(s.pf1.eigenvalue - s.pf.eigenvalue));
        for (UChoice c : {UChoice::BelowBound, UChoice::AtBound, UChoice::Midpoint}) {
          CertificateOptions opts;
          opts.choice = c;
          try {
            certify_inequality(s.m, s.m1, s.s, s.pf1, opts);
          } catch (const Error& e) {
            o.require(false, inst.name + ": u-choice " + std::to_string(static_cast<int>(c)) +
                                 ": " + e.what());
          }
        }
      }
    } catch (const Error& e) {
      o.require(false, inst.name + ": " + e.what());
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs < 120.0, "runtime " + std::to_string(secs) + " s");
  o.notes.push_back(std::to_string(instances) + " instances, " + std::to_string(steps) +
                    " reduction steps, " + std::to_string(secs) + " s");
  return o;
}

// ------------------------------------------------------------------ 6

Outcome criterion6() {
  Outcome o;
  std::size_t checked = 0;
  double worst = 0.0;
  std::string worst_name;
  for (const auto& inst : full_corpus()) {
    if (inst.alphabet.rank() > 4) continue;
    ++checked;
    try {
      const CoreGraph g = build_core(inst.gens, inst.alphabet);
      const Automaton b = build_automaton(g);
      const auto census = word_census(b, 20);
      const auto brute = oracle::brute_force_census(inst.gens, inst.alphabet.rank(), 8);
      o.require(std::vector<std::uint64_t>(census.begin(), census.begin() + 8) == brute,
                inst.name + ": census differs from brute force for n <= 8");
      const double lambda = pf_eigen(adjacency(b, make_ose(b))).eigenvalue;
      const double root = std::pow(static_cast<double>(census[19]), 1.0 / 20.0);
      const double rel = std::abs(root - lambda) / lambda;
      if (rel > worst) {
        worst = rel;
        worst_name = inst.name;
      }
      o.require(rel <= 0.05, inst.name + ": a_20^(1/20) = " + std::to_string(root) +
                                 " vs lambda = " + std::to_string(lambda));
    } catch (const Error& e) {
      o.require(false, inst.name + ": " + e.what());
    }
  }
  o.notes.push_back(std::to_string(checked) + " instances; worst relative gap " +
                    std::to_string(worst) + " (" + worst_name + ")");
  return o;
}

// ------------------------------------------------------------------ 7

Outcome criterion7() {
  Outcome o;
  std::size_t steps = 0;
  std::size_t rooted = 0;
  for (const auto& inst : full_corpus()) {
    try {
      const ReductionTrace trace = run_reduce(build_core(inst.gens, inst.alphabet), inst.gens);
      for (const ReductionStep& s : trace.steps) {
        ++steps;
        const CoreGraph direct = build_core(s.generators_after, inst.alphabet);
        if (rooted_isomorphic(s.core_after, direct)) {
          ++rooted;
        } else {
          o.require(isomorphic_up_to_root(s.core_after, direct),
                    inst.name + ": collapsed core is not isomorphic to the core of the images");
        }
      }
    } catch (const Error& e) {
      o.require(false, inst.name + ": " + e.what());
    }
  }
  o.notes.push_back(std::to_string(steps) + " steps; " + std::to_string(rooted) +
                    " rooted directly, " + std::to_string(steps - rooted) +
                    " after moving the root");
  return o;
}

// ------------------------------------------------------------------ 8

Outcome criterion8() {
  Outcome o;
  for (const auto& inst : oracle::non_free_factor_instances()) {
    try {
      const CoreGraph g = build_core(inst.gens, inst.alphabet);
      const StepResult r = run_step(g, inst.gens);
      o.require(r.status == StepStatus::NoCutVertex,
                inst.name + ": status " + std::string(to_string(r.status)));
      o.require(!r.step && r.choice && !r.choice->automorphism && !r.choice->collapse,
                inst.name + ": collapse artifacts were produced");

      std::string gens;
      for (const Word& w : inst.gens) gens += (gens.empty() ? "" : ",") + w.format(inst.alphabet);
      std::string alphabet;
      for (const auto& n : inst.alphabet.names()) alphabet += n;
      std::ostringstream out;
      std::ostringstream err;
      const int code = cli::run_cli({"reduce-step", "--gens", gens, "--alphabet", alphabet}, out, err);
      const std::string text = out.str();
      o.require(code == cli::kNoCutVertex, inst.name + ": exit code " + std::to_string(code));
      o.require(text.find("\"NoCutVertex\"") != std::string::npos,
                inst.name + ": no NoCutVertex certificate in the output");
      o.require(text.find("\"automorphism\"") == std::string::npos &&
                    text.find("\"S_o\"") == std::string::npos &&
                    text.find("\"NSE\"") == std::string::npos,
                inst.name + ": output contains collapse artifacts");
    } catch (const Error& e) {
      o.require(false, inst.name + ": " + e.what());
    }
  }
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"worked example structure", criterion1},
      {"worked example matrix M", criterion2},
      {"worked example spectra", criterion3},
      {"worked example certificate with u = 3", criterion4},
      {"property suite on the free-factor corpus", criterion5},
      {"census against brute force and growth rate", criterion6},
      {"collapse versus core of the images", criterion7},
      {"non-free factors stop with NoCutVertex", criterion8},
  };
  int first = 1;
  int last = static_cast<int>(criteria.size());
  if (argc > 1) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1-%zu]\n", criteria.size());
      return 2;
    }
  }
  int failures = 0;
  for (int i = first; i <= last; ++i) {
    const Criterion& c = criteria[static_cast<std::size_t>(i - 1)];
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.notes.push_back(std::string("exception: ") + e.what());
    }
    std::printf("criterion %d %s: %s\n", i, out.pass ? "PASS" : "FAIL", c.title);
    std::size_t shown = 0;
    for (const auto& n : out.notes) {
      if (++shown > 12) {
        std::printf("    ... %zu more\n", out.notes.size() - 12);
        break;
      }
      std::printf("    %s\n", n.c_str());
    }
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
