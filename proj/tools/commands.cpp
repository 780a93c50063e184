#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cogrowth/automaton.hpp"
#include "cogrowth/core_graph.hpp"
#include "cogrowth/error.hpp"
#include "cogrowth/export.hpp"
#include "cogrowth/pipeline.hpp"
#include "cogrowth/spectral.hpp"
#include "cogrowth/whitehead.hpp"
#include "cogrowth/words.hpp"

namespace cogrowth::cli {

namespace {

struct Options {
  std::string gens;
  std::string graph;
  std::string alphabet = "xyzt";
  std::string format;
  std::string out;
  int u_choice = 3;
  double tol = 1e-10;
  int n_max = 20;
  bool extended = false;
  std::string ordering = "nse";
  std::string which = "m";
  std::string word;
};

struct Input {
  Alphabet alphabet;
  std::vector<Word> generators;
  CoreGraph core;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Input load_input(const Options& o) {
  if (!o.graph.empty()) {
    if (!o.gens.empty()) throw UsageError("--gens and --graph are mutually exclusive");
    CoreGraph g = core_from_json(read_file(o.graph));
    Alphabet a = g.alphabet();
    return {std::move(a), {}, std::move(g)};
  }
  if (o.gens.empty()) throw UsageError("one of --gens or --graph is required");
  Alphabet a = Alphabet::parse(o.alphabet);
  std::vector<Word> gens = parse_word_list(o.gens, a);
  CoreGraph g = build_core(gens, a);
  return {std::move(a), std::move(gens), std::move(g)};
}

PipelineConfig make_config(const Options& o) {
  PipelineConfig c;
  c.power.tolerance = o.tol;
  c.certificate.choice = static_cast<UChoice>(o.u_choice);
  return c;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw UsageError("format '" + format + "' not available here (expected " + list + ")");
}

std::string join_ids(const std::vector<VertexId>& ids) {
  std::string s;
  for (VertexId v : ids) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

std::string join_words(const std::vector<Word>& words, const Alphabet& a) {
  std::string s;
  for (const Word& w : words) s += (s.empty() ? "" : ", ") + w.format(a);
  return s;
}

int status_exit(StepStatus s) {
  switch (s) {
    case StepStatus::NoCutVertex: return kNoCutVertex;
    case StepStatus::NoValidAutomorphism: return kNoValidAutomorphism;
    default: return kOk;
  }
}

std::string step_text(const ReductionStep& step, const PipelineConfig& config) {
  const Alphabet& a = step.core_before.alphabet();
  std::ostringstream out;
  out << "automorphism: " << step.automorphism.format(a) << "\n"
      << "S_o: " << join_ids(step.collapse.s_o) << "\n"
      << "S_t: " << join_ids(step.collapse.s_t) << "\n"
      << "core: " << step.core_before.vertex_count() << " vertices, "
      << step.core_before.edge_count() << " edges -> " << step.core_after.vertex_count()
      << " vertices, " << step.core_after.edge_count() << " edges\n"
      << "states: " << step.b_h.size() << " -> " << step.b_phi.size() << "\n"
      << "S:";
  for (const SState& x : step.s.states) out << " " << format_state(x.state, a);
  out << "\n";
  if (!step.generators_after.empty()) {
    out << "generators: " << join_words(step.generators_before, a) << " -> "
        << join_words(step.generators_after, a) << "\n";
  }
  out << "lambda: " << format_real(step.pf.eigenvalue) << "\n"
      << "lambda1: " << format_real(step.pf1.eigenvalue) << "\n"
      << "certificate: u-choice " << static_cast<int>(step.certificate.choice) << ", strict rows";
  for (Eigen::Index r : step.certificate.strict_rows) out << " " << r + 1;
  out << "\n"
      << "tolerance: " << format_real(config.power.tolerance) << "\n";
  return out.str();
}

std::string no_step_text(const StepResult& r) {
  switch (r.status) {
    case StepStatus::SingleVertex: return "status: SingleVertex (already reduced)\n";
    case StepStatus::NoCutVertex:
      return "status: NoCutVertex\ncertificate: the Whitehead graph of the core has no cut vertex, "
             "so H is not a free factor\n";
    case StepStatus::NoValidAutomorphism:
      return "status: NoValidAutomorphism (cut vertices exist but none admits a collapse)\n";
    case StepStatus::Reduced: break;
  }
  return "";
}

struct Emitted {
  std::string text;
  int code = kOk;
};

Emitted cmd_core(const Options& o) {
  const Input in = load_input(o);
  require_format(o.format.empty() ? "dot" : o.format, {"dot", "json"});
  if (o.format == "json") return {core_to_json(in.core)};
  return {core_to_dot(in.core, o.extended)};
}

Emitted cmd_whitehead(const Options& o) {
  const std::string fmt = o.format.empty() ? "json" : o.format;
  require_format(fmt, {"json", "dot"});
  if (!o.word.empty()) {
    const Alphabet a = Alphabet::parse(o.alphabet);
    const Word w = Word::parse(o.word, a);
    const WhiteheadGraph wg = whitehead_graph_of_word(w, a.rank());
    if (fmt == "dot") return {whitehead_to_dot(wg, a)};
    AutomorphismChoice report{ChoiceStatus::NoCutVertex, std::nullopt, std::nullopt, wg,
                              find_cut_vertices(wg), {}};
    if (!report.cut_vertices.empty()) report.status = ChoiceStatus::Found;
    nlohmann::ordered_json j;
    j["word"] = w.format(a);
    j["reduction"] = nullptr;
    if (w.length() > 1) {
      if (auto r = reduce_primitive_word(w, a.rank())) {
        j["reduction"] = {{"automorphism", r->automorphism.format(a)}, {"image", r->image.format(a)}};
      }
    }
    j["graph"] = nlohmann::ordered_json::parse(choice_to_json(report, a));
    return {j.dump(2) + "\n"};
  }
  const Input in = load_input(o);
  if (in.core.vertex_count() <= 1) {
    const WhiteheadGraph wg = whitehead_graph_of_core(label_sets(in.core), in.alphabet.rank());
    if (fmt == "dot") return {whitehead_to_dot(wg, in.alphabet)};
    return {"{\n  \"status\": \"SingleVertex\"\n}\n"};
  }
  const AutomorphismChoice choice = choose_automorphism(in.core);
  if (fmt == "dot") return {whitehead_to_dot(choice.graph, in.alphabet)};
  return {choice_to_json(choice, in.alphabet)};
}

Emitted cmd_automaton(const Options& o) {
  const Input in = load_input(o);
  const std::string fmt = o.format.empty() ? "dot" : o.format;
  require_format(fmt, {"dot", "json"});
  const Automaton b = build_automaton(in.core);
  return {fmt == "json" ? automaton_to_json(b) : automaton_to_dot(b)};
}

Emitted cmd_matrix(const Options& o) {
  const Input in = load_input(o);
  const std::string fmt = o.format.empty() ? "text" : o.format;
  require_format(fmt, {"text", "csv", "json"});
  AdjacencyMatrix m;
  if (o.ordering == "ose" && o.which == "m") {
    const Automaton b = build_automaton(in.core);
    m = adjacency(b, make_ose(b));
  } else {
    const StepResult r = run_step(in.core, in.generators, make_config(o));
    if (!r.step) return {no_step_text(r), status_exit(r.status) == kOk ? kPrecondition : status_exit(r.status)};
    if (o.which == "m1") {
      m = r.step->m1;
    } else if (o.ordering == "ose") {
      m = adjacency(r.step->b_h, make_ose(r.step->b_h));
    } else {
      m = r.step->m;
    }
  }
  if (fmt == "csv") return {matrix_to_csv(m, in.alphabet)};
  if (fmt == "json") return {matrix_to_json(m, in.alphabet)};
  return {matrix_to_text(m, in.alphabet)};
}

Emitted cmd_eigen(const Options& o) {
  const Input in = load_input(o);
  const std::string fmt = o.format.empty() ? "json" : o.format;
  require_format(fmt, {"json", "text"});
  const Automaton b = build_automaton(in.core);
  const AdjacencyMatrix m = adjacency(b, make_ose(b));
  const PipelineConfig config = make_config(o);
  const PFResult pf = pf_eigen(m, config.power);
  if (fmt == "json") return {pf_to_json(pf, m.ordering, in.alphabet, config.power.tolerance)};
  std::ostringstream s;
  s << "alpha: " << format_real(pf.eigenvalue) << "\n"
    << "entropy: " << format_real(std::log(pf.eigenvalue)) << "\n"
    << "iterations: " << pf.iterations << "\n"
    << "residual: " << format_real(pf.residual) << "\n"
    << "tolerance: " << format_real(config.power.tolerance) << "\n";
  return {s.str()};
}

Emitted cmd_census(const Options& o) {
  const Input in = load_input(o);
  const std::string fmt = o.format.empty() ? "csv" : o.format;
  require_format(fmt, {"csv", "text"});
  if (o.n_max < 0) throw UsageError("--n-max must be non-negative");
  const Automaton b = build_automaton(in.core);
  const std::vector<std::uint64_t> a = word_census(b, o.n_max);
  std::ostringstream s;
  if (fmt == "csv") {
    s << "n,a_n,a_n^(1/n)\n";
  } else {
    s << "n  a_n  a_n^(1/n)\n";
  }
  const char* sep = fmt == "csv" ? "," : "  ";
  for (std::size_t n = 1; n <= a.size(); ++n) {
    const double root = a[n - 1] == 0 ? 0.0 : std::pow(static_cast<double>(a[n - 1]), 1.0 / n);
    s << n << sep << a[n - 1] << sep << format_real(root) << "\n";
  }
  return {s.str()};
}

Emitted cmd_reduce_step(const Options& o) {
  const Input in = load_input(o);
  const std::string fmt = o.format.empty() ? "json" : o.format;
  require_format(fmt, {"json", "text", "dot"});
  const PipelineConfig config = make_config(o);
  const StepResult r = run_step(in.core, in.generators, config);
  if (!r.step) {
    const int code = status_exit(r.status);
    if (fmt == "json") {
      if (r.choice) return {choice_to_json(*r.choice, in.alphabet), code};
      return {"{\n  \"status\": \"SingleVertex\"\n}\n", code};
    }
    if (fmt == "dot" && r.choice) return {whitehead_to_dot(r.choice->graph, in.alphabet), code};
    return {no_step_text(r), code};
  }
  const ReductionStep& step = *r.step;
  if (fmt == "json") return {step_to_json(step, config)};
  if (fmt == "text") return {step_text(step, config)};
  return {core_to_dot(step.core_before) + core_to_dot(step.core_after) +
          automaton_to_dot(step.b_h) + automaton_to_dot(step.b_phi, collapsed_transitions(step.s))};
}

Emitted cmd_reduce(const Options& o) {
  const Input in = load_input(o);
  const std::string fmt = o.format.empty() ? "json" : o.format;
  require_format(fmt, {"json", "text"});
  const PipelineConfig config = make_config(o);
  const ReductionTrace trace = run_reduce(in.core, in.generators, config);
  const int code = status_exit(trace.terminal);
  if (fmt == "json") return {trace_to_json(trace, in.alphabet, config), code};
  std::ostringstream s;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    s << "# step " << i + 1 << "\n" << step_text(trace.steps[i], config);
  }
  s << "terminal: " << to_string(trace.terminal) << "\n";
  return {s.str(), code};
}

Emitted cmd_verify(const Options& o) {
  const Input in = load_input(o);
  const PipelineConfig config = make_config(o);
  std::ostringstream s;
  bool ok = true;
  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    std::string detail;
    try {
      detail = body();
    } catch (const Error& e) {
      detail = e.what();
    }
    ok = ok && detail.empty();
    s << (detail.empty() ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : ": " + detail)
      << "\n";
  };
  const Automaton b = build_automaton(in.core);
  check("automaton ergodic", [&] { return b.is_ergodic() ? "" : std::string("not strongly connected"); });
  check("initial equals final", [&] { return b.initial_equals_final() ? "" : std::string("I != F"); });
  const StepResult r = run_step(in.core, in.generators, config);
  if (!r.step) {
    s << no_step_text(r);
    return {s.str(), ok ? status_exit(r.status) : kPrecondition};
  }
  const ReductionStep& step = *r.step;
  check("block decomposition", [&] {
    decompose(step.m, step.s);
    return std::string();
  });
  check("M1 equals direct adjacency", [&] {
    return step.m1.entries == step.m1_direct.entries &&
                   step.m1.ordering.states == step.m1_direct.ordering.states
               ? ""
               : std::string("mismatch");
  });
  check("collapsed automaton equals B of collapsed core", [&] {
    return isomorphic(step.b_phi, build_automaton(step.core_after)) ? "" : std::string("not isomorphic");
  });
  if (!step.generators_after.empty()) {
    check("collapsed core equals core of images", [&] {
      const CoreGraph direct = build_core(step.generators_after, in.alphabet);
      return rooted_isomorphic(step.core_after, direct) || isomorphic_up_to_root(step.core_after, direct)
                 ? ""
                 : std::string("not isomorphic");
    });
  }
  check("lambda < lambda1", [&] {
    return step.pf.eigenvalue < step.pf1.eigenvalue
               ? ""
               : format_real(step.pf.eigenvalue) + " >= " + format_real(step.pf1.eigenvalue);
  });
  for (UChoice c : {UChoice::BelowBound, UChoice::AtBound, UChoice::Midpoint}) {
    check("certificate u-choice " + std::to_string(static_cast<int>(c)), [&] {
      CertificateOptions opts = config.certificate;
      opts.choice = c;
      certify_inequality(step.m, step.m1, step.s, step.pf1, opts);
      return std::string();
    });
  }
  return {s.str(), ok ? kOk : kPrecondition};
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidAlphabet: return kParse;
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::CertificateFailure: return kNumerical;
    default: return kPrecondition;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stallings cores, Whitehead reduction and cogrowth certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--gens", o.gens, "generators, e.g. \"yX, yzYzt\"");
  app.add_option("--graph", o.graph, "core graph JSON (as written by 'core --format json')");
  app.add_option("--alphabet", o.alphabet, "generator names, \"xyzt\" or \"a,b,c\"")
      ->capture_default_str();
  app.add_option("--format", o.format, "dot | json | csv | text");
  app.add_option("--out", o.out, "write output to a file");
  app.add_option("--u-choice", o.u_choice, "certificate choice for the S entries of u")
      ->check(CLI::IsMember({1, 2, 3}))
      ->capture_default_str();
  app.add_option("--tol", o.tol, "power iteration residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--n-max", o.n_max, "census length")->capture_default_str();

  using Handler = std::function<Emitted(const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, std::move(h));
    return sub;
  };
  add("core", "core graph (dot | json)", cmd_core)
      ->add_flag("--extended", o.extended, "draw the extended core");
  add("whitehead", "Whitehead graph and cut vertices (json | dot)", cmd_whitehead)
      ->add_option("--word", o.word, "analyse a single word instead of a subgroup");
  add("reduce-step", "one reduction step with all artifacts (json | text | dot)", cmd_reduce_step);
  add("reduce", "reduction trace until a terminal status (json | text)", cmd_reduce);
  add("automaton", "the automaton B_H (dot | json)", cmd_automaton);
  CLI::App* matrix = add("matrix", "adjacency matrix (text | csv | json)", cmd_matrix);
  matrix->add_option("--ordering", o.ordering, "ose | nse")
      ->check(CLI::IsMember({"ose", "nse"}))
      ->capture_default_str();
  matrix->add_option("--which", o.which, "m (B_H) | m1 (derived for the image)")
      ->check(CLI::IsMember({"m", "m1"}))
      ->capture_default_str();
  add("eigen", "Perron-Frobenius eigenpair of B_H (json | text)", cmd_eigen);
  add("census", "word counts a_1..a_n (csv | text)", cmd_census);
  add("verify", "check every invariant of one reduction step", cmd_verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    for (auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      Emitted e = handler(o);
      if (o.out.empty()) {
        out << e.text;
      } else {
        std::ofstream f(o.out);
        if (!f) throw UsageError("cannot write '" + o.out + "'");
        f << e.text;
      }
      return e.code;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_for(e.code());
  }
  return kParse;
}

}  // namespace cogrowth::cli
