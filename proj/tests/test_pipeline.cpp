#include <doctest.h>

#include "cogrowth/error.hpp"
#include "cogrowth/pipeline.hpp"
#include "oracles.hpp"

using namespace cogrowth;

namespace {

const Alphabet& f4() {
  static const Alphabet a = Alphabet::parse("xyzt");
  return a;
}

}  // namespace

TEST_CASE("one step on the worked example") {
  const std::vector<Word> gens = parse_word_list("yX, yzYzt", f4());
  const StepResult r = run_step(build_core(gens, f4()), gens);
  REQUIRE(r.status == StepStatus::Reduced);
  REQUIRE(r.step.has_value());
  const ReductionStep& s = *r.step;
  CHECK(s.automorphism.format(f4()) == "({x, t^-1}, y)");
  CHECK(s.generators_after == parse_word_list("X, zYzt", f4()));
  CHECK(s.core_after.vertex_count() == 4);
  CHECK(s.b_h.size() == 12);
  CHECK(s.b_phi.size() == 10);
  CHECK(s.m1.entries == s.m1_direct.entries);
  CHECK(s.pf.eigenvalue < s.pf1.eigenvalue);
  CHECK(s.pf1.eigenvalue - s.pf.eigenvalue > 0.1);
  CHECK(s.certificate.choice == UChoice::Midpoint);
}

TEST_CASE("terminal statuses") {
  const Alphabet f2 = Alphabet::parse("xy");
  const std::vector<Word> basis = parse_word_list("x, y", f2);
  const StepResult one = run_step(build_core(basis, f2), basis);
  CHECK(one.status == StepStatus::SingleVertex);
  CHECK_FALSE(one.choice.has_value());
  CHECK_FALSE(one.step.has_value());

  const std::vector<Word> squares = parse_word_list("xx, yy", f2);
  const StepResult none = run_step(build_core(squares, f2), squares);
  CHECK(none.status == StepStatus::NoCutVertex);
  REQUIRE(none.choice.has_value());
  CHECK_FALSE(none.step.has_value());
  CHECK(to_string(StepStatus::NoCutVertex) == "NoCutVertex");
}

TEST_CASE("full reduction of the worked example") {
  const std::vector<Word> gens = parse_word_list("yX, yzYzt", f4());
  const ReductionTrace t = run_reduce(build_core(gens, f4()), gens);
  CHECK(t.terminal == StepStatus::SingleVertex);
  REQUIRE(t.steps.size() == 4);
  const double expected[] = {1.451, 1.641, 1.811, 2.130};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(t.steps[i].pf.eigenvalue == doctest::Approx(expected[i]).epsilon(0.001));
  }
  CHECK(t.steps.back().pf1.eigenvalue == doctest::Approx(3.0));
  REQUIRE(t.final_core.has_value());
  CHECK(t.final_core->vertex_count() == 1);
}

TEST_CASE("reduction traces are strictly monotone on the corpus") {
  for (const auto& inst : oracle::free_factor_corpus(61, 60)) {
    const ReductionTrace t = run_reduce(build_core(inst.gens, inst.alphabet), inst.gens);
    CHECK_MESSAGE(t.terminal == StepStatus::SingleVertex, inst.name);
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const ReductionStep& s = t.steps[i];
      CHECK(s.core_after.vertex_count() < s.core_before.vertex_count());
      CHECK(s.pf1.eigenvalue - s.pf.eigenvalue > 1e-8);
      if (i + 1 < t.steps.size()) {
        CHECK(t.steps[i + 1].pf.eigenvalue == doctest::Approx(s.pf1.eigenvalue).epsilon(1e-9));
        CHECK(rooted_isomorphic(t.steps[i + 1].core_before, s.core_after));
      }
    }
    // A single-vertex core of a rank k subgroup is a bouquet of k loops.
    REQUIRE(t.final_core.has_value());
    CHECK(t.final_core->edge_count() == inst.gens.size());
  }
}

TEST_CASE("images of generators") {
  const WhiteheadAutomorphism phi(LetterSet{Letter(1, 1), Letter(4, -1)}, Letter(2, 1));
  const std::vector<Word> gens = parse_word_list("yX, yzYzt", f4());
  CHECK(image_generators(phi, gens) == parse_word_list("X, zYzt", f4()));
}
