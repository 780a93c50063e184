#include <doctest.h>

#include <algorithm>
#include <random>

#include "cogrowth/core_graph.hpp"
#include "cogrowth/error.hpp"
#include "cogrowth/whitehead.hpp"
#include "oracles.hpp"

using namespace cogrowth;

namespace {

const Alphabet& f4() {
  static const Alphabet a = Alphabet::parse("xyzt");
  return a;
}

Letter L(const char* name) { return Word::parse(name, f4())[0]; }

std::pair<Letter, Letter> edge(const char* p, const char* q) {
  Letter a = L(p), b = L(q);
  if (b < a) std::swap(a, b);
  return {a, b};
}

CoreGraph core(const char* gens, const Alphabet& a = f4()) {
  return build_core(parse_word_list(gens, a), a);
}

}  // namespace

TEST_CASE("Whitehead graph of a word") {
  const WhiteheadGraph xy = whitehead_graph_of_word(Word::parse("xy", f4()), 4);
  CHECK(xy.edge_count() == 2);
  CHECK(xy.edges().contains(edge("X", "y")));
  CHECK(xy.edges().contains(edge("Y", "x")));

  const WhiteheadGraph x = whitehead_graph_of_word(Word::parse("x", f4()), 4);
  CHECK(x.edge_count() == 1);
  CHECK(x.edges().contains(edge("X", "x")));

  // y z y^-1 z t: pairs (Y,z) (Z,Y) (y,z) (Z,t) and wrap-around (T,y).
  const WhiteheadGraph w = whitehead_graph_of_word(Word::parse("yzYzt", f4()), 4);
  CHECK(w.total_multiplicity() == 5);
  for (auto [p, q] : {std::pair{"Y", "z"}, {"Z", "Y"}, {"y", "z"}, {"Z", "t"}, {"T", "y"}}) {
    CHECK(w.edges().contains(edge(p, q)));
  }
  CHECK_FALSE(w.has_self_loop());
  CHECK_THROWS_AS(whitehead_graph_of_word(Word::parse("yxY", f4()), 4), Error);
}

TEST_CASE("words never produce self loops") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const Word w = oracle::random_cyclically_reduced_word(rng, 4, 1 + i % 12);
    const WhiteheadGraph g = whitehead_graph_of_word(w, 4);
    CHECK_FALSE(g.has_self_loop());
    CHECK(g.total_multiplicity() == static_cast<int>(w.length()));
  }
}

TEST_CASE("Whitehead graph of the example core") {
  const CoreGraph g = core("yX, yzYzt");
  const LabelSets ls = label_sets(g);
  const WhiteheadGraph wg = whitehead_graph_of_core(ls, 4);
  std::size_t bound = 0;
  for (const auto& [v, lv] : ls) bound += static_cast<std::size_t>(lv.size() * (lv.size() - 1) / 2);
  CHECK(wg.edge_count() <= bound);
  // Removing y separates {x, t^-1} from the rest.
  CHECK(wg.component(L("x"), LetterSet{L("y")}) == LetterSet{L("x"), L("T")});

  const auto cuts = find_cut_vertices(wg);
  std::vector<Letter> letters;
  for (const auto& c : cuts) letters.push_back(c.letter);
  for (const char* name : {"y", "Y", "z", "Z"}) {
    CHECK(std::find(letters.begin(), letters.end(), L(name)) != letters.end());
  }
  CHECK(std::is_sorted(letters.begin(), letters.end()));
}

TEST_CASE("cut vertices of small graphs") {
  WhiteheadGraph single(2);
  single.add_edge(L("x"), L("y"));
  CHECK(single.edge_count() == 1);

  WhiteheadGraph complete(2);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) complete.add_edge(Letter::from_index(i), Letter::from_index(j));
  }
  CHECK(find_cut_vertices(complete).empty());

  // Path y^-1 - x - x^-1 - y: x^-1 separates and its component holds x.
  WhiteheadGraph path(2);
  path.add_edge(L("x"), L("X"));
  path.add_edge(L("X"), L("y"));
  path.add_edge(L("x"), L("Y"));
  const auto cuts = find_cut_vertices(path);
  bool found = false;
  for (const auto& c : cuts) {
    if (c.letter == L("X")) {
      found = true;
      CHECK(c.configuration == 2);
      CHECK(c.pieces.size() == 2);
    }
  }
  CHECK(found);
}

TEST_CASE("automorphism chosen for the worked example") {
  const CoreGraph g = core("yX, yzYzt");
  const AutomorphismChoice c = choose_automorphism(g);
  REQUIRE(c.status == ChoiceStatus::Found);
  CHECK(c.automorphism->format(f4()) == "({x, t^-1}, y)");
  CHECK(c.collapse->s_o == std::vector<VertexId>{1});
  CHECK(c.collapse->s_t == std::vector<VertexId>{2});
  CHECK(c.collapse->e_o.size() == 1);
  CHECK(c.cases.at(1) == 3);
  for (const auto& [v, k] : c.cases) CHECK(k == trichotomy_case(label_sets(g).at(v), *c.automorphism));
}

TEST_CASE("trichotomy cases") {
  const WhiteheadAutomorphism phi(LetterSet{L("x"), L("T")}, L("y"));
  CHECK(trichotomy_case(LetterSet{L("x"), L("y"), L("T")}, phi) == 3);
  CHECK(trichotomy_case(LetterSet{L("X"), L("Y"), L("z")}, phi) == 1);
  CHECK(trichotomy_case(LetterSet{L("x"), L("T")}, phi) == 2);
  CHECK(trichotomy_case(LetterSet{L("x"), L("z")}, phi) == 0);
}

TEST_CASE("choose_automorphism preconditions and failures") {
  CHECK_THROWS_AS(choose_automorphism(core("x, y")), Error);
  for (const auto& inst : oracle::non_free_factor_instances()) {
    const AutomorphismChoice c = choose_automorphism(build_core(inst.gens, inst.alphabet));
    CHECK(c.status == ChoiceStatus::NoCutVertex);
    CHECK_FALSE(c.automorphism.has_value());
    CHECK_FALSE(c.collapse.has_value());
  }
}

TEST_CASE("chosen automorphisms satisfy every stated property on the corpus") {
  int found = 0;
  for (const auto& inst : oracle::free_factor_corpus(77, 120)) {
    const CoreGraph g = build_core(inst.gens, inst.alphabet);
    if (g.vertex_count() <= 1) continue;
    const AutomorphismChoice c = choose_automorphism(g);
    REQUIRE_MESSAGE(c.status == ChoiceStatus::Found, inst.name);
    ++found;
    const LabelSets ls = label_sets(g);
    const WhiteheadAutomorphism& phi = *c.automorphism;
    for (const auto& [v, lv] : ls) {
      const int k = trichotomy_case(lv, phi);
      CHECK(k >= 1);
      CHECK(c.cases.at(v) == k);
    }
    const CollapseData& cd = *c.collapse;
    CHECK(!cd.s_o.empty());
    CHECK(cd.s_o.size() == cd.e_o.size());
    CHECK(cd.s_t.size() == cd.e_o.size());
    CHECK(cd.e_t.size() == cd.e_o.size());
    for (const Arc& e : cd.e_o) {
      CHECK(e.label == phi.letter());
      // At S_o the label set never holds both a and a^-1.
      CHECK_FALSE(ls.at(e.origin).contains(phi.letter().inverse()));
      const LetterSet lo = ls.at(e.origin).minus(LetterSet{phi.letter()});
      const LetterSet lt = ls.at(e.terminus).minus(LetterSet{phi.letter().inverse()});
      CHECK((lo & lt).empty());
    }
    const CoreGraph after = collapse_core(g, cd);
    CHECK(after.vertex_count() < g.vertex_count());
    CHECK(after.edge_count() < g.edge_count());
  }
  CHECK(found >= 40);
}

TEST_CASE("exhaustive reduction of single words") {
  const Alphabet f2 = Alphabet::parse("xy");
  const auto yx = reduce_primitive_word(Word::parse("yx", f2), 2);
  REQUIRE(yx.has_value());
  CHECK(yx->image.length() == 1);
  CHECK(cyclically_reduce(apply_whitehead(yx->automorphism, Word::parse("yx", f2))).core == yx->image);
  CHECK_FALSE(reduce_primitive_word(Word::parse("xxyy", f2), 2).has_value());
  CHECK_FALSE(reduce_primitive_word(Word::parse("xyXY", f2), 2).has_value());
  CHECK_THROWS_AS(reduce_primitive_word(Word::parse("x", f2), 2), Error);

  // Brute force over the same candidate set confirms the reported minimum.
  std::mt19937_64 rng(8);
  for (int i = 0; i < 30; ++i) {
    const Word w = oracle::random_cyclically_reduced_word(rng, 2, 2 + i % 7);
    std::size_t best = w.length();
    for (int a = 0; a < 4; ++a) {
      const Letter letter = Letter::from_index(a);
      const Letter others[2] = {Letter(3 - letter.generator(), 1), Letter(3 - letter.generator(), -1)};
      for (int mask = 0; mask < 4; ++mask) {
        LetterSet set;
        for (int b = 0; b < 2; ++b) {
          if (mask & (1 << b)) set.insert(others[b]);
        }
        best = std::min(best, cyclic_length(apply_whitehead(WhiteheadAutomorphism(set, letter), w)));
      }
    }
    const auto r = reduce_primitive_word(w, 2);
    CHECK(r.has_value() == (best < w.length()));
    if (r) CHECK(r->image.length() == best);
  }
}
