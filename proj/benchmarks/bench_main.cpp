#include <benchmark/benchmark.h>

#include <random>

#include "cogrowth/automaton.hpp"
#include "cogrowth/core_graph.hpp"
#include "cogrowth/pipeline.hpp"
#include "cogrowth/spectral.hpp"

using namespace cogrowth;

namespace {

const Alphabet& f4() {
  static const Alphabet a = Alphabet::parse("xyzt");
  return a;
}

// Image of <x, y> under `autos` random Whitehead automorphisms of F4,
// keeping only draws whose images stay cyclically reduced.
std::vector<Word> grown_subgroup(int autos, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Word> gens{Word{Letter(1, 1)}, Word{Letter(2, 1)}};
  int done = 0;
  while (done < autos) {
    const Letter a = Letter::from_index(static_cast<int>(rng() % 8));
    LetterSet set;
    for (int i = 0; i < 8; ++i) {
      const Letter l = Letter::from_index(i);
      if (l.generator() != a.generator() && (rng() & 1)) set.insert(l);
    }
    std::vector<Word> next;
    bool ok = true;
    std::size_t before = 0, after = 0;
    for (const Word& w : gens) {
      next.push_back(apply_whitehead(WhiteheadAutomorphism(set, a), w));
      ok = ok && next.back().is_cyclically_reduced();
      before += w.length();
      after += next.back().length();
    }
    if (!ok || after <= before) continue;
    gens = std::move(next);
    ++done;
  }
  return gens;
}

void BM_BuildCore(benchmark::State& state) {
  const auto gens = grown_subgroup(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_core(gens, f4()));
  state.counters["edges"] = static_cast<double>(build_core(gens, f4()).edge_count());
}
BENCHMARK(BM_BuildCore)->Arg(4)->Arg(8)->Arg(12);

void BM_Census(benchmark::State& state) {
  const Automaton b = build_automaton(build_core(grown_subgroup(6, 2), f4()));
  for (auto _ : state) benchmark::DoNotOptimize(word_census(b, static_cast<int>(state.range(0))));
  state.counters["states"] = static_cast<double>(b.size());
}
BENCHMARK(BM_Census)->Arg(10)->Arg(20)->Arg(30);

void BM_PFEigen(benchmark::State& state) {
  const Automaton b = build_automaton(build_core(grown_subgroup(static_cast<int>(state.range(0)), 3), f4()));
  const AdjacencyMatrix m = adjacency(b, make_ose(b));
  for (auto _ : state) benchmark::DoNotOptimize(pf_eigen(m));
  state.counters["states"] = static_cast<double>(b.size());
}
BENCHMARK(BM_PFEigen)->Arg(4)->Arg(8)->Arg(12);

void BM_Reduce(benchmark::State& state) {
  const auto gens = grown_subgroup(static_cast<int>(state.range(0)), 4);
  const CoreGraph g = build_core(gens, f4());
  for (auto _ : state) benchmark::DoNotOptimize(run_reduce(g, gens));
}
BENCHMARK(BM_Reduce)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
