#include <random>

#include <benchmark/benchmark.h>

#include <subshift/subshift.hpp>

using namespace subshift;

namespace {

Pattern random_pattern(std::mt19937_64& rng, const Box& box) {
  std::vector<Symbol> v(box.cell_count());
  for (auto& x : v) x = static_cast<Symbol>(rng() & 1u);
  return Pattern(box, 2, std::move(v));
}

StageParams first_step() {
  StageParams p;
  p.l = 8;
  p.m_next = 2;
  p.d_tol = make_rational(1, 2);
  p.target_count = 40;
  p.candidate_budget = 200000;
  p.seed = 20101015;
  return p;
}

void BM_Occurrences(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Pattern big = random_pattern(rng, Box::cube(1, state.range(0)));
  const Pattern small = random_pattern(rng, Box::cube(1, 4));
  for (auto _ : state) benchmark::DoNotOptimize(count_occurrences(small, big));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Occurrences)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

void BM_Occurrences2d(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Pattern big = random_pattern(rng, Box::cube(2, state.range(0)));
  const Pattern small = random_pattern(rng, Box::cube(2, 2));
  for (auto _ : state) benchmark::DoNotOptimize(count_occurrences(small, big, OccurrenceQuery({0, 0}, Sublattice(2, 3))));
}
BENCHMARK(BM_Occurrences2d)->Arg(64)->Arg(256);

void BM_Admissible(benchmark::State& state) {
  const Stage s = init_stage(1);
  const StageParams p = first_step();
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(admissible(sample_candidate(s, p, i++), s, p).ok);
}
BENCHMARK(BM_Admissible);

void BM_BuildFirstStep(benchmark::State& state) {
  const Stage s = init_stage(1);
  for (auto _ : state) benchmark::DoNotOptimize(build_next(s, first_step()).patterns.size());
}
BENCHMARK(BM_BuildFirstStep)->Unit(benchmark::kMillisecond);

void BM_VerifyFirstStep(benchmark::State& state) {
  const Stage s = init_stage(1);
  const Stage next = build_next(s, first_step());
  for (auto _ : state) benchmark::DoNotOptimize(verify_stage_pair(s, next).pass());
}
BENCHMARK(BM_VerifyFirstStep)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
