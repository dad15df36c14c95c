#include <benchmark/benchmark.h>

#include "uc/density.hpp"
#include "uc/lattice.hpp"

namespace {

uc::HermitianMatrix D(std::vector<long> d) { return uc::HermitianMatrix::diagonal(d); }

const uc::FieldContext& gauss() {
  static const uc::FieldContext k = uc::FieldContext::make(-4);
  return k;
}

// residue counts for S = diag(1,3), T = diag(1,3) at level k
void BM_CountOrbit(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(uc::brute_A(gauss(), D({1, 3}), D({1, 3}), 3, k));
}
BENCHMARK(BM_CountOrbit)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_CountEnumerate(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  uc::CountOptions opt;
  opt.strategy = uc::CountStrategy::enumerate;
  for (auto _ : st) benchmark::DoNotOptimize(uc::brute_A(gauss(), D({1, 3}), D({1, 3}), 3, k, opt));
}
BENCHMARK(BM_CountEnumerate)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_AlphaRank3(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(uc::alpha(gauss(), D({1, 1, 3}), D({1, 3, 9}), 3));
}
BENCHMARK(BM_AlphaRank3)->Unit(benchmark::kMillisecond);

void BM_AlphaPrime(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(uc::alpha_prime(gauss(), D({1, 1}), D({3, 9}), 3));
}
BENCHMARK(BM_AlphaPrime)->Unit(benchmark::kMillisecond);

void BM_ShortVectors(benchmark::State& st) {
  auto l = uc::standard_lattice(gauss(), D({1, 1, 1}));
  const long t = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(uc::vectors_up_to(l, t));
}
BENCHMARK(BM_ShortVectors)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AutGroup(benchmark::State& st) {
  std::vector<long> d(static_cast<std::size_t>(st.range(0)), 1);
  auto l = uc::standard_lattice(gauss(), D(d));
  for (auto _ : st) benchmark::DoNotOptimize(uc::aut_group(l));
}
BENCHMARK(BM_AutGroup)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Genus(benchmark::State& st) {
  auto l = uc::standard_lattice(gauss(), D({1, 3}));
  for (auto _ : st) benchmark::DoNotOptimize(uc::genus_enumerate(l));
}
BENCHMARK(BM_Genus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
