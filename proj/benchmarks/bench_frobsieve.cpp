// Microbenchmarks for the hot paths: trace-table construction, group
// enumeration, formula evaluation, and exact cyclotomic arithmetic.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "frobsieve/cyclotomic.hpp"
#include "frobsieve/finite_field.hpp"
#include "frobsieve/matrix_groups.hpp"
#include "frobsieve/ring_formulas.hpp"
#include "frobsieve/trace_functions.hpp"

using namespace frobsieve;

namespace {

void bm_kloosterman_table_residue(benchmark::State& state) {
  FiniteField F(5, static_cast<unsigned>(state.range(0)));
  PrimeIdealDeg1 lam = deg1_prime_ideals(20, 100).at(0);  // ell = 41
  Embedding emb = residue_embedding(lam);
  for (auto _ : state) {
    TraceTable t = kloosterman_table(2, F, emb);
    benchmark::DoNotOptimize(t.rvals.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(F.q() - 1));
}

void bm_kloosterman_table_complex(benchmark::State& state) {
  FiniteField F(5, static_cast<unsigned>(state.range(0)));
  Embedding emb = complex_embedding(20);
  for (auto _ : state) {
    TraceTable t = kloosterman_table(2, F, emb);
    benchmark::DoNotOptimize(t.cvals.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(F.q() - 1));
}

void bm_kloosterman_point(benchmark::State& state) {
  FiniteField F(5, 4);
  PrimeIdealDeg1 lam = deg1_prime_ideals(20, 100).at(0);
  Embedding emb = residue_embedding(lam);
  uint64_t x = 1;
  for (auto _ : state) {
    auto v = kloosterman_point(3, F, {x}, emb);
    benchmark::DoNotOptimize(v);
    x = x % (F.q() - 1) + 1;
  }
}

void bm_enumerate_group(benchmark::State& state) {
  GroupSpec spec;
  spec.family = GroupFamily::SL;
  spec.n = 2;
  spec.ell = static_cast<uint64_t>(state.range(0));
  for (auto _ : state) {
    TraceHistogram hist = enumerate_group(spec);
    benchmark::DoNotOptimize(hist.counts.data());
  }
}

void bm_definable_subset(benchmark::State& state) {
  Formula f = parse_formula("exists y: x = y * y * y + y + 1");
  uint64_t ell = static_cast<uint64_t>(state.range(0));
  for (auto _ : state) {
    LocalSet s = definable_subset(f, ell);
    benchmark::DoNotOptimize(s.count());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(ell * ell));
}

void bm_cyclotomic_mul(benchmark::State& state) {
  CycInt a = CycInt::zeta_pow(20, 1) + CycInt::integer(20, 3);
  CycInt b = CycInt::zeta_pow(20, 7) - CycInt::integer(20, 2);
  // Grow the operands so the reduction path does real work.
  for (int i = 0; i < 6; ++i) a = a * b + a;
  for (auto _ : state) {
    CycInt c = a * b;
    benchmark::DoNotOptimize(c);
  }
}

void bm_reduce_mod(benchmark::State& state) {
  PrimeIdealDeg1 lam = deg1_prime_ideals(20, 100).at(0);
  CycInt a = CycInt::zeta_pow(20, 1) + CycInt::integer(20, 3);
  CycInt b = CycInt::zeta_pow(20, 7) - CycInt::integer(20, 2);
  for (int i = 0; i < 6; ++i) a = a * b + a;
  for (auto _ : state) {
    uint64_t r = reduce_mod(a, lam);
    benchmark::DoNotOptimize(r);
  }
}

BENCHMARK(bm_kloosterman_table_residue)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_kloosterman_table_complex)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_kloosterman_point);
BENCHMARK(bm_enumerate_group)->Arg(41)->Arg(61)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_definable_subset)->Arg(251)->Arg(1009)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_cyclotomic_mul);
BENCHMARK(bm_reduce_mod);

}  // namespace

BENCHMARK_MAIN();
