#include <benchmark/benchmark.h>

#include <cstddef>

#include "hardy/factorization.hpp"
#include "hardy/linalg.hpp"
#include "hardy/operators.hpp"
#include "hardy/symbol.hpp"

namespace {

void BM_HatClosed(benchmark::State& state) {
  const hardy::Symbol sym = hardy::catalog_symbol("power", 3.0);
  double u = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sym.hat_closed(u));
    u += 1e-3;
    if (u > 10.0) u = 0.0;
  }
}
BENCHMARK(BM_HatClosed);

void BM_BuildK(benchmark::State& state) {
  const hardy::Symbol sym = hardy::catalog_symbol("hilbert", 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hardy::build_K(sym, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildK)->RangeMultiplier(4)->Range(64, 2048)->Complexity(benchmark::oNSquared);

void BM_Eigh(benchmark::State& state) {
  const hardy::Symbol sym = hardy::catalog_symbol("hilbert", 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  const hardy::Matrix m = hardy::build_K(sym, n).entries;
  for (auto _ : state) benchmark::DoNotOptimize(hardy::eigh(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigh)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNCubed);

void BM_BuildT(benchmark::State& state) {
  const hardy::Symbol sym = hardy::catalog_symbol("min", 1.0);
  const auto nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hardy::build_T(sym, 1024.0, nodes));
}
BENCHMARK(BM_BuildT)->RangeMultiplier(2)->Range(128, 1024);

void BM_ZetaN(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  double tau = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hardy::zeta_n(tau, n));
    tau += 1e-3;
  }
}
BENCHMARK(BM_ZetaN)->RangeMultiplier(4)->Range(256, 4096);

void BM_BuildGram(benchmark::State& state) {
  const hardy::Symbol sym = hardy::catalog_symbol("hilbert", 1.0);
  const auto nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(hardy::build_gram(sym, 64, hardy::GramMode::kZeta, 0.0, nodes));
}
BENCHMARK(BM_BuildGram)->RangeMultiplier(2)->Range(64, 512);

void BM_TraceNorm(benchmark::State& state) {
  const hardy::Symbol sym = hardy::catalog_symbol("hilbert", 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  const hardy::Matrix m = hardy::build_K(sym, n).entries;
  for (auto _ : state) benchmark::DoNotOptimize(hardy::trace_norm(m));
}
BENCHMARK(BM_TraceNorm)->RangeMultiplier(2)->Range(64, 256);

}  // namespace

BENCHMARK_MAIN();
