#include <benchmark/benchmark.h>

#include <cmath>

#include "nuctrace/kernels.hpp"

using namespace nuctrace;

namespace {

PeriodicFunction test_function(int m) {
  return PeriodicFunction::sample(2, m, [](std::array<double, 2> x) {
    return Complex{std::cos(2.0 * 3.141592653589793 * x[0]), std::sin(6.0 * 3.141592653589793 * x[1])};
  });
}

template <bool Parallel>
void BM_ForwardDft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FrequencyLattice lattice(2, n);
  const PeriodicFunction f = test_function(min_grid_size(n));
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::parallel::forward_dft(f, lattice));
    else
      benchmark::DoNotOptimize(kernels::serial::forward_dft(f, lattice));
  }
}

template <bool Parallel>
void BM_SymbolColumns(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FrequencyLattice lattice(1, n);
  const Symbol a = Symbol::modulated(1, Profile::bracket_power, -4.0, 2.0);
  const int m = a.preferred_grid_size(lattice);
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::parallel::symbol_columns(a, lattice, 2 * n, m));
    else
      benchmark::DoNotOptimize(kernels::serial::symbol_columns(a, lattice, 2 * n, m));
  }
}

template <bool Parallel>
void BM_ApplySymbol(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FrequencyLattice lattice(2, n);
  const Symbol a = Symbol::heat(2, 0.1);
  FourierCoefficients c(lattice);
  for (std::size_t j = 0; j < lattice.size(); ++j) c.coeffs[j] = Complex{1.0 / (1.0 + j), 0.0};
  const int m = min_grid_size(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::parallel::apply_symbol(a, c, m));
    else
      benchmark::DoNotOptimize(kernels::serial::apply_symbol(a, c, m));
  }
}

}  // namespace

BENCHMARK(BM_ForwardDft<false>)->Arg(8)->Arg(16);
BENCHMARK(BM_ForwardDft<true>)->Arg(8)->Arg(16);
BENCHMARK(BM_SymbolColumns<false>)->Arg(16)->Arg(32);
BENCHMARK(BM_SymbolColumns<true>)->Arg(16)->Arg(32);
BENCHMARK(BM_ApplySymbol<false>)->Arg(8)->Arg(16);
BENCHMARK(BM_ApplySymbol<true>)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
