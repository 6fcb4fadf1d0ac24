#include "fhlab/determinants.hpp"
#include "fhlab/ensemble.hpp"
#include "fhlab/symbol.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace fhlab;

namespace {

FHSymbol pair_symbol() {
  FHSymbol sym;
  sym.smooth_log = two_t_cos(0.3, 16);
  sym.singularities.push_back({0.3 * std::numbers::pi, 0.5, 0.0});
  sym.singularities.push_back({-0.3 * std::numbers::pi, 0.5, 0.0});
  return sym;
}

void BM_symbol_fourier(benchmark::State& state) {
  FHSymbol sym = pair_symbol();
  int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(symbol_fourier(sym, K));
}
BENCHMARK(BM_symbol_fourier)->Arg(64)->Arg(256);

void BM_toeplitz_logdet(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  CoeffTable g = symbol_fourier(pair_symbol(), n);
  auto ctx = PrecisionContext::doubles();
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_logdet(g, n, ctx));
}
BENCHMARK(BM_toeplitz_logdet)->Arg(32)->Arg(64)->Arg(128);

void BM_toeplitz_hankel_logdet(benchmark::State& state) {
  int N = static_cast<int>(state.range(0));
  CoeffTable g = symbol_fourier(pair_symbol(), 2 * N + 2);
  auto ctx = PrecisionContext::doubles();
  for (auto _ : state)
    benchmark::DoNotOptimize(toeplitz_hankel_logdet(THVariant::OminusOdd, g, N, ctx));
}
BENCHMARK(BM_toeplitz_hankel_logdet)->Arg(32)->Arg(64);

void BM_charged_hankel_extended(benchmark::State& state) {
  int N = static_cast<int>(state.range(0));
  auto ctx = PrecisionContext::extended();
  WeightSpec w;
  w.kind = WeightSpec::Gauss;
  w.a = std::sqrt(2.0 * N);
  for (auto _ : state) {
    auto mu = weighted_moments(w, {{0.3, 0.5}}, {}, 2 * N - 2, ctx);
    benchmark::DoNotOptimize(hankel_logdet(mu, N, ctx));
  }
}
BENCHMARK(BM_charged_hankel_extended)->Arg(8)->Arg(16);

void BM_cbeta_sweep(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cbeta_sample(n, 2.0, 100, 7));
}
BENCHMARK(BM_cbeta_sweep)->Arg(16)->Arg(64);

void BM_gue_sample(benchmark::State& state) {
  int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gue_sample(N, 100, 7));
}
BENCHMARK(BM_gue_sample)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
