#include <benchmark/benchmark.h>

#include <cmath>

#include <wienercert/dyadic.hpp>
#include <wienercert/envelope.hpp>
#include <wienercert/functionals.hpp>
#include <wienercert/grid.hpp>
#include <wienercert/spectral.hpp>
#include <wienercert/testbed.hpp>

namespace {

using namespace wn;

GridFunction1D gaussian_grid(std::size_t n) {
  const Family fam = make_family("gaussian", {});
  return sample(fam.fn, Domain1D{64.0, n}, true);
}

void bm_inverse_transform(benchmark::State& state) {
  const GridFunction1D f = gaussian_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_transform(f).g.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_inverse_transform)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Complexity();

void bm_wiener_norm(benchmark::State& state) {
  const Family fam = make_family("polya", {{"a", 2.0}});
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Ladder lad = {{64.0, n / 4}, {128.0, n / 2}, {256.0, n}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wiener_norm(fam.oracle, lad).rungs.size());
  }
}
BENCHMARK(bm_wiener_norm)->RangeMultiplier(4)->Range(1 << 12, 1 << 16);

void bm_tail_sup(benchmark::State& state) {
  const GridFunction1D f = gaussian_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tail_sup(f, Field::Value).values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_tail_sup)->RangeMultiplier(4)->Range(1 << 12, 1 << 20)->Complexity();

void bm_a_functionals(benchmark::State& state) {
  const GridFunction1D f = gaussian_grid(static_cast<std::size_t>(state.range(0)));
  Envelope f0 = tail_sup(f, Field::Value);
  Envelope f1 = tail_sup(f, Field::Derivative);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a_functionals(f0, f1).A01.value);
  }
}
BENCHMARK(bm_a_functionals)->RangeMultiplier(4)->Range(1 << 12, 1 << 18);

void bm_l2_difference(benchmark::State& state) {
  const GridFunction1D f = gaussian_grid(static_cast<std::size_t>(state.range(0)));
  const double h = 3.14159265358979323846 / 64.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(l2_difference(f, h));
  }
}
BENCHMARK(bm_l2_difference)->RangeMultiplier(4)->Range(1 << 12, 1 << 20);

void bm_bernstein_sum(benchmark::State& state) {
  const GridFunction1D f = gaussian_grid(1u << 16);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bernstein_sum(f, depth).total);
  }
}
BENCHMARK(bm_bernstein_sum)->DenseRange(7, 10);

}  // namespace

BENCHMARK_MAIN();
