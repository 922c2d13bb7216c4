// OpenMP kernels against their serial references on the same inputs.

#include <benchmark/benchmark.h>

#include <numbers>

#include "lcflow/initial_data.hpp"
#include "lcflow/kernels.hpp"
#include "lcflow/operators.hpp"

namespace {

using namespace lcflow;

struct Inputs {
  Grid g;
  VectorField d, u;
  TensorField grad_d;
  FrankConstants c{1.0, 0.6, 1.7};

  explicit Inputs(int n) : g(n, 2.0 * std::numbers::pi), d(g), u(g), grad_d(g) {
    Prng rng(1);
    d = random_band_limited(g, 2, rng);
    d *= 0.3;
    for (auto& v : d.comp(2)) v += 1.0;
    kernels::renormalize(d);
    u = random_band_limited(g, 2, rng);
    grad_d = gradient(d);
  }
};

const Inputs& inputs(int n) {
  static const Inputs small(32), large(64);
  return n == 32 ? small : large;
}

template <bool Parallel>
void BM_FrankTerms(benchmark::State& state) {
  const Inputs& in = inputs(static_cast<int>(state.range(0)));
  TensorField wp(in.g);
  VectorField wd(in.g);
  ScalarField w(in.g);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::frank_terms(in.d, in.grad_d, in.c, wp, wd, &w);
    else reference::frank_terms(in.d, in.grad_d, in.c, wp, wd, &w);
    benchmark::DoNotOptimize(wp.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(in.g.size()));
}

template <bool Parallel>
void BM_StressFlux(benchmark::State& state) {
  const Inputs& in = inputs(static_cast<int>(state.range(0)));
  TensorField wp(in.g), out(in.g);
  VectorField wd(in.g);
  kernels::frank_terms(in.d, in.grad_d, in.c, wp, wd, nullptr);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::stress_flux(in.grad_d, wp, out);
    else reference::stress_flux(in.grad_d, wp, out);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(in.g.size()));
}

template <bool Parallel>
void BM_Advect(benchmark::State& state) {
  const Inputs& in = inputs(static_cast<int>(state.range(0)));
  VectorField out(in.g);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::advect(in.u, in.grad_d, out);
    else reference::advect(in.u, in.grad_d, out);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(in.g.size()));
}

template <bool Parallel>
void BM_PowerSum(benchmark::State& state) {
  const Inputs& in = inputs(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const double s = Parallel ? kernels::magnitude_power_sum(in.grad_d.values(), in.g, 9, 6.0)
                              : reference::magnitude_power_sum(in.grad_d.values(), in.g, 9, 6.0);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(in.g.size()));
}

template <bool Parallel>
void BM_Renormalize(benchmark::State& state) {
  const Inputs& in = inputs(static_cast<int>(state.range(0)));
  VectorField d = in.d;
  for (auto _ : state) {
    d *= 1.001;
    const double m = Parallel ? kernels::renormalize(d) : reference::renormalize(d);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(in.g.size()));
}

BENCHMARK(BM_FrankTerms<true>)->Name("frank_terms/omp")->Arg(32)->Arg(64);
BENCHMARK(BM_FrankTerms<false>)->Name("frank_terms/serial")->Arg(32)->Arg(64);
BENCHMARK(BM_StressFlux<true>)->Name("stress_flux/omp")->Arg(32)->Arg(64);
BENCHMARK(BM_StressFlux<false>)->Name("stress_flux/serial")->Arg(32)->Arg(64);
BENCHMARK(BM_Advect<true>)->Name("advect/omp")->Arg(32)->Arg(64);
BENCHMARK(BM_Advect<false>)->Name("advect/serial")->Arg(32)->Arg(64);
BENCHMARK(BM_PowerSum<true>)->Name("power_sum/omp")->Arg(32)->Arg(64);
BENCHMARK(BM_PowerSum<false>)->Name("power_sum/serial")->Arg(32)->Arg(64);
BENCHMARK(BM_Renormalize<true>)->Name("renormalize/omp")->Arg(32)->Arg(64);
BENCHMARK(BM_Renormalize<false>)->Name("renormalize/serial")->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
