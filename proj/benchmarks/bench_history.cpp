#include <benchmark/benchmark.h>

#include <cmath>

#include "fracvisco/mlf.hpp"
#include "fracvisco/soe.hpp"
#include "fracvisco/stepper.hpp"

using namespace fracvisco;

namespace {

constexpr std::size_t kDofs = 2 * 63 * 63;

soe::SoeApprox approx(int n_steps) {
  const double dt = 1.0 / n_steps;
  const auto r = soe::scheme_range(dt, 1.0, 0.5);
  return soe::build_soe(0.5, dt / 10, 10.0, r.t_min, r.t_max);
}

}  // namespace

// One memory-variable step: cost independent of the step index.
static void BM_MemoryAdvanceAndSum(benchmark::State& state) {
  const int n_steps = static_cast<int>(state.range(0));
  const auto s = approx(n_steps);
  MemoryState mem(s, 0.5, 1.0 / n_steps, kDofs);
  Vector v(kDofs, 1.0), out(kDofs);
  for (auto _ : state) {
    mem.advance_and_sum(v, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["n_exp"] = static_cast<double>(s.size());
}
BENCHMARK(BM_MemoryAdvanceAndSum)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);

// Convolution against a stored history of `lag` vectors: cost linear in lag.
static void BM_DirectConvolution(benchmark::State& state) {
  const auto lag = static_cast<std::size_t>(state.range(0));
  const auto w = direct_weights(0.5, 0.5, 1e-3, static_cast<int>(lag));
  std::vector<Vector> history(lag, Vector(kDofs, 1.0));
  Vector out(kDofs);
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < lag; ++i) {
      const double wi = w[lag - 1 - i];
      const double* h = history[i].data();
      for (std::size_t d = 0; d < kDofs; ++d) out[d] += wi * h[d];
    }
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_DirectConvolution)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMicrosecond);

static void BM_BuildSoe(benchmark::State& state) {
  const int n_steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(approx(n_steps).size());
}
BENCHMARK(BM_BuildSoe)->Arg(100)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_KernelBeta(benchmark::State& state) {
  double t = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlf::kernel_beta(0.5, 0.5, t));
    t = t < 2.0 ? t * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_KernelBeta);
