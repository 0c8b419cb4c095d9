#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <span>
#include <vector>

#include "allee/continuation.hpp"
#include "allee/equilibria.hpp"
#include "allee/kinetics.hpp"
#include "allee/numerics/banded.hpp"
#include "allee/pde.hpp"
#include "allee/wave.hpp"

using namespace allee;

static void BM_Kinetics(benchmark::State& state) {
  const Params p;
  double u = 0.6, v = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kinetics(u, v, p));
    benchmark::DoNotOptimize(jacobian(u, v, p));
    u += 1e-12;
  }
}
BENCHMARK(BM_Kinetics);

static void BM_BandedLU(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  num::BandedMatrix a(n, 2, 2);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j) a(i, j) = i == j ? 6.0 : U(rng);
  std::vector<double> b(n, 1.0);
  for (auto _ : state) {
    const num::BandedLU lu(a);
    std::vector<double> x = b;
    lu.solve(std::span<double>(x));
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_BandedLU)->Arg(512)->Arg(2048)->Arg(8192);

static void BM_StrangStep(benchmark::State& state) {
  const Grid g{200.0, static_cast<int>(state.range(0))};
  const Params p = Params{}.with_growth(1.86);
  const Simulator sim(g, p, 46.0, 0.05);
  Field f = perturbed_homogeneous(g, p, 1e-3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sim.advance(f));
}
BENCHMARK(BM_StrangStep)->Arg(512)->Arg(4001);

static void BM_SteadyNewton(benchmark::State& state) {
  SteadyProblem prob;
  prob.grid = {200.0, 1024};
  const auto e = *upper_coexisting(prob.p.with_growth(2.0));
  const auto x0 = pack(constant_field(prob.grid, e.u + 1e-3, e.v));
  for (auto _ : state) benchmark::DoNotOptimize(newton_correct(x0, 2.0, prob));
}
BENCHMARK(BM_SteadyNewton);

static void BM_HeteroclinicBVP(benchmark::State& state) {
  const Params p;
  for (auto _ : state) benchmark::DoNotOptimize(shoot_heteroclinic(p, 46.0, 5.9).found);
}
BENCHMARK(BM_HeteroclinicBVP)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
