// Microbenchmarks for the hot paths: the ODE solve, dense-output frame
// evaluation, identity residuals, the u-quadrature, and flux series.

#include <benchmark/benchmark.h>

#include <vector>

#include "solitonlab/bryant_solver.hpp"
#include "solitonlab/exact_solitons.hpp"
#include "solitonlab/hypothesis_probe.hpp"
#include "solitonlab/identity_lab.hpp"
#include "solitonlab/numerics.hpp"

using namespace solitonlab;

static void BM_solve_bryant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_bryant(n, 100.0, 1e-10));
  }
}
BENCHMARK(BM_solve_bryant)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_frame_at(benchmark::State& state) {
  const RadialProfile profile = solve_bryant(3, 100.0, 1e-10);
  const std::vector<double> radii = log_grid(0.01, 99.0, 512);
  for (auto _ : state) {
    for (double r : radii) {
      benchmark::DoNotOptimize(frame_at(profile, r));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(radii.size()));
}
BENCHMARK(BM_frame_at);

static void BM_evaluate_identities(benchmark::State& state) {
  const RadialProfile profile = solve_bryant(4, 100.0, 1e-10);
  std::vector<IdentityInput> inputs;
  for (double r : log_grid(0.01, 99.0, 256)) {
    inputs.push_back(identity_input_at(profile, r));
  }
  for (auto _ : state) {
    for (const IdentityInput& in : inputs) {
      benchmark::DoNotOptimize(evaluate_identities(in));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(inputs.size()));
}
BENCHMARK(BM_evaluate_identities);

static void BM_reconstruct_psi(benchmark::State& state) {
  const RadialProfile profile = solve_bryant(3, 100.0, 1e-10);
  for (auto _ : state) {
    const PsiReconstruction rec(profile);
    benchmark::DoNotOptimize(rec.u(0.9));
  }
}
BENCHMARK(BM_reconstruct_psi)->Unit(benchmark::kMillisecond);

static void BM_flux_series(benchmark::State& state) {
  const RadialProfile profile = solve_bryant(3, 100.0, 1e-10);
  const std::vector<double> radii = log_grid(1.0, 99.0, 48);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        flux_series(profile, FluxIntegrand::gradR_plus_RgradF, radii));
  }
}
BENCHMARK(BM_flux_series)->Unit(benchmark::kMillisecond);

static void BM_cigar_frame(benchmark::State& state) {
  const std::vector<double> rho = log_grid(1e-3, 1e4, 512);
  for (auto _ : state) {
    for (double p : rho) {
      benchmark::DoNotOptimize(cigar_frame(p));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(rho.size()));
}
BENCHMARK(BM_cigar_frame);

BENCHMARK_MAIN();
