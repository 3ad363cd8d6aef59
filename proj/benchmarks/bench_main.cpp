// Copyright 2026 The gcpcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "gcpcert/classical_model.hpp"
#include "gcpcert/grid.hpp"
#include "gcpcert/matrix.hpp"
#include "gcpcert/mimicry.hpp"
#include "gcpcert/network.hpp"
#include "gcpcert/simulator.hpp"

namespace {

using namespace gcpcert;

ComplexMatrix sample_hermitian(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = r; c < 4; ++c) {
      const Complex z = r == c ? Complex(g(rng)) : Complex(g(rng), g(rng));
      m(r, c) = z;
      m(c, r) = std::conj(z);
    }
  return m;
}

void BM_HermitianEigen4(benchmark::State& state) {
  const ComplexMatrix m = sample_hermitian(1);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(m));
}
BENCHMARK(BM_HermitianEigen4);

void BM_ProjectPsd4(benchmark::State& state) {
  const ComplexMatrix m = sample_hermitian(2);
  for (auto _ : state) benchmark::DoNotOptimize(project_psd(m));
}
BENCHMARK(BM_ProjectPsd4);

void BM_GcpPipeline(benchmark::State& state) {
  const JointTransitionMatrix omega = JointTransitionMatrix::published_optimum();
  const ObservableTriple obs = default_observables();
  for (auto _ : state) benchmark::DoNotOptimize(gcp_process_matrix(omega, obs));
}
BENCHMARK(BM_GcpPipeline);

void BM_Compose(benchmark::State& state) {
  const ProcessMatrix a = gcp_process_matrix(JointTransitionMatrix::published_optimum(), default_observables());
  const ProcessMatrix b = chi_c_constant();
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, b));
}
BENCHMARK(BM_Compose);

void BM_ComposeOracle(benchmark::State& state) {
  const ProcessMatrix a = gcp_process_matrix(JointTransitionMatrix::published_optimum(), default_observables());
  const ProcessMatrix b = chi_c_constant();
  for (auto _ : state) benchmark::DoNotOptimize(compose_oracle(a, b));
}
BENCHMARK(BM_ComposeOracle);

void BM_LpRelaxation(benchmark::State& state) {
  const ObservableTriple obs = rotated_observables(1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(lp_upper_bound(obs));
}
BENCHMARK(BM_LpRelaxation)->Unit(benchmark::kMicrosecond);

void BM_Solver(benchmark::State& state) {
  const ObservableTriple obs = rotated_observables(0.1 * static_cast<double>(state.range(0)), std::numbers::pi / 4);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_gcp_fidelity(obs));
}
BENCHMARK(BM_Solver)->Arg(0)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_TeleportChannel(benchmark::State& state) {
  const ComplexMatrix resource = werner_state(0.2);
  const ObservableTriple obs = default_observables();
  for (auto _ : state) benchmark::DoNotOptimize(teleport_channel(resource, obs));
}
BENCHMARK(BM_TeleportChannel)->Unit(benchmark::kMicrosecond);

void BM_NoiseTolerance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(noise_tolerance(NoiseCriterion::Expt11N, n, closed_form_f_gc1givenN(n), default_observables()));
}
BENCHMARK(BM_NoiseTolerance)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Fig3Curves(benchmark::State& state) {
  const std::vector<double> grid = linspace(0.0, 1.0, 101);
  for (auto _ : state) benchmark::DoNotOptimize(fig3_curves(grid, default_observables(), ThresholdSet::published(), 1));
}
BENCHMARK(BM_Fig3Curves)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
