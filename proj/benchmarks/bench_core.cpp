// Copyright 2026 mpsh authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "mpsh/channel.hpp"
#include "mpsh/matrix.hpp"
#include "mpsh/models.hpp"
#include "mpsh/mps.hpp"
#include "mpsh/random.hpp"

namespace {

using namespace mpsh;

void BM_from_kraus(benchmark::State& state) {
  const int bond = static_cast<int>(state.range(0));
  const MPSChain chain = random_gauge_chain(4, bond, 1, true, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(from_kraus(chain.site(1)));
  }
}
BENCHMARK(BM_from_kraus)->Arg(2)->Arg(4)->Arg(8);

void BM_compose(benchmark::State& state) {
  const int bond = static_cast<int>(state.range(0));
  const SuperOperator phi = from_kraus(random_gauge_chain(4, bond, 1, true, 2).site(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose(phi, phi));
  }
}
BENCHMARK(BM_compose)->Arg(2)->Arg(4)->Arg(8);

void BM_superop_trace(benchmark::State& state) {
  const SuperOperator phi = from_kraus(random_gauge_chain(4, 8, 1, true, 3).site(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(superop_trace(phi));
  }
}
BENCHMARK(BM_superop_trace);

void BM_spectral_classification(benchmark::State& state) {
  const int bond = static_cast<int>(state.range(0));
  const SuperOperator phi = from_kraus(random_gauge_chain(4, bond, 1, true, 4).site(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_classification(phi));
  }
}
BENCHMARK(BM_spectral_classification)->Arg(2)->Arg(4)->Arg(8);

void BM_state_vector(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const MPSChain chain = depolarizing_chain(0.3);
  EvalCaps caps;
  caps.max_state_amplitudes = std::size_t{1} << 26;
  for (auto _ : state) {
    benchmark::DoNotOptimize(state_vector(chain, sites, caps));
  }
}
BENCHMARK(BM_state_vector)->Arg(4)->Arg(6)->Arg(8);

void BM_normalization(benchmark::State& state) {
  const int volume = static_cast<int>(state.range(0));
  const MPSChain chain = random_gauge_chain(4, 8, 1, true, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalization(chain, volume));
  }
}
BENCHMARK(BM_normalization)->Arg(8)->Arg(32)->Arg(128);

void BM_lift_observable(benchmark::State& state) {
  const int window = static_cast<int>(state.range(0));
  const MPSChain chain = depolarizing_chain(0.3);
  long dim = 1;
  for (int k = 0; k < window; ++k) dim *= chain.physical_dim;
  Prng rng(6);
  const ComplexMatrix g = rng.ginibre(static_cast<int>(dim), static_cast<int>(dim));
  const LocalObservable x(1, window, ComplexMatrix(0.5 * (g + g.adjoint())));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lift_observable(chain, x));
  }
}
BENCHMARK(BM_lift_observable)->Arg(1)->Arg(2)->Arg(3);

void BM_finite_expectation_transfer(benchmark::State& state) {
  const int volume = static_cast<int>(state.range(0));
  const MPSChain chain = depolarizing_chain(0.3);
  const LocalObservable x(1, 1, matrix_unit(4, 0, 0));
  EvalCaps caps;
  caps.max_state_amplitudes = 1;  // transfer route only
  for (auto _ : state) {
    benchmark::DoNotOptimize(finite_expectation(chain, x, volume, caps));
  }
}
BENCHMARK(BM_finite_expectation_transfer)->Arg(4)->Arg(16)->Arg(64);

void BM_finite_expectation_dual_route(benchmark::State& state) {
  const int volume = static_cast<int>(state.range(0));
  const MPSChain chain = depolarizing_chain(0.3);
  const LocalObservable x(1, 1, matrix_unit(4, 0, 0));
  EvalCaps caps;
  caps.max_state_amplitudes = std::size_t{1} << 26;
  for (auto _ : state) {
    benchmark::DoNotOptimize(finite_expectation(chain, x, volume, caps));
  }
}
BENCHMARK(BM_finite_expectation_dual_route)->Arg(4)->Arg(6)->Arg(8);

void BM_fixed_point(benchmark::State& state) {
  const int bond = static_cast<int>(state.range(0));
  const SuperOperator phi = from_kraus(random_gauge_chain(4, bond, 1, true, 7).site(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fixed_point(phi));
  }
}
BENCHMARK(BM_fixed_point)->Arg(2)->Arg(4)->Arg(8);

void BM_md_sphere_search(benchmark::State& state) {
  const SuperOperator phi = from_kraus(depolarizing_chain(0.3).site(1));
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(md_sphere_search(phi, grid, 4));
  }
}
BENCHMARK(BM_md_sphere_search)->Arg(256)->Arg(1024);

void BM_tv_norm(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Prng rng(8);
  const ComplexMatrix g = rng.ginibre(dim, dim);
  const ComplexMatrix m = 0.5 * (g + g.adjoint());
  for (auto _ : state) {
    benchmark::DoNotOptimize(tv_norm(m));
  }
}
BENCHMARK(BM_tv_norm)->Arg(2)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
