// Copyright 2026 The pseudaudit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "pseudaudit/pbnull.hpp"
#include "pseudaudit/random.hpp"

namespace {

using namespace pseudaudit;

pbnull::TopicLoad make_load(std::size_t topics, std::uint64_t max_k) {
  pbnull::TopicLoad load;
  load.username_bits = 16;
  SplitMix64 rng(11);
  for (std::size_t t = 0; t < topics; ++t) load.k.push_back(1 + rng.below(max_k));
  return load;
}

void BM_WindowPmf(benchmark::State& state, pbnull::Route route) {
  const auto load = make_load(static_cast<std::size_t>(state.range(0)), 12);
  const std::size_t c_max = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(pbnull::window_pmf(load, c_max, route));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_WindowPmf, bernoulli, pbnull::Route::bernoulli)
    ->Args({100, 64})
    ->Args({1000, 64})
    ->Args({10000, 64})
    ->Args({10000, 512});
BENCHMARK_CAPTURE(BM_WindowPmf, grouped, pbnull::Route::grouped)
    ->Args({100, 64})
    ->Args({1000, 64})
    ->Args({10000, 64})
    ->Args({10000, 512});

void BM_LogSurvivalLookup(benchmark::State& state) {
  const auto table = pbnull::window_pmf(make_load(1000, 12), 128);
  std::uint64_t n = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pbnull::log_survival(table, n));
    n = (n + 7) & 255;
  }
}
BENCHMARK(BM_LogSurvivalLookup);

}  // namespace
