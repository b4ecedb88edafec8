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

#include <algorithm>
#include <vector>

#include "pseudaudit/attribute.hpp"
#include "pseudaudit/random.hpp"

namespace {

using namespace pseudaudit;

// Sets of ~2^(A-16) sorted addresses, as a 4-hex username yields.
std::vector<std::vector<std::uint32_t>> make_sets(int bits, std::size_t count, std::size_t per_set) {
  SplitMix64 rng(5);
  std::vector<std::vector<std::uint32_t>> sets(count);
  for (auto& s : sets) {
    for (std::size_t i = 0; i < per_set; ++i)
      s.push_back((std::uint32_t{172} << 24) | static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << bits)));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return sets;
}

// state.range(0): address bits; state.range(1): sets per topic.
void BM_CountTopics(benchmark::State& state) {
  scheme::SchemeConfig space;
  space.address_space_bits = static_cast<int>(state.range(0));
  space.high_octet = 172;
  if (space.address_space_bits == 32) space.high_octet = 0;
  const std::size_t per_topic = static_cast<std::size_t>(state.range(1));
  const std::size_t per_set = std::size_t{1} << std::max(0, space.address_space_bits - 16);
  const auto sets = make_sets(std::min(space.address_space_bits, 24), 64 * per_topic, per_set);
  attribute::CountTable table(space);
  std::vector<const std::vector<std::uint32_t>*> topic(per_topic);
  for (auto _ : state) {
    table.clear();
    for (std::size_t t = 0; t < 64; ++t) {
      for (std::size_t j = 0; j < per_topic; ++j) topic[j] = &sets[t * per_topic + j];
      table.add_topic(topic);
    }
    benchmark::DoNotOptimize(table.max_count());
  }
  state.SetItemsProcessed(state.iterations() * 64 * static_cast<std::int64_t>(per_topic * per_set));
}
BENCHMARK(BM_CountTopics)->Args({24, 1})->Args({24, 4})->Args({32, 1})->Unit(benchmark::kMicrosecond);

}  // namespace
