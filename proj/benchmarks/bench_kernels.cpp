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

#include <string>

#include "kernels/batch_hash.hpp"
#include "pseudaudit/address.hpp"
#include "pseudaudit/enumerate.hpp"
#include "pseudaudit/hash.hpp"

namespace {

using namespace pseudaudit;

// One 256-message block per iteration: "227259131.111.5." ++ 0..255.
void BM_BlockKernel(benchmark::State& state, const char* isa, HashAlgorithm algorithm) {
  const detail::KernelSet* ks = nullptr;
  try {
    ks = &detail::kernels_named(isa);
  } catch (const std::exception&) {
    state.SkipWithError("kernel set not supported on this CPU");
    return;
  }
  const std::string head = "227259131.111.5.";
  const auto& tables = detail::suffix_tables(algorithm);
  detail::PrimedHead primed;
  detail::DigestBlock out;
  const detail::BlockKernel kernel = algorithm == HashAlgorithm::sha1 ? ks->sha1 : ks->md5;
  for (auto _ : state) {
    detail::prime_head(algorithm, {reinterpret_cast<const std::uint8_t*>(head.data()), head.size()}, primed);
    kernel(primed, tables, out);
    benchmark::DoNotOptimize(out.words[0][17]);
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK_CAPTURE(BM_BlockKernel, sha1_generic, "generic", HashAlgorithm::sha1);
BENCHMARK_CAPTURE(BM_BlockKernel, sha1_avx2, "avx2", HashAlgorithm::sha1);
BENCHMARK_CAPTURE(BM_BlockKernel, sha1_avx512, "avx512", HashAlgorithm::sha1);
BENCHMARK_CAPTURE(BM_BlockKernel, md5_generic, "generic", HashAlgorithm::md5);
BENCHMARK_CAPTURE(BM_BlockKernel, md5_avx512, "avx512", HashAlgorithm::md5);

void BM_ScalarDigest(benchmark::State& state) {
  std::uint32_t a = 0x836f05afu;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hex_digest(HashAlgorithm::sha1, "227259" + render_dotted(Address{a++})));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ScalarDigest);

// Whole-topic scan of a 2^A space for a handful of usernames at three
// positions.
void BM_CandidatesForTopic(benchmark::State& state) {
  scheme::SchemeConfig config;
  config.address_space_bits = static_cast<int>(state.range(0));
  config.high_octet = 172;
  enumerate::TopicWorkOrder order;
  order.topic = TopicId{227259};
  for (const char* u : {"c2b1", "91c2", "0000", "ffff", "1234"}) order.usernames.push_back(Username::parse(u));
  order.slice_starts = {8, 9, 10};
  order.normalize();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate::candidates_for_topic(order, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.address_count()));
}
BENCHMARK(BM_CandidatesForTopic)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
