// Copyright 2026 the csgen authors
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

#include <random>

#include "csgen/ngram_lm.hpp"
#include "csgen/rng.hpp"

namespace {

std::vector<std::vector<std::string>> make_text(int sentences, int vocab) {
  std::mt19937_64 rng(3);
  std::vector<std::vector<std::string>> out;
  for (int s = 0; s < sentences; ++s) {
    std::vector<std::string> sent;
    const int len = 5 + static_cast<int>(csgen::uniform_below(rng, 10));
    for (int i = 0; i < len; ++i)
      sent.push_back("w" + std::to_string(csgen::uniform_below(rng, vocab)));
    out.push_back(std::move(sent));
  }
  return out;
}

void BM_LmTrain(benchmark::State& state) {
  const auto corpus = make_text(static_cast<int>(state.range(0)), 200);
  for (auto _ : state) {
    auto model = csgen::NGramModel::train(corpus);
    benchmark::DoNotOptimize(model);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LmEvaluate(benchmark::State& state) {
  const auto corpus = make_text(2000, 200);
  const auto testset = make_text(200, 220);  // some OOV
  const auto model = csgen::NGramModel::train(corpus);
  for (auto _ : state) {
    auto report = csgen::evaluate(model, testset, csgen::UnkPolicy::map_to_unk, "bench");
    benchmark::DoNotOptimize(report);
  }
}

}  // namespace

BENCHMARK(BM_LmTrain)->Arg(500)->Arg(2000);
BENCHMARK(BM_LmEvaluate);
