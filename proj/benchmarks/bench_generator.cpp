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

#include "csgen/generator.hpp"

namespace {

csgen::BilingualTree flat_tree(int leaves) {
  csgen::BilingualTree root;
  root.label = "S";
  for (int i = 0; i < leaves; ++i) {
    csgen::BilingualTree leaf;
    leaf.label = "NN";
    leaf.tgt_pieces.push_back(csgen::ar_token("t" + std::to_string(i)));
    leaf.src_pieces.push_back(csgen::en_token("s" + std::to_string(i)));
    root.children.push_back(std::move(leaf));
    root.src_perm.push_back(i);
  }
  return root;
}

void BM_GenerateFlat(benchmark::State& state) {
  const auto tree = flat_tree(static_cast<int>(state.range(0)));
  csgen::GeneratorConfig cfg;
  cfg.max_candidates_per_sentence = 1 << 20;
  for (auto _ : state) {
    auto result = csgen::generate(tree, cfg);
    benchmark::DoNotOptimize(result.candidates);
  }
}

void BM_GenerateCapped(benchmark::State& state) {
  const auto tree = flat_tree(16);
  csgen::GeneratorConfig cfg;
  cfg.max_candidates_per_sentence = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto result = csgen::generate(tree, cfg);
    benchmark::DoNotOptimize(result.candidates);
  }
}

}  // namespace

BENCHMARK(BM_GenerateFlat)->Arg(8)->Arg(10)->Arg(12);
BENCHMARK(BM_GenerateCapped)->Arg(100)->Arg(10000);
