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

#include "csgen/aligner.hpp"
#include "csgen/rng.hpp"

namespace {

std::vector<csgen::SentencePair> make_corpus(int pairs, int vocab) {
  std::mt19937_64 rng(1);
  std::vector<csgen::SentencePair> out;
  for (int p = 0; p < pairs; ++p) {
    csgen::SentencePair sp;
    sp.id = std::to_string(p + 1);
    const int len = 4 + static_cast<int>(csgen::uniform_below(rng, 6));
    for (int i = 0; i < len; ++i) {
      const auto w = csgen::uniform_below(rng, vocab);
      sp.src_tokens.push_back(csgen::en_token("e" + std::to_string(w)));
      sp.tgt_tokens.push_back(csgen::ar_token("f" + std::to_string(w)));
    }
    out.push_back(std::move(sp));
  }
  return out;
}

void BM_AlignerTrain(benchmark::State& state) {
  const auto corpus = make_corpus(static_cast<int>(state.range(0)), 50);
  csgen::AlignerConfig cfg;
  cfg.iterations = 5;
  for (auto _ : state) {
    auto result = csgen::train(corpus, cfg);
    benchmark::DoNotOptimize(result.table);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Viterbi(benchmark::State& state) {
  const auto corpus = make_corpus(500, 50);
  csgen::AlignerConfig cfg;
  const auto trained = csgen::train(corpus, cfg);
  std::size_t i = 0;
  for (auto _ : state) {
    auto links = csgen::viterbi_align(trained.table, cfg, corpus[i++ % corpus.size()]);
    benchmark::DoNotOptimize(links);
  }
}

}  // namespace

BENCHMARK(BM_AlignerTrain)->Arg(200)->Arg(1000);
BENCHMARK(BM_Viterbi);
