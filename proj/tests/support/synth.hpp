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

#ifndef CSGEN_TESTS_SUPPORT_SYNTH_HPP_
#define CSGEN_TESTS_SUPPORT_SYNTH_HPP_

#include <random>
#include <string>
#include <vector>

#include "csgen/projector.hpp"
#include "csgen/types.hpp"

namespace csgen::test {

/// Random well-formed BilingualTree mirroring projector output: children
/// in target order, elided (one-sided) children glued to the same content
/// sibling in both orders, contiguous target spans, a mix of identity and
/// permuted nodes, collapsed multi-word leaves, and occasional '+'-marked
/// morpheme pairs inside a leaf.
BilingualTree random_bitree(std::mt19937_64& rng, int max_leaves);

/// Sentence pair whose sides are the tree's two renderings (useful for
/// validate()).
SentencePair pair_of(const BilingualTree& tree);

/// Synthetic dictionary-translation corpus for aligner recovery tests.
struct DictWorld {
  std::vector<SentencePair> pairs;          // alignment = gold links
  std::vector<AlignmentSet> gold;           // per pair
};
DictWorld make_dict_world(std::mt19937_64& rng, int vocab_types, int num_pairs,
                          double swap_prob = 0.2);

/// Tiny bilingual grammar world for end-to-end language-model tests:
/// template-generated sentence pairs with bracketed English trees and gold
/// alignments; the Arabic side uses verb-initial order so projection has
/// real reordering to do.
struct GrammarSentence {
  std::string en;        // whitespace-tokenized
  std::string ar;        // whitespace-tokenized
  std::string tree;      // PTB bracket string over the English tokens
  AlignmentSet gold;     // src(EN) -> tgt(AR)
};
std::vector<GrammarSentence> make_grammar_world(std::mt19937_64& rng, int sentences);

}  // namespace csgen::test

#endif  // CSGEN_TESTS_SUPPORT_SYNTH_HPP_
