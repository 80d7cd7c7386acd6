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

#ifndef CSGEN_PROJECTOR_HPP_
#define CSGEN_PROJECTOR_HPP_

#include <string>
#include <vector>

#include "csgen/corpus_io.hpp"
#include "csgen/types.hpp"

namespace csgen {

/// Projection of an English parse tree onto the Arabic side of a sentence
/// pair. Children are stored in Arabic (target) surface order; src_perm
/// maps English rendering rank to child index, so src_perm == {0,1,..}
/// means both languages share the child order at that node.
///
/// Leaves are atomic alignment blocks: tgt_pieces holds >= 0 Arabic
/// morphemes, src_pieces >= 0 English words. An unaligned English word
/// becomes a src-only leaf (its Arabic rendering is empty); an unaligned
/// Arabic morpheme becomes a tgt-only leaf.
struct BilingualTree {
  std::string label;
  std::vector<BilingualTree> children;  // target order
  std::vector<int> src_perm;            // english order of children
  std::vector<Token> tgt_pieces;        // leaf payload
  std::vector<Token> src_pieces;        // leaf payload

  bool is_leaf() const { return children.empty(); }
};

struct ProjectResult {
  bool ok = false;
  BilingualTree tree;
  std::string error;  // "unprojectable sentence: ..." when !ok
};

/// Applies the tree surgery: pair leaves with aligned morphemes, elide
/// unaligned words on either side, collapse multi-word blocks, flatten
/// subtrees split by crossing links, then reorder children into Arabic
/// order recording src_perm. Irreducibly crossing alignments yield
/// ok == false; preconditions (tree leaves match the source side, links
/// in bounds) throw std::invalid_argument.
ProjectResult project(const ParseTree& tree, const AlignmentSet& links,
                      const SentencePair& pair);

/// Structural invariant checks; returns human-readable violations
/// (empty == valid). When `pair` is given, leaf renderings are compared
/// against it and leaf atomicity is checked against its alignment.
std::vector<std::string> validate(const BilingualTree& tree);
std::vector<std::string> validate(const BilingualTree& tree, const SentencePair& pair);

/// All tgt_pieces left to right: the Arabic rendering.
std::vector<Token> target_order_tokens(const BilingualTree& tree);

/// All src_pieces in src_perm-composed order: the English rendering.
std::vector<Token> source_order_tokens(const BilingualTree& tree);

bool subtree_has_src(const BilingualTree& tree);
bool subtree_has_tgt(const BilingualTree& tree);
bool identity_perm(const BilingualTree& node);

/// Bracketed debug form with "tgt|src" leaf payloads.
std::string to_debug_string(const BilingualTree& tree);

}  // namespace csgen

#endif  // CSGEN_PROJECTOR_HPP_
