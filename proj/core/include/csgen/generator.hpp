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

#ifndef CSGEN_GENERATOR_HPP_
#define CSGEN_GENERATOR_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "csgen/projector.hpp"
#include "csgen/types.hpp"

namespace csgen {

/// One code-switched rendering: desegmented surface tokens with language
/// tags, plus derived switch statistics.
struct CSCandidate {
  std::vector<Token> tokens;
  int switch_points = 0;
  double spf = 0.0;  // switch_points / max(1, len - 1)
  std::string source_pair_id;

  static CSCandidate from_tokens(std::vector<Token> tokens, std::string pair_id = "");
};

int count_switch_points(const std::vector<Token>& tokens);

struct GeneratorConfig {
  std::size_t max_candidates_per_sentence = 10000;
  bool dedup = true;

  void validate() const;
};

struct RenderingList {
  std::vector<std::vector<Token>> sequences;  // raw, '+' markers intact
  bool truncated = false;
};

/// All token sequences licensed by the equivalence condition: the Arabic
/// rendering, the English rendering when the node has source content, and
/// -- only under nodes whose src_perm is the identity -- the cross-product
/// of the children's rendering sets in shared order. Reordered subtrees
/// and collapsed multi-word leaves are atomic. Depth-first, Arabic-first
/// enumeration order, capped at max_candidates_per_sentence.
RenderingList renderings(const BilingualTree& node, const GeneratorConfig& cfg);

struct GenerationResult {
  std::vector<CSCandidate> candidates;
  bool truncated = false;
};

/// Renderings of the root, desegmented, deduplicated by (surface, lang)
/// sequence, in deterministic first-occurrence order. The all-Arabic
/// candidate always comes first.
GenerationResult generate(const BilingualTree& tree, const GeneratorConfig& cfg,
                          const std::string& pair_id = "");

}  // namespace csgen

#endif  // CSGEN_GENERATOR_HPP_
