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

#include "csgen/generator.hpp"

#include <stdexcept>
#include <unordered_set>

#include "csgen/segmenter.hpp"

namespace csgen {

int count_switch_points(const std::vector<Token>& tokens) {
  int n = 0;
  for (std::size_t i = 1; i < tokens.size(); ++i)
    if (tokens[i].lang != tokens[i - 1].lang) ++n;
  return n;
}

CSCandidate CSCandidate::from_tokens(std::vector<Token> tokens, std::string pair_id) {
  CSCandidate c;
  c.tokens = std::move(tokens);
  c.switch_points = count_switch_points(c.tokens);
  c.spf = c.tokens.empty()
              ? 0.0
              : static_cast<double>(c.switch_points) /
                    static_cast<double>(std::max<std::size_t>(1, c.tokens.size() - 1));
  c.source_pair_id = std::move(pair_id);
  return c;
}

void GeneratorConfig::validate() const {
  if (max_candidates_per_sentence < 1)
    throw std::invalid_argument("max_candidates_per_sentence must be >= 1");
}

namespace {

std::string sequence_key(const std::vector<Token>& seq) {
  std::string key;
  for (const auto& t : seq) {
    key += t.surface;
    key += '\x1f';
    key += static_cast<char>('0' + static_cast<int>(t.lang));
    key += '\x1e';
  }
  return key;
}

struct Enumerator {
  std::size_t cap;
  bool truncated = false;

  // Deduplicated sequence list for a node, Arabic option first, at most
  // `cap` entries. Children of identity nodes are enumerated left-slowest
  // (depth first), so the first cap combinations only ever index the first
  // cap options of any child.
  std::vector<std::vector<Token>> enumerate(const BilingualTree& node) {
    std::vector<std::vector<Token>> out;
    std::unordered_set<std::string> seen;
    // Returns false only when a new sequence was rejected by the cap.
    auto push = [&](std::vector<Token> seq) {
      std::string key = sequence_key(seq);
      if (seen.count(key)) return true;
      if (out.size() >= cap) {
        truncated = true;
        return false;
      }
      seen.insert(std::move(key));
      out.push_back(std::move(seq));
      return true;
    };

    if (node.is_leaf()) {
      push(node.tgt_pieces);  // may be the empty sequence for src-only leaves
      if (!node.src_pieces.empty()) push(node.src_pieces);
      return out;
    }

    if (!identity_perm(node)) {
      push(target_order_tokens(node));
      if (subtree_has_src(node)) push(source_order_tokens(node));
      return out;
    }

    std::vector<std::vector<std::vector<Token>>> options;
    options.reserve(node.children.size());
    for (const auto& c : node.children) options.push_back(enumerate(c));

    std::vector<std::size_t> pick(options.size(), 0);
    bool more = true;
    while (more) {
      std::vector<Token> combo;
      for (std::size_t c = 0; c < options.size(); ++c) {
        const auto& seq = options[c][pick[c]];
        combo.insert(combo.end(), seq.begin(), seq.end());
      }
      if (!push(std::move(combo))) break;
      // advance odometer, rightmost child fastest
      more = false;
      for (std::size_t c = options.size(); c-- > 0;) {
        if (++pick[c] < options[c].size()) {
          more = true;
          break;
        }
        pick[c] = 0;
      }
    }
    // With tgt-only children the pure-English rendering is not a
    // cross-product member; it drops them entirely.
    if (subtree_has_src(node)) push(source_order_tokens(node));
    return out;
  }
};

}  // namespace

RenderingList renderings(const BilingualTree& node, const GeneratorConfig& cfg) {
  cfg.validate();
  Enumerator e{cfg.max_candidates_per_sentence};
  RenderingList list;
  list.sequences = e.enumerate(node);
  list.truncated = e.truncated;
  return list;
}

GenerationResult generate(const BilingualTree& tree, const GeneratorConfig& cfg,
                          const std::string& pair_id) {
  cfg.validate();
  RenderingList raw = renderings(tree, cfg);

  GenerationResult result;
  result.truncated = raw.truncated;
  std::unordered_set<std::string> seen;
  for (auto& seq : raw.sequences) {
    std::vector<Token> toks = desegment(seq);
    if (toks.empty()) continue;
    if (cfg.dedup && !seen.insert(sequence_key(toks)).second) continue;
    result.candidates.push_back(CSCandidate::from_tokens(std::move(toks), pair_id));
  }
  return result;
}

}  // namespace csgen
