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

#include "support/synth.hpp"

#include <algorithm>
#include <numeric>

#include "csgen/rng.hpp"

namespace csgen::test {

namespace {

struct LeafSpec {
  int n_ar = 1;
  int n_en = 1;
  bool morpheme_pair = false;
};

struct TreeBuilder {
  std::mt19937_64& rng;
  const std::vector<LeafSpec>& specs;
  int next_ar = 0;
  int next_en = 0;
  int next_label = 0;

  std::string label() {
    static const char* kLabels[] = {"S", "NP", "VP", "PP", "ADJP", "SBAR"};
    return kLabels[next_label++ % 6];
  }

  BilingualTree make_leaf(const LeafSpec& spec) {
    BilingualTree leaf;
    leaf.label = "NN";
    if (spec.morpheme_pair && spec.n_ar == 2) {
      leaf.tgt_pieces.push_back(
          Token{"t" + std::to_string(next_ar++) + "+", Lang::AR, true});
      leaf.tgt_pieces.push_back(
          Token{"+t" + std::to_string(next_ar++), Lang::AR, true});
    } else {
      for (int i = 0; i < spec.n_ar; ++i)
        leaf.tgt_pieces.push_back(Token{"t" + std::to_string(next_ar++), Lang::AR, false});
    }
    for (int i = 0; i < spec.n_en; ++i)
      leaf.src_pieces.push_back(Token{"s" + std::to_string(next_en++), Lang::EN, false});
    return leaf;
  }

  // Glue-consistent english order: children with content in both languages
  // are anchors and may permute; one-sided children stay adjacent to their
  // anchor in both orders.
  void make_perm(BilingualTree& node) {
    const std::size_t k = node.children.size();
    std::vector<bool> anchor(k, false);
    std::vector<std::size_t> anchors;
    for (std::size_t i = 0; i < k; ++i) {
      if (subtree_has_src(node.children[i]) && subtree_has_tgt(node.children[i])) {
        anchor[i] = true;
        anchors.push_back(i);
      }
    }
    std::vector<int> en_order;
    if (anchors.size() < 2) {
      for (std::size_t i = 0; i < k; ++i) en_order.push_back(static_cast<int>(i));
    } else {
      // clusters: anchor plus following non-anchors; leading non-anchors
      // join the first cluster
      std::vector<std::vector<int>> clusters(anchors.size());
      std::size_t cluster = 0;
      bool seen_anchor = false;
      for (std::size_t i = 0; i < k; ++i) {
        if (anchor[i]) {
          if (seen_anchor) ++cluster;
          seen_anchor = true;
        }
        clusters[std::min(cluster, anchors.size() - 1)].push_back(static_cast<int>(i));
      }
      std::vector<std::size_t> order(anchors.size());
      std::iota(order.begin(), order.end(), 0);
      if (uniform_below(rng, 2) == 1) {
        for (std::size_t i = order.size() - 1; i > 0; --i)
          std::swap(order[i], order[uniform_below(rng, i + 1)]);
      }
      for (auto c : order)
        for (int idx : clusters[c]) en_order.push_back(idx);
    }
    node.src_perm.assign(k, 0);
    for (std::size_t r = 0; r < k; ++r) node.src_perm[r] = en_order[r];
  }

  BilingualTree build(std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return make_leaf(specs[lo]);
    const std::size_t count = hi - lo;
    const std::size_t max_kids = std::min<std::size_t>(4, count);
    const std::size_t kids = 2 + uniform_below(rng, max_kids - 1);
    // choose kids-1 distinct cuts in (lo, hi)
    std::vector<std::size_t> cuts;
    for (std::size_t c = lo + 1; c < hi; ++c) cuts.push_back(c);
    for (std::size_t i = cuts.size() - 1; i > 0; --i)
      std::swap(cuts[i], cuts[uniform_below(rng, i + 1)]);
    cuts.resize(kids - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(hi);

    BilingualTree node;
    node.label = label();
    std::size_t start = lo;
    for (auto cut : cuts) {
      node.children.push_back(build(start, cut));
      start = cut;
    }
    make_perm(node);
    return node;
  }
};

}  // namespace

BilingualTree random_bitree(std::mt19937_64& rng, int max_leaves) {
  const int L = 2 + static_cast<int>(uniform_below(rng, std::max(1, max_leaves - 1)));
  std::vector<LeafSpec> specs;
  bool any_ar = false;
  for (int i = 0; i < L; ++i) {
    LeafSpec s;
    const auto r = uniform_below(rng, 100);
    if (r < 55) {  // normal, maybe multi-piece
      s.n_ar = uniform_below(rng, 4) == 0 ? 2 : 1;
      s.n_en = uniform_below(rng, 4) == 0 ? 2 : 1;
      s.morpheme_pair = s.n_ar == 2 && uniform_below(rng, 2) == 0;
    } else if (r < 72) {  // unaligned Arabic morpheme
      s.n_ar = uniform_below(rng, 3) == 0 ? 2 : 1;
      s.n_en = 0;
    } else if (r < 88) {  // elided English word
      s.n_ar = 0;
      s.n_en = uniform_below(rng, 3) == 0 ? 2 : 1;
    } else {  // collapsed multi-word block
      s.n_ar = 1;
      s.n_en = 2 + static_cast<int>(uniform_below(rng, 2));
    }
    any_ar = any_ar || s.n_ar > 0;
    specs.push_back(s);
  }
  if (!any_ar) specs[0] = LeafSpec{1, 1, false};

  TreeBuilder builder{rng, specs};
  if (L == 1) return builder.make_leaf(specs[0]);
  return builder.build(0, specs.size());
}

SentencePair pair_of(const BilingualTree& tree) {
  SentencePair pair;
  pair.id = "synthetic";
  pair.tgt_tokens = target_order_tokens(tree);
  pair.src_tokens = source_order_tokens(tree);
  return pair;
}

DictWorld make_dict_world(std::mt19937_64& rng, int vocab_types, int num_pairs,
                          double swap_prob) {
  DictWorld world;
  const auto coin = [&](double p) {
    return static_cast<double>(uniform_below(rng, 1000000)) < p * 1000000.0;
  };
  for (int p = 0; p < num_pairs; ++p) {
    const int len = 3 + static_cast<int>(uniform_below(rng, 6));
    const auto ids =
        sample_indices(rng, static_cast<std::size_t>(vocab_types), static_cast<std::size_t>(len));
    std::vector<int> order(len);
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i + 1 < len; ++i)
      if (coin(swap_prob)) std::swap(order[i], order[i + 1]);

    SentencePair pair;
    pair.id = std::to_string(p + 1);
    for (int i = 0; i < len; ++i)
      pair.src_tokens.push_back(en_token("e" + std::to_string(ids[i])));
    AlignmentSet gold;
    for (int j = 0; j < len; ++j) {
      pair.tgt_tokens.push_back(ar_token("f" + std::to_string(ids[order[j]])));
      gold.insert(AlignmentLink{order[j], j});
    }
    pair.alignment = gold;
    world.gold.push_back(gold);
    world.pairs.push_back(std::move(pair));
  }
  return world;
}

namespace {

struct Lexicon {
  std::vector<std::string> en;
  std::vector<std::string> ar;
};

Lexicon make_class(const std::string& en_prefix, const std::string& ar_prefix, int n) {
  Lexicon lx;
  for (int i = 0; i < n; ++i) {
    lx.en.push_back(en_prefix + std::to_string(i));
    lx.ar.push_back(ar_prefix + std::to_string(i));
  }
  return lx;
}

}  // namespace

std::vector<GrammarSentence> make_grammar_world(std::mt19937_64& rng, int sentences) {
  const Lexicon pronouns = make_class("p", "P", 4);
  const Lexicon verbs = make_class("v", "V", 6);
  const Lexicon nouns = make_class("n", "N", 8);
  const Lexicon adjs = make_class("j", "J", 4);
  const Lexicon preps = make_class("r", "R", 3);

  std::vector<GrammarSentence> out;
  for (int i = 0; i < sentences; ++i) {
    const auto p = uniform_below(rng, pronouns.en.size());
    const auto v = uniform_below(rng, verbs.en.size());
    const auto n1 = uniform_below(rng, nouns.en.size());
    const auto n2 = uniform_below(rng, nouns.en.size());
    const auto j = uniform_below(rng, adjs.en.size());
    const auto r = uniform_below(rng, preps.en.size());

    GrammarSentence s;
    const auto t = uniform_below(rng, 10);
    if (t < 3) {
      // subject verb object, "the" unaligned
      s.en = pronouns.en[p] + " " + verbs.en[v] + " the " + nouns.en[n1];
      s.ar = pronouns.ar[p] + " " + verbs.ar[v] + " " + nouns.ar[n1];
      s.tree = "(S (NP (PRP " + pronouns.en[p] + ")) (VP (VB " + verbs.en[v] +
               ") (NP (DT the) (NN " + nouns.en[n1] + "))))";
      s.gold = {{0, 0}, {1, 1}, {3, 2}};
    } else if (t < 5) {
      // adjective order flips on the Arabic side
      s.en = pronouns.en[p] + " " + verbs.en[v] + " the " + adjs.en[j] + " " +
             nouns.en[n1];
      s.ar = pronouns.ar[p] + " " + verbs.ar[v] + " " + nouns.ar[n1] + " " + adjs.ar[j];
      s.tree = "(S (NP (PRP " + pronouns.en[p] + ")) (VP (VB " + verbs.en[v] +
               ") (NP (DT the) (JJ " + adjs.en[j] + ") (NN " + nouns.en[n1] + "))))";
      s.gold = {{0, 0}, {1, 1}, {3, 3}, {4, 2}};
    } else if (t < 7) {
      // prepositional phrase, parallel order
      s.en = pronouns.en[p] + " " + verbs.en[v] + " " + preps.en[r] + " the " +
             nouns.en[n1];
      s.ar = pronouns.ar[p] + " " + verbs.ar[v] + " " + preps.ar[r] + " " + nouns.ar[n1];
      s.tree = "(S (NP (PRP " + pronouns.en[p] + ")) (VP (VB " + verbs.en[v] +
               ") (PP (IN " + preps.en[r] + ") (NP (DT the) (NN " + nouns.en[n1] +
               ")))))";
      s.gold = {{0, 0}, {1, 1}, {2, 2}, {4, 3}};
    } else if (t < 9) {
      // two nominals
      s.en = "the " + nouns.en[n1] + " " + verbs.en[v] + " the " + nouns.en[n2];
      s.ar = nouns.ar[n1] + " " + verbs.ar[v] + " " + nouns.ar[n2];
      s.tree = "(S (NP (DT the) (NN " + nouns.en[n1] + ")) (VP (VB " + verbs.en[v] +
               ") (NP (DT the) (NN " + nouns.en[n2] + "))))";
      s.gold = {{1, 0}, {2, 1}, {4, 2}};
    } else {
      // verb-initial Arabic: subject and verb cross
      s.en = pronouns.en[p] + " " + verbs.en[v] + " the " + nouns.en[n1];
      s.ar = verbs.ar[v] + " " + pronouns.ar[p] + " " + nouns.ar[n1];
      s.tree = "(S (NP (PRP " + pronouns.en[p] + ")) (VP (VB " + verbs.en[v] +
               ") (NP (DT the) (NN " + nouns.en[n1] + "))))";
      s.gold = {{0, 1}, {1, 0}, {3, 2}};
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace csgen::test
