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

#include "csgen/projector.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>

namespace csgen {

namespace {

struct Block {
  std::vector<int> src;  // sorted, consecutive
  std::vector<int> tgt;  // sorted, consecutive
};

bool consecutive(const std::vector<int>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] != xs[i - 1] + 1) return false;
  return true;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Mutable working tree; children are kept in English order until the final
// reordering pass. Leaves carry their target indices explicitly.
struct WNode {
  std::string label;
  int block = -1;        // block id for block leaves, -1 for internal/attached
  std::vector<int> tgt;  // leaf target indices
  bool leaf = false;
  std::vector<int> src_perm;
  std::vector<std::unique_ptr<WNode>> children;
};

using WPtr = std::unique_ptr<WNode>;

void collect_tgt(const WNode& n, std::vector<int>& out) {
  if (n.leaf) {
    out.insert(out.end(), n.tgt.begin(), n.tgt.end());
    return;
  }
  for (const auto& c : n.children) collect_tgt(*c, out);
}

bool contains_tgt(const WNode& n, int t) {
  if (n.leaf) return std::find(n.tgt.begin(), n.tgt.end(), t) != n.tgt.end();
  for (const auto& c : n.children)
    if (contains_tgt(*c, t)) return true;
  return false;
}

// Bottom-up builder over the English parse tree. Words belonging to the
// same block collapse into one leaf; nodes split by a block are flattened
// into their parent, which realizes the tree between the collapsed nodes
// and their closest common ancestor.
struct Builder {
  const std::vector<Block>& blocks;
  const std::vector<int>& block_of_src;

  WPtr make_block_leaf(int block_id, const std::string& label) const {
    auto leaf = std::make_unique<WNode>();
    leaf->label = label;
    leaf->block = block_id;
    leaf->tgt = blocks[block_id].tgt;
    leaf->leaf = true;
    return leaf;
  }

  bool pure(const ParseTree& v) const {
    for (int i = v.span_begin; i < v.span_end; ++i) {
      const auto& s = blocks[block_of_src[i]].src;
      if (s.front() < v.span_begin || s.back() >= v.span_end) return false;
    }
    return true;
  }

  // Returns the node's contribution to its parent's child list.
  std::vector<WPtr> build(const ParseTree& v, const std::string& pos_label) const {
    std::vector<WPtr> items;
    if (v.is_leaf()) {
      items.push_back(make_block_leaf(block_of_src[v.span_begin], pos_label));
      return items;
    }
    if (v.children.size() == 1 && v.children.front().is_leaf())
      return build(v.children.front(), v.label);  // preterminal: POS from here

    for (const auto& c : v.children) {
      auto sub = build(c, v.label);
      for (auto& it : sub) {
        if (it->leaf && it->block >= 0 && !items.empty() && items.back()->leaf &&
            items.back()->block == it->block)
          continue;  // same block: already represented by the left-most word
        items.push_back(std::move(it));
      }
    }
    if (!pure(v)) return items;  // flatten this constituent away
    if (items.size() == 1) return items;  // collapse unary wrappers

    auto node = std::make_unique<WNode>();
    node->label = v.label;
    node->children = std::move(items);
    std::vector<WPtr> out;
    out.push_back(std::move(node));
    return out;
  }
};

// Flattens children whose target content is discontiguous in the given
// rank space (holes from unaligned morphemes do not count).
void fix_contiguity(WNode& n, const std::vector<int>& rank) {
  if (n.leaf) return;
  for (auto& c : n.children) fix_contiguity(*c, rank);
  std::vector<WPtr> out;
  for (auto& c : n.children) {
    bool contiguous = true;
    if (!c->leaf) {
      std::vector<int> idx;
      collect_tgt(*c, idx);
      std::vector<int> ranks;
      for (int t : idx)
        if (rank[t] >= 0) ranks.push_back(rank[t]);
      std::sort(ranks.begin(), ranks.end());
      contiguous = ranks.empty() ||
                   ranks.back() - ranks.front() + 1 == static_cast<int>(ranks.size());
    }
    if (contiguous) {
      out.push_back(std::move(c));
    } else {
      for (auto& gc : c->children) out.push_back(std::move(gc));
    }
  }
  n.children = std::move(out);
}

// Inserts a tgt-only leaf for unaligned index k next to its neighbours:
// after the child holding the closest placed index below k, or before the
// child holding the closest placed index above k at the left edge.
void attach_unaligned(WNode& root, int k, int left, int right, const Token& tok) {
  auto leaf = std::make_unique<WNode>();
  leaf->label = "X";
  leaf->tgt = {k};
  leaf->leaf = true;

  if (left < 0 && right < 0) {
    root.children.push_back(std::move(leaf));
    return;
  }
  WNode* node = &root;
  if (left >= 0 && right >= 0) {
    // Descend to the lowest node containing both neighbours.
    bool descended = true;
    while (descended) {
      descended = false;
      for (auto& c : node->children) {
        if (!c->leaf && contains_tgt(*c, left) && contains_tgt(*c, right)) {
          node = c.get();
          descended = true;
          break;
        }
      }
    }
  }
  const int anchor = left >= 0 ? left : right;
  for (std::size_t i = 0; i < node->children.size(); ++i) {
    if (contains_tgt(*node->children[i], anchor)) {
      node->children.insert(node->children.begin() + (left >= 0 ? i + 1 : i),
                            std::move(leaf));
      return;
    }
  }
  node->children.push_back(std::move(leaf));  // not reached for valid input
  (void)tok;
}

// Reorders children into Arabic order, recording src_perm. Children
// without target content stay glued to a content neighbour so that both
// orders keep them adjacent to the same sibling.
void reorder(WNode& n) {
  if (n.leaf) return;
  for (auto& c : n.children) reorder(*c);

  const std::size_t k = n.children.size();
  std::vector<long> key(k, 0);
  std::vector<int> min_tgt(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> idx;
    collect_tgt(*n.children[i], idx);
    if (!idx.empty()) min_tgt[i] = *std::min_element(idx.begin(), idx.end());
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (min_tgt[i] >= 0) {
      key[i] = 2L * min_tgt[i];
      continue;
    }
    long anchor = -1;
    for (std::size_t j = i; j-- > 0;) {
      if (min_tgt[j] >= 0) {
        anchor = 2L * min_tgt[j] + 1;
        break;
      }
    }
    if (anchor < 0) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (min_tgt[j] >= 0) {
          anchor = 2L * min_tgt[j] - 1;
          break;
        }
      }
    }
    key[i] = anchor < 0 ? 0 : anchor;
  }

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });

  std::vector<WPtr> sorted;
  sorted.reserve(k);
  std::vector<int> perm(k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    sorted.push_back(std::move(n.children[order[c]]));
    perm[order[c]] = static_cast<int>(c);  // english rank -> new index
  }
  n.children = std::move(sorted);
  n.src_perm = std::move(perm);
}

BilingualTree to_public(const WNode& n, const std::vector<Block>& blocks,
                        const SentencePair& pair) {
  BilingualTree out;
  out.label = n.label;
  if (n.leaf) {
    for (int t : n.tgt) out.tgt_pieces.push_back(pair.tgt_tokens[t]);
    if (n.block >= 0)
      for (int s : blocks[n.block].src) out.src_pieces.push_back(pair.src_tokens[s]);
    return out;
  }
  out.src_perm = n.src_perm;
  for (const auto& c : n.children) out.children.push_back(to_public(*c, blocks, pair));
  return out;
}

}  // namespace

ProjectResult project(const ParseTree& tree, const AlignmentSet& links,
                      const SentencePair& pair) {
  const int n = static_cast<int>(pair.src_tokens.size());
  const int m = static_cast<int>(pair.tgt_tokens.size());

  const auto leaves = tree_leaves(tree);
  if (static_cast<int>(leaves.size()) != n)
    throw std::invalid_argument("parse tree leaves do not match source tokens");
  for (int i = 0; i < n; ++i)
    if (leaves[i] != pair.src_tokens[i].surface)
      throw std::invalid_argument("parse tree leaves do not match source tokens");
  for (const auto& l : links)
    if (l.src_index < 0 || l.src_index >= n || l.tgt_index < 0 || l.tgt_index >= m)
      throw std::invalid_argument("alignment link out of range");

  // Close the alignment transitively into atomic blocks.
  UnionFind uf(n + m);
  for (const auto& l : links) uf.unite(l.src_index, n + l.tgt_index);
  std::map<int, Block> grouped;
  for (const auto& l : links) {
    Block& b = grouped[uf.find(l.src_index)];
    b.src.push_back(l.src_index);
    b.tgt.push_back(l.tgt_index);
  }

  std::vector<Block> blocks;
  std::vector<int> block_of_src(n, -1);
  std::vector<int> block_of_tgt(m, -1);
  for (auto& [root_id, b] : grouped) {
    std::sort(b.src.begin(), b.src.end());
    b.src.erase(std::unique(b.src.begin(), b.src.end()), b.src.end());
    std::sort(b.tgt.begin(), b.tgt.end());
    b.tgt.erase(std::unique(b.tgt.begin(), b.tgt.end()), b.tgt.end());
    if (!consecutive(b.src) || !consecutive(b.tgt))
      return {false, {}, "unprojectable sentence: discontiguous alignment block"};
    const int id = static_cast<int>(blocks.size());
    for (int s : b.src) block_of_src[s] = id;
    for (int t : b.tgt) block_of_tgt[t] = id;
    blocks.push_back(std::move(b));
  }
  for (int i = 0; i < n; ++i) {
    if (block_of_src[i] >= 0) continue;
    block_of_src[i] = static_cast<int>(blocks.size());
    blocks.push_back(Block{{i}, {}});
  }

  Builder builder{blocks, block_of_src};
  auto items = builder.build(tree, tree.label.empty() ? "S" : tree.label);
  WPtr root;
  if (items.size() == 1 && !items.front()->leaf) {
    root = std::move(items.front());
  } else {
    root = std::make_unique<WNode>();
    root->label = tree.label.empty() ? "S" : tree.label;
    root->children = std::move(items);
  }

  std::vector<int> rank(m, -1);
  {
    int r = 0;
    for (int t = 0; t < m; ++t)
      if (block_of_tgt[t] >= 0) rank[t] = r++;
  }
  fix_contiguity(*root, rank);

  // Unaligned Arabic morphemes become tgt-only leaves between their
  // neighbours; processed left to right so chains stay in order.
  std::vector<bool> placed(m, false);
  for (int t = 0; t < m; ++t) placed[t] = block_of_tgt[t] >= 0;
  for (int t = 0; t < m; ++t) {
    if (placed[t]) continue;
    int left = -1, right = -1;
    for (int q = t - 1; q >= 0; --q)
      if (placed[q]) {
        left = q;
        break;
      }
    for (int q = t + 1; q < m; ++q)
      if (placed[q]) {
        right = q;
        break;
      }
    attach_unaligned(*root, t, left, right, pair.tgt_tokens[t]);
    placed[t] = true;
  }

  reorder(*root);

  ProjectResult result;
  result.ok = true;
  result.tree = to_public(*root, blocks, pair);
  return result;
}

std::vector<Token> target_order_tokens(const BilingualTree& tree) {
  std::vector<Token> out;
  if (tree.is_leaf()) {
    out.insert(out.end(), tree.tgt_pieces.begin(), tree.tgt_pieces.end());
    return out;
  }
  for (const auto& c : tree.children) {
    auto sub = target_order_tokens(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::vector<Token> source_order_tokens(const BilingualTree& tree) {
  std::vector<Token> out;
  if (tree.is_leaf()) {
    out.insert(out.end(), tree.src_pieces.begin(), tree.src_pieces.end());
    return out;
  }
  for (std::size_t r = 0; r < tree.children.size(); ++r) {
    int idx = r < tree.src_perm.size() ? tree.src_perm[r] : static_cast<int>(r);
    if (idx < 0 || idx >= static_cast<int>(tree.children.size()))
      idx = static_cast<int>(r);
    auto sub = source_order_tokens(tree.children[idx]);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

bool subtree_has_src(const BilingualTree& tree) {
  if (tree.is_leaf()) return !tree.src_pieces.empty();
  return std::any_of(tree.children.begin(), tree.children.end(), subtree_has_src);
}

bool subtree_has_tgt(const BilingualTree& tree) {
  if (tree.is_leaf()) return !tree.tgt_pieces.empty();
  return std::any_of(tree.children.begin(), tree.children.end(), subtree_has_tgt);
}

bool identity_perm(const BilingualTree& node) {
  for (std::size_t r = 0; r < node.src_perm.size(); ++r)
    if (node.src_perm[r] != static_cast<int>(r)) return false;
  return true;
}

namespace {

void check_perms(const BilingualTree& n, std::vector<std::string>& out) {
  if (n.is_leaf()) {
    if (n.tgt_pieces.empty() && n.src_pieces.empty()) out.push_back("empty leaf");
    return;
  }
  if (n.src_perm.size() != n.children.size()) {
    out.push_back("invalid permutation");
  } else {
    std::vector<bool> seen(n.children.size(), false);
    for (int idx : n.src_perm) {
      if (idx < 0 || idx >= static_cast<int>(n.children.size()) || seen[idx]) {
        out.push_back("invalid permutation");
        break;
      }
      seen[idx] = true;
    }
  }
  for (const auto& c : n.children) check_perms(c, out);
}

void leaf_ids_target(const BilingualTree& n, int& next_leaf, std::vector<int>& tgt_leaf) {
  if (n.is_leaf()) {
    for (std::size_t i = 0; i < n.tgt_pieces.size(); ++i) tgt_leaf.push_back(next_leaf);
    ++next_leaf;
    return;
  }
  for (const auto& c : n.children) leaf_ids_target(c, next_leaf, tgt_leaf);
}

// Leaf numbering must agree between the two traversals for the atomicity
// check; the target walk assigns ids, the source walk re-discovers them.
void leaf_ids_source_stable(const BilingualTree& n, int& next_leaf,
                            std::map<const BilingualTree*, int>& id_of) {
  if (n.is_leaf()) {
    id_of[&n] = next_leaf++;
    return;
  }
  for (const auto& c : n.children) leaf_ids_source_stable(c, next_leaf, id_of);
}

void src_positions(const BilingualTree& n, const std::map<const BilingualTree*, int>& id_of,
                   std::vector<int>& out) {
  if (n.is_leaf()) {
    for (std::size_t i = 0; i < n.src_pieces.size(); ++i) out.push_back(id_of.at(&n));
    return;
  }
  for (std::size_t r = 0; r < n.children.size(); ++r) {
    const int idx = r < n.src_perm.size() ? n.src_perm[r] : static_cast<int>(r);
    if (idx >= 0 && idx < static_cast<int>(n.children.size()))
      src_positions(n.children[idx], id_of, out);
  }
}

}  // namespace

std::vector<std::string> validate(const BilingualTree& tree) {
  std::vector<std::string> out;
  check_perms(tree, out);
  return out;
}

std::vector<std::string> validate(const BilingualTree& tree, const SentencePair& pair) {
  std::vector<std::string> out = validate(tree);

  const auto tgt = target_order_tokens(tree);
  if (surfaces(tgt) != surfaces(pair.tgt_tokens)) out.push_back("target order violated");
  const auto src = source_order_tokens(tree);
  if (surfaces(src) != surfaces(pair.src_tokens)) out.push_back("source order violated");

  if (pair.alignment && out.empty()) {
    int next = 0;
    std::map<const BilingualTree*, int> id_of;
    leaf_ids_source_stable(tree, next, id_of);
    std::vector<int> tgt_leaf;
    int tgt_next = 0;
    leaf_ids_target(tree, tgt_next, tgt_leaf);
    std::vector<int> src_leaf;
    src_positions(tree, id_of, src_leaf);
    // src_leaf is in english order == pair.src order; tgt_leaf likewise.
    for (const auto& l : *pair.alignment) {
      if (l.src_index >= static_cast<int>(src_leaf.size()) ||
          l.tgt_index >= static_cast<int>(tgt_leaf.size()))
        continue;
      if (src_leaf[l.src_index] != tgt_leaf[l.tgt_index]) {
        out.push_back("alignment link crosses a leaf boundary");
        break;
      }
    }
  }
  return out;
}

std::string to_debug_string(const BilingualTree& tree) {
  if (tree.is_leaf()) {
    std::string s = "(" + tree.label + " ";
    s += join(surfaces(tree.tgt_pieces));
    s += "|";
    s += join(surfaces(tree.src_pieces));
    s += ")";
    return s;
  }
  std::string s = "(" + tree.label;
  for (const auto& c : tree.children) {
    s += ' ';
    s += to_debug_string(c);
  }
  s += ')';
  return s;
}

}  // namespace csgen
