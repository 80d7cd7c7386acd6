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

#include "support/oracle.hpp"

#include <algorithm>
#include <limits>

#include "csgen/segmenter.hpp"

namespace csgen::test {

std::string candidate_key(const std::vector<Token>& tokens) {
  std::string key;
  for (const auto& t : tokens) {
    key += t.surface;
    key += '/';
    key += lang_code(t.lang);
    key += ' ';
  }
  return key;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct LeafInfo {
  const BilingualTree* node = nullptr;
  int id = 0;  // index in target order
  int ar_lo = kInf, ar_hi = -kInf;
  int en_lo = kInf, en_hi = -kInf;
  bool real_ar = false;  // leaf carries Arabic tokens
  bool real_en = false;  // leaf carries English tokens
};

struct FlatTree {
  // node_id 0 is the root; leaves carry their LeafInfo index.
  std::vector<const BilingualTree*> nodes;
  std::vector<int> parent;                 // node_id -> node_id (-1 for root)
  std::vector<std::vector<int>> node_leaves;  // node_id -> leaf ids below
  std::vector<LeafInfo> leaves;
  std::vector<int> leaf_node;  // leaf id -> node_id
};

bool is_identity(const BilingualTree& n) {
  for (std::size_t r = 0; r < n.src_perm.size(); ++r)
    if (n.src_perm[r] != static_cast<int>(r)) return false;
  return true;
}

void flatten(const BilingualTree& n, int parent, FlatTree& ft, int& next_ar) {
  const int id = static_cast<int>(ft.nodes.size());
  ft.nodes.push_back(&n);
  ft.parent.push_back(parent);
  ft.node_leaves.emplace_back();
  if (n.is_leaf()) {
    LeafInfo info;
    info.node = &n;
    info.id = static_cast<int>(ft.leaves.size());
    if (!n.tgt_pieces.empty()) {
      info.real_ar = true;
      info.ar_lo = next_ar;
      info.ar_hi = next_ar + static_cast<int>(n.tgt_pieces.size()) - 1;
      next_ar += static_cast<int>(n.tgt_pieces.size());
    }
    ft.leaves.push_back(info);
    ft.leaf_node.push_back(id);
    return;
  }
  for (const auto& c : n.children) flatten(c, id, ft, next_ar);
}

// English leaf order comes from the src_perm-composed traversal.
void english_order(const BilingualTree& n, std::vector<const BilingualTree*>& order) {
  if (n.is_leaf()) {
    order.push_back(&n);
    return;
  }
  for (std::size_t r = 0; r < n.children.size(); ++r) {
    const int idx = r < n.src_perm.size() ? n.src_perm[r] : static_cast<int>(r);
    english_order(n.children[idx], order);
  }
}

struct Item {
  int ar_lo = kInf, ar_hi = -kInf;
  int en_lo = kInf, en_hi = -kInf;
  const BilingualTree* leaf = nullptr;
  bool is_en = false;
};

struct MergeState {
  const std::vector<Item>& a;  // Arabic-rendered, Arabic order
  const std::vector<Item>& e;  // English-rendered, English order
  std::vector<int> suf_a_ar, suf_a_en, suf_e_ar, suf_e_en;  // suffix minima of *_lo
  std::set<std::string>* out;

  void prepare() {
    auto build = [](const std::vector<Item>& v, bool ar) {
      std::vector<int> suf(v.size() + 1, kInf);
      for (std::size_t i = v.size(); i-- > 0;) {
        const int lo = ar ? v[i].ar_lo : v[i].en_lo;
        suf[i] = std::min(suf[i + 1], lo);
      }
      return suf;
    };
    suf_a_ar = build(a, true);
    suf_a_en = build(a, false);
    suf_e_ar = build(e, true);
    suf_e_en = build(e, false);
  }

  void emit(const std::vector<const Item*>& merged) const {
    std::vector<Token> tokens;
    for (const Item* it : merged) {
      const auto& src = it->is_en ? it->leaf->src_pieces : it->leaf->tgt_pieces;
      tokens.insert(tokens.end(), src.begin(), src.end());
    }
    const auto final_tokens = desegment(tokens);
    if (!final_tokens.empty()) out->insert(candidate_key(final_tokens));
  }

  // last: 0 none, 1 from a, 2 from e
  void dfs(std::size_t i, std::size_t j, int last, int max_ar, int max_en,
           std::vector<const Item*>& merged) {
    if (i == a.size() && j == e.size()) {
      emit(merged);
      return;
    }
    auto try_take = [&](bool from_a) {
      const Item& it = from_a ? a[i] : e[j];
      const int next_last = from_a ? 1 : 2;
      if (last != 0 && last != next_last) {
        // Switch point: everything emitted must precede everything left,
        // in both languages' position spaces.
        const int min_ar = std::min(suf_a_ar[i], suf_e_ar[j]);
        const int min_en = std::min(suf_a_en[i], suf_e_en[j]);
        if (max_ar > -kInf && min_ar < kInf && max_ar >= min_ar) return;
        if (max_en > -kInf && min_en < kInf && max_en >= min_en) return;
      }
      merged.push_back(&it);
      dfs(i + (from_a ? 1 : 0), j + (from_a ? 0 : 1), next_last,
          std::max(max_ar, it.ar_hi), std::max(max_en, it.en_hi), merged);
      merged.pop_back();
    };
    if (i < a.size()) try_take(true);
    if (j < e.size()) try_take(false);
  }
};

}  // namespace

std::set<std::string> oracle_candidates(const BilingualTree& tree) {
  FlatTree ft;
  int next_ar = 0;
  flatten(tree, -1, ft, next_ar);

  // leaves below each node
  for (std::size_t l = 0; l < ft.leaves.size(); ++l) {
    int node = ft.leaf_node[l];
    while (node >= 0) {
      ft.node_leaves[node].push_back(static_cast<int>(l));
      node = ft.parent[node];
    }
  }

  // English positions by src_perm traversal
  std::vector<const BilingualTree*> en_order;
  english_order(tree, en_order);
  {
    int pos = 0;
    for (const BilingualTree* leaf_ptr : en_order) {
      for (auto& info : ft.leaves) {
        if (info.node == leaf_ptr && !leaf_ptr->src_pieces.empty()) {
          info.real_en = true;
          info.en_lo = pos;
          info.en_hi = pos + static_cast<int>(leaf_ptr->src_pieces.size()) - 1;
          pos += static_cast<int>(leaf_ptr->src_pieces.size());
        }
      }
    }
  }

  const std::size_t L = ft.leaves.size();
  std::set<std::string> out;
  if (L > 20) return out;  // guard; oracle is for small trees

  // One-sided leaves get pseudo-positions in the missing language, pinned
  // just after the nearest preceding content in that language's order:
  // that is where the shared (tree) order places them. Real positions are
  // scaled up so pseudo chains fit strictly between neighbours.
  const int scale = static_cast<int>(L) + 2;
  for (auto& info : ft.leaves) {
    if (info.real_ar) {
      info.ar_lo *= scale;
      info.ar_hi *= scale;
    }
    if (info.real_en) {
      info.en_lo *= scale;
      info.en_hi *= scale;
    }
  }
  {
    int last_end = -scale, chain = 0;
    for (auto& info : ft.leaves) {  // target order
      if (info.real_ar) {
        last_end = info.ar_hi;
        chain = 0;
      } else {
        ++chain;
        info.ar_lo = info.ar_hi = last_end + chain;
      }
    }
  }
  {
    int last_end = -scale, chain = 0;
    for (const BilingualTree* leaf_ptr : en_order) {
      for (auto& info : ft.leaves) {
        if (info.node != leaf_ptr) continue;
        if (info.real_en) {
          last_end = info.en_hi;
          chain = 0;
        } else {
          ++chain;
          info.en_lo = info.en_hi = last_end + chain;
        }
      }
    }
  }

  for (std::uint64_t mask = 0; mask < (1ull << L); ++mask) {
    const auto assigned_en = [&](int leaf) { return (mask >> leaf) & 1ull; };

    // Atomicity: a reordered (non-identity) subtree renders in one
    // language as a whole, so all its leaves must share an assignment.
    bool valid = true;
    for (std::size_t node = 0; node < ft.nodes.size() && valid; ++node) {
      if (ft.nodes[node]->is_leaf() || is_identity(*ft.nodes[node])) continue;
      const auto& members = ft.node_leaves[node];
      for (std::size_t m = 1; m < members.size(); ++m) {
        if (assigned_en(members[m]) != assigned_en(members[0])) {
          valid = false;
          break;
        }
      }
    }
    if (!valid) continue;

    // Drop rule: an unaligned-Arabic leaf rendered "English" is dropped;
    // legal only under a fully-English-assigned ancestor with source
    // content. Its Arabic footprint attaches to that subtree's first
    // English-ordered kept leaf.
    std::vector<std::pair<int, const LeafInfo*>> attach;  // host leaf id, dropped
    for (std::size_t l = 0; l < L && valid; ++l) {
      const LeafInfo& u = ft.leaves[l];
      if (!assigned_en(static_cast<int>(l)) || u.real_en || !u.real_ar) continue;
      int node = ft.leaf_node[l];
      int cover = -1;
      while (node >= 0) {
        bool all_en = true;
        bool any_src = false;
        for (int ml : ft.node_leaves[node]) {
          if (!assigned_en(ml)) all_en = false;
          if (ft.leaves[ml].real_en) any_src = true;
        }
        if (!all_en) break;
        if (any_src) cover = node;  // minimal qualifying ancestor
        if (cover >= 0) break;
        node = ft.parent[node];
      }
      if (cover < 0) {
        valid = false;
        break;
      }
      int host = -1, host_en = kInf;
      for (int ml : ft.node_leaves[cover]) {
        const LeafInfo& cand = ft.leaves[ml];
        if (cand.real_en && cand.en_lo < host_en) {
          host_en = cand.en_lo;
          host = ml;
        }
      }
      attach.emplace_back(host, &u);
    }
    if (!valid) continue;

    std::vector<Item> a_seq, e_seq;
    for (std::size_t l = 0; l < L; ++l) {
      const LeafInfo& info = ft.leaves[l];
      Item item;
      item.leaf = info.node;
      item.ar_lo = info.ar_lo;
      item.ar_hi = info.ar_hi;
      item.en_lo = info.en_lo;
      item.en_hi = info.en_hi;
      if (assigned_en(static_cast<int>(l))) {
        if (!info.real_en) continue;  // dropped unaligned-Arabic leaf
        item.is_en = true;
        for (const auto& [host, dropped] : attach) {
          if (host == static_cast<int>(l)) {
            item.ar_lo = std::min(item.ar_lo, dropped->ar_lo);
            item.ar_hi = std::max(item.ar_hi, dropped->ar_hi);
          }
        }
        e_seq.push_back(item);
      } else {
        if (!info.real_ar) continue;  // src-only leaf rendered empty
        a_seq.push_back(item);
      }
    }
    std::sort(e_seq.begin(), e_seq.end(),
              [](const Item& x, const Item& y) { return x.en_lo < y.en_lo; });
    // a_seq is already in Arabic order (leaf order).

    MergeState ms{a_seq, e_seq, {}, {}, {}, {}, &out};
    ms.prepare();
    std::vector<const Item*> merged;
    ms.dfs(0, 0, 0, -kInf, -kInf, merged);
  }
  return out;
}

}  // namespace csgen::test
