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

#include "csgen/aligner.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "csgen/corpus_io.hpp"

namespace csgen {

const char* symmetrization_name(Symmetrization s) {
  switch (s) {
    case Symmetrization::forward: return "forward";
    case Symmetrization::reverse: return "reverse";
    case Symmetrization::intersection: return "intersection";
    case Symmetrization::union_all: return "union";
    case Symmetrization::grow_diag_final: return "grow_diag_final";
  }
  return "?";
}

Symmetrization symmetrization_from_name(const std::string& name) {
  if (name == "forward") return Symmetrization::forward;
  if (name == "reverse") return Symmetrization::reverse;
  if (name == "intersection") return Symmetrization::intersection;
  if (name == "union") return Symmetrization::union_all;
  if (name == "grow_diag_final") return Symmetrization::grow_diag_final;
  throw std::invalid_argument("unknown symmetrization '" + name + "'");
}

void AlignerConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (!(tension > 0)) throw std::invalid_argument("tension must be > 0");
  if (!(p_null >= 0) || !(p_null < 1))
    throw std::invalid_argument("p_null must lie in [0, 1)");
}

double TranslationTable::prob(const std::string& src, const std::string& tgt) const {
  const auto row = rows_.find(src);
  if (row == rows_.end()) return kFloor;
  const auto cell = row->second.find(tgt);
  if (cell == row->second.end()) return kFloor;
  return std::max(cell->second, kFloor);
}

void TranslationTable::set(const std::string& src, const std::string& tgt, double p) {
  rows_[src][tgt] = p;
}

void TranslationTable::save_tsv(std::ostream& out) const {
  std::map<std::string, std::map<std::string, double>> sorted;
  for (const auto& [src, row] : rows_)
    for (const auto& [tgt, p] : row) sorted[src][tgt] = p;
  out.precision(12);
  for (const auto& [src, row] : sorted)
    for (const auto& [tgt, p] : row) out << src << '\t' << tgt << '\t' << p << '\n';
}

TranslationTable TranslationTable::load_tsv(std::istream& in) {
  TranslationTable table;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string src, tgt;
    double p = 0;
    if (!(ss >> src >> tgt >> p)) throw ParseError("malformed t-table line", line_no);
    table.set(src, tgt, p);
  }
  return table;
}

namespace {

// String interner; id 0 is reserved for the null word on the source side.
class Vocab {
 public:
  int id(const std::string& w) {
    auto [it, inserted] = ids_.emplace(w, static_cast<int>(words_.size()));
    if (inserted) words_.push_back(w);
    return it->second;
  }
  const std::string& word(int id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> words_;
};

struct IdPair {
  std::vector<int> src;
  std::vector<int> tgt;
};

// Diagonal prior over source positions 1..n for target position j of m;
// index 0 is the null word with mass p_null.
std::vector<double> diagonal_row(int n, int m, int j, double tension, double p_null) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  double z = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double d = std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m);
    w[i] = std::exp(-tension * d);
    z += w[i];
  }
  for (int i = 1; i <= n; ++i) w[i] = (1.0 - p_null) * w[i] / z;
  w[0] = p_null;
  return w;
}

}  // namespace

TrainResult train(const std::vector<SentencePair>& pairs, const AlignerConfig& cfg) {
  cfg.validate();
  if (pairs.empty()) throw std::invalid_argument("empty corpus");

  Vocab src_vocab, tgt_vocab;
  src_vocab.id(TranslationTable::kNullWord);  // id 0
  std::vector<IdPair> data;
  data.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.src_tokens.empty() || p.tgt_tokens.empty())
      throw std::invalid_argument("empty sentence in corpus");
    IdPair ip;
    for (const auto& t : p.src_tokens) ip.src.push_back(src_vocab.id(t.surface));
    for (const auto& t : p.tgt_tokens) ip.tgt.push_back(tgt_vocab.id(t.surface));
    data.push_back(std::move(ip));
  }

  const double uniform = 1.0 / static_cast<double>(tgt_vocab.size());
  // t[src_id][tgt_id]; empty on iteration 1, where uniform init applies.
  std::vector<std::unordered_map<int, double>> t(src_vocab.size());
  TrainResult result;

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    std::vector<std::unordered_map<int, double>> counts(src_vocab.size());
    double ll = 0.0;
    for (const auto& sp : data) {
      const int n = static_cast<int>(sp.src.size());
      const int m = static_cast<int>(sp.tgt.size());
      for (int j = 1; j <= m; ++j) {
        const int f = sp.tgt[j - 1];
        const auto prior = diagonal_row(n, m, j, cfg.tension, cfg.p_null);
        double denom = 0.0;
        auto tprob = [&](int e) {
          if (iter == 0) return uniform;
          const auto& row = t[e];
          const auto it = row.find(f);
          return it == row.end() ? 0.0 : it->second;
        };
        std::vector<double> joint(static_cast<std::size_t>(n) + 1, 0.0);
        joint[0] = prior[0] * tprob(0);
        denom += joint[0];
        for (int i = 1; i <= n; ++i) {
          joint[i] = prior[i] * tprob(sp.src[i - 1]);
          denom += joint[i];
        }
        ll += std::log(denom);
        counts[0][f] += joint[0] / denom;
        for (int i = 1; i <= n; ++i) counts[sp.src[i - 1]][f] += joint[i] / denom;
      }
    }
    result.log_likelihood.push_back(ll);

    for (std::size_t e = 0; e < counts.size(); ++e) {
      double total = 0.0;
      for (const auto& [f, c] : counts[e]) total += c;
      if (total <= 0.0) continue;
      t[e].clear();
      for (const auto& [f, c] : counts[e]) t[e][f] = c / total;
    }
  }

  for (std::size_t e = 0; e < t.size(); ++e)
    for (const auto& [f, p] : t[e])
      result.table.set(src_vocab.word(static_cast<int>(e)), tgt_vocab.word(f), p);
  return result;
}

AlignmentSet viterbi_align(const TranslationTable& table, const AlignerConfig& cfg,
                           const SentencePair& pair) {
  cfg.validate();
  AlignmentSet links;
  const int n = static_cast<int>(pair.src_tokens.size());
  const int m = static_cast<int>(pair.tgt_tokens.size());
  for (int j = 1; j <= m; ++j) {
    const std::string& f = pair.tgt_tokens[j - 1].surface;
    const auto prior = diagonal_row(n, m, j, cfg.tension, cfg.p_null);
    int best_i = 0;  // null
    double best = prior[0] * table.prob(TranslationTable::kNullWord, f);
    for (int i = 1; i <= n; ++i) {
      const double score = prior[i] * table.prob(pair.src_tokens[i - 1].surface, f);
      if (score > best) {
        best = score;
        best_i = i;
      }
    }
    if (best_i > 0) links.insert(AlignmentLink{best_i - 1, j - 1});
  }
  return links;
}

namespace {

AlignmentSet set_intersection(const AlignmentSet& a, const AlignmentSet& b) {
  AlignmentSet out;
  for (const auto& l : a)
    if (b.count(l)) out.insert(l);
  return out;
}

AlignmentSet set_union(const AlignmentSet& a, const AlignmentSet& b) {
  AlignmentSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

AlignmentSet grow_diag_final(const AlignmentSet& fwd, const AlignmentSet& rev,
                             int src_len, int tgt_len) {
  const AlignmentSet inter = set_intersection(fwd, rev);
  const AlignmentSet uni = set_union(fwd, rev);
  AlignmentSet out = inter;
  std::vector<bool> src_cov(std::max(src_len, 0)), tgt_cov(std::max(tgt_len, 0));
  auto cover = [&](const AlignmentLink& l) {
    if (l.src_index < src_len) src_cov[l.src_index] = true;
    if (l.tgt_index < tgt_len) tgt_cov[l.tgt_index] = true;
  };
  for (const auto& l : out) cover(l);

  static constexpr int kNb[8][2] = {{-1, 0}, {0, -1}, {1, 0},  {0, 1},
                                    {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& l : AlignmentSet(out)) {
      for (const auto& d : kNb) {
        const AlignmentLink cand{l.src_index + d[0], l.tgt_index + d[1]};
        if (cand.src_index < 0 || cand.tgt_index < 0 || cand.src_index >= src_len ||
            cand.tgt_index >= tgt_len)
          continue;
        if (!uni.count(cand) || out.count(cand)) continue;
        if (src_cov[cand.src_index] && tgt_cov[cand.tgt_index]) continue;
        out.insert(cand);
        cover(cand);
        grew = true;
      }
    }
  }
  // Final pass: union links whose source or target word is still uncovered.
  for (const auto& l : uni) {
    if (out.count(l)) continue;
    const bool s = l.src_index < src_len && src_cov[l.src_index];
    const bool t = l.tgt_index < tgt_len && tgt_cov[l.tgt_index];
    if (s && t) continue;
    out.insert(l);
    cover(l);
  }
  return out;
}

}  // namespace

AlignmentSet symmetrize(const AlignmentSet& fwd, const AlignmentSet& rev,
                        Symmetrization method, int src_len, int tgt_len) {
  switch (method) {
    case Symmetrization::forward: return fwd;
    case Symmetrization::reverse: return rev;
    case Symmetrization::intersection: return set_intersection(fwd, rev);
    case Symmetrization::union_all: return set_union(fwd, rev);
    case Symmetrization::grow_diag_final:
      return grow_diag_final(fwd, rev, src_len, tgt_len);
  }
  return {};
}

AlignmentSet transpose(const AlignmentSet& links) {
  AlignmentSet out;
  for (const auto& l : links) out.insert(AlignmentLink{l.tgt_index, l.src_index});
  return out;
}

SentencePair swap_sides(const SentencePair& pair) {
  SentencePair out;
  out.id = pair.id;
  out.src_tokens = pair.tgt_tokens;
  out.tgt_tokens = pair.src_tokens;
  if (pair.alignment) out.alignment = transpose(*pair.alignment);
  return out;
}

}  // namespace csgen
