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

#ifndef CSGEN_ALIGNER_HPP_
#define CSGEN_ALIGNER_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "csgen/types.hpp"

namespace csgen {

enum class Symmetrization { forward, reverse, intersection, union_all, grow_diag_final };

const char* symmetrization_name(Symmetrization s);
Symmetrization symmetrization_from_name(const std::string& name);

/// IBM Model 2 with the diagonal reparameterization: target position j of m
/// aligns to source position i of n with probability proportional to
/// (1-p_null) * exp(-tension * |i/n - j/m|), normalized over i, and p_null
/// reserved for the null word.
struct AlignerConfig {
  int iterations = 5;
  double tension = 4.0;
  double p_null = 0.08;
  Symmetrization symmetrization = Symmetrization::grow_diag_final;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

/// Lexical translation table t(tgt | src). Rows sum to 1 within 1e-6 after
/// every M-step; unknown pairs fall back to a floor probability so Viterbi
/// stays total.
class TranslationTable {
 public:
  static constexpr const char* kNullWord = "<NULL>";
  static constexpr double kFloor = 1e-9;

  double prob(const std::string& src, const std::string& tgt) const;
  void set(const std::string& src, const std::string& tgt, double p);

  /// "src tgt prob" lines; rows in lexicographic order for reproducible
  /// dumps.
  void save_tsv(std::ostream& out) const;
  static TranslationTable load_tsv(std::istream& in);

  const std::unordered_map<std::string, std::unordered_map<std::string, double>>& rows()
      const {
    return rows_;
  }

 private:
  std::unordered_map<std::string, std::unordered_map<std::string, double>> rows_;
};

struct TrainResult {
  TranslationTable table;
  std::vector<double> log_likelihood;  // one entry per EM iteration
};

/// Trains t(tgt|src) by EM from uniform initialization. Deterministic
/// given the config and input order. Throws on an empty corpus.
TrainResult train(const std::vector<SentencePair>& pairs, const AlignerConfig& cfg);

/// Per-target-position argmax alignment; the null word produces no link,
/// ties break toward the smaller source index.
AlignmentSet viterbi_align(const TranslationTable& table, const AlignerConfig& cfg,
                           const SentencePair& pair);

/// Combines forward (src->tgt) and reverse (already transposed into the
/// same index space) Viterbi alignments. For every method the result lies
/// between the intersection and the union of the inputs.
AlignmentSet symmetrize(const AlignmentSet& fwd, const AlignmentSet& rev,
                        Symmetrization method, int src_len, int tgt_len);

AlignmentSet transpose(const AlignmentSet& links);

SentencePair swap_sides(const SentencePair& pair);

}  // namespace csgen

#endif  // CSGEN_ALIGNER_HPP_
