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

#ifndef CSGEN_NGRAM_LM_HPP_
#define CSGEN_NGRAM_LM_HPP_

#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace csgen {

enum class UnkPolicy { map_to_unk, exclude };

/// Interpolated Kneser-Ney trigram model. One absolute discount per order,
/// D = n1 / (n1 + 2*n2) from the counts-of-counts of that order (falling
/// back to 0.5 with a warning when degenerate); lower orders use
/// continuation counts; the unigram level interpolates with the uniform
/// distribution over the vocabulary including <unk>.
class NGramModel {
 public:
  static constexpr const char* kUnk = "<unk>";
  static constexpr const char* kBos = "<s>";
  static constexpr const char* kEos = "</s>";

  static NGramModel train(const std::vector<std::vector<std::string>>& corpus);

  /// Sanity model: p(w|h) = 1/|vocab| for every history.
  static NGramModel uniform(const std::set<std::string>& vocab);

  /// Interpolated probability of `word` given up to two history words
  /// (earlier first). Out-of-vocabulary history words are mapped to <unk>.
  double prob(const std::vector<std::string>& history, const std::string& word) const;

  bool in_vocab(const std::string& w) const { return vocab_.count(w) != 0; }
  const std::set<std::string>& vocab() const { return vocab_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  double discount(int order) const;

  /// Standard ARPA text dump (log10 probabilities and backoff weights).
  void save_arpa(std::ostream& out) const;
  static NGramModel load_arpa(std::istream& in);

 private:
  using Counts = std::unordered_map<std::string, double>;

  static std::string key(const std::string& a, const std::string& b);
  static std::string key(const std::string& a, const std::string& b, const std::string& c);

  double p1(const std::string& w) const;
  double p2(const std::string& v, const std::string& w) const;
  double p3(const std::string& u, const std::string& v, const std::string& w) const;
  double arpa_prob(const std::vector<std::string>& history, const std::string& word) const;

  std::set<std::string> vocab_;
  bool uniform_only_ = false;
  bool arpa_mode_ = false;

  // training-mode tables
  Counts c3_, c3_hist_;
  Counts n1p3_;                 // distinct continuations of a trigram history
  Counts cc2_, cc2_hist_, n1p2_;
  Counts cc1_;
  double cc1_total_ = 0;
  double cc1_types_ = 0;
  double d3_ = 0.5, d2_ = 0.5, d1_ = 0.5;
  std::vector<std::string> warnings_;

  // arpa-mode tables: log10 prob and backoff weight per n-gram
  struct Entry {
    double logp = 0;
    double bow = 0;
  };
  std::unordered_map<std::string, Entry> arpa1_, arpa2_, arpa3_;
};

struct EvalReport {
  double ppl = 0;
  long oov_count = 0;
  long total_tokens = 0;
  double log_prob_sum = 0;
  std::string testset_id;
  UnkPolicy policy = UnkPolicy::map_to_unk;
};

/// Scores every real token (sentence boundaries condition histories but
/// are not prediction events). Under map_to_unk OOV tokens score as <unk>
/// and count in N; under exclude they are skipped in both the sum and N.
/// Throws when nothing is scoreable.
EvalReport evaluate(const NGramModel& model,
                    const std::vector<std::vector<std::string>>& testset,
                    UnkPolicy policy, const std::string& testset_id = "");

struct Comparison {
  double ppl_relative_gain = 0;  // (base - aug) / base
  long oov_delta = 0;            // aug - base
};

/// Throws std::invalid_argument when the reports' testsets or policies
/// differ.
Comparison compare_runs(const EvalReport& baseline, const EvalReport& augmented);

}  // namespace csgen

#endif  // CSGEN_NGRAM_LM_HPP_
