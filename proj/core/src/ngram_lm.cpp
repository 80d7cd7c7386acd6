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

#include "csgen/ngram_lm.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "csgen/corpus_io.hpp"

namespace csgen {

namespace {
constexpr char kSep = '\x1f';

double counts_of_counts_discount(const std::unordered_map<std::string, double>& table,
                                 const std::string& order_name,
                                 std::vector<std::string>& warnings) {
  long n1 = 0, n2 = 0;
  for (const auto& [k, v] : table) {
    const long c = std::lround(v);
    if (c == 1) ++n1;
    if (c == 2) ++n2;
  }
  if (n1 == 0 || n2 == 0) {
    warnings.push_back("degenerate counts-of-counts at " + order_name +
                       "; falling back to D = 0.5");
    return 0.5;
  }
  return static_cast<double>(n1) / (static_cast<double>(n1) + 2.0 * n2);
}

}  // namespace

std::string NGramModel::key(const std::string& a, const std::string& b) {
  std::string k = a;
  k += kSep;
  k += b;
  return k;
}

std::string NGramModel::key(const std::string& a, const std::string& b,
                            const std::string& c) {
  std::string k = a;
  k += kSep;
  k += b;
  k += kSep;
  k += c;
  return k;
}

NGramModel NGramModel::train(const std::vector<std::vector<std::string>>& corpus) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");

  NGramModel m;
  Counts c2;  // raw bigram counts, feeding the continuation tables
  for (const auto& sentence : corpus) {
    for (const auto& w : sentence) m.vocab_.insert(w);
    std::vector<std::string> padded;
    padded.reserve(sentence.size() + 3);
    padded.push_back(kBos);
    padded.push_back(kBos);
    padded.insert(padded.end(), sentence.begin(), sentence.end());
    padded.push_back(kEos);
    // Count windows that do not end in <s>.
    for (std::size_t i = 2; i < padded.size(); ++i) {
      m.c3_[key(padded[i - 2], padded[i - 1], padded[i])] += 1;
      c2[key(padded[i - 1], padded[i])] += 1;
    }
  }
  m.vocab_.insert(kUnk);
  m.vocab_.insert(kBos);
  m.vocab_.insert(kEos);

  for (const auto& [k, c] : m.c3_) {
    const auto first = k.find(kSep);
    const auto second = k.find(kSep, first + 1);
    const std::string hist = k.substr(0, second);
    m.c3_hist_[hist] += c;
    m.n1p3_[hist] += 1;
    // continuation: distinct left contexts of the (v, w) suffix
    m.cc2_[k.substr(first + 1)] += 1;
  }
  for (const auto& [k, c] : m.cc2_) {
    const auto sep = k.find(kSep);
    const std::string v = k.substr(0, sep);
    m.cc2_hist_[v] += c;
    m.n1p2_[v] += 1;
  }
  // Unigram continuation counts: distinct left contexts per word.
  for (const auto& [k, c] : c2) m.cc1_[k.substr(k.find(kSep) + 1)] += 1;
  for (const auto& [w, c] : m.cc1_) {
    m.cc1_total_ += c;
    m.cc1_types_ += 1;
  }

  m.d3_ = counts_of_counts_discount(m.c3_, "order 3", m.warnings_);
  m.d2_ = counts_of_counts_discount(m.cc2_, "order 2", m.warnings_);
  m.d1_ = counts_of_counts_discount(m.cc1_, "order 1", m.warnings_);
  return m;
}

NGramModel NGramModel::uniform(const std::set<std::string>& vocab) {
  NGramModel m;
  m.vocab_ = vocab;
  m.vocab_.insert(kUnk);
  m.uniform_only_ = true;
  return m;
}

double NGramModel::discount(int order) const {
  switch (order) {
    case 1: return d1_;
    case 2: return d2_;
    default: return d3_;
  }
}

double NGramModel::p1(const std::string& w) const {
  const double uniform = 1.0 / static_cast<double>(vocab_.size());
  if (cc1_total_ <= 0) return uniform;
  const auto it = cc1_.find(w);
  const double cc = it == cc1_.end() ? 0.0 : it->second;
  const double gamma = d1_ * cc1_types_ / cc1_total_;
  return std::max(cc - d1_, 0.0) / cc1_total_ + gamma * uniform;
}

double NGramModel::p2(const std::string& v, const std::string& w) const {
  const auto hist = cc2_hist_.find(v);
  if (hist == cc2_hist_.end() || hist->second <= 0) return p1(w);
  const auto it = cc2_.find(key(v, w));
  const double cc = it == cc2_.end() ? 0.0 : it->second;
  const double types = n1p2_.at(v);
  const double gamma = d2_ * types / hist->second;
  return std::max(cc - d2_, 0.0) / hist->second + gamma * p1(w);
}

double NGramModel::p3(const std::string& u, const std::string& v,
                      const std::string& w) const {
  const auto hist = c3_hist_.find(key(u, v));
  if (hist == c3_hist_.end() || hist->second <= 0) return p2(v, w);
  const auto it = c3_.find(key(u, v, w));
  const double c = it == c3_.end() ? 0.0 : it->second;
  const double types = n1p3_.at(key(u, v));
  const double gamma = d3_ * types / hist->second;
  return std::max(c - d3_, 0.0) / hist->second + gamma * p2(v, w);
}

double NGramModel::prob(const std::vector<std::string>& history,
                        const std::string& word) const {
  if (uniform_only_) return 1.0 / static_cast<double>(vocab_.size());

  const std::string w = in_vocab(word) ? word : kUnk;
  std::vector<std::string> h;
  for (const auto& x : history) h.push_back(in_vocab(x) ? x : kUnk);

  if (arpa_mode_) return arpa_prob(h, w);

  if (h.size() >= 2) return p3(h[h.size() - 2], h[h.size() - 1], w);
  if (h.size() == 1) return p2(h[0], w);
  return p1(w);
}

double NGramModel::arpa_prob(const std::vector<std::string>& h,
                             const std::string& w) const {
  auto uni = [&](const std::string& x) {
    const auto it = arpa1_.find(x);
    if (it != arpa1_.end()) return std::pow(10.0, it->second.logp);
    const auto unk = arpa1_.find(kUnk);
    return unk == arpa1_.end() ? 0.0 : std::pow(10.0, unk->second.logp);
  };
  auto bi = [&](const std::string& v, const std::string& x) {
    const auto it = arpa2_.find(key(v, x));
    if (it != arpa2_.end()) return std::pow(10.0, it->second.logp);
    const auto hist = arpa1_.find(v);
    const double bow = hist == arpa1_.end() ? 1.0 : std::pow(10.0, hist->second.bow);
    return bow * uni(x);
  };
  auto tri = [&](const std::string& u, const std::string& v, const std::string& x) {
    const auto it = arpa3_.find(key(u, v, x));
    if (it != arpa3_.end()) return std::pow(10.0, it->second.logp);
    const auto hist = arpa2_.find(key(u, v));
    const double bow = hist == arpa2_.end() ? 1.0 : std::pow(10.0, hist->second.bow);
    return bow * bi(v, x);
  };
  if (h.size() >= 2) return tri(h[h.size() - 2], h[h.size() - 1], w);
  if (h.size() == 1) return bi(h[0], w);
  return uni(w);
}

void NGramModel::save_arpa(std::ostream& out) const {
  if (uniform_only_ || arpa_mode_)
    throw std::logic_error("save_arpa requires a trained model");

  auto log10p = [](double p) { return std::log10(std::max(p, 1e-99)); };

  // Unigram entries for the whole vocabulary.
  std::map<std::string, Entry> uni;
  for (const auto& w : vocab_) {
    Entry e;
    e.logp = log10p(p1(w));
    const auto hist = cc2_hist_.find(w);
    if (hist != cc2_hist_.end() && hist->second > 0)
      e.bow = log10p(d2_ * n1p2_.at(w) / hist->second);
    uni[w] = e;
  }

  // Bigram entries: observed continuations plus every trigram history, so
  // backoff weights always have somewhere to live.
  std::map<std::string, Entry> bi;
  for (const auto& [k, cc] : cc2_) {
    const auto sep = k.find(kSep);
    Entry e;
    e.logp = log10p(p2(k.substr(0, sep), k.substr(sep + 1)));
    bi[k] = e;
  }
  for (const auto& [hist, total] : c3_hist_) {
    auto& e = bi[hist];
    const auto sep = hist.find(kSep);
    e.logp = log10p(p2(hist.substr(0, sep), hist.substr(sep + 1)));
    e.bow = log10p(d3_ * n1p3_.at(hist) / total);
  }

  std::map<std::string, Entry> tri;
  for (const auto& [k, c] : c3_) {
    const auto first = k.find(kSep);
    const auto second = k.find(kSep, first + 1);
    Entry e;
    e.logp = log10p(
        p3(k.substr(0, first), k.substr(first + 1, second - first - 1), k.substr(second + 1)));
    tri[k] = e;
  }

  auto words = [](const std::string& k) {
    std::string s = k;
    for (auto& c : s)
      if (c == kSep) c = ' ';
    return s;
  };

  out << "\\data\\\n";
  out << "ngram 1=" << uni.size() << "\n";
  out << "ngram 2=" << bi.size() << "\n";
  out << "ngram 3=" << tri.size() << "\n\n";
  out << std::setprecision(12);
  out << "\\1-grams:\n";
  for (const auto& [w, e] : uni) out << e.logp << '\t' << w << '\t' << e.bow << '\n';
  out << "\n\\2-grams:\n";
  for (const auto& [k, e] : bi) out << e.logp << '\t' << words(k) << '\t' << e.bow << '\n';
  out << "\n\\3-grams:\n";
  for (const auto& [k, e] : tri) out << e.logp << '\t' << words(k) << '\n';
  out << "\n\\end\\\n";
}

NGramModel NGramModel::load_arpa(std::istream& in) {
  NGramModel m;
  m.arpa_mode_ = true;
  std::string line;
  int section = 0;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "\\data\\") continue;
    if (toks[0] == "\\end\\") break;
    if (toks[0] == "\\1-grams:") {
      section = 1;
      continue;
    }
    if (toks[0] == "\\2-grams:") {
      section = 2;
      continue;
    }
    if (toks[0] == "\\3-grams:") {
      section = 3;
      continue;
    }
    if (toks[0].rfind("ngram", 0) == 0) continue;
    if (section == 0) continue;
    if (static_cast<int>(toks.size()) < section + 1)
      throw ParseError("malformed ARPA entry", line_no);
    Entry e;
    try {
      e.logp = std::stod(toks[0]);
      if (static_cast<int>(toks.size()) > section + 1)
        e.bow = std::stod(toks[section + 1]);
    } catch (const std::exception&) {
      throw ParseError("malformed ARPA entry", line_no);
    }
    if (section == 1) {
      m.arpa1_[toks[1]] = e;
      m.vocab_.insert(toks[1]);
    } else if (section == 2) {
      m.arpa2_[key(toks[1], toks[2])] = e;
    } else {
      m.arpa3_[key(toks[1], toks[2], toks[3])] = e;
    }
  }
  if (m.arpa1_.empty()) throw ParseError("ARPA file has no unigrams");
  return m;
}

EvalReport evaluate(const NGramModel& model,
                    const std::vector<std::vector<std::string>>& testset,
                    UnkPolicy policy, const std::string& testset_id) {
  if (testset.empty()) throw std::invalid_argument("empty testset");
  EvalReport report;
  report.testset_id = testset_id;
  report.policy = policy;

  long scored = 0;
  for (const auto& sentence : testset) {
    std::vector<std::string> hist = {NGramModel::kBos, NGramModel::kBos};
    for (const auto& w : sentence) {
      const bool oov = !model.in_vocab(w);
      if (oov) ++report.oov_count;
      if (!oov || policy == UnkPolicy::map_to_unk) {
        report.log_prob_sum += std::log(model.prob(hist, w));
        ++scored;
      }
      hist[0] = hist[1];
      hist[1] = oov ? NGramModel::kUnk : w;
    }
  }
  if (scored == 0) throw std::invalid_argument("no scoreable tokens");
  report.total_tokens = scored;
  report.ppl = std::exp(-report.log_prob_sum / static_cast<double>(scored));
  return report;
}

Comparison compare_runs(const EvalReport& baseline, const EvalReport& augmented) {
  if (baseline.testset_id != augmented.testset_id)
    throw std::invalid_argument("mismatched testsets: '" + baseline.testset_id +
                                "' vs '" + augmented.testset_id + "'");
  if (baseline.policy != augmented.policy)
    throw std::invalid_argument("mismatched unk policies");
  Comparison c;
  c.ppl_relative_gain = (baseline.ppl - augmented.ppl) / baseline.ppl;
  c.oov_delta = augmented.oov_count - baseline.oov_count;
  return c;
}

}  // namespace csgen
