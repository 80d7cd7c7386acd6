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

#include "csgen/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <stdexcept>

#include "csgen/corpus_io.hpp"
#include "csgen/rng.hpp"

namespace csgen {

SpfTarget SpfTarget::defaults() {
  SpfTarget t;
  t.exact = {{1, 0.45}, {2, 0.30}, {3, 0.15}};
  t.overflow_min = 4;
  t.overflow_prob = 0.10;
  return t;
}

SpfTarget SpfTarget::load(std::istream& in) {
  SpfTarget t;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 2) throw ParseError("expected 'count weight'", line_no);
    double w = 0;
    try {
      w = std::stod(toks[1]);
    } catch (const std::exception&) {
      throw ParseError("bad weight '" + toks[1] + "'", line_no);
    }
    std::string key = toks[0];
    const bool overflow = !key.empty() && key.back() == '+';
    if (overflow) key.pop_back();
    int count = 0;
    try {
      count = std::stoi(key);
    } catch (const std::exception&) {
      throw ParseError("bad count '" + toks[0] + "'", line_no);
    }
    if (overflow) {
      t.overflow_min = count;
      t.overflow_prob = w;
    } else {
      t.exact[count] = w;
    }
  }
  return t;
}

void SpfTarget::validate() const {
  double sum = overflow_min >= 0 ? overflow_prob : 0.0;
  if (overflow_min >= 0 && overflow_prob < 0)
    throw std::invalid_argument("spf target weights must be non-negative");
  for (const auto& [count, p] : exact) {
    if (p < 0) throw std::invalid_argument("spf target weights must be non-negative");
    if (count < 0) throw std::invalid_argument("spf target counts must be non-negative");
    if (overflow_min >= 0 && count >= overflow_min)
      throw std::invalid_argument("spf target count overlaps overflow bucket");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-6)
    throw std::invalid_argument("spf target weights must sum to 1");
}

int SpfTarget::bucket_of(int switch_points) const {
  if (exact.count(switch_points)) return switch_points;
  if (overflow_min >= 0 && switch_points >= overflow_min) return overflow_min;
  return -1;
}

std::vector<std::pair<int, double>> SpfTarget::buckets() const {
  std::vector<std::pair<int, double>> out(exact.begin(), exact.end());
  if (overflow_min >= 0) out.emplace_back(overflow_min, overflow_prob);
  std::sort(out.begin(), out.end());
  return out;
}

void SamplerConfig::validate() const {
  if (!(max_en_fraction > 0) || !(max_en_fraction < 1))
    throw std::invalid_argument("max_en_fraction must lie in (0, 1)");
  if (method == SampleMethod::spf) spf_target.validate();
}

double en_fraction(const CSCandidate& c) {
  if (c.tokens.empty()) return 0.0;
  std::size_t en = 0;
  for (const auto& t : c.tokens)
    if (t.lang == Lang::EN) ++en;
  return static_cast<double>(en) / static_cast<double>(c.tokens.size());
}

std::vector<CSCandidate> filter_constraints(const std::vector<CSCandidate>& candidates,
                                            const SamplerConfig& cfg,
                                            FilterStats* stats) {
  std::vector<CSCandidate> out;
  for (const auto& c : candidates) {
    if (c.tokens.empty()) continue;
    if (cfg.require_ar_initial && c.tokens.front().lang != Lang::AR) {
      if (stats) ++stats->dropped_not_ar_initial;
      continue;
    }
    if (en_fraction(c) > cfg.max_en_fraction) {
      if (stats) ++stats->dropped_en_fraction;
      continue;
    }
    if (count_switch_points(c.tokens) == 0) {
      if (stats) ++stats->dropped_monolingual;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

SampleResult sample_random(const std::vector<CSCandidate>& candidates,
                           const SamplerConfig& cfg) {
  cfg.validate();
  SampleResult result;
  const std::size_t n = candidates.size();
  const std::size_t take = std::min(cfg.k, n);
  result.shortfall = cfg.k - take;
  if (take == n) {
    for (const auto& c : candidates) result.items.push_back(SampledItem{c, -1});
    return result;
  }
  std::mt19937_64 rng(cfg.seed);
  auto chosen = sample_indices(rng, n, take);
  std::sort(chosen.begin(), chosen.end());
  for (auto idx : chosen) result.items.push_back(SampledItem{candidates[idx], -1});
  return result;
}

SampleResult sample_spf(const std::vector<CSCandidate>& candidates,
                        const SamplerConfig& cfg) {
  cfg.validate();
  SampleResult result;

  const auto buckets = cfg.spf_target.buckets();
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const int b = cfg.spf_target.bucket_of(candidates[i].switch_points);
    if (b >= 0) members[b].push_back(i);
  }

  // Largest-remainder apportionment of k over the target weights.
  std::vector<std::size_t> quota(buckets.size(), 0);
  {
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t b = 0; b < buckets.size(); ++b) {
      const double share = static_cast<double>(cfg.k) * buckets[b].second;
      quota[b] = static_cast<std::size_t>(std::floor(share));
      assigned += quota[b];
      remainders.emplace_back(-(share - std::floor(share)), b);
    }
    std::sort(remainders.begin(), remainders.end());
    for (std::size_t r = 0; assigned < cfg.k && r < remainders.size(); ++r, ++assigned)
      ++quota[remainders[r].second];
  }

  // Per-bucket seeded shuffle; taking a prefix realizes both the base
  // quota and any later redistribution without re-randomizing.
  std::mt19937_64 rng(cfg.seed);
  std::map<int, std::vector<std::size_t>> shuffled;
  for (const auto& [key, prob] : buckets) {
    auto it = members.find(key);
    if (it == members.end()) continue;
    auto order = sample_indices(rng, it->second.size(), it->second.size());
    std::vector<std::size_t> shuf;
    shuf.reserve(order.size());
    for (auto o : order) shuf.push_back(it->second[o]);
    shuffled[key] = std::move(shuf);
  }

  std::vector<std::size_t> taken(buckets.size(), 0);
  auto supply = [&](std::size_t b) -> std::size_t {
    auto it = shuffled.find(buckets[b].first);
    return it == shuffled.end() ? 0 : it->second.size();
  };

  std::size_t total = 0;
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    taken[b] = std::min(quota[b], supply(b));
    total += taken[b];
  }

  // Redistribute the shortfall proportionally to buckets with spare
  // supply until k is reached or the pool is exhausted.
  while (total < cfg.k) {
    double spare_weight = 0;
    for (std::size_t b = 0; b < buckets.size(); ++b)
      if (taken[b] < supply(b)) spare_weight += buckets[b].second;
    if (spare_weight <= 0) break;
    const std::size_t missing = cfg.k - total;
    std::size_t progress = 0;
    for (std::size_t b = 0; b < buckets.size() && total < cfg.k; ++b) {
      if (taken[b] >= supply(b)) continue;
      std::size_t extra = static_cast<std::size_t>(
          std::ceil(static_cast<double>(missing) * buckets[b].second / spare_weight));
      extra = std::min({extra, supply(b) - taken[b], cfg.k - total});
      taken[b] += extra;
      total += extra;
      progress += extra;
    }
    if (progress == 0) {
      // All spare buckets rounded to zero; take one from the first.
      for (std::size_t b = 0; b < buckets.size() && total < cfg.k; ++b) {
        if (taken[b] < supply(b)) {
          ++taken[b];
          ++total;
          break;
        }
      }
      if (total == cfg.k) break;
    }
  }
  result.shortfall = cfg.k - total;

  for (std::size_t b = 0; b < buckets.size(); ++b) {
    if (taken[b] == 0) continue;
    const int key = buckets[b].first;
    std::vector<std::size_t> chosen(shuffled[key].begin(),
                                    shuffled[key].begin() + taken[b]);
    std::sort(chosen.begin(), chosen.end());
    for (auto idx : chosen) result.items.push_back(SampledItem{candidates[idx], key});
  }
  return result;
}

}  // namespace csgen
