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

#ifndef CSGEN_SAMPLER_HPP_
#define CSGEN_SAMPLER_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "csgen/generator.hpp"

namespace csgen {

/// Target distribution over per-sentence switch-point counts. An optional
/// overflow bucket ("4+") absorbs all larger counts.
struct SpfTarget {
  std::map<int, double> exact;
  int overflow_min = -1;  // -1: no overflow bucket
  double overflow_prob = 0.0;

  static SpfTarget defaults();  // {1: 0.45, 2: 0.30, 3: 0.15, 4+: 0.10}

  /// "count weight" lines; count may be "N+" for the overflow bucket.
  static SpfTarget load(std::istream& in);

  void validate() const;  // probabilities sum to 1 within 1e-6, all >= 0

  /// Bucket key for a switch-point count, or -1 when the count has no
  /// bucket. The overflow bucket uses overflow_min as its key.
  int bucket_of(int switch_points) const;

  std::vector<std::pair<int, double>> buckets() const;  // key -> prob, ascending
};

enum class SampleMethod { random, spf };

struct SamplerConfig {
  SampleMethod method = SampleMethod::random;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  double max_en_fraction = 0.45;
  bool require_ar_initial = true;
  SpfTarget spf_target = SpfTarget::defaults();

  void validate() const;
};

struct FilterStats {
  std::size_t dropped_not_ar_initial = 0;
  std::size_t dropped_en_fraction = 0;
  std::size_t dropped_monolingual = 0;
};

/// Keeps candidates that start with an Arabic token (when required), whose
/// English token fraction does not exceed the cap, and that contain at
/// least one switch point.
std::vector<CSCandidate> filter_constraints(const std::vector<CSCandidate>& candidates,
                                            const SamplerConfig& cfg,
                                            FilterStats* stats = nullptr);

double en_fraction(const CSCandidate& c);

struct SampledItem {
  CSCandidate candidate;
  int bucket = -1;  // switch-point bucket for spf sampling, -1 for random
};

struct SampleResult {
  std::vector<SampledItem> items;
  std::size_t shortfall = 0;  // requested minus delivered
};

/// Uniform sample without replacement of size min(k, n); output preserves
/// input order. Deterministic in cfg.seed.
SampleResult sample_random(const std::vector<CSCandidate>& candidates,
                           const SamplerConfig& cfg);

/// Stratified sampling toward cfg.spf_target: per-bucket quotas by largest
/// remainder, seeded uniform choice within buckets, shortfall redistributed
/// proportionally to buckets that still have supply.
SampleResult sample_spf(const std::vector<CSCandidate>& candidates,
                        const SamplerConfig& cfg);

}  // namespace csgen

#endif  // CSGEN_SAMPLER_HPP_
