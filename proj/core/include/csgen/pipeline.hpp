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

#ifndef CSGEN_PIPELINE_HPP_
#define CSGEN_PIPELINE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "csgen/aligner.hpp"
#include "csgen/generator.hpp"
#include "csgen/ngram_lm.hpp"
#include "csgen/sampler.hpp"

namespace csgen {

/// Full-run configuration. Stages communicate through files under
/// out_dir, so any stage can be replaced by an external tool that honors
/// the same formats.
struct PipelineConfig {
  std::string corpus;  // "src<TAB>tgt" file; alternatively src_file+tgt_file
  std::string src_file;
  std::string tgt_file;
  std::string trees;  // one bracketed tree per line, line-aligned
  std::string out_dir;
  std::uint64_t seed = 0;

  bool segment_enabled = true;
  std::string clitics_file;

  AlignerConfig aligner;
  GeneratorConfig generator;
  SamplerConfig sampler;
  std::string spf_target_file;

  UnkPolicy lm_policy = UnkPolicy::map_to_unk;
  std::vector<std::string> lm_train;     // monolingual corpora
  std::vector<std::string> lm_testsets;  // evaluation corpora

  /// Strict parse: unknown keys are validation errors. Throws ParseError.
  static PipelineConfig from_json(const std::string& text);
  static PipelineConfig from_json_file(const std::string& path);

  /// Canonical serialization used for the manifest's config hash.
  std::string canonical_json() const;

  /// Checks referenced paths exist and numbers are sane; throws
  /// std::invalid_argument. Runs before any stage.
  void validate() const;
};

// --- stage drivers, shared between `csgen <stage>` and `csgen pipeline` ---

struct SegmentStats {
  std::size_t sentences = 0;
  std::size_t split_tokens = 0;
};
SegmentStats run_segment(const std::string& corpus, const std::string& src_file,
                         const std::string& tgt_file, const std::string& clitics_file,
                         const std::string& out_tsv);

struct AlignStats {
  std::vector<double> forward_ll;
  std::vector<double> reverse_ll;
};
AlignStats run_align(const std::string& corpus_tsv, const AlignerConfig& cfg,
                     const std::string& out_alignments, const std::string& out_ttable,
                     std::ostream& log);

struct ProjectStats {
  std::size_t sentences = 0;
  std::size_t unprojectable = 0;
};
ProjectStats run_project(const std::string& corpus_tsv, const std::string& trees,
                         const std::string& alignments, const std::string& out_bitrees);

struct GenerateStats {
  std::size_t sentences_in = 0;
  std::size_t unprojectable = 0;
  std::size_t candidates_out = 0;
  std::size_t truncated_sentences = 0;
};
GenerateStats run_generate(const std::string& corpus_tsv, const std::string& trees,
                           const std::string& alignments, const GeneratorConfig& cfg,
                           const std::string& out_candidates,
                           const std::string& out_stats_json);

struct SampleStats {
  std::size_t pool = 0;
  std::size_t kept_after_constraints = 0;
  std::size_t delivered = 0;
  std::size_t shortfall = 0;
  FilterStats filter;
};
SampleStats run_sample(const std::string& candidates_path, const SamplerConfig& cfg,
                       const std::string& out_sampled, const std::string& out_manifest);

void run_lm_train(const std::vector<std::string>& train_paths, const std::string& out_arpa);

EvalReport run_lm_eval(const NGramModel& model, const std::string& testset_path,
                       UnkPolicy policy);

std::string report_to_json(const EvalReport& report);
std::string report_to_json(const EvalReport& report, const EvalReport& baseline);
EvalReport report_from_json(const std::string& text);

/// segment -> align -> project -> generate -> sample -> lm evaluation,
/// writing numbered artifacts plus manifest.json under cfg.out_dir.
/// Reruns with identical config and seed are byte-identical.
void run_pipeline(const PipelineConfig& cfg, std::ostream& log);

}  // namespace csgen

#endif  // CSGEN_PIPELINE_HPP_
