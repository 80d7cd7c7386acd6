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

#include "csgen/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "csgen/corpus_io.hpp"
#include "csgen/projector.hpp"
#include "csgen/rng.hpp"
#include "csgen/segmenter.hpp"

namespace csgen {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw std::runtime_error("write failure: " + path);
}

std::vector<SentencePair> load_parallel(const std::string& corpus,
                                        const std::string& src_file,
                                        const std::string& tgt_file) {
  if (!corpus.empty()) {
    auto in = open_in(corpus);
    return read_parallel(in);
  }
  auto src = open_in(src_file);
  auto tgt = open_in(tgt_file);
  return read_parallel_files(src, tgt);
}

CliticLexicon load_clitics(const std::string& path) {
  if (path.empty()) return CliticLexicon::defaults();
  auto in = open_in(path);
  return CliticLexicon::load(in);
}

const char* policy_name(UnkPolicy p) {
  return p == UnkPolicy::map_to_unk ? "map_to_unk" : "exclude";
}

UnkPolicy policy_from_name(const std::string& s) {
  if (s == "map_to_unk") return UnkPolicy::map_to_unk;
  if (s == "exclude") return UnkPolicy::exclude;
  throw std::invalid_argument("unknown unk policy '" + s + "'");
}

void check_keys(const ordered_json& obj, const std::vector<std::string>& allowed,
                const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const auto& a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ParseError("unknown config key '" + context + key + "'");
  }
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, {"corpus", "src_file", "tgt_file", "trees", "out_dir", "seed",
                 "segmenter", "aligner", "generator", "sampler", "lm"},
             "");
  PipelineConfig cfg;
  cfg.corpus = j.value("corpus", "");
  cfg.src_file = j.value("src_file", "");
  cfg.tgt_file = j.value("tgt_file", "");
  cfg.trees = j.value("trees", "");
  cfg.out_dir = j.value("out_dir", "");
  cfg.seed = j.value("seed", 0ull);

  if (j.contains("segmenter")) {
    const auto& s = j["segmenter"];
    check_keys(s, {"enabled", "clitics"}, "segmenter.");
    cfg.segment_enabled = s.value("enabled", true);
    cfg.clitics_file = s.value("clitics", "");
  }
  if (j.contains("aligner")) {
    const auto& a = j["aligner"];
    check_keys(a, {"iterations", "tension", "p_null", "symmetrization"}, "aligner.");
    cfg.aligner.iterations = a.value("iterations", 5);
    cfg.aligner.tension = a.value("tension", 4.0);
    cfg.aligner.p_null = a.value("p_null", 0.08);
    cfg.aligner.symmetrization =
        symmetrization_from_name(a.value("symmetrization", "grow_diag_final"));
  }
  if (j.contains("generator")) {
    const auto& g = j["generator"];
    check_keys(g, {"max_candidates_per_sentence", "dedup"}, "generator.");
    cfg.generator.max_candidates_per_sentence =
        g.value("max_candidates_per_sentence", 10000ull);
    cfg.generator.dedup = g.value("dedup", true);
  }
  if (j.contains("sampler")) {
    const auto& s = j["sampler"];
    check_keys(s, {"method", "k", "max_en_fraction", "require_ar_initial", "spf_target"},
               "sampler.");
    const std::string method = s.value("method", "random");
    if (method == "random") {
      cfg.sampler.method = SampleMethod::random;
    } else if (method == "spf") {
      cfg.sampler.method = SampleMethod::spf;
    } else {
      throw ParseError("unknown sampler method '" + method + "'");
    }
    cfg.sampler.k = s.value("k", 0ull);
    cfg.sampler.max_en_fraction = s.value("max_en_fraction", 0.45);
    cfg.sampler.require_ar_initial = s.value("require_ar_initial", true);
    cfg.spf_target_file = s.value("spf_target", "");
  }
  if (j.contains("lm")) {
    const auto& l = j["lm"];
    check_keys(l, {"policy", "train", "testsets"}, "lm.");
    cfg.lm_policy = policy_from_name(l.value("policy", "map_to_unk"));
    if (l.contains("train"))
      cfg.lm_train = l["train"].get<std::vector<std::string>>();
    if (l.contains("testsets"))
      cfg.lm_testsets = l["testsets"].get<std::vector<std::string>>();
  }
  cfg.aligner.seed = cfg.seed;
  cfg.sampler.seed = cfg.seed;
  return cfg;
}

PipelineConfig PipelineConfig::from_json_file(const std::string& path) {
  auto in = open_in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string PipelineConfig::canonical_json() const {
  ordered_json j;
  j["corpus"] = corpus;
  j["src_file"] = src_file;
  j["tgt_file"] = tgt_file;
  j["trees"] = trees;
  j["out_dir"] = out_dir;
  j["seed"] = seed;
  j["segmenter"] = {{"enabled", segment_enabled}, {"clitics", clitics_file}};
  j["aligner"] = {{"iterations", aligner.iterations},
                  {"tension", aligner.tension},
                  {"p_null", aligner.p_null},
                  {"symmetrization", symmetrization_name(aligner.symmetrization)}};
  j["generator"] = {{"max_candidates_per_sentence", generator.max_candidates_per_sentence},
                    {"dedup", generator.dedup}};
  j["sampler"] = {{"method", sampler.method == SampleMethod::spf ? "spf" : "random"},
                  {"k", sampler.k},
                  {"max_en_fraction", sampler.max_en_fraction},
                  {"require_ar_initial", sampler.require_ar_initial},
                  {"spf_target", spf_target_file}};
  j["lm"] = {{"policy", policy_name(lm_policy)}, {"train", lm_train},
             {"testsets", lm_testsets}};
  return j.dump(2);
}

void PipelineConfig::validate() const {
  if (corpus.empty() && (src_file.empty() || tgt_file.empty()))
    throw std::invalid_argument("config needs 'corpus' or both 'src_file' and 'tgt_file'");
  if (out_dir.empty()) throw std::invalid_argument("config needs 'out_dir'");
  if (trees.empty()) throw std::invalid_argument("config needs 'trees'");
  auto must_exist = [](const std::string& path) {
    if (!path.empty() && !fs::exists(path))
      throw std::invalid_argument("missing input: " + path);
  };
  must_exist(corpus);
  must_exist(src_file);
  must_exist(tgt_file);
  must_exist(trees);
  must_exist(clitics_file);
  must_exist(spf_target_file);
  for (const auto& p : lm_train) must_exist(p);
  for (const auto& p : lm_testsets) must_exist(p);
  aligner.validate();
  generator.validate();
  sampler.validate();
}

SegmentStats run_segment(const std::string& corpus, const std::string& src_file,
                         const std::string& tgt_file, const std::string& clitics_file,
                         const std::string& out_tsv) {
  const auto lexicon = load_clitics(clitics_file);
  auto pairs = load_parallel(corpus, src_file, tgt_file);
  SegmentStats stats;
  auto out = open_out(out_tsv);
  for (auto& pair : pairs) {
    auto segmented = segment_sentence(pair.tgt_tokens, lexicon);
    stats.split_tokens += segmented.size() - pair.tgt_tokens.size();
    out << join(surfaces(pair.src_tokens)) << '\t' << join(surfaces(segmented)) << '\n';
    ++stats.sentences;
  }
  if (!out) throw std::runtime_error("write failure: " + out_tsv);
  return stats;
}

AlignStats run_align(const std::string& corpus_tsv, const AlignerConfig& cfg,
                     const std::string& out_alignments, const std::string& out_ttable,
                     std::ostream& log) {
  auto in = open_in(corpus_tsv);
  auto pairs = read_parallel(in);
  if (pairs.empty()) throw std::invalid_argument("empty corpus: " + corpus_tsv);

  AlignStats stats;
  auto fwd = train(pairs, cfg);
  stats.forward_ll = fwd.log_likelihood;
  for (std::size_t i = 0; i < stats.forward_ll.size(); ++i)
    log << "forward iteration " << (i + 1) << " log-likelihood " << stats.forward_ll[i]
        << "\n";

  const bool need_reverse = cfg.symmetrization != Symmetrization::forward;
  TrainResult rev;
  if (need_reverse) {
    std::vector<SentencePair> swapped;
    swapped.reserve(pairs.size());
    for (const auto& p : pairs) swapped.push_back(swap_sides(p));
    rev = train(swapped, cfg);
    stats.reverse_ll = rev.log_likelihood;
    for (std::size_t i = 0; i < stats.reverse_ll.size(); ++i)
      log << "reverse iteration " << (i + 1) << " log-likelihood " << stats.reverse_ll[i]
          << "\n";
  }

  // one line per corpus file line, blank lines preserved
  std::size_t total_lines = read_lines(corpus_tsv).size();
  std::vector<std::string> out_lines(total_lines);
  for (const auto& pair : pairs) {
    AlignmentSet links = viterbi_align(fwd.table, cfg, pair);
    if (need_reverse) {
      const auto swapped = swap_sides(pair);
      AlignmentSet rlinks = transpose(viterbi_align(rev.table, cfg, swapped));
      links = symmetrize(links, rlinks, cfg.symmetrization,
                         static_cast<int>(pair.src_tokens.size()),
                         static_cast<int>(pair.tgt_tokens.size()));
    }
    const std::size_t line = std::stoul(pair.id);
    if (line >= 1 && line <= total_lines) out_lines[line - 1] = to_pharaoh(links);
  }
  auto out = open_out(out_alignments);
  for (const auto& l : out_lines) out << l << '\n';
  if (!out) throw std::runtime_error("write failure: " + out_alignments);

  if (!out_ttable.empty()) {
    auto tout = open_out(out_ttable);
    fwd.table.save_tsv(tout);
  }
  return stats;
}

namespace {

struct LoadedTriple {
  std::vector<SentencePair> pairs;  // alignment filled in
  std::vector<std::string> tree_lines;
};

LoadedTriple load_triple(const std::string& corpus_tsv, const std::string& trees,
                         const std::string& alignments) {
  const auto corpus_lines = read_lines(corpus_tsv);
  const auto tree_lines = read_lines(trees);
  const auto align_lines = read_lines(alignments);
  if (tree_lines.size() != corpus_lines.size())
    throw ParseError("line count mismatch between corpus and trees",
                     static_cast<long>(std::min(tree_lines.size(), corpus_lines.size())) + 1);
  if (align_lines.size() != corpus_lines.size())
    throw ParseError("line count mismatch between corpus and alignments",
                     static_cast<long>(std::min(align_lines.size(), corpus_lines.size())) + 1);

  LoadedTriple t;
  t.tree_lines = tree_lines;
  std::istringstream corpus_in(join(corpus_lines, "\n"));
  t.pairs = read_parallel(corpus_in);
  for (auto& pair : t.pairs) {
    const std::size_t line = std::stoul(pair.id);
    auto links = read_pharaoh(align_lines[line - 1]);
    check_alignment_bounds(links, pair, static_cast<long>(line));
    pair.alignment = std::move(links);
  }
  return t;
}

}  // namespace

ProjectStats run_project(const std::string& corpus_tsv, const std::string& trees,
                         const std::string& alignments, const std::string& out_bitrees) {
  auto triple = load_triple(corpus_tsv, trees, alignments);
  ProjectStats stats;
  auto out = open_out(out_bitrees);
  for (const auto& pair : triple.pairs) {
    ++stats.sentences;
    const std::size_t line = std::stoul(pair.id);
    const ParseTree tree = read_ptb(triple.tree_lines[line - 1]);
    const auto result = project(tree, *pair.alignment, pair);
    if (!result.ok) {
      ++stats.unprojectable;
      out << "# " << result.error << '\n';
      continue;
    }
    out << to_debug_string(result.tree) << '\n';
  }
  if (!out) throw std::runtime_error("write failure: " + out_bitrees);
  return stats;
}

GenerateStats run_generate(const std::string& corpus_tsv, const std::string& trees,
                           const std::string& alignments, const GeneratorConfig& cfg,
                           const std::string& out_candidates,
                           const std::string& out_stats_json) {
  cfg.validate();
  auto triple = load_triple(corpus_tsv, trees, alignments);
  GenerateStats stats;
  std::vector<std::vector<Token>> out_sentences;
  for (const auto& pair : triple.pairs) {
    ++stats.sentences_in;
    const std::size_t line = std::stoul(pair.id);
    const ParseTree tree = read_ptb(triple.tree_lines[line - 1]);
    const auto projected = project(tree, *pair.alignment, pair);
    if (!projected.ok) {
      ++stats.unprojectable;
      continue;
    }
    const auto generated = generate(projected.tree, cfg, pair.id);
    if (generated.truncated) ++stats.truncated_sentences;
    for (const auto& cand : generated.candidates) out_sentences.push_back(cand.tokens);
  }
  stats.candidates_out = out_sentences.size();

  auto out = open_out(out_candidates);
  write_cs_corpus(out_sentences, out, /*tagged=*/true);

  ordered_json j;
  j["sentences_in"] = stats.sentences_in;
  j["unprojectable"] = stats.unprojectable;
  j["candidates_out"] = stats.candidates_out;
  j["truncated_sentences"] = stats.truncated_sentences;
  write_text(out_stats_json, j.dump(2) + "\n");
  return stats;
}

SampleStats run_sample(const std::string& candidates_path, const SamplerConfig& cfg,
                       const std::string& out_sampled, const std::string& out_manifest) {
  cfg.validate();
  auto in = open_in(candidates_path);
  const auto sentences = read_cs_corpus(in, /*tagged=*/true);

  std::vector<CSCandidate> pool;
  pool.reserve(sentences.size());
  for (const auto& s : sentences) pool.push_back(CSCandidate::from_tokens(s));

  SampleStats stats;
  stats.pool = pool.size();
  const auto kept = filter_constraints(pool, cfg, &stats.filter);
  stats.kept_after_constraints = kept.size();

  const SampleResult result = cfg.method == SampleMethod::spf ? sample_spf(kept, cfg)
                                                              : sample_random(kept, cfg);
  stats.delivered = result.items.size();
  stats.shortfall = result.shortfall;

  std::vector<std::vector<Token>> out_sentences;
  std::map<int, std::size_t> histogram;
  for (const auto& item : result.items) {
    out_sentences.push_back(item.candidate.tokens);
    if (item.bucket >= 0) ++histogram[item.bucket];
  }
  auto out = open_out(out_sampled);
  write_cs_corpus(out_sentences, out, /*tagged=*/false);

  ordered_json j;
  j["method"] = cfg.method == SampleMethod::spf ? "spf" : "random";
  j["k"] = cfg.k;
  j["seed"] = cfg.seed;
  j["max_en_fraction"] = cfg.max_en_fraction;
  j["require_ar_initial"] = cfg.require_ar_initial;
  j["pool"] = stats.pool;
  j["kept_after_constraints"] = stats.kept_after_constraints;
  j["dropped_not_ar_initial"] = stats.filter.dropped_not_ar_initial;
  j["dropped_en_fraction"] = stats.filter.dropped_en_fraction;
  j["dropped_monolingual"] = stats.filter.dropped_monolingual;
  j["delivered"] = stats.delivered;
  j["shortfall"] = stats.shortfall;
  if (cfg.method == SampleMethod::spf) {
    ordered_json h;
    for (const auto& [bucket, count] : histogram) h[std::to_string(bucket)] = count;
    j["bucket_histogram"] = h;
  }
  write_text(out_manifest, j.dump(2) + "\n");
  return stats;
}

void run_lm_train(const std::vector<std::string>& train_paths, const std::string& out_arpa) {
  std::vector<std::vector<std::string>> corpus;
  for (const auto& path : train_paths) {
    auto in = open_in(path);
    auto part = read_plain_corpus(in);
    corpus.insert(corpus.end(), part.begin(), part.end());
  }
  if (corpus.empty()) throw std::invalid_argument("empty training set");
  const auto model = NGramModel::train(corpus);
  auto out = open_out(out_arpa);
  model.save_arpa(out);
}

EvalReport run_lm_eval(const NGramModel& model, const std::string& testset_path,
                       UnkPolicy policy) {
  auto in = open_in(testset_path);
  const auto testset = read_plain_corpus(in);
  return evaluate(model, testset, policy, testset_path);
}

std::string report_to_json(const EvalReport& report) {
  ordered_json j;
  j["testset"] = report.testset_id;
  j["policy"] = policy_name(report.policy);
  j["ppl"] = report.ppl;
  j["oov_count"] = report.oov_count;
  j["total_tokens"] = report.total_tokens;
  j["log_prob_sum"] = report.log_prob_sum;
  return j.dump(2) + "\n";
}

std::string report_to_json(const EvalReport& report, const EvalReport& baseline) {
  const Comparison cmp = compare_runs(baseline, report);
  ordered_json j = ordered_json::parse(report_to_json(report));
  j["baseline_ppl"] = baseline.ppl;
  j["ppl_relative_gain"] = cmp.ppl_relative_gain;
  j["oov_delta"] = cmp.oov_delta;
  return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  EvalReport r;
  r.testset_id = j.value("testset", "");
  r.policy = policy_from_name(j.value("policy", "map_to_unk"));
  r.ppl = j.value("ppl", 0.0);
  r.oov_count = j.value("oov_count", 0l);
  r.total_tokens = j.value("total_tokens", 0l);
  r.log_prob_sum = j.value("log_prob_sum", 0.0);
  return r;
}

void run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  const auto path = [&](const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
  };

  ordered_json manifest;
  manifest["tool"] = "csgen";
  const std::string canonical = cfg.canonical_json();
  {
    std::ostringstream hash;
    hash << std::hex << fnv1a(canonical);
    manifest["config_hash"] = hash.str();
  }
  manifest["seed"] = cfg.seed;
  manifest["config"] = ordered_json::parse(canonical);
  ordered_json stages;

  // 1. segment
  std::string corpus_for_align;
  if (cfg.segment_enabled) {
    corpus_for_align = path("01_segmented.tsv");
    const auto s = run_segment(cfg.corpus, cfg.src_file, cfg.tgt_file, cfg.clitics_file,
                               corpus_for_align);
    stages["segment"] = {{"sentences", s.sentences}, {"split_tokens", s.split_tokens}};
    log << "segment: " << s.sentences << " sentences\n";
  } else if (!cfg.corpus.empty()) {
    corpus_for_align = cfg.corpus;
  } else {
    // normalize the two-file input into a TSV so later stages see one file
    corpus_for_align = path("01_corpus.tsv");
    auto pairs = load_parallel("", cfg.src_file, cfg.tgt_file);
    auto out = open_out(corpus_for_align);
    for (const auto& p : pairs)
      out << join(surfaces(p.src_tokens)) << '\t' << join(surfaces(p.tgt_tokens)) << '\n';
  }

  // 2. align
  SamplerConfig sampler_cfg = cfg.sampler;
  if (!cfg.spf_target_file.empty()) {
    auto in = open_in(cfg.spf_target_file);
    sampler_cfg.spf_target = SpfTarget::load(in);
  }
  const auto align_stats = run_align(corpus_for_align, cfg.aligner, path("02_alignments.txt"),
                                     path("02_ttable.tsv"), log);
  stages["align"] = {
      {"iterations", cfg.aligner.iterations},
      {"forward_log_likelihood", align_stats.forward_ll},
      {"reverse_log_likelihood", align_stats.reverse_ll},
  };

  // 3. project (debug dump) + 4. generate
  const auto project_stats = run_project(corpus_for_align, cfg.trees,
                                         path("02_alignments.txt"), path("03_bitrees.txt"));
  stages["project"] = {{"sentences", project_stats.sentences},
                       {"unprojectable", project_stats.unprojectable}};
  const auto gen_stats =
      run_generate(corpus_for_align, cfg.trees, path("02_alignments.txt"), cfg.generator,
                   path("04_candidates.txt"), path("04_generate_stats.json"));
  stages["generate"] = {{"sentences_in", gen_stats.sentences_in},
                        {"unprojectable", gen_stats.unprojectable},
                        {"candidates_out", gen_stats.candidates_out},
                        {"truncated_sentences", gen_stats.truncated_sentences}};
  log << "generate: " << gen_stats.candidates_out << " candidates ("
      << gen_stats.unprojectable << " unprojectable)\n";

  // 5. sample
  const auto sample_stats = run_sample(path("04_candidates.txt"), sampler_cfg,
                                       path("05_sampled.txt"), path("05_sample_manifest.json"));
  stages["sample"] = {{"delivered", sample_stats.delivered},
                      {"shortfall", sample_stats.shortfall}};
  log << "sample: " << sample_stats.delivered << " sentences\n";

  // 6. language model evaluation
  if (!cfg.lm_testsets.empty()) {
    std::vector<std::vector<std::string>> augmented_corpus;
    for (const auto& p : cfg.lm_train) {
      auto in = open_in(p);
      auto part = read_plain_corpus(in);
      augmented_corpus.insert(augmented_corpus.end(), part.begin(), part.end());
    }
    const bool have_baseline = !augmented_corpus.empty();
    NGramModel baseline;
    if (have_baseline) {
      baseline = NGramModel::train(augmented_corpus);
      auto out = open_out(path("06_baseline.arpa"));
      baseline.save_arpa(out);
    }
    {
      auto in = open_in(path("05_sampled.txt"));
      auto cs = read_plain_corpus(in);
      augmented_corpus.insert(augmented_corpus.end(), cs.begin(), cs.end());
    }
    if (augmented_corpus.empty()) throw std::invalid_argument("empty lm training set");
    const NGramModel augmented = NGramModel::train(augmented_corpus);
    {
      auto out = open_out(path("06_augmented.arpa"));
      augmented.save_arpa(out);
    }
    ordered_json reports = ordered_json::array();
    for (std::size_t i = 0; i < cfg.lm_testsets.size(); ++i) {
      const auto& test_path = cfg.lm_testsets[i];
      const auto aug_report = run_lm_eval(augmented, test_path, cfg.lm_policy);
      std::string text;
      if (have_baseline) {
        const auto base_report = run_lm_eval(baseline, test_path, cfg.lm_policy);
        text = report_to_json(aug_report, base_report);
      } else {
        text = report_to_json(aug_report);
      }
      std::ostringstream name;
      name << "07_report_" << (i + 1) << "_" << fs::path(test_path).stem().string()
           << ".json";
      write_text(path(name.str()), text);
      reports.push_back(ordered_json::parse(text));
      log << "lm-eval " << test_path << ": ppl " << aug_report.ppl << "\n";
    }
    stages["lm"] = {{"reports", reports}};
  }

  manifest["stages"] = stages;
  write_text(path("manifest.json"), manifest.dump(2) + "\n");
}

}  // namespace csgen
