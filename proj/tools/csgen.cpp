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

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "csgen/corpus_io.hpp"
#include "csgen/pipeline.hpp"
#include "csgen/types.hpp"

namespace fs = std::filesystem;
using namespace csgen;

namespace {

std::string out_path(const std::string& out_dir, const std::string& name) {
  fs::create_directories(out_dir);
  return (fs::path(out_dir) / name).string();
}

void require_exists(const std::string& path) {
  if (!fs::exists(path)) throw std::invalid_argument("missing input: " + path);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arabic-English code-switching text generation and evaluation"};
  app.require_subcommand(1);

  std::string out_dir = "csgen_out";
  std::uint64_t seed = 0;
  std::string config_path;
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "global random seed")->capture_default_str();
  app.add_option("--config", config_path, "pipeline config JSON");
  app.fallthrough();

  std::function<void()> run;

  // --- segment ---
  auto* seg = app.add_subcommand("segment", "split Arabic clitics off for alignment");
  {
    static std::string corpus, src, tgt, clitics;
    seg->add_option("--corpus", corpus, "parallel corpus, src<TAB>tgt");
    seg->add_option("--src", src, "source-side file (line-aligned with --tgt)");
    seg->add_option("--tgt", tgt, "target-side file");
    seg->add_option("--clitics", clitics, "clitic lexicon ([prefixes]/[suffixes])");
    seg->callback([&] {
      run = [&] {
        if (corpus.empty() && (src.empty() || tgt.empty()))
          throw std::invalid_argument("segment needs --corpus or --src and --tgt");
        for (const auto& p : {corpus, src, tgt, clitics})
          if (!p.empty()) require_exists(p);
        const auto stats =
            run_segment(corpus, src, tgt, clitics, out_path(out_dir, "segmented.tsv"));
        std::cout << "segmented " << stats.sentences << " sentences, "
                  << stats.split_tokens << " new morphemes\n";
      };
    });
  }

  // --- align ---
  auto* aln = app.add_subcommand("align", "train the aligner and write Pharaoh links");
  {
    static std::string corpus, symmetrization = "grow_diag_final";
    static AlignerConfig cfg;
    static bool save_ttable = false;
    aln->add_option("--corpus", corpus, "parallel corpus, src<TAB>tgt")->required();
    aln->add_option("--iterations", cfg.iterations, "EM iterations")
        ->capture_default_str();
    aln->add_option("--tension", cfg.tension, "diagonal tension")->capture_default_str();
    aln->add_option("--p-null", cfg.p_null, "null alignment probability")
        ->capture_default_str();
    aln->add_option("--symmetrization", symmetrization,
                    "forward|reverse|intersection|union|grow_diag_final")
        ->capture_default_str();
    aln->add_flag("--save-ttable", save_ttable, "dump the translation table TSV");
    aln->callback([&] {
      run = [&] {
        require_exists(corpus);
        cfg.symmetrization = symmetrization_from_name(symmetrization);
        cfg.seed = seed;
        cfg.validate();
        run_align(corpus, cfg, out_path(out_dir, "alignments.txt"),
                  save_ttable ? out_path(out_dir, "ttable.tsv") : "", std::cout);
      };
    });
  }

  // --- project ---
  auto* prj = app.add_subcommand("project", "dump projected bilingual trees");
  {
    static std::string corpus, trees, alignments;
    prj->add_option("--corpus", corpus, "parallel corpus, src<TAB>tgt")->required();
    prj->add_option("--trees", trees, "bracketed trees, line-aligned")->required();
    prj->add_option("--alignments", alignments, "Pharaoh links, line-aligned")->required();
    prj->callback([&] {
      run = [&] {
        for (const auto& p : {corpus, trees, alignments}) require_exists(p);
        const auto stats =
            run_project(corpus, trees, alignments, out_path(out_dir, "bitrees.txt"));
        std::cout << "projected " << (stats.sentences - stats.unprojectable) << "/"
                  << stats.sentences << " sentences\n";
      };
    });
  }

  // --- generate ---
  auto* gen = app.add_subcommand("generate", "enumerate equivalence-constraint renderings");
  {
    static std::string corpus, trees, alignments;
    static GeneratorConfig cfg;
    static bool no_dedup = false;
    gen->add_option("--corpus", corpus, "parallel corpus, src<TAB>tgt")->required();
    gen->add_option("--trees", trees, "bracketed trees, line-aligned")->required();
    gen->add_option("--alignments", alignments, "Pharaoh links, line-aligned")->required();
    gen->add_option("--max-candidates", cfg.max_candidates_per_sentence,
                    "per-sentence cap")
        ->capture_default_str();
    gen->add_flag("--no-dedup", no_dedup, "keep duplicate surface renderings");
    gen->callback([&] {
      run = [&] {
        for (const auto& p : {corpus, trees, alignments}) require_exists(p);
        cfg.dedup = !no_dedup;
        const auto stats = run_generate(corpus, trees, alignments, cfg,
                                        out_path(out_dir, "candidates.txt"),
                                        out_path(out_dir, "generate_stats.json"));
        std::cout << "generated " << stats.candidates_out << " candidates from "
                  << stats.sentences_in << " sentences (" << stats.unprojectable
                  << " unprojectable)\n";
      };
    });
  }

  // --- sample ---
  auto* smp = app.add_subcommand("sample", "filter and sample a CS corpus");
  {
    static std::string candidates, method = "random", spf_target;
    static long k = 0;
    static double max_en_fraction = 0.45;
    static bool no_ar_initial = false;
    smp->add_option("--candidates", candidates, "tagged candidate corpus")->required();
    smp->add_option("--method", method, "random|spf")->capture_default_str();
    smp->add_option("--k", k, "sample size")->required();
    smp->add_option("--max-en-fraction", max_en_fraction, "English token cap")
        ->capture_default_str();
    smp->add_flag("--no-require-ar-initial", no_ar_initial,
                  "drop the Arabic-initial constraint");
    smp->add_option("--spf-target", spf_target, "switch-point target histogram file");
    smp->callback([&] {
      run = [&] {
        require_exists(candidates);
        if (k <= 0) throw std::invalid_argument("--k must be positive");
        SamplerConfig cfg;
        if (method == "random") {
          cfg.method = SampleMethod::random;
        } else if (method == "spf") {
          cfg.method = SampleMethod::spf;
        } else {
          throw std::invalid_argument("unknown method '" + method + "'");
        }
        cfg.k = static_cast<std::size_t>(k);
        cfg.seed = seed;
        cfg.max_en_fraction = max_en_fraction;
        cfg.require_ar_initial = !no_ar_initial;
        if (!spf_target.empty()) {
          require_exists(spf_target);
          std::ifstream in(spf_target);
          cfg.spf_target = SpfTarget::load(in);
        }
        const auto stats = run_sample(candidates, cfg, out_path(out_dir, "sampled.txt"),
                                      out_path(out_dir, "sample_manifest.json"));
        std::cout << "sampled " << stats.delivered << " of " << cfg.k << " requested ("
                  << stats.kept_after_constraints << " eligible)\n";
      };
    });
  }

  // --- lm-train ---
  auto* lmt = app.add_subcommand("lm-train", "train a Kneser-Ney trigram model");
  {
    static std::vector<std::string> train;
    lmt->add_option("--train", train, "training corpora")->required();
    lmt->callback([&] {
      run = [&] {
        for (const auto& p : train) require_exists(p);
        run_lm_train(train, out_path(out_dir, "model.arpa"));
        std::cout << "wrote " << out_path(out_dir, "model.arpa") << "\n";
      };
    });
  }

  // --- lm-eval ---
  auto* lme = app.add_subcommand("lm-eval", "perplexity and OOV on test sets");
  {
    static std::vector<std::string> train, tests;
    static std::string model_path, policy = "map_to_unk", baseline_path;
    lme->add_option("--model", model_path, "ARPA model (alternative to --train)");
    lme->add_option("--train", train, "training corpora");
    lme->add_option("--test", tests, "test corpora")->required();
    lme->add_option("--policy", policy, "map_to_unk|exclude")->capture_default_str();
    lme->add_option("--baseline", baseline_path, "baseline report JSON to compare with");
    lme->callback([&] {
      run = [&] {
        if (model_path.empty() == train.empty())
          throw std::invalid_argument("lm-eval needs exactly one of --model or --train");
        UnkPolicy pol;
        if (policy == "map_to_unk") {
          pol = UnkPolicy::map_to_unk;
        } else if (policy == "exclude") {
          pol = UnkPolicy::exclude;
        } else {
          throw std::invalid_argument("unknown policy '" + policy + "'");
        }
        NGramModel model;
        if (!model_path.empty()) {
          require_exists(model_path);
          std::ifstream in(model_path);
          model = NGramModel::load_arpa(in);
        } else {
          std::vector<std::vector<std::string>> corpus;
          for (const auto& p : train) {
            require_exists(p);
            std::ifstream in(p);
            auto part = read_plain_corpus(in);
            corpus.insert(corpus.end(), part.begin(), part.end());
          }
          if (corpus.empty()) throw std::invalid_argument("empty training set");
          model = NGramModel::train(corpus);
        }
        EvalReport baseline;
        bool have_baseline = !baseline_path.empty();
        if (have_baseline) {
          require_exists(baseline_path);
          baseline = report_from_json(slurp(baseline_path));
        }
        for (std::size_t i = 0; i < tests.size(); ++i) {
          require_exists(tests[i]);
          const auto report = run_lm_eval(model, tests[i], pol);
          const std::string text =
              have_baseline ? report_to_json(report, baseline) : report_to_json(report);
          std::ostringstream name;
          name << "report_" << (i + 1) << "_" << fs::path(tests[i]).stem().string()
               << ".json";
          const auto file = out_path(out_dir, name.str());
          std::ofstream out(file);
          out << text;
          std::cout << tests[i] << ": ppl " << report.ppl << ", oov "
                    << report.oov_count << ", tokens " << report.total_tokens << "\n";
        }
      };
    });
  }

  // --- pipeline ---
  auto* pipe = app.add_subcommand("pipeline", "run the full generation pipeline");
  pipe->callback([&] {
    run = [&] {
      if (config_path.empty()) throw std::invalid_argument("pipeline needs --config");
      require_exists(config_path);
      PipelineConfig cfg = PipelineConfig::from_json_file(config_path);
      if (app.count("--out") > 0) cfg.out_dir = out_dir;
      if (app.count("--seed") > 0) {
        cfg.seed = seed;
        cfg.aligner.seed = seed;
        cfg.sampler.seed = seed;
      }
      run_pipeline(cfg, std::cout);
      std::cout << "pipeline complete; outputs under " << cfg.out_dir << "\n";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    run();
  } catch (const csgen::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
