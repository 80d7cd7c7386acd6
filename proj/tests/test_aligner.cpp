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

#include <random>
#include <sstream>

#include "doctest.h"

#include "support/synth.hpp"

using namespace csgen;

namespace {

SentencePair make_pair(const std::string& src, const std::string& tgt) {
  SentencePair p;
  p.id = "1";
  std::istringstream s(src), t(tgt);
  std::string w;
  while (s >> w) p.src_tokens.push_back(en_token(w));
  while (t >> w) p.tgt_tokens.push_back(ar_token(w));
  return p;
}

}  // namespace

TEST_CASE("one-pair corpus concentrates all mass") {
  std::vector<SentencePair> corpus(100, make_pair("a", "x"));
  const auto result = train(corpus, AlignerConfig{});
  CHECK(result.table.prob("a", "x") == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rows sum to one after training") {
  std::vector<SentencePair> corpus = {
      make_pair("a b", "x y"), make_pair("b c", "y z"), make_pair("a c", "x z"),
      make_pair("c a b", "z x y")};
  const auto result = train(corpus, AlignerConfig{});
  for (const auto& [src, row] : result.table.rows()) {
    double sum = 0;
    for (const auto& [tgt, p] : row) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("log-likelihood never decreases across EM iterations") {
  std::mt19937_64 rng(5);
  const auto world = test::make_dict_world(rng, 12, 150);
  AlignerConfig cfg;
  cfg.iterations = 8;
  const auto result = train(world.pairs, cfg);
  REQUIRE(result.log_likelihood.size() == 8);
  for (std::size_t i = 1; i < result.log_likelihood.size(); ++i)
    CHECK(result.log_likelihood[i] >= result.log_likelihood[i - 1] - 1e-9);
}

TEST_CASE("training is deterministic") {
  std::mt19937_64 rng(6);
  const auto world = test::make_dict_world(rng, 10, 80);
  const auto a = train(world.pairs, AlignerConfig{});
  const auto b = train(world.pairs, AlignerConfig{});
  std::ostringstream da, db;
  a.table.save_tsv(da);
  b.table.save_tsv(db);
  CHECK(da.str() == db.str());
}

TEST_CASE("viterbi follows a forced table") {
  TranslationTable table;
  table.set("a", "x", 1.0);
  table.set("b", "y", 1.0);
  const auto links = viterbi_align(table, AlignerConfig{}, make_pair("a b", "x y"));
  CHECK(links == AlignmentSet{{0, 0}, {1, 1}});
}

TEST_CASE("unknown words fall back to the diagonal prior") {
  TranslationTable table;  // empty: every lookup is the floor value
  const auto links = viterbi_align(table, AlignerConfig{}, make_pair("a b", "x y"));
  // with tension 4 and n = m = 2, position 1 prefers source 1, 2 prefers 2
  CHECK(links == AlignmentSet{{0, 0}, {1, 1}});
}

TEST_CASE("viterbi ties break toward the smaller source index") {
  // with n=4, m=2, j=1 the diagonal weights of sources 1 and 3 coincide
  // exactly (|1/4 - 1/2| == |3/4 - 1/2|), so equal lexical scores tie
  TranslationTable table;
  table.set("a", "x", 0.5);
  table.set("c", "x", 0.5);
  table.set("b", "y", 1.0);
  const auto links = viterbi_align(table, AlignerConfig{}, make_pair("a b c d", "x y"));
  CHECK(links.count(AlignmentLink{0, 0}) == 1);
  CHECK(links.count(AlignmentLink{2, 0}) == 0);
}

TEST_CASE("empty target yields no links") {
  TranslationTable table;
  SentencePair pair = make_pair("a b", "x");
  pair.tgt_tokens.clear();
  CHECK(viterbi_align(table, AlignerConfig{}, pair).empty());
}

TEST_CASE("viterbi recovers a dictionary after EM") {
  std::mt19937_64 rng(17);
  const auto world = test::make_dict_world(rng, 20, 400);
  AlignerConfig cfg;
  const auto result = train(world.pairs, cfg);
  std::size_t correct = 0, produced = 0, expected = 0;
  for (std::size_t i = 0; i < world.pairs.size(); ++i) {
    const auto links = viterbi_align(result.table, cfg, world.pairs[i]);
    produced += links.size();
    expected += world.gold[i].size();
    for (const auto& l : links)
      if (world.gold[i].count(l)) ++correct;
  }
  const double precision = static_cast<double>(correct) / produced;
  const double recall = static_cast<double>(correct) / expected;
  CHECK(precision >= 0.9);
  CHECK(recall >= 0.85);
}

TEST_CASE("symmetrization basics") {
  const AlignmentSet one = {{0, 0}};
  for (auto method : {Symmetrization::forward, Symmetrization::reverse,
                      Symmetrization::intersection, Symmetrization::union_all,
                      Symmetrization::grow_diag_final})
    CHECK(symmetrize(one, one, method, 2, 2) == one);

  const AlignmentSet fwd = {{0, 0}, {1, 1}};
  const AlignmentSet rev = {{0, 0}};
  CHECK(symmetrize(fwd, rev, Symmetrization::intersection, 2, 2) == AlignmentSet{{0, 0}});
  CHECK(symmetrize(fwd, rev, Symmetrization::union_all, 2, 2) ==
        AlignmentSet{{0, 0}, {1, 1}});
}

TEST_CASE("grow_diag_final sits between intersection and union") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 300; ++round) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int m = 2 + static_cast<int>(rng() % 5);
    AlignmentSet fwd, rev;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        if (rng() % 3 == 0) fwd.insert({i, j});
        if (rng() % 3 == 0) rev.insert({i, j});
      }
    const auto inter = symmetrize(fwd, rev, Symmetrization::intersection, n, m);
    const auto gdf = symmetrize(fwd, rev, Symmetrization::grow_diag_final, n, m);
    const auto uni = symmetrize(fwd, rev, Symmetrization::union_all, n, m);
    for (const auto& l : inter) CHECK(gdf.count(l));
    for (const auto& l : gdf) CHECK(uni.count(l));
  }
}

TEST_CASE("t-table TSV round-trip") {
  TranslationTable table;
  table.set("a", "x", 0.75);
  table.set("a", "y", 0.25);
  table.set(TranslationTable::kNullWord, "x", 1.0);
  std::ostringstream out;
  table.save_tsv(out);
  std::istringstream in(out.str());
  const auto loaded = TranslationTable::load_tsv(in);
  CHECK(loaded.prob("a", "x") == doctest::Approx(0.75));
  CHECK(loaded.prob("a", "y") == doctest::Approx(0.25));
  CHECK(loaded.prob(TranslationTable::kNullWord, "x") == doctest::Approx(1.0));
  CHECK(loaded.prob("zzz", "x") == doctest::Approx(TranslationTable::kFloor));
}

TEST_CASE("config validation") {
  AlignerConfig bad;
  bad.p_null = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = AlignerConfig{};
  bad.iterations = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = AlignerConfig{};
  bad.tension = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(train({}, AlignerConfig{}), std::invalid_argument);
}
