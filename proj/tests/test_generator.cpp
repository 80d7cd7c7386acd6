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

#include "csgen/generator.hpp"

#include <random>
#include <set>

#include "doctest.h"

#include "support/oracle.hpp"
#include "support/synth.hpp"

using namespace csgen;

namespace {

BilingualTree leaf(const std::string& ar, const std::string& en) {
  BilingualTree l;
  l.label = "NN";
  if (!ar.empty()) l.tgt_pieces.push_back(ar_token(ar));
  if (!en.empty()) l.src_pieces.push_back(en_token(en));
  return l;
}

BilingualTree node(std::vector<BilingualTree> children, std::vector<int> perm) {
  BilingualTree n;
  n.label = "S";
  n.children = std::move(children);
  n.src_perm = std::move(perm);
  return n;
}

std::set<std::string> keys_of(const GenerationResult& result) {
  std::set<std::string> out;
  for (const auto& c : result.candidates) out.insert(test::candidate_key(c.tokens));
  return out;
}

}  // namespace

TEST_CASE("identity two-leaf node yields the full cross product") {
  const auto tree = node({leaf("a", "x"), leaf("b", "y")}, {0, 1});
  const auto result = generate(tree, GeneratorConfig{});
  REQUIRE(result.candidates.size() == 4);
  const auto keys = keys_of(result);
  CHECK(keys.count("a/AR b/AR "));
  CHECK(keys.count("a/AR y/EN "));
  CHECK(keys.count("x/EN b/AR "));
  CHECK(keys.count("x/EN y/EN "));
  for (const auto& c : result.candidates) CHECK((c.switch_points == 0 || c.switch_points == 1));
  // the all-Arabic rendering comes first and has no switches
  CHECK(test::candidate_key(result.candidates[0].tokens) == "a/AR b/AR ");
  CHECK(result.candidates[0].switch_points == 0);
}

TEST_CASE("reordered node is atomic per language") {
  // the "her opinion" shape: Arabic order opposite to English order
  BilingualTree l1;
  l1.label = "NN";
  l1.tgt_pieces.push_back(ar_token("رأي+", true));
  l1.src_pieces.push_back(en_token("opinion"));
  BilingualTree l2;
  l2.label = "PRP$";
  l2.tgt_pieces.push_back(ar_token("+ها", true));
  l2.src_pieces.push_back(en_token("her"));
  const auto tree = node({std::move(l1), std::move(l2)}, {1, 0});

  const auto result = generate(tree, GeneratorConfig{});
  REQUIRE(result.candidates.size() == 2);
  const auto keys = keys_of(result);
  CHECK(keys.count("رأيها/AR "));  // morphemes rejoined
  CHECK(keys.count("her/EN opinion/EN "));
}

TEST_CASE("a node whose only leaf is target-only renders Arabic only") {
  const auto tree = node({leaf("a", "")}, {0});
  const auto result = generate(tree, GeneratorConfig{});
  REQUIRE(result.candidates.size() == 1);
  CHECK(test::candidate_key(result.candidates[0].tokens) == "a/AR ");
}

TEST_CASE("elided English word can appear or disappear") {
  const auto tree = node({leaf("", "the"), leaf("b", "book")}, {0, 1});
  const auto result = generate(tree, GeneratorConfig{});
  const auto keys = keys_of(result);
  CHECK(keys.count("b/AR "));
  CHECK(keys.count("the/EN b/AR "));
  CHECK(keys.count("the/EN book/EN "));
  CHECK(keys.count("book/EN "));
  CHECK(result.candidates.size() == 4);
}

TEST_CASE("pure-English rendering drops unaligned Arabic") {
  const auto tree = node({leaf("a", "x"), leaf("u", ""), leaf("c", "z")}, {0, 1, 2});
  const auto result = generate(tree, GeneratorConfig{});
  const auto keys = keys_of(result);
  CHECK(keys.count("x/EN z/EN "));         // u dropped by the English rendering
  CHECK(keys.count("a/AR u/AR c/AR "));    // full Arabic
  CHECK(keys.count("x/EN u/AR c/AR "));    // mixing keeps u
  CHECK_FALSE(keys.count("a/AR c/AR "));   // u cannot vanish from Arabic context
  CHECK_FALSE(keys.count("x/EN c/AR "));
}

TEST_CASE("collapsed multi-word leaves never switch internally") {
  BilingualTree big;
  big.label = "CC";
  big.tgt_pieces.push_back(ar_token("m"));
  for (const char* w : {"and", "they", "will"}) big.src_pieces.push_back(en_token(w));
  const auto tree = node({std::move(big), leaf("b", "y")}, {0, 1});
  const auto result = generate(tree, GeneratorConfig{});
  for (const auto& c : result.candidates) {
    // "and they will" appears whole or not at all
    std::size_t found = 0;
    for (std::size_t i = 0; i < c.tokens.size(); ++i)
      if (c.tokens[i].surface == "and") {
        REQUIRE(i + 2 < c.tokens.size());
        CHECK(c.tokens[i + 1].surface == "they");
        CHECK(c.tokens[i + 2].surface == "will");
        ++found;
      }
    (void)found;
  }
  CHECK(result.candidates.size() == 4);
}

TEST_CASE("truncation caps candidates and sets the flag") {
  std::vector<BilingualTree> leaves;
  std::vector<int> perm;
  for (int i = 0; i < 10; ++i) {
    leaves.push_back(leaf("a" + std::to_string(i), "x" + std::to_string(i)));
    perm.push_back(i);
  }
  const auto tree = node(std::move(leaves), std::move(perm));
  GeneratorConfig cfg;
  cfg.max_candidates_per_sentence = 100;
  const auto result = generate(tree, cfg);
  CHECK(result.candidates.size() == 100);
  CHECK(result.truncated);

  GeneratorConfig big;
  big.max_candidates_per_sentence = 100000;
  const auto full = generate(tree, big);
  CHECK(full.candidates.size() == 1024);
  CHECK_FALSE(full.truncated);
}

TEST_CASE("dedup collapses identical surfaces from distinct derivations") {
  // two src-only leaves with the same surface word
  const auto tree =
      node({leaf("", "very"), leaf("", "very"), leaf("b", "nice")}, {0, 1, 2});
  GeneratorConfig cfg;
  const auto result = generate(tree, cfg);
  std::set<std::string> keys = keys_of(result);
  CHECK(keys.size() == result.candidates.size());  // no duplicates delivered
  CHECK(keys.count("very/EN b/AR "));
}

TEST_CASE("renderings keeps raw morpheme markers, Arabic option first") {
  BilingualTree l1;
  l1.label = "NN";
  l1.tgt_pieces.push_back(ar_token("رأي+", true));
  l1.src_pieces.push_back(en_token("opinion"));
  BilingualTree l2;
  l2.label = "PRP$";
  l2.tgt_pieces.push_back(ar_token("+ها", true));
  l2.src_pieces.push_back(en_token("her"));
  const auto tree = node({std::move(l1), std::move(l2)}, {1, 0});

  const auto raw = renderings(tree, GeneratorConfig{});
  REQUIRE(raw.sequences.size() == 2);
  CHECK_FALSE(raw.truncated);
  CHECK(surfaces(raw.sequences[0]) == std::vector<std::string>{"رأي+", "+ها"});
  CHECK(surfaces(raw.sequences[1]) == std::vector<std::string>{"her", "opinion"});
}

TEST_CASE("candidate statistics are recomputed from tokens") {
  const auto c = CSCandidate::from_tokens(
      {ar_token("a"), en_token("x"), ar_token("b"), ar_token("c")}, "7");
  CHECK(c.switch_points == 2);
  CHECK(c.spf == doctest::Approx(2.0 / 3.0));
  CHECK(c.source_pair_id == "7");
}

TEST_CASE("generator agrees with the brute-force oracle on random trees") {
  std::mt19937_64 rng(101);
  GeneratorConfig cfg;
  cfg.max_candidates_per_sentence = 1000000;
  for (int round = 0; round < 120; ++round) {
    const auto tree = test::random_bitree(rng, 9);
    const auto expected = test::oracle_candidates(tree);
    const auto got = keys_of(generate(tree, cfg));
    if (got != expected) {
      MESSAGE("round ", round, " tree: ", to_debug_string(tree));
      for (const auto& k : expected)
        if (!got.count(k)) MESSAGE("missing from generator: ", k);
      for (const auto& k : got)
        if (!expected.count(k)) MESSAGE("extra from generator: ", k);
    }
    REQUIRE(got == expected);
  }
}
