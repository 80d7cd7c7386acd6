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

#include "csgen/segmenter.hpp"

#include <algorithm>
#include <istream>

#include "csgen/corpus_io.hpp"
#include "csgen/utf8.hpp"

namespace csgen {

const CliticLexicon& CliticLexicon::defaults() {
  static const CliticLexicon lex = [] {
    CliticLexicon l;
    l.prefixes = {"و", "ف", "ب", "ك", "ل", "ال", "وال", "بال"};
    l.suffixes = {"ها", "هم", "هن", "كم", "كن", "نا", "ني", "ه", "ك", "ي"};
    return l;
  }();
  return lex;
}

CliticLexicon CliticLexicon::load(std::istream& in) {
  CliticLexicon lex;
  lex.prefixes.clear();
  lex.suffixes.clear();
  std::vector<std::string>* section = nullptr;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "[prefixes]") {
      section = &lex.prefixes;
    } else if (toks[0] == "[suffixes]") {
      section = &lex.suffixes;
    } else if (toks[0].front() == '[') {
      throw ParseError("unknown section '" + toks[0] + "'", line_no);
    } else if (!section) {
      throw ParseError("clitic outside of a section", line_no);
    } else {
      for (auto& t : toks) section->push_back(std::move(t));
    }
  }
  return lex;
}

namespace {

bool starts_with(const std::string& s, const std::string& p) {
  return s.size() >= p.size() && s.compare(0, p.size(), p) == 0;
}

bool ends_with(const std::string& s, const std::string& p) {
  return s.size() >= p.size() && s.compare(s.size() - p.size(), p.size(), p) == 0;
}

// Longest clitic (in codepoints) matching at the given end of `word` such
// that the remaining stem keeps at least min_stem codepoints.
const std::string* best_match(const std::string& word, const std::vector<std::string>& set,
                              bool at_front, std::size_t min_stem) {
  const std::size_t word_cp = utf8::codepoint_count(word);
  const std::string* best = nullptr;
  std::size_t best_cp = 0;
  for (const auto& clitic : set) {
    const bool hit = at_front ? starts_with(word, clitic) : ends_with(word, clitic);
    if (!hit) continue;
    const std::size_t cp = utf8::codepoint_count(clitic);
    if (cp == 0 || word_cp - cp < min_stem) continue;
    if (!best || cp > best_cp) {
      best = &clitic;
      best_cp = cp;
    }
  }
  return best;
}

}  // namespace

std::string strip_markers(const std::string& piece) {
  std::size_t b = 0, e = piece.size();
  while (b < e && piece[b] == '+') ++b;
  while (e > b && piece[e - 1] == '+') --e;
  return piece.substr(b, e - b);
}

Segmentation segment_word(const std::string& word, const CliticLexicon& lex) {
  Segmentation seg;
  if (word.find('+') != std::string::npos) {
    // Pre-segmented input from an external segmenter: split on interior
    // markers, keep edge markers as provided.
    std::string core = word;
    std::string lead, trail;
    while (!core.empty() && core.front() == '+') {
      lead += '+';
      core.erase(core.begin());
    }
    while (!core.empty() && core.back() == '+') {
      trail += '+';
      core.pop_back();
    }
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= core.size(); ++i) {
      if (i == core.size() || core[i] == '+') {
        parts.push_back(core.substr(start, i - start));
        start = i + 1;
      }
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::string p = parts[i];
      if (i > 0) p = "+" + p;
      if (i + 1 < parts.size()) p += "+";
      if (i == 0) p = lead + p;
      if (i + 1 == parts.size()) p += trail;
      if (!p.empty()) seg.pieces.push_back(std::move(p));
    }
    if (seg.pieces.empty()) seg.pieces.push_back(word);
    return seg;
  }

  std::string stem = word;
  const std::string* prefix = best_match(stem, lex.prefixes, true, lex.min_stem_chars);
  if (prefix) stem = stem.substr(prefix->size());
  const std::string* suffix = best_match(stem, lex.suffixes, false, lex.min_stem_chars);
  if (suffix) stem = stem.substr(0, stem.size() - suffix->size());

  if (!prefix && !suffix) {
    seg.pieces.push_back(word);
    return seg;
  }
  if (prefix) seg.pieces.push_back(*prefix + "+");
  std::string stem_piece = stem;
  if (prefix) stem_piece = "+" + stem_piece;
  if (suffix) stem_piece += "+";
  seg.pieces.push_back(std::move(stem_piece));
  if (suffix) seg.pieces.push_back("+" + *suffix);
  return seg;
}

std::vector<Token> segment_sentence(const std::vector<Token>& tokens,
                                    const CliticLexicon& lex) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (tok.lang != Lang::AR) {
      out.push_back(tok);
      continue;
    }
    Segmentation seg = segment_word(tok.surface, lex);
    const bool morpheme = seg.split() || tok.surface.find('+') != std::string::npos;
    for (auto& piece : seg.pieces)
      out.push_back(Token{std::move(piece), Lang::AR, morpheme});
  }
  return out;
}

std::vector<Token> desegment(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  for (const auto& tok : tokens) {
    const bool joins = !out.empty() && out.back().is_morpheme && tok.is_morpheme &&
                       out.back().lang == tok.lang && !out.back().surface.empty() &&
                       out.back().surface.back() == '+' && !tok.surface.empty() &&
                       tok.surface.front() == '+';
    if (joins) {
      std::string merged = out.back().surface;
      merged.pop_back();
      merged += tok.surface.substr(1);
      out.back().surface = std::move(merged);
    } else {
      out.push_back(tok);
    }
  }
  for (auto& tok : out) {
    if (tok.is_morpheme) {
      tok.surface = strip_markers(tok.surface);
      tok.is_morpheme = false;
    }
  }
  std::erase_if(out, [](const Token& t) { return t.surface.empty(); });
  return out;
}

}  // namespace csgen
