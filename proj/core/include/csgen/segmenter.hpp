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

#ifndef CSGEN_SEGMENTER_HPP_
#define CSGEN_SEGMENTER_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "csgen/types.hpp"

namespace csgen {

/// Clitic-level Arabic segmenter. Splits a word into at most
/// prefix + stem + suffix by greedy longest match against the configured
/// clitic sets, never leaving a stem shorter than min_stem_chars
/// codepoints. Re-attachment boundaries are marked with '+' on both
/// facing sides ("رأيها" -> "رأي+" "+ها"), so desegmentation needs no
/// lexicon. Words that already contain '+' are treated as pre-segmented
/// and pass through the stripper untouched.
struct CliticLexicon {
  std::vector<std::string> prefixes;
  std::vector<std::string> suffixes;
  std::size_t min_stem_chars = 2;

  /// The default lexicon: common Arabic proclitics and pronominal
  /// enclitics.
  static const CliticLexicon& defaults();

  /// Loads "[prefixes]" / "[suffixes]" sections, one clitic per line.
  /// '#' starts a comment. Throws ParseError on unknown sections.
  static CliticLexicon load(std::istream& in);
};

/// Pieces of one segmented word, in surface order, '+'-marked.
/// Concatenating the pieces with markers stripped reproduces the word.
struct Segmentation {
  std::vector<std::string> pieces;

  bool split() const { return pieces.size() > 1; }
};

Segmentation segment_word(const std::string& word, const CliticLexicon& lex);

/// Replaces each Arabic token by its segmentation pieces (is_morpheme set
/// on pieces of split words); non-Arabic tokens pass through untouched.
std::vector<Token> segment_sentence(const std::vector<Token>& tokens,
                                    const CliticLexicon& lex);

/// Re-joins adjacent pieces whose facing '+' markers match and whose
/// language tags agree; a stranded marked morpheme is emitted standalone
/// with markers stripped.
std::vector<Token> desegment(const std::vector<Token>& tokens);

/// Strips '+' markers from a single piece without joining.
std::string strip_markers(const std::string& piece);

}  // namespace csgen

#endif  // CSGEN_SEGMENTER_HPP_
