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

#ifndef CSGEN_CORPUS_IO_HPP_
#define CSGEN_CORPUS_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "csgen/types.hpp"

namespace csgen {

/// Labeled ordered constituency tree. Leaves carry the surface form in
/// `label` and have no children. `span` is the half-open token interval
/// covered by the node.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;
  int span_begin = 0;
  int span_end = 0;

  bool is_leaf() const { return children.empty(); }
};

struct ParallelFormat {
  // Tokens are whitespace-split; richer tokenization happens upstream.
  bool numbered_ids = true;  // ids are 1-based line numbers
};

/// Reads a tab-separated "src<TAB>tgt" corpus. Empty lines are skipped;
/// an empty side is an error with its line number.
std::vector<SentencePair> read_parallel(std::istream& in,
                                        const ParallelFormat& fmt = {});

/// Reads a pair of line-aligned files (src, tgt). Line-count mismatch is
/// reported at the first unmatched line.
std::vector<SentencePair> read_parallel_files(std::istream& src, std::istream& tgt,
                                              const ParallelFormat& fmt = {});

/// Parses one Pharaoh line of space-separated "i-j" pairs. Duplicates
/// collapse; malformed pairs throw ParseError.
AlignmentSet read_pharaoh(const std::string& line);

std::string to_pharaoh(const AlignmentSet& links);

/// Validates link bounds against a sentence pair; throws ParseError on
/// out-of-range indices.
void check_alignment_bounds(const AlignmentSet& links, const SentencePair& pair,
                            long line = -1);

/// Parses one bracketed tree, computing spans. Throws ParseError on
/// unbalanced brackets or empty constituents.
ParseTree read_ptb(const std::string& text);

/// Serializes back to bracket notation; read_ptb(to_ptb(t)) == t up to
/// whitespace.
std::string to_ptb(const ParseTree& tree);

std::vector<std::string> tree_leaves(const ParseTree& tree);

/// One sentence per line; when tagged, each token is suffixed "/AR" or
/// "/EN". Order is input order.
void write_cs_corpus(const std::vector<std::vector<Token>>& sentences,
                     std::ostream& out, bool tagged);

/// Reads a corpus written by write_cs_corpus. When tagged, the "/AR"/"/EN"
/// suffix is required on every token; otherwise all tokens get fallback_lang.
std::vector<std::vector<Token>> read_cs_corpus(std::istream& in, bool tagged,
                                               Lang fallback_lang = Lang::AR);

/// Plain monolingual corpus: whitespace tokens, one sentence per line.
std::vector<std::vector<std::string>> read_plain_corpus(std::istream& in);

std::vector<std::string> split_ws(const std::string& line);

}  // namespace csgen

#endif  // CSGEN_CORPUS_IO_HPP_
