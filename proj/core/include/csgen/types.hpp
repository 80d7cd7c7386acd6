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

#ifndef CSGEN_TYPES_HPP_
#define CSGEN_TYPES_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace csgen {

enum class Lang : std::uint8_t { AR, EN };

inline const char* lang_code(Lang l) { return l == Lang::AR ? "AR" : "EN"; }

inline std::optional<Lang> lang_from_code(const std::string& s) {
  if (s == "AR") return Lang::AR;
  if (s == "EN") return Lang::EN;
  return std::nullopt;
}

/// One surface token. is_morpheme marks pieces produced by Arabic
/// segmentation; those carry '+' join markers on the re-attachment side.
struct Token {
  std::string surface;
  Lang lang = Lang::AR;
  bool is_morpheme = false;

  bool operator==(const Token&) const = default;
};

inline Token ar_token(std::string s, bool morpheme = false) {
  return Token{std::move(s), Lang::AR, morpheme};
}
inline Token en_token(std::string s) { return Token{std::move(s), Lang::EN, false}; }

/// Link between src (English) position and tgt (Arabic) position, 0-based.
struct AlignmentLink {
  int src_index = 0;
  int tgt_index = 0;

  bool operator==(const AlignmentLink&) const = default;
  bool operator<(const AlignmentLink& o) const {
    return src_index != o.src_index ? src_index < o.src_index : tgt_index < o.tgt_index;
  }
};

using AlignmentSet = std::set<AlignmentLink>;

/// A parallel sentence: English source tokens, Arabic target tokens
/// (possibly segmented into morphemes) and optional word alignments.
struct SentencePair {
  std::string id;
  std::vector<Token> src_tokens;  // English
  std::vector<Token> tgt_tokens;  // Arabic
  std::optional<AlignmentSet> alignment;
};

/// Thrown on malformed external input; line is 1-based when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, long line = -1)
      : std::runtime_error(line >= 0 ? msg + " at line " + std::to_string(line) : msg),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

inline std::vector<std::string> surfaces(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  out.reserve(toks.size());
  for (const auto& t : toks) out.push_back(t.surface);
  return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace csgen

#endif  // CSGEN_TYPES_HPP_
