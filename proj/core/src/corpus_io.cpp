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

#include "csgen/corpus_io.hpp"

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace csgen {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

namespace {

// '+' join markers at word edges identify segmentation morphemes; the
// flag is recovered from the surface so it survives file round-trips.
// Only the Arabic side is ever segmented.
bool marked_morpheme(const std::string& surface, Lang lang) {
  return lang == Lang::AR && surface.size() > 1 &&
         (surface.front() == '+' || surface.back() == '+');
}

std::vector<Token> make_tokens(const std::vector<std::string>& words, Lang lang) {
  std::vector<Token> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(Token{w, lang, marked_morpheme(w, lang)});
  return out;
}

bool blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

SentencePair make_pair(const std::string& src_text, const std::string& tgt_text,
                       long line_no, const ParallelFormat& fmt) {
  SentencePair p;
  p.id = fmt.numbered_ids ? std::to_string(line_no) : "";
  p.src_tokens = make_tokens(split_ws(src_text), Lang::EN);
  p.tgt_tokens = make_tokens(split_ws(tgt_text), Lang::AR);
  if (p.src_tokens.empty()) throw ParseError("empty source side", line_no);
  if (p.tgt_tokens.empty()) throw ParseError("empty target side", line_no);
  return p;
}

}  // namespace

std::vector<SentencePair> read_parallel(std::istream& in, const ParallelFormat& fmt) {
  std::vector<SentencePair> pairs;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("missing tab separator", line_no);
    pairs.push_back(make_pair(line.substr(0, tab), line.substr(tab + 1), line_no, fmt));
  }
  return pairs;
}

std::vector<SentencePair> read_parallel_files(std::istream& src, std::istream& tgt,
                                              const ParallelFormat& fmt) {
  std::vector<SentencePair> pairs;
  std::string sline, tline;
  long line_no = 0;
  while (true) {
    const bool got_s = static_cast<bool>(std::getline(src, sline));
    const bool got_t = static_cast<bool>(std::getline(tgt, tline));
    ++line_no;
    if (!got_s && !got_t) break;
    if (got_s != got_t) throw ParseError("line count mismatch", line_no);
    pairs.push_back(make_pair(sline, tline, line_no, fmt));
  }
  return pairs;
}

AlignmentSet read_pharaoh(const std::string& line) {
  AlignmentSet links;
  for (const auto& item : split_ws(line)) {
    const auto dash = item.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= item.size())
      throw ParseError("malformed alignment pair '" + item + "'");
    int i = 0, j = 0;
    try {
      std::size_t used_i = 0, used_j = 0;
      i = std::stoi(item.substr(0, dash), &used_i);
      j = std::stoi(item.substr(dash + 1), &used_j);
      if (used_i != dash || used_j != item.size() - dash - 1)
        throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw ParseError("malformed alignment pair '" + item + "'");
    }
    if (i < 0 || j < 0) throw ParseError("malformed alignment pair '" + item + "'");
    links.insert(AlignmentLink{i, j});
  }
  return links;
}

std::string to_pharaoh(const AlignmentSet& links) {
  std::string out;
  for (const auto& l : links) {
    if (!out.empty()) out += ' ';
    out += std::to_string(l.src_index) + "-" + std::to_string(l.tgt_index);
  }
  return out;
}

void check_alignment_bounds(const AlignmentSet& links, const SentencePair& pair,
                            long line) {
  for (const auto& l : links) {
    if (l.src_index >= static_cast<int>(pair.src_tokens.size()) ||
        l.tgt_index >= static_cast<int>(pair.tgt_tokens.size()))
      throw ParseError("alignment index out of range: " + std::to_string(l.src_index) +
                           "-" + std::to_string(l.tgt_index),
                       line);
  }
}

namespace {

struct PtbParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit PtbParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  std::string read_atom() {
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    return text.substr(start, pos - start);
  }

  ParseTree parse_node(int& next_leaf) {
    skip_ws();
    if (pos >= text.size() || text[pos] != '(')
      throw ParseError("expected '(' in tree");
    ++pos;  // consume '('
    skip_ws();
    ParseTree node;
    node.label = read_atom();  // may be empty: "( (S ...))" root style
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      if (text[pos] == '(') {
        node.children.push_back(parse_node(next_leaf));
      } else {
        const std::string word = read_atom();
        if (word.empty()) throw ParseError("unexpected character in tree");
        ParseTree leaf;
        leaf.label = word;
        leaf.span_begin = next_leaf;
        leaf.span_end = ++next_leaf;
        node.children.push_back(std::move(leaf));
      }
      skip_ws();
    }
    if (pos >= text.size()) throw ParseError("unbalanced brackets in tree");
    ++pos;  // consume ')'
    if (node.children.empty())
      throw ParseError("empty constituent '" + node.label + "'");
    node.span_begin = node.children.front().span_begin;
    node.span_end = node.children.back().span_end;
    return node;
  }
};

}  // namespace

ParseTree read_ptb(const std::string& text) {
  PtbParser parser(text);
  int next_leaf = 0;
  ParseTree root = parser.parse_node(next_leaf);
  parser.skip_ws();
  if (parser.pos != text.size()) throw ParseError("unbalanced brackets in tree");
  return root;
}

std::string to_ptb(const ParseTree& tree) {
  if (tree.is_leaf()) return tree.label;
  std::string out = "(" + tree.label;
  for (const auto& c : tree.children) {
    out += ' ';
    out += to_ptb(c);
  }
  out += ')';
  return out;
}

std::vector<std::string> tree_leaves(const ParseTree& tree) {
  std::vector<std::string> out;
  struct Walker {
    std::vector<std::string>& out;
    void operator()(const ParseTree& n) {
      if (n.is_leaf()) {
        out.push_back(n.label);
        return;
      }
      for (const auto& c : n.children) (*this)(c);
    }
  } walk{out};
  walk(tree);
  return out;
}

void write_cs_corpus(const std::vector<std::vector<Token>>& sentences,
                     std::ostream& out, bool tagged) {
  for (const auto& sent : sentences) {
    for (std::size_t i = 0; i < sent.size(); ++i) {
      if (i) out << ' ';
      out << sent[i].surface;
      if (tagged) out << '/' << lang_code(sent[i].lang);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("stream write failure");
}

std::vector<std::vector<Token>> read_cs_corpus(std::istream& in, bool tagged,
                                               Lang fallback_lang) {
  std::vector<std::vector<Token>> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::vector<Token> sent;
    for (const auto& item : split_ws(line)) {
      if (!tagged) {
        sent.push_back(Token{item, fallback_lang, marked_morpheme(item, fallback_lang)});
        continue;
      }
      const auto slash = item.rfind('/');
      if (slash == std::string::npos || slash == 0)
        throw ParseError("missing language tag on '" + item + "'", line_no);
      const auto lang = lang_from_code(item.substr(slash + 1));
      if (!lang) throw ParseError("unknown language tag on '" + item + "'", line_no);
      const std::string surface = item.substr(0, slash);
      const bool morph = marked_morpheme(surface, *lang);
      sent.push_back(Token{surface, *lang, morph});
    }
    out.push_back(std::move(sent));
  }
  return out;
}

std::vector<std::vector<std::string>> read_plain_corpus(std::istream& in) {
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = split_ws(line);
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

}  // namespace csgen
