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

#ifndef CSGEN_UTF8_HPP_
#define CSGEN_UTF8_HPP_

#include <cstddef>
#include <string_view>

namespace csgen::utf8 {

// Byte counting is enough almost everywhere; codepoints only matter for the
// segmenter's minimum-stem-length rule. Input is trusted UTF-8 (pass-through
// by design); stray continuation bytes just count as width-1 units.

inline bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

inline std::size_t codepoint_count(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if (!is_continuation(c)) ++n;
  return n;
}

}  // namespace csgen::utf8

#endif  // CSGEN_UTF8_HPP_
