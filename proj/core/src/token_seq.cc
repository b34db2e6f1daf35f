// Copyright 2026 The Graphlin Authors.
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

#include "graphlin/token_seq.h"

#include <cctype>

namespace graphlin {

bool IsSpecialToken(std::string_view token) {
  return token == kMaskToken || token == kRelToken || token == kSubjectToken ||
         token == kPredicateToken || token == kObjectToken || token == kSeparatorToken;
}

std::string TokenSeq::Join() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

TokenSeq TokenSeq::Split(std::string_view text) {
  TokenSeq seq;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    std::size_t start = i;
    if (text[i] == '"') {
      ++i;
      while (i < n && text[i] != '"') {
        if (text[i] == '\\' && i + 1 < n) ++i;
        ++i;
      }
      if (i < n) ++i;
    }
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    seq.tokens.emplace_back(text.substr(start, i - start));
  }
  return seq;
}

bool TokenSeq::ParenthesesBalanced() const {
  long depth = 0;
  for (const std::string& t : tokens) {
    if (t == "(") ++depth;
    if (t == ")" && --depth < 0) return false;
  }
  return depth == 0;
}

}  // namespace graphlin
