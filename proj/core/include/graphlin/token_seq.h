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

#ifndef GRAPHLIN_TOKEN_SEQ_H_
#define GRAPHLIN_TOKEN_SEQ_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace graphlin {

// Reserved special tokens.
inline constexpr std::string_view kMaskToken = "<M>";
inline constexpr std::string_view kRelToken = "<rel>";
inline constexpr std::string_view kSubjectToken = "<S>";
inline constexpr std::string_view kPredicateToken = "<V>";
inline constexpr std::string_view kObjectToken = "<O>";
inline constexpr std::string_view kSeparatorToken = "<sep>";

bool IsSpecialToken(std::string_view token);

// A whitespace-delimited model input. Double-quoted literals are single
// tokens and may contain spaces, so Split(Join()) is the identity.
struct TokenSeq {
  std::vector<std::string> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens[i]; }

  std::string Join() const;
  static TokenSeq Split(std::string_view text);

  // Every ')' closes an earlier '(' and all are closed at the end.
  bool ParenthesesBalanced() const;

  bool operator==(const TokenSeq&) const = default;
};

}  // namespace graphlin

#endif  // GRAPHLIN_TOKEN_SEQ_H_
