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

#ifndef GRAPHLIN_TESTS_SUPPORT_FIXTURES_H_
#define GRAPHLIN_TESTS_SUPPORT_FIXTURES_H_

#include <string_view>

namespace graphlin::testing {

// Three linearizations of "The film is a dream and, like a dream, is both
// fascinating and disturbing."
inline constexpr std::string_view kFilmCanonical = R"((a / and
  :op1 (d / dream-01
      :ARG1 (f / film
          :ARG0-of (d2 / disturb-01))
      :ARG2-of (r / resemble-01
            :ARG1 a2))
  :op2 (a2 / and
      :op1 (f2 / fascinate-01
           :ARG0 f)
      :op2 d2)))";

inline constexpr std::string_view kFilmReconfigured = R"((a / and
  :op1 (d / dream-01
      :ARG2-of (r / resemble-01)
      :ARG1 (f / film
          :ARG0-of (f2 / fascinate-01)
          :ARG0-of d2))
  :op2 (a2 / and
      :op2 (d2 / disturb-01)
      :op1 f2
      :ARG1-of r)))";

inline constexpr std::string_view kFilmRandomized = R"((r / resemble-01
  :ARG2 (d / dream-01
      :op1-of (a / and
            :op2 a2)
      :ARG1 (f / film))
  :ARG1 (a2 / and
       :op1 (f2 / fascinate-01
           :ARG0 f)
       :op2 (d2 / disturb-01
           :ARG0 f))))";

inline constexpr std::string_view kFilmSentence =
    "The film is a dream and , like a dream , is both fascinating and disturbing .";

}  // namespace graphlin::testing

#endif  // GRAPHLIN_TESTS_SUPPORT_FIXTURES_H_
