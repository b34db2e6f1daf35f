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

#ifndef GRAPHLIN_RNG_H_
#define GRAPHLIN_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <iterator>
#include <string_view>
#include <utility>

namespace graphlin {

// Seeded generator with platform-independent draws. The engine is fully
// specified by the standard; the distributions are implemented here because
// the standard library ones are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform on [0, n). n must be positive.
  std::size_t UniformIndex(std::size_t n);

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform01();

  bool Bernoulli(double p) { return Uniform01() < p; }

  // Fisher-Yates over any random-access range.
  template <typename Range>
  void Shuffle(Range& items) {
    for (std::size_t i = std::size(items); i > 1; --i) {
      std::size_t j = UniformIndex(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);

// Per-example seed, independent of processing order.
std::uint64_t DeriveSeed(std::uint64_t base, std::string_view key, std::uint64_t epoch = 0,
                         std::uint64_t salt = 0);

}  // namespace graphlin

#endif  // GRAPHLIN_RNG_H_
