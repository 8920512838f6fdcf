// Copyright 2026 The Intertext Authors.
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

#ifndef INTERTEXT_RANDOM_H_
#define INTERTEXT_RANDOM_H_

#include <cstdint>
#include <span>
#include <utility>

namespace intertext {

// xoshiro256** seeded through splitmix64. Every consumer of randomness
// (splits, shuffles, initialization, synthetic data) draws from this
// generator so results are reproducible from a single 64-bit seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  // Uniform integer in [0, bound) by rejection; bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Fisher-Yates, iterating i = n-1 .. 1 and swapping with below(i + 1).
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

}  // namespace intertext

#endif  // INTERTEXT_RANDOM_H_
