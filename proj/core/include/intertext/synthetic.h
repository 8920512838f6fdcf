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

#ifndef INTERTEXT_SYNTHETIC_H_
#define INTERTEXT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "intertext/corpus.h"

// Synthetic trilingual parallel data. Each sentence is a latent token
// sequence rendered through three independent random lexicons: lowercase
// Latin-script words for "en" and "la" (different syllable inventories and
// inflectional endings) and polytonic Greek-script words for "grc". No
// surface form is shared between languages, so only training can align them.
namespace intertext::synthetic {

struct SyntheticConfig {
  std::size_t sentences = 3000;
  std::size_t vocabulary = 600;
  std::size_t min_tokens = 5;
  std::size_t max_tokens = 10;
  std::uint64_t seed = 1;
};

struct SyntheticSentence {
  std::string id;
  std::string en;
  std::string la;
  std::string grc;
};

// Distinct latent sentences with ids "syn00000", "syn00001", ...
std::vector<SyntheticSentence> generate(const SyntheticConfig& config);

// Two pairs per sentence: (en, la) with id "<id>:la" and (en, grc) with id
// "<id>:grc", both tagged source "synthetic".
std::vector<corpus::PairRecord> to_pairs(std::span<const SyntheticSentence> sentences);

// Pairs of random, unrelated strings ("en" -> "la"), for baseline tests.
std::vector<corpus::PairRecord> random_pairs(std::size_t count, std::uint64_t seed);

}  // namespace intertext::synthetic

#endif  // INTERTEXT_SYNTHETIC_H_
