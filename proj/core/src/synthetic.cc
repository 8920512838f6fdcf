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

#include "intertext/synthetic.h"

#include <cstdio>
#include <set>
#include <string_view>
#include <unordered_set>

#include "intertext/error.h"
#include "intertext/random.h"
#include "intertext/unicode.h"

namespace intertext::synthetic {
namespace {

struct Phonology {
  std::vector<std::string_view> onsets;
  std::vector<std::string_view> vowels;
  std::vector<std::string_view> endings;
};

const Phonology& english() {
  static const Phonology p{
      {"b", "d", "f", "g", "h", "k", "l", "m", "n", "p", "r", "s", "t", "w",
       "sh", "th", "st", "br", "gr", "pl"},
      {"a", "e", "i", "o", "u", "ee", "oo", "ai"},
      {"", "", "", "s", "ed", "ing", "er", "ly"}};
  return p;
}

const Phonology& latin() {
  static const Phonology p{
      {"c", "d", "f", "g", "l", "m", "n", "p", "qu", "r", "s", "t", "v", "x",
       "tr", "pr", "cr", "sp"},
      {"a", "e", "i", "o", "u", "ae", "au"},
      {"us", "um", "a", "is", "em", "ibus", "orum", "it", "ant"}};
  return p;
}

// Base letters are combined with decomposed diacritics; the rendered text is
// NFC-normalized afterwards, which exercises composition.
const Phonology& greek() {
  static const Phonology p{
      {"β", "γ", "δ", "θ", "κ", "λ", "μ", "ν", "ξ", "π", "ρ", "σ", "τ", "φ",
       "χ", "ψ", "στ", "κρ"},
      {"α", "ε", "η", "ι", "ο", "υ", "ω", "ά", "ἐ", "ῶ",
       "ό", "ἡ"},
      {"ος", "ον", "ης", "ων", "ει", "αι", "ους", ""}};
  return p;
}

std::string make_word(Rng& rng, const Phonology& p) {
  std::string word;
  const std::size_t syllables = 1 + rng.below(3);
  for (std::size_t s = 0; s < syllables; ++s) {
    word += p.onsets[rng.below(p.onsets.size())];
    word += p.vowels[rng.below(p.vowels.size())];
  }
  word += p.endings[rng.below(p.endings.size())];
  return word;
}

std::vector<std::string> make_lexicon(Rng& rng, const Phonology& p, std::size_t size) {
  std::vector<std::string> lexicon;
  std::unordered_set<std::string> seen;
  while (lexicon.size() < size) {
    std::string word = unicode::nfc(make_word(rng, p));
    if (seen.insert(word).second) lexicon.push_back(std::move(word));
  }
  return lexicon;
}

std::string render(const std::vector<std::size_t>& tokens,
                   const std::vector<std::string>& lexicon) {
  std::string out;
  for (std::size_t t : tokens) {
    if (!out.empty()) out += ' ';
    out += lexicon[t];
  }
  return out;
}

std::string random_text(Rng& rng) {
  static constexpr std::string_view kLetters = "abcdefghijklmnopqrstuvwxyz";
  std::string out;
  const std::size_t words = 3 + rng.below(6);
  for (std::size_t w = 0; w < words; ++w) {
    if (w) out += ' ';
    const std::size_t len = 2 + rng.below(7);
    for (std::size_t i = 0; i < len; ++i) out += kLetters[rng.below(kLetters.size())];
  }
  return out;
}

}  // namespace

std::vector<SyntheticSentence> generate(const SyntheticConfig& config) {
  if (config.vocabulary == 0 || config.min_tokens == 0 ||
      config.min_tokens > config.max_tokens) {
    throw Error("synthetic: need vocabulary > 0 and 0 < min_tokens <= max_tokens");
  }
  Rng rng(config.seed);
  const auto en = make_lexicon(rng, english(), config.vocabulary);
  const auto la = make_lexicon(rng, latin(), config.vocabulary);
  const auto grc = make_lexicon(rng, greek(), config.vocabulary);

  std::vector<SyntheticSentence> out;
  out.reserve(config.sentences);
  std::set<std::vector<std::size_t>> seen;
  std::size_t attempts = 0;
  while (out.size() < config.sentences) {
    if (++attempts > 100 * (config.sentences + 1)) {
      throw Error("synthetic: cannot draw enough distinct sentences");
    }
    const std::size_t len =
        config.min_tokens + rng.below(config.max_tokens - config.min_tokens + 1);
    std::vector<std::size_t> tokens(len);
    for (std::size_t& t : tokens) t = rng.below(config.vocabulary);
    if (!seen.insert(tokens).second) continue;

    char id[32];
    std::snprintf(id, sizeof id, "syn%05zu", out.size());
    out.push_back({id, render(tokens, en), render(tokens, la), render(tokens, grc)});
  }
  return out;
}

std::vector<corpus::PairRecord> to_pairs(std::span<const SyntheticSentence> sentences) {
  std::vector<corpus::PairRecord> pairs;
  pairs.reserve(2 * sentences.size());
  for (const SyntheticSentence& s : sentences) {
    pairs.push_back({s.id + ":la", Language::kEn, Language::kLa, s.en, s.la,
                     corpus::SourceCorpus::kSynthetic, false});
    pairs.push_back({s.id + ":grc", Language::kEn, Language::kGrc, s.en, s.grc,
                     corpus::SourceCorpus::kSynthetic, false});
  }
  return pairs;
}

std::vector<corpus::PairRecord> random_pairs(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<corpus::PairRecord> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "rnd%05zu", i);
    std::string src = random_text(rng);
    std::string tgt = random_text(rng);
    pairs.push_back({id, Language::kEn, Language::kLa, std::move(src), std::move(tgt),
                     corpus::SourceCorpus::kOther, false});
  }
  return pairs;
}

}  // namespace intertext::synthetic
