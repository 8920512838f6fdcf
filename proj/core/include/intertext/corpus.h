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

#ifndef INTERTEXT_CORPUS_H_
#define INTERTEXT_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "intertext/language.h"

// Parallel sentence data: ingest, alignment, dedup, augmentation, splits and
// word statistics. Every function here is pure over its inputs.
namespace intertext::corpus {

enum class SourceCorpus { kPerseus, kBible, kOpus, kRosenthal, kSynthetic, kOther };

std::string_view to_string(SourceCorpus source);
std::optional<SourceCorpus> parse_source_corpus(std::string_view name);

// One aligned sentence pair. Texts are NFC and non-empty after trimming,
// and the two languages differ.
struct PairRecord {
  std::string id;
  Language lang_src = Language::kEn;
  Language lang_tgt = Language::kLa;
  std::string text_src;
  std::string text_tgt;
  SourceCorpus source_corpus = SourceCorpus::kOther;
  bool synthetic = false;  // one side is machine-translated

  bool operator==(const PairRecord&) const = default;
};

// One line of a cited document, e.g. "1.23" -> verse text.
struct CitedLine {
  std::string citation_key;
  std::string text;

  bool operator==(const CitedLine&) const = default;
};

struct SplitSpec {
  std::uint64_t seed = 0;
  std::size_t n_test = 0;
  std::size_t n_val = 0;
};

// Throws intertext::Error if `pair` violates a PairRecord invariant.
// Does not check id uniqueness (a dataset-level property).
void validate(const PairRecord& pair);

// JSON Lines, one PairRecord object per line:
//   {"id", "lang_src", "lang_tgt", "text_src", "text_tgt",
//    "source_corpus" (optional, default "other"),
//    "synthetic" (optional, default false)}
// Blank lines are skipped. Errors name the 1-based line number.
std::vector<PairRecord> parse_pairs_jsonl(std::istream& in);
std::vector<PairRecord> parse_pairs_jsonl(const std::filesystem::path& path);
void write_pairs_jsonl(std::ostream& out, std::span<const PairRecord> pairs);
void write_pairs_jsonl(const std::filesystem::path& path,
                       std::span<const PairRecord> pairs);

// {"key", "text"} per line.
std::vector<CitedLine> parse_cited_lines_jsonl(std::istream& in);
std::vector<CitedLine> parse_cited_lines_jsonl(const std::filesystem::path& path);
void write_cited_lines_jsonl(std::ostream& out, std::span<const CitedLine> lines);

// {"id", "text"} per line; used for translation maps and sentence lists.
std::vector<std::pair<std::string, std::string>> parse_id_text_jsonl(
    std::istream& in);
std::vector<std::pair<std::string, std::string>> parse_id_text_jsonl(
    const std::filesystem::path& path);

struct Alignment {
  std::vector<PairRecord> aligned;
  std::size_t discarded = 0;  // keys present in only one document
};

// Exact citation-key matching. Output follows `src` order; pair ids are
// "<source_corpus>:<key>".
Alignment align_lines(std::span<const CitedLine> src,
                      std::span<const CitedLine> tgt, Language lang_src,
                      Language lang_tgt, SourceCorpus source);

// Case-folded, whitespace-collapsed, NFC form of both sides plus the
// language tags. Diacritics are kept.
std::vector<std::string> dedup_key(const PairRecord& pair);

// Drops later records whose dedup_key was already seen.
std::vector<PairRecord> deduplicate(std::span<const PairRecord> pairs);

// For each en<->la base pair with an Ancient Greek translation, emits the
// original followed by synthetic (en, grc) and (la, grc) records with ids
// "<id>:en-grc" and "<id>:la-grc". Throws listing orphan translation ids.
std::vector<PairRecord> merge_augmented(
    std::span<const PairRecord> base,
    const std::map<std::string, std::string>& translations);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

// Seeded Fisher-Yates permutation of 0..n-1; the first n_test indices form
// the test set, the next n_val the validation set, the rest training.
SplitIndices split_indices(std::size_t n, const SplitSpec& spec);

struct Split {
  std::vector<PairRecord> train;
  std::vector<PairRecord> val;
  std::vector<PairRecord> test;
};

Split split(std::span<const PairRecord> pairs, const SplitSpec& spec);

// Whitespace-delimited words per language over both sides of every pair.
// All three languages are always present.
std::map<Language, std::uint64_t> stats(std::span<const PairRecord> pairs);
std::string stats_json(const std::map<Language, std::uint64_t>& counts);

}  // namespace intertext::corpus

#endif  // INTERTEXT_CORPUS_H_
