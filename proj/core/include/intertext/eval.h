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

#ifndef INTERTEXT_EVAL_H_
#define INTERTEXT_EVAL_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intertext/corpus.h"
#include "intertext/encoder.h"
#include "intertext/index.h"
#include "intertext/language.h"
#include "intertext/matrix.h"

namespace intertext::eval {

struct Direction {
  Language from;
  Language to;

  // "en→la"
  std::string label() const;
  bool operator==(const Direction&) const = default;
};

// Accepts "en→la", "en->la" and "en-la".
Direction parse_direction(std::string_view text);
// Comma-separated list of directions.
std::vector<Direction> parse_directions(std::string_view text);

// Fraction of rows i whose cosine to tgt_i strictly exceeds the cosine to
// every other tgt_j; a tie at the maximum counts as a miss. One direction
// only (src queries, tgt candidates).
double translation_accuracy(const Matrix& src, const Matrix& tgt);

struct EvalReport {
  std::string dataset;
  std::vector<std::pair<std::string, double>> accuracy;  // direction -> [0,1]
  std::size_t n = 0;
};

// Maps a batch of texts to one embedding row per text.
using Embedder = std::function<Matrix(std::span<const std::string>)>;

// Embeds both sides of `test_pairs` (which must share one language pair)
// and scores each requested direction.
EvalReport evaluate(const Embedder& embed, std::span<const corpus::PairRecord> test_pairs,
                    std::span<const Direction> directions, std::string dataset);
EvalReport evaluate_model(const encoder::StudentModel& model,
                          std::span<const corpus::PairRecord> test_pairs,
                          std::span<const Direction> directions,
                          std::string dataset);

struct CaseStudyHit {
  index::Hit hit;
  std::string text;
};

struct CaseStudyRow {
  std::string query_id;
  std::string query_text;
  std::size_t k = 0;
  std::vector<CaseStudyHit> hits;
};

// Encodes each query line, searches `target_index` and resolves hit ids to
// the texts in `target_lines` (ids are citation keys). Rows follow query
// order.
std::vector<CaseStudyRow> run_case_study(std::span<const corpus::CitedLine> queries,
                                         const index::VectorIndex& target_index,
                                         std::span<const corpus::CitedLine> target_lines,
                                         const encoder::StudentModel& model,
                                         std::size_t k);

enum class Format { kTsv, kMarkdown, kJson };
Format parse_format(std::string_view name);

// Accuracy as a percentage with two decimals, e.g. 0.969 -> "96.90".
std::string format_percent(double accuracy);

std::string render_report(const EvalReport& report, Format format);
// One table (TSV, Markdown) or one JSON object per line for several reports.
std::string render_reports(std::span<const EvalReport> reports, Format format);
std::string render_case_study(std::span<const CaseStudyRow> rows, Format format);

}  // namespace intertext::eval

#endif  // INTERTEXT_EVAL_H_
