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

#include "intertext/eval.h"

#include <cstdio>
#include <unordered_map>

#include "intertext/error.h"
#include "json.hpp"

namespace intertext::eval {
namespace {

using nlohmann::ordered_json;

Language language_or_throw(std::string_view code, std::string_view context) {
  auto lang = parse_language(code);
  if (!lang) {
    throw Error("unknown language \"" + std::string(code) + "\" in \"" +
                std::string(context) + "\"");
  }
  return *lang;
}

std::string markdown_cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string tsv_cell(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", score);
  return buf;
}

}  // namespace

std::string Direction::label() const {
  return std::string(to_string(from)) + "→" + std::string(to_string(to));
}

Direction parse_direction(std::string_view text) {
  for (std::string_view sep : {"→", "->", "-"}) {
    if (auto pos = text.find(sep); pos != std::string_view::npos) {
      Direction d{language_or_throw(text.substr(0, pos), text),
                  language_or_throw(text.substr(pos + sep.size()), text)};
      if (d.from == d.to) throw Error("direction \"" + std::string(text) + "\" is reflexive");
      return d;
    }
  }
  throw Error("cannot parse direction \"" + std::string(text) + "\"");
}

std::vector<Direction> parse_directions(std::string_view text) {
  std::vector<Direction> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start);
    if (!item.empty()) out.push_back(parse_direction(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double translation_accuracy(const Matrix& src, const Matrix& tgt) {
  if (src.rows() != tgt.rows() || src.cols() != tgt.cols()) {
    throw Error("translation_accuracy: shape mismatch");
  }
  if (src.rows() == 0) throw Error("translation_accuracy: empty matrices");
  std::vector<std::string> ids(tgt.rows());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = std::to_string(i);
  const index::VectorIndex candidates = index::build(std::move(ids), tgt);

  std::size_t correct = 0;
  for (std::size_t i = 0; i < src.rows(); ++i) {
    const std::vector<double> scores = candidates.scores(src.row(i));
    bool best = true;
    for (std::size_t j = 0; j < scores.size() && best; ++j) {
      if (j != i && scores[j] >= scores[i]) best = false;
    }
    if (best) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(src.rows());
}

EvalReport evaluate(const Embedder& embed, std::span<const corpus::PairRecord> test_pairs,
                    std::span<const Direction> directions, std::string dataset) {
  if (test_pairs.empty()) throw Error("evaluate: empty test set");
  const Language a = test_pairs.front().lang_src;
  const Language b = test_pairs.front().lang_tgt;
  std::vector<std::string> src_texts, tgt_texts;
  src_texts.reserve(test_pairs.size());
  tgt_texts.reserve(test_pairs.size());
  for (const corpus::PairRecord& p : test_pairs) {
    if (p.lang_src != a || p.lang_tgt != b) {
      throw Error("evaluate: test pairs mix language pairs (pair " + p.id + ")");
    }
    src_texts.push_back(p.text_src);
    tgt_texts.push_back(p.text_tgt);
  }
  for (const Direction& d : directions) {
    if (!((d.from == a && d.to == b) || (d.from == b && d.to == a))) {
      throw Error("evaluate: direction " + d.label() + " not covered by " +
                  std::string(to_string(a)) + "/" + std::string(to_string(b)) +
                  " test pairs");
    }
  }

  EvalReport report;
  report.dataset = std::move(dataset);
  report.n = test_pairs.size();
  if (directions.empty()) return report;

  const Matrix src = embed(src_texts);
  const Matrix tgt = embed(tgt_texts);
  for (const Direction& d : directions) {
    const bool forward = d.from == a;
    report.accuracy.emplace_back(d.label(), forward ? translation_accuracy(src, tgt)
                                                    : translation_accuracy(tgt, src));
  }
  return report;
}

EvalReport evaluate_model(const encoder::StudentModel& model,
                          std::span<const corpus::PairRecord> test_pairs,
                          std::span<const Direction> directions,
                          std::string dataset) {
  return evaluate(
      [&model](std::span<const std::string> texts) { return model.encode_batch(texts); },
      test_pairs, directions, std::move(dataset));
}

std::vector<CaseStudyRow> run_case_study(std::span<const corpus::CitedLine> queries,
                                         const index::VectorIndex& target_index,
                                         std::span<const corpus::CitedLine> target_lines,
                                         const encoder::StudentModel& model,
                                         std::size_t k) {
  if (queries.empty()) throw Error("case study: empty query document");
  if (k == 0) throw Error("case study: k must be at least 1");
  std::unordered_map<std::string_view, std::string_view> texts;
  for (const corpus::CitedLine& line : target_lines) {
    texts.emplace(line.citation_key, line.text);
  }

  std::vector<CaseStudyRow> rows;
  rows.reserve(queries.size());
  for (const corpus::CitedLine& q : queries) {
    CaseStudyRow row{q.citation_key, q.text, k, {}};
    for (index::Hit& hit : target_index.top_k(model.encode(q.text), k)) {
      auto it = texts.find(hit.id);
      if (it == texts.end()) {
        throw Error("case study: no target text for hit \"" + hit.id + "\"");
      }
      row.hits.push_back({std::move(hit), std::string(it->second)});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Format parse_format(std::string_view name) {
  if (name == "tsv") return Format::kTsv;
  if (name == "markdown" || name == "md") return Format::kMarkdown;
  if (name == "json") return Format::kJson;
  throw Error("unknown format \"" + std::string(name) + "\" (tsv, markdown, json)");
}

std::string format_percent(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", accuracy * 100.0);
  return buf;
}

std::string render_reports(std::span<const EvalReport> reports, Format format) {
  std::string out;
  if (format == Format::kTsv) out = "dataset\tdirection\tn\taccuracy\n";
  if (format == Format::kMarkdown) {
    out = "| Dataset | Direction | N | Accuracy |\n|---|---|---:|---:|\n";
  }
  for (const EvalReport& report : reports) {
    for (const auto& [direction, acc] : report.accuracy) {
      if (format == Format::kTsv) {
        out += tsv_cell(report.dataset) + '\t' + direction + '\t' +
               std::to_string(report.n) + '\t' + format_percent(acc) + '\n';
      } else if (format == Format::kMarkdown) {
        out += "| " + markdown_cell(report.dataset) + " | " + direction + " | " +
               std::to_string(report.n) + " | " + format_percent(acc) + " |\n";
      }
    }
    if (format == Format::kJson) {
      ordered_json obj;
      obj["dataset"] = report.dataset;
      obj["n"] = report.n;
      obj["accuracy"] = ordered_json::object();
      for (const auto& [direction, acc] : report.accuracy) obj["accuracy"][direction] = acc;
      out += obj.dump() + '\n';
    }
  }
  return out;
}

std::string render_report(const EvalReport& report, Format format) {
  return render_reports(std::span<const EvalReport>(&report, 1), format);
}

std::string render_case_study(std::span<const CaseStudyRow> rows, Format format) {
  std::string out;
  switch (format) {
    case Format::kTsv:
      out = "query_id\tquery\trank\thit_id\thit\tscore\n";
      for (const CaseStudyRow& row : rows) {
        for (const CaseStudyHit& h : row.hits) {
          out += tsv_cell(row.query_id) + '\t' + tsv_cell(row.query_text) + '\t' +
                 std::to_string(h.hit.rank + 1) + '\t' + tsv_cell(h.hit.id) + '\t' +
                 tsv_cell(h.text) + '\t' + format_score(h.hit.score) + '\n';
        }
      }
      break;
    case Format::kMarkdown:
      out = "| Query | Rank | Hit | Score |\n|---|---:|---|---:|\n";
      for (const CaseStudyRow& row : rows) {
        for (const CaseStudyHit& h : row.hits) {
          const std::string query =
              h.hit.rank == 0 ? markdown_cell(row.query_text) + " (" +
                                    markdown_cell(row.query_id) + ")"
                              : std::string();
          out += "| " + query + " | " + std::to_string(h.hit.rank + 1) + " | " +
                 markdown_cell(h.text) + " (" + markdown_cell(h.hit.id) + ") | " +
                 format_score(h.hit.score) + " |\n";
        }
      }
      break;
    case Format::kJson: {
      ordered_json arr = ordered_json::array();
      for (const CaseStudyRow& row : rows) {
        ordered_json obj;
        obj["query_id"] = row.query_id;
        obj["query"] = row.query_text;
        obj["k"] = row.k;
        obj["hits"] = ordered_json::array();
        for (const CaseStudyHit& h : row.hits) {
          obj["hits"].push_back(
              {{"id", h.hit.id}, {"score", h.hit.score}, {"rank", h.hit.rank}, {"text", h.text}});
        }
        arr.push_back(std::move(obj));
      }
      out = arr.dump() + '\n';
      break;
    }
  }
  return out;
}

}  // namespace intertext::eval
