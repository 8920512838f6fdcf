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

#include "intertext/corpus.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "intertext/error.h"
#include "intertext/random.h"
#include "intertext/unicode.h"
#include "json.hpp"

namespace intertext::corpus {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::pair<SourceCorpus, std::string_view> kSourceNames[] = {
    {SourceCorpus::kPerseus, "perseus"}, {SourceCorpus::kBible, "bible"},
    {SourceCorpus::kOpus, "opus"},       {SourceCorpus::kRosenthal, "rosenthal"},
    {SourceCorpus::kSynthetic, "synthetic"}, {SourceCorpus::kOther, "other"},
};

[[noreturn]] void fail_at(std::size_t line, const std::string& message) {
  throw Error("line " + std::to_string(line) + ": " + message);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

// Calls fn(line_number, object) for every non-blank line.
template <typename Fn>
void for_each_json_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded()) fail_at(number, "malformed JSON");
    if (!obj.is_object()) fail_at(number, "expected a JSON object");
    fn(number, obj);
  }
}

std::string required_string(const json& obj, const char* field,
                            std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) {
    fail_at(line, std::string("missing string field \"") + field + "\"");
  }
  return it->get<std::string>();
}

Language required_language(const json& obj, const char* field,
                           std::size_t line) {
  std::string code = required_string(obj, field, line);
  auto lang = parse_language(code);
  if (!lang) fail_at(line, "unknown language code \"" + code + "\"");
  return *lang;
}

std::string normalized_text(const json& obj, const char* field,
                            std::size_t line) {
  try {
    return unicode::nfc(required_string(obj, field, line));
  } catch (const Error& e) {
    fail_at(line, std::string(field) + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(SourceCorpus source) {
  for (const auto& [value, name] : kSourceNames) {
    if (value == source) return name;
  }
  return "other";
}

std::optional<SourceCorpus> parse_source_corpus(std::string_view name) {
  for (const auto& [value, n] : kSourceNames) {
    if (n == name) return value;
  }
  return std::nullopt;
}

void validate(const PairRecord& pair) {
  if (pair.id.empty()) throw Error("pair id is empty");
  if (pair.lang_src == pair.lang_tgt) {
    throw Error("pair " + pair.id + ": lang_src equals lang_tgt (" +
                std::string(intertext::to_string(pair.lang_src)) + ")");
  }
  if (unicode::trim(pair.text_src).empty()) {
    throw Error("pair " + pair.id + ": text_src is empty");
  }
  if (unicode::trim(pair.text_tgt).empty()) {
    throw Error("pair " + pair.id + ": text_tgt is empty");
  }
  if (!unicode::is_nfc(pair.text_src) || !unicode::is_nfc(pair.text_tgt)) {
    throw Error("pair " + pair.id + ": text is not NFC");
  }
}

std::vector<PairRecord> parse_pairs_jsonl(std::istream& in) {
  std::vector<PairRecord> pairs;
  std::unordered_set<std::string> seen;
  for_each_json_line(in, [&](std::size_t line, const json& obj) {
    PairRecord p;
    p.id = required_string(obj, "id", line);
    p.lang_src = required_language(obj, "lang_src", line);
    p.lang_tgt = required_language(obj, "lang_tgt", line);
    p.text_src = normalized_text(obj, "text_src", line);
    p.text_tgt = normalized_text(obj, "text_tgt", line);
    if (auto it = obj.find("source_corpus"); it != obj.end()) {
      if (!it->is_string()) fail_at(line, "source_corpus must be a string");
      auto source = parse_source_corpus(it->get<std::string>());
      if (!source) {
        fail_at(line, "unknown source_corpus \"" + it->get<std::string>() + "\"");
      }
      p.source_corpus = *source;
    }
    if (auto it = obj.find("synthetic"); it != obj.end()) {
      if (!it->is_boolean()) fail_at(line, "synthetic must be a boolean");
      p.synthetic = it->get<bool>();
    }
    try {
      validate(p);
    } catch (const Error& e) {
      fail_at(line, e.what());
    }
    if (!seen.insert(p.id).second) fail_at(line, "duplicate id \"" + p.id + "\"");
    pairs.push_back(std::move(p));
  });
  return pairs;
}

std::vector<PairRecord> parse_pairs_jsonl(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse_pairs_jsonl(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_pairs_jsonl(std::ostream& out, std::span<const PairRecord> pairs) {
  for (const PairRecord& p : pairs) {
    ordered_json obj;
    obj["id"] = p.id;
    obj["lang_src"] = intertext::to_string(p.lang_src);
    obj["lang_tgt"] = intertext::to_string(p.lang_tgt);
    obj["text_src"] = p.text_src;
    obj["text_tgt"] = p.text_tgt;
    obj["source_corpus"] = to_string(p.source_corpus);
    obj["synthetic"] = p.synthetic;
    out << obj.dump() << '\n';
  }
}

void write_pairs_jsonl(const std::filesystem::path& path,
                       std::span<const PairRecord> pairs) {
  auto out = open_output(path);
  write_pairs_jsonl(out, pairs);
}

std::vector<CitedLine> parse_cited_lines_jsonl(std::istream& in) {
  std::vector<CitedLine> lines;
  for_each_json_line(in, [&](std::size_t line, const json& obj) {
    CitedLine c;
    c.citation_key = required_string(obj, "key", line);
    if (c.citation_key.empty()) fail_at(line, "empty citation key");
    c.text = normalized_text(obj, "text", line);
    lines.push_back(std::move(c));
  });
  return lines;
}

std::vector<CitedLine> parse_cited_lines_jsonl(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse_cited_lines_jsonl(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_cited_lines_jsonl(std::ostream& out, std::span<const CitedLine> lines) {
  for (const CitedLine& c : lines) {
    ordered_json obj;
    obj["key"] = c.citation_key;
    obj["text"] = c.text;
    out << obj.dump() << '\n';
  }
}

std::vector<std::pair<std::string, std::string>> parse_id_text_jsonl(
    std::istream& in) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::unordered_set<std::string> seen;
  for_each_json_line(in, [&](std::size_t line, const json& obj) {
    std::string id = required_string(obj, "id", line);
    if (!seen.insert(id).second) fail_at(line, "duplicate id \"" + id + "\"");
    rows.emplace_back(std::move(id), normalized_text(obj, "text", line));
  });
  return rows;
}

std::vector<std::pair<std::string, std::string>> parse_id_text_jsonl(
    const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse_id_text_jsonl(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

Alignment align_lines(std::span<const CitedLine> src,
                      std::span<const CitedLine> tgt, Language lang_src,
                      Language lang_tgt, SourceCorpus source) {
  auto index_keys = [](std::span<const CitedLine> doc, const char* which) {
    std::unordered_map<std::string_view, std::size_t> keys;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (!keys.emplace(doc[i].citation_key, i).second) {
        throw Error(std::string(which) + " document: duplicate citation key \"" +
                    doc[i].citation_key + "\"");
      }
    }
    return keys;
  };
  const auto src_keys = index_keys(src, "source");
  const auto tgt_keys = index_keys(tgt, "target");

  Alignment result;
  for (const CitedLine& line : src) {
    auto it = tgt_keys.find(line.citation_key);
    if (it == tgt_keys.end()) {
      ++result.discarded;
      continue;
    }
    PairRecord p;
    p.id = std::string(to_string(source)) + ":" + line.citation_key;
    p.lang_src = lang_src;
    p.lang_tgt = lang_tgt;
    p.text_src = unicode::nfc(line.text);
    p.text_tgt = unicode::nfc(tgt[it->second].text);
    p.source_corpus = source;
    result.aligned.push_back(std::move(p));
  }
  for (const CitedLine& line : tgt) {
    if (!src_keys.contains(line.citation_key)) ++result.discarded;
  }
  return result;
}

std::vector<std::string> dedup_key(const PairRecord& pair) {
  auto normalize = [](std::string_view text) {
    return unicode::nfc(unicode::collapse_whitespace(
        unicode::fold_case(unicode::nfc(text))));
  };
  return {std::string(intertext::to_string(pair.lang_src)),
          normalize(pair.text_src),
          std::string(intertext::to_string(pair.lang_tgt)),
          normalize(pair.text_tgt)};
}

std::vector<PairRecord> deduplicate(std::span<const PairRecord> pairs) {
  std::set<std::vector<std::string>> seen;
  std::vector<PairRecord> out;
  for (const PairRecord& p : pairs) {
    if (seen.insert(dedup_key(p)).second) out.push_back(p);
  }
  return out;
}

std::vector<PairRecord> merge_augmented(
    std::span<const PairRecord> base,
    const std::map<std::string, std::string>& translations) {
  std::unordered_set<std::string_view> base_ids;
  for (const PairRecord& p : base) base_ids.insert(p.id);
  std::vector<std::string> orphans;
  for (const auto& [id, text] : translations) {
    if (!base_ids.contains(id)) orphans.push_back(id);
  }
  if (!orphans.empty()) {
    std::string list;
    for (const std::string& id : orphans) list += (list.empty() ? "" : ", ") + id;
    throw Error("translations without a base pair: " + list);
  }

  std::vector<PairRecord> out;
  out.reserve(base.size() + 2 * translations.size());
  for (const PairRecord& p : base) {
    out.push_back(p);
    auto it = translations.find(p.id);
    if (it == translations.end()) continue;

    const bool en_la = p.lang_src == Language::kEn && p.lang_tgt == Language::kLa;
    const bool la_en = p.lang_src == Language::kLa && p.lang_tgt == Language::kEn;
    if (!en_la && !la_en) {
      throw Error("pair " + p.id + ": augmentation needs an en<->la base pair");
    }
    const std::string& en = en_la ? p.text_src : p.text_tgt;
    const std::string& la = en_la ? p.text_tgt : p.text_src;
    const std::string grc = unicode::nfc(it->second);
    if (unicode::trim(grc).empty()) {
      throw Error("pair " + p.id + ": empty translation");
    }

    PairRecord en_grc{p.id + ":en-grc", Language::kEn, Language::kGrc, en, grc,
                      p.source_corpus, true};
    PairRecord la_grc{p.id + ":la-grc", Language::kLa, Language::kGrc, la, grc,
                      p.source_corpus, true};
    out.push_back(std::move(en_grc));
    out.push_back(std::move(la_grc));
  }
  return out;
}

SplitIndices split_indices(std::size_t n, const SplitSpec& spec) {
  if (spec.n_test + spec.n_val >= n) {
    throw Error("split: n_test + n_val (" + std::to_string(spec.n_test) + " + " +
                std::to_string(spec.n_val) + ") must be below the dataset size " +
                std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(spec.seed);
  rng.shuffle(std::span<std::size_t>(order));

  SplitIndices out;
  auto first = order.begin();
  out.test.assign(first, first + spec.n_test);
  out.val.assign(first + spec.n_test, first + spec.n_test + spec.n_val);
  out.train.assign(first + spec.n_test + spec.n_val, order.end());
  return out;
}

Split split(std::span<const PairRecord> pairs, const SplitSpec& spec) {
  SplitIndices idx = split_indices(pairs.size(), spec);
  auto gather = [&](const std::vector<std::size_t>& rows) {
    std::vector<PairRecord> out;
    out.reserve(rows.size());
    for (std::size_t i : rows) out.push_back(pairs[i]);
    return out;
  };
  return {gather(idx.train), gather(idx.val), gather(idx.test)};
}

std::map<Language, std::uint64_t> stats(std::span<const PairRecord> pairs) {
  std::map<Language, std::uint64_t> counts;
  for (Language lang : kAllLanguages) counts[lang] = 0;
  for (const PairRecord& p : pairs) {
    counts[p.lang_src] += unicode::count_words(p.text_src);
    counts[p.lang_tgt] += unicode::count_words(p.text_tgt);
  }
  return counts;
}

std::string stats_json(const std::map<Language, std::uint64_t>& counts) {
  ordered_json obj = ordered_json::object();
  for (const auto& [lang, count] : counts) {
    obj[std::string(intertext::to_string(lang))] = count;
  }
  return obj.dump();
}

}  // namespace intertext::corpus
