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

#include "cli.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "intertext/corpus.h"
#include "intertext/encoder.h"
#include "intertext/error.h"
#include "intertext/eval.h"
#include "intertext/index.h"
#include "intertext/language.h"
#include "intertext/synthetic.h"
#include "intertext/teacher.h"
#include "intertext/trainer.h"

namespace intertext::cli {
namespace {

namespace fs = std::filesystem;

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error("write to " + path + " failed");
}

Language language_flag(const std::string& code) {
  auto lang = parse_language(code);
  if (!lang) throw Error("unknown language code \"" + code + "\"");
  return *lang;
}

corpus::SourceCorpus corpus_flag(const std::string& name) {
  static const std::map<std::string, corpus::SourceCorpus> kNames = {
      {"perseus", corpus::SourceCorpus::kPerseus}, {"bible", corpus::SourceCorpus::kBible},
      {"opus", corpus::SourceCorpus::kOpus},       {"rosenthal", corpus::SourceCorpus::kRosenthal},
      {"synthetic", corpus::SourceCorpus::kSynthetic}, {"other", corpus::SourceCorpus::kOther}};
  auto it = kNames.find(name);
  if (it == kNames.end()) throw Error("unknown source corpus \"" + name + "\"");
  return it->second;
}

// Pairs grouped by (lang_src, lang_tgt) in order of first appearance.
std::vector<std::vector<corpus::PairRecord>> group_by_language_pair(
    const std::vector<corpus::PairRecord>& pairs) {
  std::vector<std::vector<corpus::PairRecord>> groups;
  std::map<std::pair<Language, Language>, std::size_t> slot;
  for (const corpus::PairRecord& p : pairs) {
    auto [it, fresh] = slot.try_emplace({p.lang_src, p.lang_tgt}, groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(p);
  }
  return groups;
}

struct SplitOutputs {
  std::string train, val, test;

  void add_to(CLI::App* app) {
    app->add_option("--train-out", train, "Training pairs output")->required();
    app->add_option("--val-out", val, "Validation pairs output")->required();
    app->add_option("--test-out", test, "Test pairs output")->required();
  }
};

struct EncoderFlags {
  encoder::EncoderConfig config;
  CLI::Option* dim = nullptr;

  void add_to(CLI::App* app) {
    app->add_option("--ngram-min", config.ngram_min, "Shortest character n-gram")
        ->capture_default_str();
    app->add_option("--ngram-max", config.ngram_max, "Longest character n-gram")
        ->capture_default_str();
    app->add_option("--buckets", config.buckets, "Hash buckets (power of two)")
        ->capture_default_str();
    app->add_option("--hidden-dim", config.hidden_dim, "Pooled feature dimension")
        ->capture_default_str();
    dim = app->add_option("--dim", config.out_dim,
                          "Output dimension (defaults to the teacher's)");
    app->add_option("--hash-seed", config.hash_seed, "Seed mixed into n-gram hashes")
        ->capture_default_str();
  }
};

struct TrainingFlags {
  trainer::TrainingConfig config;

  void add_to(CLI::App* app) {
    app->add_option("--epochs", config.epochs)->capture_default_str();
    app->add_option("--batch-size", config.batch_size)->capture_default_str();
    app->add_option("--lr", config.learning_rate, "Peak learning rate")->capture_default_str();
    app->add_option("--warmup-steps", config.warmup_steps)->capture_default_str();
    app->add_option("--adam-beta1", config.adam_beta1)->capture_default_str();
    app->add_option("--adam-beta2", config.adam_beta2)->capture_default_str();
    app->add_option("--adam-eps", config.adam_eps)->capture_default_str();
    app->add_option("--weight-decay", config.weight_decay)->capture_default_str();
    app->add_option("--seed", config.seed, "Shuffling and initialization seed")
        ->capture_default_str();
    app->add_option("--val-pairs-per-language-pair", config.val_pairs_per_language_pair)
        ->capture_default_str();
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross-lingual sentence embeddings by distillation: corpus tools, "
               "training, evaluation and retrieval."};
  app.name("intertext");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", "intertext 0.1.0");

  std::function<void()> action;

  // ingest
  std::string in_path, out_path;
  auto* ingest = app.add_subcommand("ingest", "Validate a pair file and rewrite it in NFC");
  ingest->add_option("--in", in_path, "Pair JSONL input")->required();
  ingest->add_option("--out", out_path, "Pair JSONL output")->required();
  ingest->callback([&] {
    action = [&] {
      auto pairs = corpus::parse_pairs_jsonl(in_path);
      corpus::write_pairs_jsonl(out_path, pairs);
      err << "ingest: " << pairs.size() << " pairs\n";
    };
  });

  // align
  std::string src_path, tgt_path, lang_src, lang_tgt, source_name = "other";
  auto* align = app.add_subcommand("align", "Pair two cited documents by citation key");
  align->add_option("--src", src_path, "Source lines JSONL {key, text}")->required();
  align->add_option("--tgt", tgt_path, "Target lines JSONL {key, text}")->required();
  align->add_option("--lang-src", lang_src, "Source language (en, la, grc)")->required();
  align->add_option("--lang-tgt", lang_tgt, "Target language (en, la, grc)")->required();
  align->add_option("--corpus", source_name, "Source corpus tag and id prefix")
      ->capture_default_str();
  align->add_option("--out", out_path, "Pair JSONL output")->required();
  align->callback([&] {
    action = [&] {
      auto src = corpus::parse_cited_lines_jsonl(fs::path(src_path));
      auto tgt = corpus::parse_cited_lines_jsonl(fs::path(tgt_path));
      auto result = corpus::align_lines(src, tgt, language_flag(lang_src),
                                        language_flag(lang_tgt), corpus_flag(source_name));
      corpus::write_pairs_jsonl(out_path, result.aligned);
      err << "align: " << result.aligned.size() << " aligned, " << result.discarded
          << " discarded\n";
    };
  });

  // dedup
  auto* dedup = app.add_subcommand("dedup", "Drop duplicate pairs, keeping the first");
  dedup->add_option("--in", in_path, "Pair JSONL input")->required();
  dedup->add_option("--out", out_path, "Pair JSONL output")->required();
  dedup->callback([&] {
    action = [&] {
      auto pairs = corpus::parse_pairs_jsonl(in_path);
      auto kept = corpus::deduplicate(pairs);
      corpus::write_pairs_jsonl(out_path, kept);
      err << "dedup: kept " << kept.size() << " of " << pairs.size() << "\n";
    };
  });

  // augment
  std::string translations_path;
  auto* augment = app.add_subcommand(
      "augment", "Add (en, grc) and (la, grc) pairs from Greek translations");
  augment->add_option("--in", in_path, "Base en/la pair JSONL")->required();
  augment->add_option("--translations", translations_path,
                      "Greek translations JSONL {id, text}")
      ->required();
  augment->add_option("--out", out_path, "Pair JSONL output")->required();
  augment->callback([&] {
    action = [&] {
      auto base = corpus::parse_pairs_jsonl(in_path);
      std::map<std::string, std::string> translations;
      for (auto& [id, text] : corpus::parse_id_text_jsonl(fs::path(translations_path))) {
        if (!translations.emplace(id, text).second) {
          throw Error("augment: duplicate translation id \"" + id + "\"");
        }
      }
      auto merged = corpus::merge_augmented(base, translations);
      corpus::write_pairs_jsonl(out_path, merged);
      err << "augment: " << merged.size() << " pairs\n";
    };
  });

  // split
  corpus::SplitSpec split_spec{0, 0, 0};
  SplitOutputs split_outputs;
  auto* split = app.add_subcommand("split", "Seeded train/validation/test partition");
  split->add_option("--in", in_path, "Pair JSONL input")->required();
  split->add_option("--seed", split_spec.seed)->capture_default_str();
  split->add_option("--test", split_spec.n_test, "Test set size")->required();
  split->add_option("--val", split_spec.n_val, "Validation set size")->required();
  split_outputs.add_to(split);
  split->callback([&] {
    action = [&] {
      auto pairs = corpus::parse_pairs_jsonl(in_path);
      auto parts = corpus::split(pairs, split_spec);
      corpus::write_pairs_jsonl(split_outputs.train, parts.train);
      corpus::write_pairs_jsonl(split_outputs.val, parts.val);
      corpus::write_pairs_jsonl(split_outputs.test, parts.test);
      err << "split: " << parts.train.size() << "/" << parts.val.size() << "/"
          << parts.test.size() << " train/val/test\n";
    };
  });

  // stats
  auto* stats = app.add_subcommand("stats", "Word counts per language as JSON");
  stats->add_option("--in", in_path, "Pair JSONL input")->required();
  stats->add_option("--out", out_path, "Output file (default: stdout)");
  stats->callback([&] {
    action = [&] {
      auto pairs = corpus::parse_pairs_jsonl(in_path);
      emit(out_path, corpus::stats_json(corpus::stats(pairs)) + "\n", out);
    };
  });

  // synth
  synthetic::SyntheticConfig synth_config;
  corpus::SplitSpec synth_split{0, 200, 200};
  SplitOutputs synth_outputs;
  auto* synth = app.add_subcommand(
      "synth", "Generate a synthetic trilingual corpus split by sentence");
  synth->add_option("--sentences", synth_config.sentences)->capture_default_str();
  synth->add_option("--vocabulary", synth_config.vocabulary)->capture_default_str();
  synth->add_option("--min-tokens", synth_config.min_tokens)->capture_default_str();
  synth->add_option("--max-tokens", synth_config.max_tokens)->capture_default_str();
  synth->add_option("--seed", synth_config.seed, "Generation and split seed")
      ->capture_default_str();
  synth->add_option("--test", synth_split.n_test, "Test sentences")->capture_default_str();
  synth->add_option("--val", synth_split.n_val, "Validation sentences")->capture_default_str();
  synth_outputs.add_to(synth);
  synth->callback([&] {
    action = [&] {
      auto sentences = synthetic::generate(synth_config);
      synth_split.seed = synth_config.seed;
      auto idx = corpus::split_indices(sentences.size(), synth_split);
      auto pick = [&sentences](const std::vector<std::size_t>& rows) {
        std::vector<synthetic::SyntheticSentence> subset;
        for (std::size_t r : rows) subset.push_back(sentences[r]);
        return synthetic::to_pairs(subset);
      };
      corpus::write_pairs_jsonl(synth_outputs.train, pick(idx.train));
      corpus::write_pairs_jsonl(synth_outputs.val, pick(idx.val));
      corpus::write_pairs_jsonl(synth_outputs.test, pick(idx.test));
      err << "synth: " << idx.train.size() << "/" << idx.val.size() << "/"
          << idx.test.size() << " sentences train/val/test\n";
    };
  });

  // pseudo-teacher
  std::string sentences_path;
  std::uint32_t teacher_dim = teacher::kDefaultDim;
  std::uint64_t teacher_seed = 0;
  auto* pseudo = app.add_subcommand(
      "pseudo-teacher", "Deterministic hash-based teacher embeddings (SEMB store)");
  auto* pseudo_pairs =
      pseudo->add_option("--in", in_path, "Pair JSONL; embeds sources as \"<id>:src\"");
  auto* pseudo_sentences =
      pseudo->add_option("--sentences", sentences_path, "Sentence JSONL {id, text}");
  pseudo_pairs->excludes(pseudo_sentences);
  pseudo->add_option("--dim", teacher_dim)->capture_default_str();
  pseudo->add_option("--seed", teacher_seed)->capture_default_str();
  pseudo->add_option("--out", out_path, "SEMB output")->required();
  pseudo->callback([&] {
    if (!*pseudo_pairs && !*pseudo_sentences) {
      throw CLI::RequiredError("--in or --sentences");
    }
    action = [&] {
      teacher::EmbeddingStore store(teacher_dim);
      if (*pseudo_pairs) {
        store = teacher::pseudo_store_for_pairs(corpus::parse_pairs_jsonl(in_path),
                                                teacher_dim, teacher_seed);
      } else {
        for (auto& [id, text] : corpus::parse_id_text_jsonl(fs::path(sentences_path))) {
          store.add(id, teacher::pseudo_teacher(text, teacher_dim, teacher_seed));
        }
      }
      teacher::save_store(store, out_path);
      err << "pseudo-teacher: " << store.size() << " vectors of dim " << store.dim() << "\n";
    };
  });

  // train
  std::string train_path, val_path, teacher_path, init_path, checkpoint_dir, history_path;
  EncoderFlags encoder_flags;
  TrainingFlags training_flags;
  auto* train = app.add_subcommand("train", "Distill a student encoder from teacher vectors");
  train->add_option("--train", train_path, "Training pair JSONL")->required();
  train->add_option("--val", val_path, "Validation pair JSONL");
  train->add_option("--teacher", teacher_path, "Teacher SEMB store")->required();
  train->add_option("--init", init_path, "Start from this checkpoint instead of a fresh model");
  train->add_option("--out", out_path, "Best checkpoint output (SMDL)")->required();
  train->add_option("--checkpoint-dir", checkpoint_dir, "Keep every epoch's checkpoint here");
  train->add_option("--history", history_path, "Training history JSONL output");
  encoder_flags.add_to(train);
  training_flags.add_to(train);
  train->callback([&] {
    action = [&] {
      auto train_pairs = corpus::parse_pairs_jsonl(train_path);
      std::vector<corpus::PairRecord> val_pairs;
      if (!val_path.empty()) val_pairs = corpus::parse_pairs_jsonl(val_path);
      teacher::EmbeddingStore store = teacher::load_store(teacher_path);

      std::optional<encoder::StudentModel> initial;
      if (!init_path.empty()) {
        initial = encoder::load_model(init_path);
      } else {
        encoder::EncoderConfig config = encoder_flags.config;
        if (!*encoder_flags.dim) config.out_dim = store.dim();
        initial = encoder::StudentModel::initialize(config, training_flags.config.seed);
      }

      std::string history;
      trainer::TrainOptions options;
      options.checkpoint_dir = checkpoint_dir;
      options.on_epoch = [&](const trainer::EpochRecord& record) {
        const std::string line = trainer::history_json_line(record);
        history += line + "\n";
        err << line << "\n";
      };
      trainer::TrainResult result = trainer::train(*initial, train_pairs, val_pairs, store,
                                                   training_flags.config, options);
      encoder::save_model(result.model, out_path);
      if (!history_path.empty()) emit(history_path, history, out);
      err << "train: best epoch " << result.best_epoch << "\n";
    };
  });

  // eval
  std::string model_path, directions_text, dataset, format_name = "tsv";
  auto* evaluate = app.add_subcommand("eval", "Translation accuracy on held-out pairs");
  evaluate->add_option("--model", model_path, "Student checkpoint (SMDL)")->required();
  evaluate->add_option("--in", in_path, "Test pair JSONL")->required();
  evaluate->add_option("--directions", directions_text,
                       "Comma-separated, e.g. en→la,la→en (default: each pair's own)");
  evaluate->add_option("--dataset", dataset, "Dataset label (default: input file stem)");
  evaluate->add_option("--format", format_name, "tsv, markdown or json")->capture_default_str();
  evaluate->add_option("--out", out_path, "Report output (default: stdout)");
  evaluate->callback([&] {
    action = [&] {
      const eval::Format format = eval::parse_format(format_name);
      const auto model = encoder::load_model(model_path);
      const auto pairs = corpus::parse_pairs_jsonl(in_path);
      if (pairs.empty()) throw Error("eval: " + in_path + " has no pairs");
      const std::string label = dataset.empty() ? fs::path(in_path).stem().string() : dataset;
      const std::vector<eval::Direction> requested = eval::parse_directions(directions_text);

      std::vector<eval::EvalReport> reports;
      std::vector<bool> used(requested.size(), false);
      for (const auto& group : group_by_language_pair(pairs)) {
        const Language a = group.front().lang_src, b = group.front().lang_tgt;
        std::vector<eval::Direction> dirs;
        for (std::size_t i = 0; i < requested.size(); ++i) {
          const eval::Direction& d = requested[i];
          if ((d.from == a && d.to == b) || (d.from == b && d.to == a)) {
            dirs.push_back(d);
            used[i] = true;
          }
        }
        if (requested.empty()) dirs.push_back({a, b});
        if (!dirs.empty()) reports.push_back(eval::evaluate_model(model, group, dirs, label));
      }
      for (std::size_t i = 0; i < requested.size(); ++i) {
        if (!used[i]) throw Error("eval: no test pairs for direction " + requested[i].label());
      }
      emit(out_path, eval::render_reports(reports, format), out);
    };
  });

  // index
  std::string store_path;
  auto* build_index = app.add_subcommand("index", "Build a normalized retrieval index");
  auto* index_model = build_index->add_option("--model", model_path, "Encode --in lines with this checkpoint");
  auto* index_lines = build_index->add_option("--in", in_path, "Lines JSONL {key, text}");
  auto* index_store = build_index->add_option("--store", store_path, "Index an existing SEMB store instead");
  index_model->needs(index_lines);
  index_lines->needs(index_model);
  index_store->excludes(index_lines);
  build_index->add_option("--out", out_path, "Index output")->required();
  build_index->callback([&] {
    if (!*index_store && !*index_lines) throw CLI::RequiredError("--in/--model or --store");
    action = [&] {
      index::VectorIndex idx;
      if (*index_store) {
        const auto store = teacher::load_store(store_path);
        idx = index::build(store.ids(), store.matrix());
      } else {
        const auto model = encoder::load_model(model_path);
        const auto lines = corpus::parse_cited_lines_jsonl(fs::path(in_path));
        std::vector<std::string> ids, texts;
        for (const auto& line : lines) {
          ids.push_back(line.citation_key);
          texts.push_back(line.text);
        }
        idx = index::build(std::move(ids), model.encode_batch(texts));
      }
      index::save_index(idx, out_path);
      err << "index: " << idx.size() << " rows of dim " << idx.dim() << "\n";
    };
  });

  // query
  std::string index_path;
  std::vector<std::string> query_texts;
  std::size_t k = 10;
  auto* query = app.add_subcommand("query", "Top-k nearest lines for query texts");
  query->add_option("--model", model_path, "Student checkpoint (SMDL)")->required();
  query->add_option("--index", index_path, "Index file")->required();
  query->add_option("--text", query_texts, "Query text (repeatable)")->required();
  query->add_option("--k", k)->capture_default_str();
  query->callback([&] {
    action = [&] {
      const auto model = encoder::load_model(model_path);
      const auto idx = index::load_index(index_path);
      for (const std::string& text : query_texts) {
        out << index::hits_json(idx.top_k(model.encode(text), k)) << "\n";
      }
    };
  });

  // case-study
  std::string queries_path, targets_path;
  std::size_t case_k = 3;
  std::string case_format = "markdown";
  auto* case_study = app.add_subcommand(
      "case-study", "Top-k target lines for every line of a query document");
  case_study->add_option("--model", model_path, "Student checkpoint (SMDL)")->required();
  case_study->add_option("--index", index_path, "Index over the target lines")->required();
  case_study->add_option("--queries", queries_path, "Query lines JSONL {key, text}")->required();
  case_study->add_option("--targets", targets_path, "Target lines JSONL {key, text}")->required();
  case_study->add_option("--k", case_k)->capture_default_str();
  case_study->add_option("--format", case_format, "tsv, markdown or json")->capture_default_str();
  case_study->add_option("--out", out_path, "Output (default: stdout)");
  case_study->callback([&] {
    action = [&] {
      const eval::Format format = eval::parse_format(case_format);
      const auto model = encoder::load_model(model_path);
      const auto idx = index::load_index(index_path);
      const auto queries = corpus::parse_cited_lines_jsonl(fs::path(queries_path));
      const auto targets = corpus::parse_cited_lines_jsonl(fs::path(targets_path));
      const auto rows = eval::run_case_study(queries, idx, targets, model, case_k);
      emit(out_path, eval::render_case_study(rows, format), out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    action();
  } catch (const std::exception& e) {
    err << "intertext: error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace intertext::cli
