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

#include <gtest/gtest.h>
#include <openssl/evp.h>

#include <sstream>
#include <string>
#include <vector>

#include "intertext/corpus.h"
#include "intertext/encoder.h"
#include "intertext/index.h"
#include "intertext/teacher.h"
#include "test_util.h"

namespace intertext::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "intertext");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::size_t line_count(const std::filesystem::path& path) {
  std::string text = testing::read_text(path);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

void write_pairs(const std::filesystem::path& path, std::size_t n) {
  std::vector<corpus::PairRecord> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    pairs.push_back({"p" + std::to_string(i), Language::kEn, Language::kLa,
                     "english sentence " + std::to_string(i), "sententia " + std::to_string(i),
                     corpus::SourceCorpus::kBible, false});
  }
  corpus::write_pairs_jsonl(path, pairs);
}

TEST(CliTest, HelpExitsZero) {
  Result r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Subcommands:"), std::string::npos);
  EXPECT_NE(r.out.find("case-study"), std::string::npos);
  EXPECT_EQ(invoke({"train", "--help"}).code, 0);
}

TEST(CliTest, UsageErrorsExitOne) {
  testing::TempDir dir;
  write_pairs(dir / "p.jsonl", 3);
  Result r = invoke({"stats", "--in", (dir / "p.jsonl").string(), "--bogus"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("Usage:"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"split", "--in", "x"}).code, 1);
  EXPECT_EQ(invoke({"split", "--in", "x", "--test", "two", "--val", "1", "--train-out", "a",
                    "--val-out", "b", "--test-out", "c"}).code,
            1);
  EXPECT_EQ(invoke({"pseudo-teacher", "--out", "x"}).code, 1);
}

TEST(CliTest, DataErrorsExitTwo) {
  testing::TempDir dir;
  testing::write_text(dir / "bad.jsonl",
                      R"({"id":"a","lang_src":"la","lang_tgt":"la","text_src":"x","text_tgt":"y"})"
                      "\n");
  Result r = invoke({"stats", "--in", (dir / "bad.jsonl").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(invoke({"stats", "--in", (dir / "missing.jsonl").string()}).code, 2);
  EXPECT_EQ(invoke({"eval", "--model", (dir / "missing.smdl").string(), "--in",
                    (dir / "bad.jsonl").string()}).code,
            2);
}

TEST(CliTest, SplitWritesSixTwoTwo) {
  testing::TempDir dir;
  write_pairs(dir / "pairs.jsonl", 10);
  Result r = invoke({"split", "--in", (dir / "pairs.jsonl").string(), "--seed", "7", "--test",
                     "2", "--val", "2", "--train-out", (dir / "train.jsonl").string(),
                     "--val-out", (dir / "val.jsonl").string(), "--test-out",
                     (dir / "test.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(dir / "train.jsonl"), 6u);
  EXPECT_EQ(line_count(dir / "val.jsonl"), 2u);
  EXPECT_EQ(line_count(dir / "test.jsonl"), 2u);
  auto pairs = corpus::parse_pairs_jsonl(dir / "pairs.jsonl");
  auto expected = corpus::split(pairs, {7, 2, 2});
  EXPECT_EQ(corpus::parse_pairs_jsonl(dir / "test.jsonl"), expected.test);
}

TEST(CliTest, CorpusCommands) {
  testing::TempDir dir;
  testing::write_text(dir / "la.jsonl",
                      "{\"key\":\"1.1\",\"text\":\"Arma  virumque cano\"}\n"
                      "{\"key\":\"1.2\",\"text\":\"Troiae qui primus\"}\n"
                      "{\"key\":\"1.3\",\"text\":\"ab oris\"}\n");
  testing::write_text(dir / "en.jsonl",
                      "{\"key\":\"1.1\",\"text\":\"Arms and the man I sing\"}\n"
                      "{\"key\":\"1.2\",\"text\":\"who first from Troy\"}\n");
  Result r = invoke({"align", "--src", (dir / "la.jsonl").string(), "--tgt",
                     (dir / "en.jsonl").string(), "--lang-src", "la", "--lang-tgt", "en",
                     "--corpus", "perseus", "--out", (dir / "aligned.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("2 aligned, 1 discarded"), std::string::npos) << r.err;
  auto aligned = corpus::parse_pairs_jsonl(dir / "aligned.jsonl");
  ASSERT_EQ(aligned.size(), 2u);
  EXPECT_EQ(aligned[0].id, "perseus:1.1");

  r = invoke({"stats", "--in", (dir / "aligned.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{\"en\":10,\"la\":6,\"grc\":0}\n");

  testing::write_text(dir / "grc.jsonl", "{\"id\":\"perseus:1.2\",\"text\":\"οἳ πρῶτος\"}\n");
  r = invoke({"augment", "--in", (dir / "aligned.jsonl").string(), "--translations",
              (dir / "grc.jsonl").string(), "--out", (dir / "augmented.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto augmented = corpus::parse_pairs_jsonl(dir / "augmented.jsonl");
  EXPECT_EQ(augmented.size(), 4u);

  auto doubled = augmented;
  doubled.push_back(augmented[0]);
  doubled.back().id = "copy";
  doubled.back().text_src = "arma virumque  CANO";
  corpus::write_pairs_jsonl(dir / "dup.jsonl", doubled);
  r = invoke({"dedup", "--in", (dir / "dup.jsonl").string(), "--out",
              (dir / "dedup.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(corpus::parse_pairs_jsonl(dir / "dedup.jsonl"), augmented);

  testing::write_text(dir / "raw.jsonl",
                      "{\"id\":\"g\",\"lang_src\":\"en\",\"lang_tgt\":\"grc\",\"text_src\":\"word\","
                      "\"text_tgt\":\"\\u03b1\\u0301\"}\n");
  ASSERT_EQ(invoke({"ingest", "--in", (dir / "raw.jsonl").string(), "--out",
                    (dir / "clean.jsonl").string()}).code,
            0);
  EXPECT_NE(testing::read_text(dir / "clean.jsonl").find("ά"), std::string::npos);
}

TEST(CliTest, PseudoTeacherMatchesReferenceFixture) {
  // Digest frozen from data/pseudo_teacher_reference.py on the same fixture.
  testing::TempDir dir;
  const std::string fixture = std::string(INTERTEXT_TEST_DATA_DIR) + "/conformance_sentences.jsonl";
  Result r = invoke({"pseudo-teacher", "--sentences", fixture, "--dim", "32", "--seed", "7",
                     "--out", (dir / "t.semb").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string bytes = testing::read_text(dir / "t.semb");
  EXPECT_EQ(sha256_hex(bytes), "f2cf8bbc8e0caa0eeb44703865fda1616db4d1c755739dd0b3af4946ce4059b6");
  teacher::EmbeddingStore store = teacher::load_store(dir / "t.semb");
  EXPECT_EQ(store.size(), 100u);
  EXPECT_EQ(store.dim(), 32u);
}

TEST(CliTest, PseudoTeacherForPairsUsesSourceKeys) {
  testing::TempDir dir;
  write_pairs(dir / "p.jsonl", 3);
  ASSERT_EQ(invoke({"pseudo-teacher", "--in", (dir / "p.jsonl").string(), "--dim", "8", "--out",
                    (dir / "t.semb").string()}).code,
            0);
  auto store = teacher::load_store(dir / "t.semb");
  EXPECT_EQ(store.ids(), (std::vector<std::string>{"p0:src", "p1:src", "p2:src"}));
  EXPECT_TRUE(bitwise_equal(*store.lookup("p1:src"),
                            teacher::pseudo_teacher("english sentence 1", 8, 0)));
}

TEST(CliTest, TrainEvaluateAndRetrieve) {
  testing::TempDir dir;
  auto p = [&](const char* name) { return (dir / name).string(); };
  ASSERT_EQ(invoke({"synth", "--sentences", "120", "--vocabulary", "80", "--seed", "3", "--test",
                    "20", "--val", "20", "--train-out", p("train.jsonl"), "--val-out",
                    p("val.jsonl"), "--test-out", p("test.jsonl")}).code,
            0);
  EXPECT_EQ(line_count(dir / "test.jsonl"), 40u);
  ASSERT_EQ(invoke({"pseudo-teacher", "--in", p("train.jsonl"), "--dim", "16", "--out",
                    p("teacher.semb")}).code,
            0);
  Result r = invoke({"train", "--train", p("train.jsonl"), "--val", p("val.jsonl"), "--teacher",
                     p("teacher.semb"), "--buckets", "4096", "--hidden-dim", "16", "--epochs",
                     "2", "--warmup-steps", "5", "--lr", "5e-3", "--history", p("history.jsonl"),
                     "--checkpoint-dir", p("ckpt"), "--out", p("model.smdl")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(dir / "history.jsonl"), 2u);
  auto model = encoder::load_model(dir / "model.smdl");
  EXPECT_EQ(model.config().out_dim, 16u);
  EXPECT_EQ(model.config().buckets, 4096u);
  EXPECT_TRUE(std::filesystem::exists(dir / "ckpt" / "epoch-001.smdl"));

  r = invoke({"eval", "--model", p("model.smdl"), "--in", p("test.jsonl"), "--dataset", "toy"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("dataset\tdirection\tn\taccuracy\n", 0), 0u);
  EXPECT_NE(r.out.find("toy\ten→la\t20\t"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("toy\ten→grc\t20\t"), std::string::npos) << r.out;
  r = invoke({"eval", "--model", p("model.smdl"), "--in", p("test.jsonl"), "--directions",
              "la→en", "--format", "markdown"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("| test | la→en | 20 |"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"eval", "--model", p("model.smdl"), "--in", p("test.jsonl"), "--directions",
                    "la→grc"}).code,
            2);
  EXPECT_EQ(invoke({"eval", "--model", p("model.smdl"), "--in", p("test.jsonl"), "--format",
                    "html"}).code,
            2);

  testing::write_text(dir / "lines.jsonl",
                      "{\"key\":\"a\",\"text\":\"alpha beta\"}\n"
                      "{\"key\":\"b\",\"text\":\"gamma delta\"}\n"
                      "{\"key\":\"c\",\"text\":\"epsilon\"}\n");
  ASSERT_EQ(invoke({"index", "--model", p("model.smdl"), "--in", p("lines.jsonl"), "--out",
                    p("lines.index")}).code,
            0);
  EXPECT_EQ(index::load_index(dir / "lines.index").size(), 3u);
  r = invoke({"query", "--model", p("model.smdl"), "--index", p("lines.index"), "--text",
              "gamma delta", "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("[{\"id\":\"b\",", 0), 0u) << r.out;

  testing::write_text(dir / "queries.jsonl", "{\"key\":\"q1\",\"text\":\"epsilon\"}\n");
  r = invoke({"case-study", "--model", p("model.smdl"), "--index", p("lines.index"), "--queries",
              p("queries.jsonl"), "--targets", p("lines.jsonl"), "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("| epsilon (q1) | 1 | epsilon (c) | 1.0000 |"), std::string::npos) << r.out;

  teacher::save_store(teacher::load_store(dir / "teacher.semb"), dir / "copy.semb");
  ASSERT_EQ(invoke({"index", "--store", p("copy.semb"), "--out", p("teacher.index")}).code, 0);
  EXPECT_EQ(index::load_index(dir / "teacher.index").size(), 160u);
}

}  // namespace
}  // namespace intertext::cli
