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

#include "intertext/teacher.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "intertext/error.h"
#include "intertext/index.h"
#include "test_util.h"

namespace intertext::teacher {
namespace {

std::string hex(std::span<const char> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (char c : bytes) {
    auto b = static_cast<unsigned char>(c);
    out += kDigits[b >> 4];
    out += kDigits[b & 15];
  }
  return out;
}

std::string hex(std::span<const float> v) {
  return hex(std::span<const char>(reinterpret_cast<const char*>(v.data()), v.size_bytes()));
}

std::string error_of(const std::string& bytes) {
  try {
    decode_store(std::span<const char>(bytes.data(), bytes.size()));
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

TEST(EmbeddingStoreTest, SingleEntryRoundTrip) {
  EmbeddingStore store(4);
  const float v[] = {1.0f, -2.5f, 0.0f, 3.25f};
  store.add("only", v);
  std::string bytes = encode_store(store);
  EXPECT_EQ(bytes.size(), 4u + 4 + 4 + 8 + 4 + 4 + 16);
  EXPECT_EQ(decode_store(std::span<const char>(bytes.data(), bytes.size())), store);
}

TEST(EmbeddingStoreTest, LargeRandomStoreRoundTripsThroughAFile) {
  std::mt19937_64 gen(1);
  Matrix m = testing::random_matrix(gen, 1000, kDefaultDim);
  EmbeddingStore store(kDefaultDim);
  for (std::size_t i = 0; i < m.rows(); ++i) store.add("id-" + std::to_string(i), m.row(i));

  testing::TempDir dir;
  save_store(store, dir / "teacher.semb");
  EmbeddingStore loaded = load_store(dir / "teacher.semb");
  EXPECT_EQ(loaded, store);
  EXPECT_EQ(std::memcmp(loaded.matrix().data().data(), m.data().data(), m.data().size_bytes()), 0);
  EXPECT_EQ(testing::read_text(dir / "teacher.semb"), encode_store(store));
}

TEST(EmbeddingStoreTest, RejectsCorruptFiles) {
  EmbeddingStore store(2);
  const float v[] = {1.0f, 2.0f};
  store.add("a", v);
  const std::string good = encode_store(store);

  std::string bad_magic = good;
  bad_magic.replace(0, 4, "XXXX");
  EXPECT_NE(error_of(bad_magic).find("bad magic"), std::string::npos);

  std::string bad_version = good;
  bad_version[4] = 9;
  EXPECT_NE(error_of(bad_version).find("version"), std::string::npos);

  std::string zero_dim = good;
  std::memset(zero_dim.data() + 8, 0, 4);
  EXPECT_NE(error_of(zero_dim).find("dim"), std::string::npos);

  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{10}, good.size() - 1}) {
    EXPECT_NE(error_of(good.substr(0, cut)).find("truncated"), std::string::npos) << cut;
  }
  EXPECT_NE(error_of(good + "x").find("trailing"), std::string::npos);

  // A count far beyond the file size must fail cleanly, not allocate.
  std::string huge = good;
  std::memset(huge.data() + 12, 0xff, 8);
  EXPECT_NE(error_of(huge).find("truncated"), std::string::npos);
}

TEST(EmbeddingStoreTest, AddValidatesVectors) {
  EXPECT_THROW(EmbeddingStore(0), Error);
  EmbeddingStore store(2);
  const float ok[] = {1.0f, 2.0f};
  const float short_vec[] = {1.0f};
  const float nan_vec[] = {1.0f, std::numeric_limits<float>::quiet_NaN()};
  store.add("a", ok);
  EXPECT_THROW(store.add("a", ok), Error);
  EXPECT_THROW(store.add("b", short_vec), Error);
  EXPECT_THROW(store.add("c", nan_vec), Error);
  EXPECT_EQ(store.size(), 1u);
}

TEST(EmbeddingStoreTest, LookupFindsEachIdAndSignalsAbsence) {
  EmbeddingStore store(3);
  const float a[] = {1, 0, 0}, b[] = {0, 2, 0}, c[] = {0, 0, 3};
  store.add("a", a);
  store.add("b", b);
  store.add("c", c);
  EXPECT_EQ(store.ids(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(bitwise_equal(*store.lookup("a"), a));
  EXPECT_TRUE(bitwise_equal(*store.lookup("b"), b));
  EXPECT_TRUE(bitwise_equal(*store.lookup("c"), c));
  EXPECT_FALSE(store.lookup("d").has_value());
}

TEST(PseudoTeacherTest, IsDeterministicAndUnitLength) {
  auto a = pseudo_teacher("Arma virumque cano", 64, 9);
  auto b = pseudo_teacher("Arma virumque cano", 64, 9);
  EXPECT_TRUE(bitwise_equal(a, b));
  std::mt19937_64 gen(4);
  for (int i = 0; i < 50; ++i) {
    auto v = pseudo_teacher(testing::random_sentence(gen), 1 + gen() % 300, gen());
    double sum = 0.0;
    for (float x : v) sum += static_cast<double>(x) * x;
    EXPECT_NEAR(std::sqrt(sum), 1.0, 1e-6);
  }
}

TEST(PseudoTeacherTest, MatchesIndependentReferenceBytes) {
  // Produced by a separate hashlib/struct implementation of the same
  // algorithm (not by this library).
  EXPECT_EQ(hex(pseudo_teacher("abc", 8, 42)),
            "a2f301bf3268c93efabab0bcc83cf33e8ea07cbd408905bf748c353e0e256e3e");
  EmbeddingStore store(8);
  store.add("abc", pseudo_teacher("abc", 8, 42));
  const std::string bytes = encode_store(store);
  EXPECT_EQ(hex(std::span<const char>(bytes.data(), bytes.size())),
            "53454d4201000000080000000100000000000000030000006162"
            "63a2f301bf3268c93efabab0bcc83cf33e8ea07cbd408905bf748c353e0e256e3e");
}

TEST(PseudoTeacherTest, NormalizesInputAndDependsOnSeed) {
  EXPECT_TRUE(bitwise_equal(pseudo_teacher("\u03B1\u0301", 16, 1),
                            pseudo_teacher("\u03AC", 16, 1)));
  EXPECT_FALSE(bitwise_equal(pseudo_teacher("x", 16, 1), pseudo_teacher("x", 16, 2)));
  EXPECT_THROW(pseudo_teacher("x", 0, 1), Error);
}

TEST(PseudoTeacherTest, RandomSentencesAreNearlyOrthogonal) {
  std::mt19937_64 gen(8);
  double sum = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::string a = testing::random_sentence(gen) + " a" + std::to_string(i);
    std::string b = testing::random_sentence(gen) + " b" + std::to_string(i);
    auto va = pseudo_teacher(a, 256, 3);
    auto vb = pseudo_teacher(b, 256, 3);
    EXPECT_FALSE(bitwise_equal(va, vb));
    sum += std::abs(index::cosine(va, vb));
  }
  EXPECT_LT(sum / 100.0, 0.2);
}

TEST(PseudoStoreTest, KeysFollowSourceConvention) {
  std::vector<corpus::PairRecord> pairs = {
      {"p1", Language::kEn, Language::kLa, "one", "unus", corpus::SourceCorpus::kOther, false},
      {"p2", Language::kEn, Language::kGrc, "two", "δύο", corpus::SourceCorpus::kOther, false}};
  EmbeddingStore store = pseudo_store_for_pairs(pairs, 8, 5);
  EXPECT_EQ(store.ids(), (std::vector<std::string>{"p1:src", "p2:src"}));
  EXPECT_TRUE(bitwise_equal(*store.lookup(source_key("p2")), pseudo_teacher("two", 8, 5)));
}

}  // namespace
}  // namespace intertext::teacher
