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

#ifndef INTERTEXT_TEACHER_H_
#define INTERTEXT_TEACHER_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "intertext/corpus.h"
#include "intertext/matrix.h"

namespace intertext::teacher {

inline constexpr std::uint32_t kDefaultDim = 768;

// Insertion-ordered id -> vector map holding teacher (or student) sentence
// embeddings. Vectors live in one row-major block.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::uint32_t dim);

  std::uint32_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const Matrix& matrix() const { return vectors_; }
  std::span<const float> vector_at(std::size_t row) const {
    return vectors_.row(row);
  }

  // Throws on duplicate id, wrong dimension or non-finite components.
  void add(std::string id, std::span<const float> vector);

  // nullopt when `id` is absent.
  std::optional<std::span<const float>> lookup(std::string_view id) const;

  friend bool operator==(const EmbeddingStore& a, const EmbeddingStore& b) {
    return a.dim_ == b.dim_ && a.ids_ == b.ids_ && a.vectors_ == b.vectors_;
  }

 private:
  std::uint32_t dim_;
  std::vector<std::string> ids_;
  Matrix vectors_;
  std::unordered_map<std::string, std::size_t> rows_;
};

// "SEMB" v1: magic, version u32, dim u32, count u64,
// count x (len u32, UTF-8 id), count x dim x f32. Little-endian throughout.
std::string encode_store(const EmbeddingStore& store);
EmbeddingStore decode_store(std::span<const char> bytes);
void save_store(const EmbeddingStore& store, const std::filesystem::path& path);
EmbeddingStore load_store(const std::filesystem::path& path);

// Deterministic hash-derived embedding. Component i is 2u - 1 where u is the
// first 8 bytes (LE u64 / 2^64) of
//   SHA-256(seed as 8 LE bytes || NFC(sentence) || i as 8 LE bytes),
// and the vector is L2-normalized in double precision before rounding to
// float. Throws if dim == 0.
std::vector<float> pseudo_teacher(std::string_view sentence, std::uint32_t dim,
                                  std::uint64_t seed);

// Store key under which the trainer looks up M(s) for a pair.
std::string source_key(std::string_view pair_id);

// Pseudo-teacher embeddings of each pair's source text, keyed by
// source_key(id). Repeated pair ids are rejected.
EmbeddingStore pseudo_store_for_pairs(std::span<const corpus::PairRecord> pairs,
                                      std::uint32_t dim, std::uint64_t seed);

}  // namespace intertext::teacher

#endif  // INTERTEXT_TEACHER_H_
