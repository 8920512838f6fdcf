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

#ifndef INTERTEXT_INDEX_H_
#define INTERTEXT_INDEX_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "intertext/matrix.h"

// Exact cosine-similarity search over L2-normalized rows.
namespace intertext::index {

// dot(a, b) / (|a| |b|), accumulated in double in ascending index order.
// Throws on dimension mismatch or a zero vector.
double cosine(std::span<const float> a, std::span<const float> b);

// Every stored row has an L2 norm within this distance of 1.
inline constexpr double kNormTolerance = 1e-4;

struct Hit {
  std::string id;
  double score = 0.0;
  std::size_t rank = 0;
  std::size_t row = 0;
};

class VectorIndex {
 public:
  VectorIndex() = default;

  std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.cols()); }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const Matrix& rows() const { return rows_; }
  bool normalized() const { return normalized_; }

  // Cosine of `query` against every row, in row order.
  std::vector<double> scores(std::span<const float> query) const;

  // The min(k, size()) best rows by descending score; ties go to the lower
  // row index.
  std::vector<Hit> top_k(std::span<const float> query, std::size_t k) const;

 private:
  friend VectorIndex build(std::vector<std::string> ids, const Matrix& vectors);
  friend VectorIndex decode_index(std::span<const char> bytes);

  // Takes rows that are already unit length (checked to kNormTolerance).
  static VectorIndex adopt_normalized(std::vector<std::string> ids, Matrix rows);

  std::vector<std::string> ids_;
  Matrix rows_;
  bool normalized_ = false;
};

// Normalizes each row; throws on zero vectors (naming the id) and duplicate
// ids.
VectorIndex build(std::vector<std::string> ids, const Matrix& vectors);

// "SEMB" v2: the store layout with a flag byte after the version field
// (bit 0 = rows normalized). Loading also accepts a plain v1 store, whose
// rows are normalized on the way in.
std::string encode_index(const VectorIndex& index);
VectorIndex decode_index(std::span<const char> bytes);
void save_index(const VectorIndex& index, const std::filesystem::path& path);
VectorIndex load_index(const std::filesystem::path& path);

// [{"id": ..., "score": ..., "rank": ...}, ...]
std::string hits_json(std::span<const Hit> hits);

}  // namespace intertext::index

#endif  // INTERTEXT_INDEX_H_
