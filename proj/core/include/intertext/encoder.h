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

#ifndef INTERTEXT_ENCODER_H_
#define INTERTEXT_ENCODER_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "intertext/matrix.h"

// The student encoder: hashed character n-grams, mean pooling, and an affine
// projection into the teacher's embedding space.
namespace intertext::encoder {

struct EncoderConfig {
  std::uint32_t ngram_min = 3;
  std::uint32_t ngram_max = 5;
  std::uint64_t buckets = std::uint64_t{1} << 18;  // power of two
  std::uint32_t hidden_dim = 256;
  std::uint32_t out_dim = 768;  // must equal the teacher dimension
  std::uint64_t hash_seed = 0;

  void validate() const;
  bool operator==(const EncoderConfig&) const = default;
};

struct Feature {
  std::uint64_t bucket;
  std::uint32_t count;

  bool operator==(const Feature&) const = default;
};

// Case-folds `text` code point by code point, pads it with '#' on both ends
// and hashes every n-gram (ngram_min <= n <= ngram_max) with 64-bit FNV-1a:
// the state starts at the offset basis, absorbs hash_seed as 8 LE bytes, then
// the n-gram's UTF-8 bytes; bucket = hash mod buckets. Result is sorted by
// bucket with counts aggregated. Empty text yields no features.
std::vector<Feature> featurize(std::string_view text, const EncoderConfig& config);

std::uint64_t fnv1a_seeded(std::string_view bytes, std::uint64_t seed);

class StudentModel {
 public:
  // All-zero parameters.
  explicit StudentModel(const EncoderConfig& config);

  // E ~ U(-0.05, 0.05), W ~ U(-sqrt(1/d_h), sqrt(1/d_h)), b = 0, drawn in
  // that order (row-major) from Rng(seed).
  static StudentModel initialize(const EncoderConfig& config, std::uint64_t seed);

  const EncoderConfig& config() const { return config_; }

  Matrix& embeddings() { return embeddings_; }  // buckets x hidden_dim
  const Matrix& embeddings() const { return embeddings_; }
  Matrix& projection() { return projection_; }  // out_dim x hidden_dim
  const Matrix& projection() const { return projection_; }
  std::vector<float>& bias() { return bias_; }  // out_dim
  const std::vector<float>& bias() const { return bias_; }

  // Count-weighted mean of feature embeddings, accumulated in double and
  // rounded to float; all zeros when there are no features.
  std::vector<float> pool(std::span<const Feature> features) const;
  std::vector<float> pool(std::string_view text) const;

  // W * pooled + b, accumulated in double.
  std::vector<float> project(std::span<const float> pooled) const;

  std::vector<float> encode(std::string_view text) const;
  Matrix encode_batch(std::span<const std::string> texts) const;

  friend bool operator==(const StudentModel& a, const StudentModel& b) {
    return a.config_ == b.config_ && a.embeddings_ == b.embeddings_ &&
           a.projection_ == b.projection_ && bitwise_equal(a.bias_, b.bias_);
  }

 private:
  EncoderConfig config_;
  Matrix embeddings_;
  Matrix projection_;
  std::vector<float> bias_;
};

// "SMDL" checkpoint: magic, version u32 = 1, ngram_min u32, ngram_max u32,
// buckets u64, hidden_dim u32, out_dim u32, hash_seed u64, then E, W and b
// as row-major little-endian f32.
std::string encode_model(const StudentModel& model);
StudentModel decode_model(std::span<const char> bytes);
void save_model(const StudentModel& model, const std::filesystem::path& path);
StudentModel load_model(const std::filesystem::path& path);

}  // namespace intertext::encoder

#endif  // INTERTEXT_ENCODER_H_
