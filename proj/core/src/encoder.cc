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

#include "intertext/encoder.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "binary_io.h"
#include "intertext/error.h"
#include "intertext/random.h"
#include "intertext/unicode.h"

namespace intertext::encoder {
namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;
constexpr std::uint32_t kModelVersion = 1;
constexpr std::uint64_t kMaxBuckets = std::uint64_t{1} << 32;

std::uint64_t fnv_absorb(std::uint64_t h, unsigned char byte) {
  return (h ^ byte) * kFnvPrime;
}

std::uint64_t fnv_start(std::uint64_t seed) {
  std::uint64_t h = kFnvOffset;
  for (int i = 0; i < 8; ++i) {
    h = fnv_absorb(h, static_cast<unsigned char>(seed >> (8 * i)));
  }
  return h;
}

}  // namespace

void EncoderConfig::validate() const {
  if (ngram_min < 1 || ngram_min > ngram_max) {
    throw Error("encoder config: need 1 <= ngram_min <= ngram_max");
  }
  if (buckets < 2 || !std::has_single_bit(buckets) || buckets > kMaxBuckets) {
    throw Error("encoder config: buckets must be a power of two in [2, 2^32]");
  }
  if (hidden_dim < 1 || out_dim < 1) {
    throw Error("encoder config: hidden_dim and out_dim must be positive");
  }
}

std::uint64_t fnv1a_seeded(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = fnv_start(seed);
  for (char c : bytes) h = fnv_absorb(h, static_cast<unsigned char>(c));
  return h;
}

std::vector<Feature> featurize(std::string_view text, const EncoderConfig& config) {
  if (text.empty()) return {};
  std::vector<char32_t> cps = unicode::code_points(text);

  // UTF-8 of the folded, padded sequence with per-code-point byte offsets.
  std::string bytes = "#";
  std::vector<std::size_t> offsets = {0};
  for (char32_t cp : cps) {
    offsets.push_back(bytes.size());
    unicode::append_utf8(bytes, unicode::simple_fold(cp));
  }
  offsets.push_back(bytes.size());
  bytes.push_back('#');
  offsets.push_back(bytes.size());
  const std::size_t length = offsets.size() - 1;  // code points incl. padding

  const std::uint64_t start = fnv_start(config.hash_seed);
  const std::uint64_t mask = config.buckets - 1;
  std::vector<std::uint64_t> hashed;
  for (std::size_t i = 0; i < length; ++i) {
    std::uint64_t h = start;
    for (std::size_t n = 1; n <= config.ngram_max && i + n <= length; ++n) {
      for (std::size_t b = offsets[i + n - 1]; b < offsets[i + n]; ++b) {
        h = fnv_absorb(h, static_cast<unsigned char>(bytes[b]));
      }
      if (n >= config.ngram_min) hashed.push_back(h & mask);
    }
  }

  std::sort(hashed.begin(), hashed.end());
  std::vector<Feature> features;
  for (std::uint64_t bucket : hashed) {
    if (!features.empty() && features.back().bucket == bucket) {
      ++features.back().count;
    } else {
      features.push_back({bucket, 1});
    }
  }
  return features;
}

StudentModel::StudentModel(const EncoderConfig& config)
    : config_(config),
      embeddings_((config.validate(), config.buckets), config.hidden_dim),
      projection_(config.out_dim, config.hidden_dim),
      bias_(config.out_dim, 0.0f) {}

StudentModel StudentModel::initialize(const EncoderConfig& config,
                                      std::uint64_t seed) {
  StudentModel model(config);
  Rng rng(seed);
  for (float& e : model.embeddings_.data()) {
    e = static_cast<float>(rng.uniform(-0.05, 0.05));
  }
  const double limit = std::sqrt(1.0 / config.hidden_dim);
  for (float& w : model.projection_.data()) {
    w = static_cast<float>(rng.uniform(-limit, limit));
  }
  return model;
}

std::vector<float> StudentModel::pool(std::span<const Feature> features) const {
  const std::size_t dh = config_.hidden_dim;
  std::vector<double> acc(dh, 0.0);
  double total = 0.0;
  for (const Feature& f : features) {
    auto row = embeddings_.row(f.bucket);
    for (std::size_t k = 0; k < dh; ++k) acc[k] += f.count * static_cast<double>(row[k]);
    total += f.count;
  }
  std::vector<float> pooled(dh, 0.0f);
  if (total > 0.0) {
    for (std::size_t k = 0; k < dh; ++k) pooled[k] = static_cast<float>(acc[k] / total);
  }
  return pooled;
}

std::vector<float> StudentModel::pool(std::string_view text) const {
  return pool(featurize(text, config_));
}

std::vector<float> StudentModel::project(std::span<const float> pooled) const {
  std::vector<float> out(config_.out_dim);
  for (std::size_t i = 0; i < config_.out_dim; ++i) {
    auto w = projection_.row(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < pooled.size(); ++k) {
      acc += static_cast<double>(w[k]) * pooled[k];
    }
    out[i] = static_cast<float>(acc + bias_[i]);
  }
  return out;
}

std::vector<float> StudentModel::encode(std::string_view text) const {
  return project(pool(text));
}

Matrix StudentModel::encode_batch(std::span<const std::string> texts) const {
  Matrix out(texts.size(), config_.out_dim);
  for (std::size_t r = 0; r < texts.size(); ++r) {
    std::vector<float> v = encode(texts[r]);
    std::copy(v.begin(), v.end(), out.row(r).begin());
  }
  return out;
}

std::string encode_model(const StudentModel& model) {
  const EncoderConfig& c = model.config();
  io::ByteWriter w;
  w.bytes("SMDL");
  w.u32(kModelVersion);
  w.u32(c.ngram_min);
  w.u32(c.ngram_max);
  w.u64(c.buckets);
  w.u32(c.hidden_dim);
  w.u32(c.out_dim);
  w.u64(c.hash_seed);
  w.f32s(model.embeddings().data());
  w.f32s(model.projection().data());
  w.f32s(model.bias());
  return w.buffer();
}

StudentModel decode_model(std::span<const char> bytes) {
  io::ByteReader r(bytes, "checkpoint");
  if (r.remaining() >= 4 && r.bytes(4) != "SMDL") {
    throw FormatError("checkpoint: bad magic");
  }
  if (bytes.size() < 4) r.bytes(4);
  std::uint32_t version = r.u32();
  if (version != kModelVersion) {
    throw FormatError("checkpoint: unsupported version " + std::to_string(version));
  }
  EncoderConfig c;
  c.ngram_min = r.u32();
  c.ngram_max = r.u32();
  c.buckets = r.u64();
  c.hidden_dim = r.u32();
  c.out_dim = r.u32();
  c.hash_seed = r.u64();
  try {
    c.validate();
  } catch (const Error& e) {
    throw FormatError(std::string("checkpoint: ") + e.what());
  }
  // Each block is checked on its own so the products cannot wrap.
  r.require(c.buckets, static_cast<std::uint64_t>(c.hidden_dim) * sizeof(float));
  r.require(static_cast<std::uint64_t>(c.out_dim) * (c.hidden_dim + std::uint64_t{1}),
            sizeof(float));

  StudentModel model(c);
  r.f32s(model.embeddings().data());
  r.f32s(model.projection().data());
  r.f32s(model.bias());
  r.expect_end();
  auto finite = [](std::span<const float> xs) {
    return std::all_of(xs.begin(), xs.end(), [](float x) { return std::isfinite(x); });
  };
  if (!finite(model.embeddings().data()) || !finite(model.projection().data()) ||
      !finite(model.bias())) {
    throw FormatError("checkpoint: non-finite parameter");
  }
  return model;
}

void save_model(const StudentModel& model, const std::filesystem::path& path) {
  io::write_file(path, encode_model(model));
}

StudentModel load_model(const std::filesystem::path& path) {
  std::vector<char> bytes = io::read_file(path);
  try {
    return decode_model(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace intertext::encoder
