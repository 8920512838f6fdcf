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

#include <openssl/evp.h>

#include <array>
#include <cmath>

#include "binary_io.h"
#include "intertext/error.h"
#include "intertext/unicode.h"

namespace intertext::teacher {
namespace {

void append_le64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>(v >> (8 * i)));
}

std::array<unsigned char, 32> sha256(std::string_view data) {
  std::array<unsigned char, 32> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != digest.size()) {
    throw Error("SHA-256 failed");
  }
  return digest;
}

}  // namespace

EmbeddingStore::EmbeddingStore(std::uint32_t dim) : dim_(dim), vectors_(0, dim) {
  if (dim == 0) throw Error("embedding store: dim must be positive");
}

void EmbeddingStore::add(std::string id, std::span<const float> vector) {
  if (vector.size() != dim_) {
    throw Error("embedding store: vector for \"" + id + "\" has " +
                std::to_string(vector.size()) + " components, expected " +
                std::to_string(dim_));
  }
  for (float v : vector) {
    if (!std::isfinite(v)) {
      throw Error("embedding store: non-finite component in \"" + id + "\"");
    }
  }
  if (rows_.contains(id)) {
    throw Error("embedding store: duplicate id \"" + id + "\"");
  }
  rows_.emplace(id, ids_.size());
  ids_.push_back(std::move(id));
  vectors_.append_row(vector);
}

std::optional<std::span<const float>> EmbeddingStore::lookup(
    std::string_view id) const {
  auto it = rows_.find(std::string(id));
  if (it == rows_.end()) return std::nullopt;
  return vectors_.row(it->second);
}

std::string encode_store(const EmbeddingStore& store) {
  io::SembContents c;
  c.version = io::kSembStoreVersion;
  c.dim = store.dim();
  c.ids = store.ids();
  auto data = store.matrix().data();
  c.vectors.assign(data.begin(), data.end());
  return io::encode_semb(c);
}

EmbeddingStore decode_store(std::span<const char> bytes) {
  static constexpr std::uint32_t kAccepted[] = {io::kSembStoreVersion};
  io::SembContents c = io::decode_semb(bytes, "store", kAccepted);
  EmbeddingStore store(c.dim);
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    store.add(std::move(c.ids[i]),
              std::span<const float>(c.vectors).subspan(i * c.dim, c.dim));
  }
  return store;
}

void save_store(const EmbeddingStore& store, const std::filesystem::path& path) {
  io::write_file(path, encode_store(store));
}

EmbeddingStore load_store(const std::filesystem::path& path) {
  std::vector<char> bytes = io::read_file(path);
  try {
    return decode_store(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::vector<float> pseudo_teacher(std::string_view sentence, std::uint32_t dim,
                                  std::uint64_t seed) {
  if (dim == 0) throw Error("pseudo_teacher: dim must be positive");
  std::string message;
  append_le64(message, seed);
  message += unicode::nfc(sentence);
  const std::size_t prefix = message.size();

  std::vector<double> v(dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    message.resize(prefix);
    append_le64(message, i);
    auto digest = sha256(message);
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(digest[b]) << (8 * b);
    }
    double u = static_cast<double>(bits) / 18446744073709551616.0;
    v[i] = 2.0 * u - 1.0;
  }
  double sum = 0.0;
  for (double x : v) sum += x * x;
  const double norm = std::sqrt(sum);

  std::vector<float> out(dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    out[i] = static_cast<float>(v[i] / norm);
  }
  return out;
}

std::string source_key(std::string_view pair_id) {
  return std::string(pair_id) + ":src";
}

EmbeddingStore pseudo_store_for_pairs(std::span<const corpus::PairRecord> pairs,
                                      std::uint32_t dim, std::uint64_t seed) {
  EmbeddingStore store(dim);
  for (const corpus::PairRecord& p : pairs) {
    store.add(source_key(p.id), pseudo_teacher(p.text_src, dim, seed));
  }
  return store;
}

}  // namespace intertext::teacher
