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

#ifndef INTERTEXT_SRC_BINARY_IO_H_
#define INTERTEXT_SRC_BINARY_IO_H_

// Little-endian encoding helpers shared by the store, checkpoint and index
// formats. Readers operate on a fully buffered file so that lengths taken
// from a header can be checked against the bytes actually present before
// anything is allocated.

#include <bit>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace intertext::io {

class ByteWriter {
 public:
  void bytes(std::string_view b) { out_.append(b); }
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f32s(std::span<const float> values);

  const std::string& buffer() const { return out_; }

 private:
  std::string out_;
};

class ByteReader {
 public:
  // `what` names the file kind in error messages ("store", "checkpoint").
  ByteReader(std::span<const char> data, std::string what)
      : data_(data), what_(std::move(what)) {}

  std::string_view bytes(std::size_t n);
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  float f32() { return std::bit_cast<float>(u32()); }
  void f32s(std::span<float> out);

  std::size_t remaining() const { return data_.size() - pos_; }
  // Throws unless `count` items of `item_size` bytes are still available.
  void require(std::uint64_t count, std::uint64_t item_size) const;
  // Throws if unread bytes remain.
  void expect_end() const;

 private:
  [[noreturn]] void truncated() const;

  std::span<const char> data_;
  std::size_t pos_ = 0;
  std::string what_;
};

std::vector<char> read_all(std::istream& in);
std::vector<char> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

// "SEMB" container shared by embedding stores (version 1) and vector indexes
// (version 2, which carries one extra flag byte after the version field).
struct SembContents {
  std::uint32_t version = 1;
  std::uint8_t flags = 0;
  std::uint32_t dim = 0;
  std::vector<std::string> ids;
  std::vector<float> vectors;  // ids.size() x dim, row-major
};

inline constexpr std::uint32_t kSembStoreVersion = 1;
inline constexpr std::uint32_t kSembIndexVersion = 2;
inline constexpr std::uint8_t kSembFlagNormalized = 0x01;

std::string encode_semb(const SembContents& contents);
// Accepts the versions listed in `accepted`.
SembContents decode_semb(std::span<const char> data, std::string_view what,
                         std::span<const std::uint32_t> accepted);

}  // namespace intertext::io

#endif  // INTERTEXT_SRC_BINARY_IO_H_
