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

#include "binary_io.h"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iterator>
#include <limits>

#include "intertext/error.h"

namespace intertext::io {

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>(v >> (8 * i)));
}

void ByteWriter::f32s(std::span<const float> values) {
  if constexpr (std::endian::native == std::endian::little) {
    out_.append(reinterpret_cast<const char*>(values.data()),
                values.size_bytes());
  } else {
    for (float v : values) f32(v);
  }
}

void ByteReader::truncated() const {
  throw FormatError(what_ + ": truncated file at byte " +
                    std::to_string(pos_));
}

void ByteReader::require(std::uint64_t count, std::uint64_t item_size) const {
  if (item_size != 0 &&
      count > std::numeric_limits<std::uint64_t>::max() / item_size) {
    truncated();
  }
  if (count * item_size > remaining()) truncated();
}

std::string_view ByteReader::bytes(std::size_t n) {
  if (n > remaining()) truncated();
  std::string_view out(data_.data() + pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::u8() { return static_cast<std::uint8_t>(bytes(1)[0]); }

std::uint32_t ByteReader::u32() {
  std::string_view b = bytes(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  }
  return v;
}

std::uint64_t ByteReader::u64() {
  std::string_view b = bytes(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  }
  return v;
}

void ByteReader::f32s(std::span<float> out) {
  require(out.size(), sizeof(float));
  if constexpr (std::endian::native == std::endian::little) {
    std::string_view b = bytes(out.size_bytes());
    std::copy(b.begin(), b.end(), reinterpret_cast<char*>(out.data()));
  } else {
    for (float& v : out) v = f32();
  }
}

void ByteReader::expect_end() const {
  if (remaining() != 0) {
    throw FormatError(what_ + ": " + std::to_string(remaining()) +
                      " trailing bytes");
  }
}

std::vector<char> read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_all(in);
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

std::string encode_semb(const SembContents& c) {
  ByteWriter w;
  w.bytes("SEMB");
  w.u32(c.version);
  if (c.version == kSembIndexVersion) w.u8(c.flags);
  w.u32(c.dim);
  w.u64(c.ids.size());
  for (const std::string& id : c.ids) {
    w.u32(static_cast<std::uint32_t>(id.size()));
    w.bytes(id);
  }
  w.f32s(c.vectors);
  return w.buffer();
}

SembContents decode_semb(std::span<const char> data, std::string_view what,
                         std::span<const std::uint32_t> accepted) {
  ByteReader r(data, std::string(what));
  if (data.size() >= 4 && r.bytes(4) != "SEMB") {
    throw FormatError(std::string(what) + ": bad magic");
  }
  if (data.size() < 4) r.bytes(4);

  SembContents c;
  c.version = r.u32();
  if (std::find(accepted.begin(), accepted.end(), c.version) == accepted.end()) {
    throw FormatError(std::string(what) + ": unsupported version " +
                      std::to_string(c.version));
  }
  if (c.version == kSembIndexVersion) c.flags = r.u8();
  c.dim = r.u32();
  if (c.dim == 0) throw FormatError(std::string(what) + ": dim must be positive");
  const std::uint64_t count = r.u64();
  // Every id costs at least its 4-byte length prefix.
  r.require(count, 4);
  c.ids.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t len = r.u32();
    c.ids.emplace_back(r.bytes(len));
  }
  r.require(count, static_cast<std::uint64_t>(c.dim) * sizeof(float));
  c.vectors.resize(count * c.dim);
  r.f32s(c.vectors);
  r.expect_end();
  return c;
}

}  // namespace intertext::io
