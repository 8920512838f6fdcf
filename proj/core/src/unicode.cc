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

#include "intertext/unicode.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "intertext/error.h"

namespace intertext::unicode {
namespace {

icu::UnicodeString to_icu(std::string_view text) {
  // Validate first: ICU silently substitutes U+FFFD for bad sequences.
  (void)code_points(text);
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw Error("ICU NFC normalizer unavailable");
  }
  return *n;
}

}  // namespace

std::vector<char32_t> code_points(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) throw Error("ill-formed UTF-8 at byte " + std::to_string(i));
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (error) throw Error("cannot encode code point as UTF-8");
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

std::string nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfc_instance().normalize(to_icu(text), status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  return to_utf8(normalized);
}

bool is_nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  bool result = nfc_instance().isNormalized(to_icu(text), status);
  if (U_FAILURE(status)) throw Error("NFC check failed");
  return result;
}

std::string fold_case(std::string_view text) {
  icu::UnicodeString s = to_icu(text);
  s.foldCase(U_FOLD_CASE_DEFAULT);
  return to_utf8(s);
}

char32_t simple_fold(char32_t cp) {
  return static_cast<char32_t>(
      u_foldCase(static_cast<UChar32>(cp), U_FOLD_CASE_DEFAULT));
}

bool is_whitespace(char32_t cp) {
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

std::string trim(std::string_view text) {
  std::vector<char32_t> cps = code_points(text);
  std::size_t begin = 0;
  std::size_t end = cps.size();
  while (begin < end && is_whitespace(cps[begin])) ++begin;
  while (end > begin && is_whitespace(cps[end - 1])) --end;
  std::string out;
  for (std::size_t i = begin; i < end; ++i) append_utf8(out, cps[i]);
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char32_t cp : code_points(text)) {
    if (is_whitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    append_utf8(out, cp);
  }
  return out;
}

std::size_t count_words(std::string_view text) {
  std::size_t words = 0;
  bool in_word = false;
  for (char32_t cp : code_points(text)) {
    bool space = is_whitespace(cp);
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

}  // namespace intertext::unicode
