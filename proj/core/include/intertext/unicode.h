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

#ifndef INTERTEXT_UNICODE_H_
#define INTERTEXT_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Thin UTF-8 helpers over ICU. All functions throw intertext::Error on
// ill-formed UTF-8.
namespace intertext::unicode {

std::string nfc(std::string_view text);
bool is_nfc(std::string_view text);

// Full Unicode case folding (used for dedup keys).
std::string fold_case(std::string_view text);

// Simple (1:1) case folding of a single code point.
char32_t simple_fold(char32_t cp);

bool is_whitespace(char32_t cp);

std::vector<char32_t> code_points(std::string_view text);
void append_utf8(std::string& out, char32_t cp);

// Trims leading/trailing Unicode whitespace.
std::string trim(std::string_view text);

// Trims and replaces every internal whitespace run with one ASCII space.
std::string collapse_whitespace(std::string_view text);

// Number of maximal non-whitespace runs.
std::size_t count_words(std::string_view text);

}  // namespace intertext::unicode

#endif  // INTERTEXT_UNICODE_H_
