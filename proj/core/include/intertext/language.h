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

#ifndef INTERTEXT_LANGUAGE_H_
#define INTERTEXT_LANGUAGE_H_

#include <array>
#include <optional>
#include <string_view>

namespace intertext {

enum class Language { kEn, kLa, kGrc };

inline constexpr std::array<Language, 3> kAllLanguages = {
    Language::kEn, Language::kLa, Language::kGrc};

// ISO 639 code: "en", "la", "grc".
std::string_view to_string(Language lang);
std::optional<Language> parse_language(std::string_view code);

}  // namespace intertext

#endif  // INTERTEXT_LANGUAGE_H_
