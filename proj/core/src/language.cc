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

#include "intertext/language.h"

namespace intertext {

std::string_view to_string(Language lang) {
  switch (lang) {
    case Language::kEn:
      return "en";
    case Language::kLa:
      return "la";
    case Language::kGrc:
      return "grc";
  }
  return "?";
}

std::optional<Language> parse_language(std::string_view code) {
  for (Language lang : kAllLanguages) {
    if (to_string(lang) == code) return lang;
  }
  return std::nullopt;
}

}  // namespace intertext
