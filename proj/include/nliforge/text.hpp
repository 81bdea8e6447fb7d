// Copyright 2026 The nli-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLIFORGE_TEXT_HPP_
#define NLIFORGE_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace nliforge {

// Splits UTF-8 text into code-point substrings. Invalid bytes are kept as
// single-byte tokens rather than rejected; inputs are trusted resource files.
std::vector<std::string> utf8_chars(std::string_view text);

std::size_t utf8_length(std::string_view text);

// CJK + ASCII punctuation used when the heuristic detectors strip tokens.
bool is_punctuation(std::string_view ch);

// ASCII '0'-'9' or full-width U+FF10..U+FF19.
bool is_digit_char(std::string_view ch);
int digit_value(std::string_view ch);

std::string trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

}  // namespace nliforge

#endif  // NLIFORGE_TEXT_HPP_
