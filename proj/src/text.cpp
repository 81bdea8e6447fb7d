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

#include "nliforge/text.hpp"

#include <array>
#include <cstdint>

namespace nliforge {

namespace {

std::size_t utf8_seq_len(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 1;  // stray continuation byte
}

}  // namespace

std::vector<std::string> utf8_chars(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t n = utf8_seq_len(static_cast<unsigned char>(text[i]));
    if (i + n > text.size()) n = 1;
    out.emplace_back(text.substr(i, n));
    i += n;
  }
  return out;
}

std::size_t utf8_length(std::string_view text) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t n = utf8_seq_len(static_cast<unsigned char>(text[i]));
    if (i + n > text.size()) n = 1;
    i += n;
    ++count;
  }
  return count;
}

bool is_punctuation(std::string_view ch) {
  static const std::array<std::string_view, 30> kPunct = {
      "。", "，", "、", "；", "：", "？", "！", "“", "”", "‘",
      "’", "（", "）", "《", "》", "…",  "—",  "·", "【", "】",
      ".",  ",",  ";",  ":",  "?",  "!",  "(",  ")", "\"", "'"};
  for (auto p : kPunct) {
    if (ch == p) return true;
  }
  return false;
}

bool is_digit_char(std::string_view ch) { return digit_value(ch) >= 0; }

int digit_value(std::string_view ch) {
  if (ch.size() == 1 && ch[0] >= '0' && ch[0] <= '9') return ch[0] - '0';
  // Full-width digits are U+FF10..U+FF19: EF BC 90 .. EF BC 99.
  if (ch.size() == 3 && static_cast<unsigned char>(ch[0]) == 0xef &&
      static_cast<unsigned char>(ch[1]) == 0xbc) {
    unsigned char b = static_cast<unsigned char>(ch[2]);
    if (b >= 0x90 && b <= 0x99) return b - 0x90;
  }
  return -1;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n'))
    ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' ||
                   s[e - 1] == '\n'))
    --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace nliforge
