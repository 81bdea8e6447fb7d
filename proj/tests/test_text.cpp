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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nliforge/text.hpp"

using namespace nliforge;

TEST_CASE("utf8_chars splits mixed text into code points") {
  auto chars = utf8_chars("a中b文");
  REQUIRE(chars.size() == 4);
  CHECK(chars[0] == "a");
  CHECK(chars[1] == "中");
  CHECK(chars[2] == "b");
  CHECK(chars[3] == "文");
  CHECK(utf8_length("小红打110个字") == 8);
  CHECK(utf8_chars("").empty());
}

TEST_CASE("utf8_chars keeps invalid bytes as single tokens") {
  std::string bad = "中";
  bad += static_cast<char>(0xFF);
  auto chars = utf8_chars(bad);
  REQUIRE(chars.size() == 2);
  CHECK(chars[0] == "中");
  CHECK(chars[1].size() == 1);
}

TEST_CASE("punctuation covers CJK and ASCII marks") {
  for (const char* p : {"，", "。", "！", "？", "、", "；", "：", ",", ".",
                        "!", "?"}) {
    CHECK(is_punctuation(p));
  }
  CHECK_FALSE(is_punctuation("中"));
  CHECK_FALSE(is_punctuation("a"));
}

TEST_CASE("digits include full width forms") {
  CHECK(is_digit_char("0"));
  CHECK(is_digit_char("9"));
  CHECK(is_digit_char("０"));
  CHECK(is_digit_char("９"));
  CHECK_FALSE(is_digit_char("十"));
  CHECK(digit_value("7") == 7);
  CHECK(digit_value("７") == 7);
}

TEST_CASE("trim, split and join behave on edge cases") {
  CHECK(trim("  x \t") == "x");
  CHECK(trim("") == "");
  auto parts = split("a\tb\t\tc", '\t');
  REQUIRE(parts.size() == 4);
  CHECK(parts[2] == "");
  CHECK(join({"a", "b", "c"}, "、") == "a、b、c");
  CHECK(join({}, ",") == "");
}

TEST_CASE("prefix and suffix checks") {
  CHECK(starts_with("不到510", "不到"));
  CHECK_FALSE(starts_with("到510", "不到"));
  CHECK(ends_with("个字。", "。"));
  CHECK_FALSE(ends_with("。个字", "。"));
  CHECK(starts_with("abc", ""));
}
