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

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "nliforge/resources.hpp"

using namespace nliforge;

namespace {

std::string res(const std::string& name) {
  const char* dir = std::getenv("NLI_FORGE_RESOURCES");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

}  // namespace

TEST_CASE("bundled vocabulary loads with a feature registry") {
  Vocabulary vocab = load_vocabulary(res("vocabulary.tsv"));
  CHECK(vocab.entries().size() >= 263);
  CHECK(vocab.feature_registry().count("human"));
  CHECK(vocab.feature_registry().count("obj_edible"));

  CHECK_FALSE(vocab.lookup(Pos::kNoun, {"human"}).empty());
  CHECK_FALSE(vocab.lookup(Pos::kVerb, {"loc_verb"}).empty());
  CHECK_FALSE(vocab.lookup(Pos::kAdverb, {"factive"}).empty());
  CHECK_FALSE(vocab.lookup(Pos::kLocativeNoun, {}).empty());

  const LexEntry* eat = vocab.find("吃");
  REQUIRE(eat != nullptr);
  CHECK(eat->pos == Pos::kVerb);
  CHECK(eat->has_feature("obj_edible"));
  CHECK(vocab.find("不存在的词条") == nullptr);
}

TEST_CASE("undeclared features are load errors") {
  std::string path = "/tmp/nliforge_bad_vocab.tsv";
  {
    std::ofstream out(path);
    out << "#features human\n学生\tnoun\thuman,flying\n";
  }
  CHECK_THROWS_AS(load_vocabulary(path), LoadError);
  std::remove(path.c_str());
}

TEST_CASE("missing registry header is a load error") {
  std::string path = "/tmp/nliforge_headerless_vocab.tsv";
  {
    std::ofstream out(path);
    out << "学生\tnoun\thuman\n";
  }
  CHECK_THROWS_AS(load_vocabulary(path), LoadError);
  std::remove(path.c_str());
}

TEST_CASE("homophone candidates respect syllable and frequency window") {
  PinyinTable pinyin = load_pinyin(res("pinyin.tsv"));
  CharFrequency freq = load_char_frequency(res("charfreq.tsv"));

  auto candidates = homophone_candidates("至", pinyin, freq, 100, 6000);
  CHECK_FALSE(candidates.empty());
  for (const auto& c : candidates) {
    CHECK(c != "至");
    CHECK(pinyin.mapping.at(c) == pinyin.mapping.at("至"));
    CHECK(freq.count(c) >= 100);
    CHECK(freq.count(c) <= 6000);
  }

  CHECK_THROWS_AS(homophone_candidates("X", pinyin, freq, 100, 6000),
                  LoadError);
}

TEST_CASE("bundled distractors satisfy the design constraints") {
  DistractorSet set = load_distractors(res("distractors.tsv"));
  REQUIRE(set.statements.size() == 25);
  std::size_t tautologies = 0;
  std::size_t oov = 0;
  for (const auto& st : set.statements) {
    if (st.tautology) ++tautologies;
    else if (st.has_oov) ++oov;
    bool has_negator = st.negated.find("不") != std::string::npos ||
                       st.negated.find("没") != std::string::npos;
    CHECK(has_negator);
  }
  CHECK(tautologies == 1);
  CHECK(oov == 12);
}

TEST_CASE("substitution lexicons load and reject self maps") {
  SubstitutionLexicon syn = load_substitutions(res("synonyms.tsv"));
  const auto* cands = syn.candidates("困难");
  REQUIRE(cands != nullptr);
  CHECK(cands->size() >= 2);
  CHECK(syn.candidates("不存在") == nullptr);

  std::string path = "/tmp/nliforge_selfmap.tsv";
  {
    std::ofstream out(path);
    out << "好\t好\n";
  }
  CHECK_THROWS_AS(load_substitutions(path), LoadError);
  std::remove(path.c_str());
}

TEST_CASE("name, place and seed lists load") {
  auto names = load_lines(res("names.tsv"));
  auto places = load_lines(res("places.tsv"));
  auto seeds = load_lines(res("numeric_seeds.txt"));
  CHECK(names.size() >= 300);
  CHECK(places.size() >= 200);
  CHECK(seeds.size() == 100);
  CHECK(names[0] == "库尔图尔");
  CHECK(places[0] == "临汾市襄汾县");
  CHECK(seeds[0] == "小红每分钟打110个字。");
}
