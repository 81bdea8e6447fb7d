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
#include "nliforge/stress.hpp"
#include "nliforge/text.hpp"

using namespace nliforge;

namespace {

std::string res(const std::string& name) {
  const char* dir = std::getenv("NLI_FORGE_RESOURCES");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

NLIPair seed_pair() {
  NLIPair p;
  p.id = "seed-1";
  p.premise = "他昨天去了学校。";
  p.hypothesis = "他出门了。";
  p.label = Label::kEntailment;
  p.category = "seed";
  p.subcategory = "unit";
  return p;
}

AnnotatedPair annotated(const NLIPair& pair,
                        std::vector<AnnotatedToken> premise_tokens,
                        std::vector<AnnotatedToken> hypothesis_tokens) {
  AnnotatedPair ap;
  ap.pair = pair;
  ap.premise_tokens = std::move(premise_tokens);
  ap.hypothesis_tokens = std::move(hypothesis_tokens);
  return ap;
}

}  // namespace

TEST_CASE("condition codes round trip") {
  for (const char* code : {"p", "pn", "h", "hn"}) {
    auto cond = parse_condition(code);
    REQUIRE(cond.has_value());
    CHECK(condition_code(*cond) == code);
  }
  CHECK_FALSE(parse_condition("x").has_value());
  CHECK_FALSE(parse_condition("").has_value());
}

TEST_CASE("distraction appends before final punctuation") {
  DistractorStatement d;
  d.plain = "地球围绕太阳转";
  d.negated = "地球不围绕月亮转";

  NLIPair base = seed_pair();
  NLIPair p = apply_distraction(base, d, 3, {DistractionTarget::kPremise, false});
  CHECK(p.premise == "他昨天去了学校，而且地球围绕太阳转。");
  CHECK(p.hypothesis == base.hypothesis);
  CHECK(p.label == base.label);
  CHECK(p.subcategory == "p");
  CHECK(p.provenance.at("distractor") == "3");

  NLIPair h = apply_distraction(base, d, 0, {DistractionTarget::kHypothesis, true});
  CHECK(h.hypothesis == "他出门了，而且地球不围绕月亮转。");
  CHECK(h.premise == base.premise);
  CHECK(h.subcategory == "hn");
}

TEST_CASE("distraction handles text without final punctuation") {
  DistractorStatement d;
  d.plain = "水往低处流";
  d.negated = "水不往高处流";
  NLIPair base = seed_pair();
  base.premise = "他昨天去了学校";
  NLIPair out = apply_distraction(base, d, 0, {DistractionTarget::kPremise, false});
  CHECK(out.premise == "他昨天去了学校，而且水往低处流。");
}

TEST_CASE("antonym replaces a noun or adjective and forces contradiction") {
  SubstitutionLexicon lex = load_substitutions(res("antonyms.tsv"));
  NLIPair base = seed_pair();
  base.premise = "这个问题较大。";
  AnnotatedPair ap = annotated(base,
                               {{"这个", Pos::kPronoun},
                                {"问题", Pos::kNoun},
                                {"较大", Pos::kAdjective},
                                {"。", Pos::kOther}},
                               {{"难", Pos::kAdjective}});
  Rng rng(5);
  auto out = apply_antonym(ap, lex, rng);
  REQUIRE(out.has_value());
  CHECK(out->label == Label::kContradiction);
  CHECK(out->premise == "这个问题较大。");
  CHECK(out->hypothesis == "这个问题较小。");
  CHECK(out->provenance.at("replaced") == "较大");
}

TEST_CASE("antonym returns nullopt when nothing is eligible") {
  SubstitutionLexicon lex = load_substitutions(res("antonyms.tsv"));
  NLIPair base = seed_pair();
  base.premise = "走了。";
  AnnotatedPair ap =
      annotated(base, {{"走", Pos::kVerb}, {"了", Pos::kOther},
                       {"。", Pos::kOther}},
                {{"走", Pos::kVerb}});
  Rng rng(5);
  CHECK_FALSE(apply_antonym(ap, lex, rng).has_value());
}

TEST_CASE("synonym picks the highest similarity candidate") {
  SubstitutionLexicon lex = load_substitutions(res("synonyms.tsv"));
  NLIPair base = seed_pair();
  base.premise = "这件事很困难。";
  AnnotatedPair ap = annotated(base,
                               {{"这件事", Pos::kNoun},
                                {"很", Pos::kAdverb},
                                {"困难", Pos::kAdjective},
                                {"。", Pos::kOther}},
                               {{"难", Pos::kAdjective}});
  Rng rng(5);
  auto out = apply_synonym(ap, lex, rng);
  REQUIRE(out.has_value());
  CHECK(out->label == Label::kEntailment);
  // 艰难 (0.92) beats 难题 (0.61).
  CHECK(out->hypothesis == "这件事很艰难。");
}

TEST_CASE("synonym similarity ties break lexicographically") {
  SubstitutionLexicon lex;
  lex.mapping["跑"] = {{"奔跑", 0.8}, {"飞跑", 0.8}, {"疾跑", 0.7}};
  NLIPair base = seed_pair();
  base.premise = "他跑了。";
  AnnotatedPair ap = annotated(
      base, {{"他", Pos::kPronoun}, {"跑", Pos::kVerb}, {"了", Pos::kOther},
             {"。", Pos::kOther}},
      {{"跑", Pos::kVerb}});
  Rng rng(5);
  auto out = apply_synonym(ap, lex, rng);
  REQUIRE(out.has_value());
  CHECK(out->provenance.at("substitute") == "奔跑");
}

TEST_CASE("spelling swaps one homophone inside the frequency window") {
  PinyinTable pinyin = load_pinyin(res("pinyin.tsv"));
  CharFrequency freq = load_char_frequency(res("charfreq.tsv"));
  NLIPair base = seed_pair();
  base.hypothesis = "他至今没来。";
  Rng rng(11);
  auto out = apply_spelling(base, pinyin, freq, rng);
  REQUIRE(out.has_value());
  CHECK(out->label == base.label);
  CHECK(out->premise == base.premise);
  CHECK(out->hypothesis != base.hypothesis);

  const std::string& replaced = out->provenance.at("replaced");
  const std::string& substitute = out->provenance.at("substitute");
  CHECK(pinyin.mapping.at(replaced) == pinyin.mapping.at(substitute));
  CHECK(freq.count(substitute) >= 100);
  CHECK(freq.count(substitute) <= 6000);

  // Exactly one character differs.
  auto a = utf8_chars(base.hypothesis);
  auto b = utf8_chars(out->hypothesis);
  REQUIRE(a.size() == b.size());
  std::size_t diffs = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) ++diffs;
  }
  CHECK(diffs == 1);
}

TEST_CASE("spelling returns nullopt when no character is eligible") {
  PinyinTable pinyin;
  pinyin.mapping["书"] = "shu";
  CharFrequency freq;
  freq.mapping["书"] = 500;
  NLIPair base = seed_pair();
  base.hypothesis = "书";
  Rng rng(11);
  CHECK_FALSE(apply_spelling(base, pinyin, freq, rng).has_value());
}

TEST_CASE("annotations load and verify surface reconstruction") {
  Dataset d;
  d.pairs.push_back(seed_pair());
  std::string path = "/tmp/nliforge_annotations.tsv";
  {
    std::ofstream out(path);
    out << "seed-1\t他|pronoun 昨天|noun 去|verb 了|other 学校|noun 。|other"
        << "\t他|pronoun 出门|verb 了|other 。|other\n";
  }
  auto rows = load_annotations(d, path);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].premise_tokens.size() == 6);
  CHECK(rows[0].hypothesis_tokens[1].pos == Pos::kVerb);

  {
    std::ofstream out(path);
    out << "seed-1\t他|pronoun\t他|pronoun\n";  // does not reconstruct
  }
  CHECK_THROWS_AS(load_annotations(d, path), LoadError);
  std::remove(path.c_str());
}
