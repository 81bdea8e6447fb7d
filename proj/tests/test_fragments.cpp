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

#include <cstdlib>
#include <optional>
#include <set>
#include <string_view>

#include "nliforge/fragments.hpp"
#include "nliforge/resources.hpp"

using namespace nliforge;
using namespace nliforge::fragments;
using S = Statement;

namespace {

std::string res(const std::string& name) {
  const char* dir = std::getenv("NLI_FORGE_RESOURCES");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

const std::vector<FragmentCategory> kCategories = {
    FragmentCategory::kBoolean,    FragmentCategory::kComparative,
    FragmentCategory::kConditional, FragmentCategory::kCounting,
    FragmentCategory::kNegation,   FragmentCategory::kQuantifier};

}  // namespace

TEST_CASE("statements realize into the fixed surface frames") {
  CHECK(realize(S::visited("甲", "北京")) == "甲到过北京");
  CHECK(realize(S::not_visited("甲", "北京")) == "甲没到过北京");
  CHECK(realize(S::only_visited("甲", {"北京", "上海"})) ==
        "甲只到过北京、上海");
  CHECK(realize(S::hugged("甲", "乙")) == "甲拥抱过乙");
  CHECK(realize(S::not_hugged("甲", "乙")) == "甲没拥抱过乙");
  CHECK(realize(S::only_hugged("甲", {"乙"})) == "甲只拥抱过乙");
  CHECK(realize(S::exists_universal()) ==
        "有人到过每一个地方，拥抱过每一个人");
  CHECK(realize(S::conditional(S::visited("甲", "北京"),
                               S::hugged("甲", "乙"))) ==
        "如果甲到过北京，那么甲拥抱过乙");
  CHECK(realize(S::count_compare("甲", CountRelation::kMoreThan, 10)) ==
        "甲拥抱过超过10个人");
  CHECK(realize(S::count_compare("甲", CountRelation::kFewerThan, 3)) ==
        "甲拥抱过不到3个人");
  CHECK(realize(S::count_compare("甲", CountRelation::kExactly, 7)) ==
        "甲恰好拥抱过7个人");
  CHECK(realize(S::age_rel("甲", AgeRelation::kYounger, "乙")) == "甲比乙小");
  CHECK(realize(S::age_rel("甲", AgeRelation::kOlder, "乙")) == "甲比乙大");
  CHECK(realize(S::age_rel("甲", AgeRelation::kSame, "乙")) == "甲和乙一样大");
  CHECK(realize(S::younger_than_all("甲", {"乙", "丙"})) == "甲比乙、丙都小");
}

TEST_CASE("parse_statement inverts realize") {
  std::vector<S> statements = {
      S::visited("甲", "北京"),
      S::not_visited("甲", "北京"),
      S::only_visited("甲", {"北京", "上海"}),
      S::hugged("甲", "乙"),
      S::not_hugged("甲", "乙"),
      S::only_hugged("甲", {"乙", "丙"}),
      S::exists_universal(),
      S::conditional(S::not_visited("甲", "北京"), S::hugged("甲", "乙")),
      S::count_compare("甲", CountRelation::kMoreThan, 10),
      S::count_compare("甲", CountRelation::kFewerThan, 3),
      S::count_compare("甲", CountRelation::kExactly, 7),
      S::age_rel("甲", AgeRelation::kYounger, "乙"),
      S::age_rel("甲", AgeRelation::kOlder, "乙"),
      S::age_rel("甲", AgeRelation::kSame, "乙"),
      S::younger_than_all("甲", {"乙", "丙"}),
  };
  for (const auto& st : statements) {
    CHECK(parse_statement(realize(st)) == st);
  }
  CHECK_THROWS_AS(parse_statement("甲吃过饭"), OracleError);
}

TEST_CASE("grouped subjects expand back into individual statements") {
  std::vector<S> premises = {S::only_visited("甲", {"北京"}),
                             S::only_visited("乙", {"北京"}),
                             S::visited("丙", "上海")};
  std::string text = realize_premises(premises);
  CHECK(text == "甲、乙只到过北京，丙到过上海。");
  CHECK(parse_premises(text) == premises);
}

TEST_CASE("premise sentences must end with the full stop") {
  CHECK_THROWS_AS(parse_premises("甲到过北京"), OracleError);
}

TEST_CASE("oracle basic frozen labels") {
  CHECK(oracle_label({S::visited("甲", "北京")}, S::visited("甲", "北京")) ==
        Label::kEntailment);
  CHECK(oracle_label({S::not_visited("甲", "北京")},
                     S::visited("甲", "北京")) == Label::kContradiction);
  CHECK(oracle_label({S::visited("甲", "北京")}, S::visited("乙", "北京")) ==
        Label::kNeutral);
  // Only-visited closes the subject's row but nobody else's.
  CHECK(oracle_label({S::only_visited("甲", {"北京"})},
                     S::not_visited("甲", "上海")) == Label::kEntailment);
  CHECK(oracle_label({S::visited("甲", "北京")},
                     S::not_visited("甲", "上海")) == Label::kNeutral);
  CHECK_THROWS_AS(oracle_label({S::visited("甲", "北京"),
                                S::not_visited("甲", "北京")},
                               S::visited("乙", "北京")),
                  OracleError);
}

TEST_CASE("conditional case split and count bounds") {
  // Unfired conditional gives neutral even about the consequent.
  CHECK(oracle_label({S::conditional(S::visited("甲", "北京"),
                                     S::hugged("甲", "乙"))},
                     S::hugged("甲", "乙")) == Label::kNeutral);
  // Fired conditional entails the consequent.
  CHECK(oracle_label({S::conditional(S::visited("甲", "北京"),
                                     S::hugged("甲", "乙")),
                      S::visited("甲", "北京")},
                     S::hugged("甲", "乙")) == Label::kEntailment);
  // OnlyHugged pins the count exactly; open-world padding keeps bare Hugged
  // lists open above the listed count.
  CHECK(oracle_label({S::only_hugged("甲", {"乙", "丙"})},
                     S::count_compare("甲", CountRelation::kExactly, 2)) ==
        Label::kEntailment);
  CHECK(oracle_label({S::hugged("甲", "乙"), S::hugged("甲", "丙")},
                     S::count_compare("甲", CountRelation::kExactly, 2)) ==
        Label::kNeutral);
  CHECK(oracle_label({S::only_hugged("甲", {"乙", "丙"})},
                     S::count_compare("甲", CountRelation::kMoreThan, 1)) ==
        Label::kEntailment);
}

TEST_CASE("age reasoning composes strict and equality constraints") {
  CHECK(oracle_label({S::age_rel("甲", AgeRelation::kYounger, "乙"),
                      S::age_rel("乙", AgeRelation::kYounger, "丙")},
                     S::age_rel("甲", AgeRelation::kYounger, "丙")) ==
        Label::kEntailment);
  CHECK(oracle_label({S::age_rel("甲", AgeRelation::kSame, "乙"),
                      S::age_rel("乙", AgeRelation::kYounger, "丙")},
                     S::age_rel("甲", AgeRelation::kOlder, "丙")) ==
        Label::kContradiction);
  CHECK(oracle_label({S::age_rel("甲", AgeRelation::kYounger, "乙")},
                     S::age_rel("甲", AgeRelation::kYounger, "丙")) ==
        Label::kNeutral);
}

TEST_CASE("every template round trips through realization") {
  auto names = load_lines(res("names.tsv"));
  auto places = load_lines(res("places.tsv"));
  for (FragmentCategory category : kCategories) {
    for (const auto& tid : template_ids(category)) {
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(derive_seed(seed, tid));
        FragmentInstance inst =
            make_instance(category, tid, names, places, rng);
        CHECK(inst.label == oracle_label(inst.premises, inst.hypothesis));
        CHECK(parse_premises(realize_premises(inst.premises)) ==
              inst.premises);
        CHECK(parse_statement(realize(inst.hypothesis)) == inst.hypothesis);
      }
    }
  }
}

namespace {

// Random tiny instances over a fixed universe for differential testing. The
// universe stays small enough that brute force never hits its enumeration
// guard and full enumeration stays cheap.
struct TinySampler {
  std::vector<std::string> persons{"甲", "乙"};
  std::vector<std::string> locations{"东城"};

  std::string person(Rng& rng) {
    return persons[static_cast<std::size_t>(rng.below(persons.size()))];
  }
  std::string location(Rng& rng) {
    return locations[static_cast<std::size_t>(rng.below(locations.size()))];
  }
  std::vector<std::string> person_list(Rng& rng, const std::string& exclude) {
    std::vector<std::string> pool;
    for (const auto& p : persons) {
      if (p != exclude) pool.push_back(p);
    }
    std::vector<std::string> out;
    for (const auto& p : pool) {
      if (rng.below(2) == 0) out.push_back(p);
    }
    if (out.empty()) out.push_back(pool[0]);
    return out;
  }

  S atomic(Rng& rng) {
    switch (rng.below(4)) {
      case 0: return S::visited(person(rng), location(rng));
      case 1: return S::not_visited(person(rng), location(rng));
      case 2: return S::hugged(person(rng), person(rng));
      default: return S::not_hugged(person(rng), person(rng));
    }
  }

  S premise(Rng& rng) {
    switch (rng.below(10)) {
      case 0: case 1: case 2: return atomic(rng);
      case 3: {
        std::string p = person(rng);
        std::vector<std::string> ls;
        for (const auto& l : locations) {
          if (rng.below(2) == 0) ls.push_back(l);
        }
        if (ls.empty()) ls.push_back(locations[0]);
        return S::only_visited(p, ls);
      }
      case 4: {
        std::string p = person(rng);
        return S::only_hugged(p, person_list(rng, p));
      }
      case 5: return S::exists_universal();
      case 6: return S::conditional(atomic(rng), atomic(rng));
      case 7: {
        std::string p = person(rng);
        std::string q = person(rng);
        while (q == p) q = person(rng);
        auto rel = static_cast<AgeRelation>(rng.below(3));
        return S::age_rel(p, rel, q);
      }
      default: {
        std::string p = person(rng);
        return S::younger_than_all(p, person_list(rng, p));
      }
    }
  }

  // Cell identity of an atomic statement, for keeping conditional hypothesis
  // halves independent.
  static std::string cell_key(const S& st) {
    bool visit = st.kind == StatementKind::kVisited ||
                 st.kind == StatementKind::kNotVisited;
    return (visit ? "v:" : "h:") + st.subject + ":" + st.object;
  }

  S hypothesis(Rng& rng) {
    switch (rng.below(10)) {
      case 0: case 1: case 2: case 3: return atomic(rng);
      case 4: {
        std::string p = person(rng);
        return S::only_hugged(p, person_list(rng, p));
      }
      case 5: return S::exists_universal();
      case 6: {
        S a = atomic(rng);
        S c = atomic(rng);
        while (cell_key(a) == cell_key(c)) c = atomic(rng);
        return S::conditional(a, c);
      }
      case 7: {
        std::string p = person(rng);
        std::string q = person(rng);
        while (q == p) q = person(rng);
        auto rel = static_cast<AgeRelation>(rng.below(3));
        return S::age_rel(p, rel, q);
      }
      case 8: {
        auto rel = static_cast<CountRelation>(rng.below(3));
        return S::count_compare(person(rng), rel, rng.below(2));
      }
      default: {
        std::string p = person(rng);
        return S::younger_than_all(p, person_list(rng, p));
      }
    }
  }
};

struct Outcome {
  std::optional<Label> label;  // nullopt: inconsistent premises
  bool too_large = false;

  bool operator==(const Outcome&) const = default;
};

template <typename F>
Outcome run_oracle(F&& f) {
  Outcome out;
  try {
    out.label = f();
  } catch (const OracleError& e) {
    if (std::string_view(e.what()).find("too large") != std::string_view::npos) {
      out.too_large = true;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("propagation oracle matches brute force on 10000 random instances") {
  TinySampler sampler;
  std::size_t compared = 0;
  std::size_t labeled = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    Rng rng(derive_seed(424242, "diff:" + std::to_string(i)));
    std::vector<S> premises;
    std::size_t n = 1 + rng.below(3);
    for (std::size_t k = 0; k < n; ++k) premises.push_back(sampler.premise(rng));
    S hyp = sampler.hypothesis(rng);

    Outcome fast =
        run_oracle([&] { return oracle_label(premises, hyp); });
    REQUIRE_FALSE(fast.too_large);
    Outcome slow =
        run_oracle([&] { return brute_force_label(premises, hyp); });
    if (slow.too_large) continue;  // over the enumeration guard, not comparable
    ++compared;
    REQUIRE_MESSAGE(fast == slow,
                    "disagreement on instance " << i << ": "
                        << realize_premises(premises) << " / " << realize(hyp));
    if (fast.label) ++labeled;
  }
  // The differential test must not be vacuous.
  CHECK(compared > 9000);
  CHECK(labeled > 3000);
}

TEST_CASE("generate_fragment emits verified deduplicated pairs") {
  auto names = load_lines(res("names.tsv"));
  auto places = load_lines(res("places.tsv"));
  FragmentOptions options;
  options.count = 60;
  options.seed = 20260823;
  Dataset d = generate_fragment(FragmentCategory::kCounting, names, places,
                                options);
  REQUIRE(d.pairs.size() == 60);
  CHECK(d.pairs[0].id == "fragment-counting-000001");
  CHECK(d.meta.at("seed") == "20260823");

  std::set<std::pair<std::string, std::string>> texts;
  std::set<Label> labels;
  for (const auto& pair : d.pairs) {
    CHECK(texts.emplace(pair.premise, pair.hypothesis).second);
    labels.insert(pair.label);
    auto premises = parse_premises(pair.premise);
    auto hyp = parse_statement(pair.hypothesis);
    CHECK(oracle_label(premises, hyp) == pair.label);
  }
  CHECK(labels.size() == 3);
}

TEST_CASE("fragment generation is independent of the thread count") {
  auto names = load_lines(res("names.tsv"));
  auto places = load_lines(res("places.tsv"));
  FragmentOptions a;
  a.count = 48;
  a.seed = 7;
  a.threads = 1;
  FragmentOptions b = a;
  b.threads = 8;
  for (FragmentCategory category :
       {FragmentCategory::kNegation, FragmentCategory::kComparative}) {
    Dataset da = generate_fragment(category, names, places, a);
    Dataset db = generate_fragment(category, names, places, b);
    REQUIRE(da.pairs.size() == db.pairs.size());
    for (std::size_t i = 0; i < da.pairs.size(); ++i) {
      CHECK(da.pairs[i].id == db.pairs[i].id);
      CHECK(da.pairs[i].premise == db.pairs[i].premise);
      CHECK(da.pairs[i].hypothesis == db.pairs[i].hypothesis);
      CHECK(da.pairs[i].label == db.pairs[i].label);
    }
  }
}

TEST_CASE("category names round trip") {
  for (FragmentCategory c : kCategories) {
    auto parsed = parse_category(category_name(c));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == c);
  }
  CHECK_FALSE(parse_category("arithmetic").has_value());
}
