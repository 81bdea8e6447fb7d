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

#ifndef NLIFORGE_RESOURCES_HPP_
#define NLIFORGE_RESOURCES_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nliforge {

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Pos {
  kNoun,
  kVerb,
  kAdjective,
  kAdverb,
  kPronoun,
  kLocativeNoun,
  kOther
};

std::string_view pos_name(Pos pos);
std::optional<Pos> parse_pos(std::string_view name);

struct LexEntry {
  std::string surface;
  Pos pos = Pos::kOther;
  std::set<std::string> features;

  bool has_feature(std::string_view f) const {
    return features.count(std::string(f)) != 0;
  }
};

// Word list with a data-driven feature registry. The registry is declared in
// the file's header line; rows using undeclared features are load errors.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<LexEntry> entries, std::set<std::string> registry);

  const std::vector<LexEntry>& entries() const { return entries_; }
  const std::set<std::string>& feature_registry() const { return registry_; }

  // All entries with the given POS carrying every requested feature.
  std::vector<const LexEntry*> lookup(
      Pos pos, const std::set<std::string>& features) const;

  const LexEntry* find(std::string_view surface) const;

 private:
  std::vector<LexEntry> entries_;
  std::set<std::string> registry_;
  std::map<std::string, std::size_t> by_surface_;
};

// TSV: header "#features <f1> <f2> ...", then rows surface \t pos \t features.
Vocabulary load_vocabulary(const std::string& path);

// Character -> single toneless syllable (most common reading).
struct PinyinTable {
  std::map<std::string, std::string> mapping;
};

PinyinTable load_pinyin(const std::string& path);

struct CharFrequency {
  std::map<std::string, std::uint64_t> mapping;

  std::uint64_t count(const std::string& ch) const {
    auto it = mapping.find(ch);
    return it == mapping.end() ? 0 : it->second;
  }
};

CharFrequency load_char_frequency(const std::string& path);

// All characters c != ch sharing ch's toneless syllable with frequency in
// [lo, hi]. Throws LoadError if ch has no pronunciation in the table.
std::vector<std::string> homophone_candidates(const std::string& ch,
                                              const PinyinTable& pinyin,
                                              const CharFrequency& freq,
                                              std::uint64_t lo,
                                              std::uint64_t hi);

struct DistractorStatement {
  std::string plain;
  std::string negated;
  bool has_oov = false;
  bool tautology = false;
};

// 25 statement pairs: 1 tautology plus 24 true statements, half of which
// contain an out-of-vocabulary word. Lengths 5-16 characters; every negated
// variant uses one of the negators (bu/mei).
struct DistractorSet {
  std::vector<DistractorStatement> statements;
};

DistractorSet load_distractors(const std::string& path);

struct SubstitutionCandidate {
  std::string surface;
  std::optional<double> similarity;
};

struct SubstitutionLexicon {
  std::map<std::string, std::vector<SubstitutionCandidate>> mapping;

  const std::vector<SubstitutionCandidate>* candidates(
      const std::string& word) const {
    auto it = mapping.find(word);
    return it == mapping.end() ? nullptr : &it->second;
  }
};

// TSV rows: word \t candidate [\t similarity]. A word never maps to itself.
SubstitutionLexicon load_substitutions(const std::string& path);

// One entry per line; blank lines and #-comments skipped. Used for name,
// place and seed-sentence lists.
std::vector<std::string> load_lines(const std::string& path);

}  // namespace nliforge

#endif  // NLIFORGE_RESOURCES_HPP_
