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

#include "nliforge/resources.hpp"

#include <fstream>

#include "nliforge/text.hpp"

namespace nliforge {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t lineno,
                       const std::string& what) {
  throw LoadError(path + ":" + std::to_string(lineno) + ": " + what);
}

// Reads non-empty, non-comment lines; returns (lineno, line) pairs.
std::vector<std::pair<std::size_t, std::string>> read_tsv_lines(
    const std::string& path, std::string* header_comment = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open: " + path);
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line[0] == '#') {
      if (header_comment && header_comment->empty()) *header_comment = line;
      continue;
    }
    lines.emplace_back(lineno, line);
  }
  return lines;
}

}  // namespace

std::string_view pos_name(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "noun";
    case Pos::kVerb: return "verb";
    case Pos::kAdjective: return "adjective";
    case Pos::kAdverb: return "adverb";
    case Pos::kPronoun: return "pronoun";
    case Pos::kLocativeNoun: return "locative-noun";
    case Pos::kOther: return "other";
  }
  return "other";
}

std::optional<Pos> parse_pos(std::string_view name) {
  if (name == "noun") return Pos::kNoun;
  if (name == "verb") return Pos::kVerb;
  if (name == "adjective") return Pos::kAdjective;
  if (name == "adverb") return Pos::kAdverb;
  if (name == "pronoun") return Pos::kPronoun;
  if (name == "locative-noun") return Pos::kLocativeNoun;
  if (name == "other") return Pos::kOther;
  return std::nullopt;
}

Vocabulary::Vocabulary(std::vector<LexEntry> entries,
                       std::set<std::string> registry)
    : entries_(std::move(entries)), registry_(std::move(registry)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    by_surface_.emplace(entries_[i].surface, i);
  }
}

std::vector<const LexEntry*> Vocabulary::lookup(
    Pos pos, const std::set<std::string>& features) const {
  std::vector<const LexEntry*> out;
  for (const auto& e : entries_) {
    if (e.pos != pos) continue;
    bool ok = true;
    for (const auto& f : features) {
      if (!e.has_feature(f)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(&e);
  }
  return out;
}

const LexEntry* Vocabulary::find(std::string_view surface) const {
  auto it = by_surface_.find(std::string(surface));
  return it == by_surface_.end() ? nullptr : &entries_[it->second];
}

Vocabulary load_vocabulary(const std::string& path) {
  std::string header;
  auto lines = read_tsv_lines(path, &header);
  std::set<std::string> registry;
  if (starts_with(header, "#features")) {
    for (auto& f : split(trim(header.substr(9)), ' ')) {
      if (!f.empty()) registry.insert(f);
    }
  } else {
    throw LoadError(path + ": missing '#features ...' registry header");
  }
  std::vector<LexEntry> entries;
  for (auto& [lineno, line] : lines) {
    auto cols = split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      fail(path, lineno, "expected 2-3 tab-separated columns");
    }
    LexEntry entry;
    entry.surface = trim(cols[0]);
    if (entry.surface.empty()) fail(path, lineno, "empty surface");
    auto pos = parse_pos(trim(cols[1]));
    if (!pos) fail(path, lineno, "unknown POS '" + trim(cols[1]) + "'");
    entry.pos = *pos;
    if (cols.size() == 3 && !trim(cols[2]).empty()) {
      for (auto& f : split(trim(cols[2]), ',')) {
        std::string feat = trim(f);
        if (feat.empty()) continue;
        if (!registry.count(feat)) {
          fail(path, lineno, "feature '" + feat + "' not in registry");
        }
        entry.features.insert(feat);
      }
    }
    entries.push_back(std::move(entry));
  }
  return Vocabulary(std::move(entries), std::move(registry));
}

PinyinTable load_pinyin(const std::string& path) {
  PinyinTable table;
  for (auto& [lineno, line] : read_tsv_lines(path)) {
    auto cols = split(line, '\t');
    if (cols.size() != 2) fail(path, lineno, "expected 2 columns");
    std::string ch = trim(cols[0]);
    std::string syllable = trim(cols[1]);
    if (utf8_length(ch) != 1) {
      fail(path, lineno, "key must be a single character");
    }
    for (char c : syllable) {
      if (c < 'a' || c > 'z') {
        fail(path, lineno, "syllable must be lowercase ASCII");
      }
    }
    table.mapping[ch] = syllable;
  }
  return table;
}

CharFrequency load_char_frequency(const std::string& path) {
  CharFrequency freq;
  for (auto& [lineno, line] : read_tsv_lines(path)) {
    auto cols = split(line, '\t');
    if (cols.size() != 2) fail(path, lineno, "expected 2 columns");
    std::string ch = trim(cols[0]);
    if (utf8_length(ch) != 1) {
      fail(path, lineno, "key must be a single character");
    }
    try {
      freq.mapping[ch] = std::stoull(trim(cols[1]));
    } catch (const std::exception&) {
      fail(path, lineno, "bad count '" + trim(cols[1]) + "'");
    }
  }
  return freq;
}

std::vector<std::string> homophone_candidates(const std::string& ch,
                                              const PinyinTable& pinyin,
                                              const CharFrequency& freq,
                                              std::uint64_t lo,
                                              std::uint64_t hi) {
  auto it = pinyin.mapping.find(ch);
  if (it == pinyin.mapping.end()) {
    throw LoadError("no pronunciation for '" + ch + "'");
  }
  const std::string& syllable = it->second;
  std::vector<std::string> out;
  for (const auto& [c, s] : pinyin.mapping) {
    if (c == ch || s != syllable) continue;
    std::uint64_t n = freq.count(c);
    if (n >= lo && n <= hi) out.push_back(c);
  }
  return out;
}

DistractorSet load_distractors(const std::string& path) {
  DistractorSet set;
  for (auto& [lineno, line] : read_tsv_lines(path)) {
    auto cols = split(line, '\t');
    if (cols.size() != 4) fail(path, lineno, "expected 4 columns");
    DistractorStatement st;
    st.plain = trim(cols[0]);
    st.negated = trim(cols[1]);
    st.has_oov = trim(cols[2]) == "1";
    st.tautology = trim(cols[3]) == "1";
    auto check_len = [&](const std::string& text) {
      std::size_t n = utf8_length(text);
      if (n < 5 || n > 16) {
        fail(path, lineno, "statement length " + std::to_string(n) +
                               " outside 5-16 characters");
      }
    };
    check_len(st.plain);
    check_len(st.negated);
    if (st.negated.find("不") == std::string::npos &&
        st.negated.find("没") == std::string::npos) {
      fail(path, lineno, "negated variant lacks a negator");
    }
    set.statements.push_back(std::move(st));
  }
  if (set.statements.size() != 25) {
    throw LoadError(path + ": expected 25 statements, got " +
                    std::to_string(set.statements.size()));
  }
  std::size_t tautologies = 0;
  std::size_t oov = 0;
  for (const auto& st : set.statements) {
    if (st.tautology) ++tautologies;
    else if (st.has_oov) ++oov;
  }
  if (tautologies != 1) {
    throw LoadError(path + ": expected exactly 1 tautology");
  }
  if (oov != 12) {
    throw LoadError(path + ": expected 12 of the 24 statements to be OOV");
  }
  return set;
}

SubstitutionLexicon load_substitutions(const std::string& path) {
  SubstitutionLexicon lex;
  for (auto& [lineno, line] : read_tsv_lines(path)) {
    auto cols = split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      fail(path, lineno, "expected 2-3 columns");
    }
    std::string word = trim(cols[0]);
    SubstitutionCandidate cand;
    cand.surface = trim(cols[1]);
    if (word == cand.surface) fail(path, lineno, "word maps to itself");
    if (cols.size() == 3 && !trim(cols[2]).empty()) {
      try {
        cand.similarity = std::stod(trim(cols[2]));
      } catch (const std::exception&) {
        fail(path, lineno, "bad similarity '" + trim(cols[2]) + "'");
      }
      if (*cand.similarity < 0.0 || *cand.similarity > 1.0) {
        fail(path, lineno, "similarity outside [0,1]");
      }
    }
    lex.mapping[word].push_back(std::move(cand));
  }
  return lex;
}

std::vector<std::string> load_lines(const std::string& path) {
  std::vector<std::string> out;
  for (auto& [lineno, line] : read_tsv_lines(path)) {
    (void)lineno;
    out.push_back(trim(line));
  }
  return out;
}

}  // namespace nliforge
