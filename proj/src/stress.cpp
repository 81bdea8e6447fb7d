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

#include "nliforge/stress.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "nliforge/text.hpp"

namespace nliforge {

namespace {

std::vector<AnnotatedToken> parse_token_column(const std::string& column,
                                               const std::string& path,
                                               std::size_t lineno) {
  std::vector<AnnotatedToken> tokens;
  for (auto& item : split(column, ' ')) {
    if (item.empty()) continue;
    auto bar = item.rfind('|');
    if (bar == std::string::npos) {
      throw LoadError(path + ":" + std::to_string(lineno) +
                      ": token lacks '|pos': " + item);
    }
    AnnotatedToken tok;
    tok.surface = item.substr(0, bar);
    auto pos = parse_pos(item.substr(bar + 1));
    if (!pos) {
      throw LoadError(path + ":" + std::to_string(lineno) + ": unknown POS '" +
                      item.substr(bar + 1) + "'");
    }
    tok.pos = *pos;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::string concat_surfaces(const std::vector<AnnotatedToken>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += t.surface;
  return out;
}

// Sentence-final punctuation the distractor is inserted before.
bool is_final_punct(std::string_view ch) {
  return ch == "。" || ch == "！" || ch == "？" || ch == "." || ch == "!" ||
         ch == "?";
}

std::string append_clause(const std::string& text, const std::string& clause,
                          const std::string& connector) {
  auto chars = utf8_chars(text);
  if (!chars.empty() && is_final_punct(chars.back())) {
    std::string tail = chars.back();
    std::string head = text.substr(0, text.size() - tail.size());
    return head + connector + clause + tail;
  }
  return text + connector + clause + "。";
}

}  // namespace

std::vector<AnnotatedPair> load_annotations(const Dataset& dataset,
                                            const std::string& path) {
  std::map<std::string, const NLIPair*> by_id;
  for (const auto& pair : dataset.pairs) by_id[pair.id] = &pair;

  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open: " + path);
  std::vector<AnnotatedPair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 3) {
      throw LoadError(path + ":" + std::to_string(lineno) +
                      ": expected 3 columns");
    }
    auto it = by_id.find(trim(cols[0]));
    if (it == by_id.end()) {
      throw LoadError(path + ":" + std::to_string(lineno) + ": unknown id '" +
                      trim(cols[0]) + "'");
    }
    AnnotatedPair ap;
    ap.pair = *it->second;
    ap.premise_tokens = parse_token_column(cols[1], path, lineno);
    ap.hypothesis_tokens = parse_token_column(cols[2], path, lineno);
    if (concat_surfaces(ap.premise_tokens) != ap.pair.premise ||
        concat_surfaces(ap.hypothesis_tokens) != ap.pair.hypothesis) {
      throw LoadError(path + ":" + std::to_string(lineno) +
                      ": token surfaces do not reconstruct the pair text");
    }
    out.push_back(std::move(ap));
  }
  return out;
}

std::optional<DistractionCondition> parse_condition(std::string_view code) {
  DistractionCondition cond;
  if (code == "p") cond = {DistractionTarget::kPremise, false};
  else if (code == "pn") cond = {DistractionTarget::kPremise, true};
  else if (code == "h") cond = {DistractionTarget::kHypothesis, false};
  else if (code == "hn") cond = {DistractionTarget::kHypothesis, true};
  else return std::nullopt;
  return cond;
}

std::string condition_code(const DistractionCondition& cond) {
  std::string code =
      cond.target == DistractionTarget::kPremise ? "p" : "h";
  if (cond.negated) code += "n";
  return code;
}

NLIPair apply_distraction(const NLIPair& pair, const DistractorStatement& d,
                          std::size_t distractor_index,
                          const DistractionCondition& cond,
                          const std::string& connector) {
  NLIPair out = pair;
  const std::string& clause = cond.negated ? d.negated : d.plain;
  if (cond.target == DistractionTarget::kPremise) {
    out.premise = append_clause(pair.premise, clause, connector);
  } else {
    out.hypothesis = append_clause(pair.hypothesis, clause, connector);
  }
  out.category = "distraction";
  out.subcategory = condition_code(cond);
  out.provenance["seed_pair"] = pair.id;
  out.provenance["distractor"] = std::to_string(distractor_index);
  out.provenance["condition"] = condition_code(cond);
  return out;
}

namespace {

struct Replacement {
  std::size_t token_index;
  std::string substitute;
};

std::optional<NLIPair> substitute_premise(const AnnotatedPair& ap,
                                          const Replacement& repl, Label label,
                                          const std::string& category) {
  std::string hypothesis;
  for (std::size_t i = 0; i < ap.premise_tokens.size(); ++i) {
    hypothesis +=
        i == repl.token_index ? repl.substitute : ap.premise_tokens[i].surface;
  }
  if (hypothesis == ap.pair.premise) return std::nullopt;
  NLIPair out;
  out.premise = ap.pair.premise;
  out.hypothesis = hypothesis;
  out.label = label;
  out.category = category;
  out.subcategory =
      category == "antonym" ? "noun_adj" : "verb_adj";
  out.provenance["seed_pair"] = ap.pair.id;
  out.provenance["replaced"] = ap.premise_tokens[repl.token_index].surface;
  out.provenance["substitute"] = repl.substitute;
  return out;
}

}  // namespace

std::optional<NLIPair> apply_antonym(const AnnotatedPair& ap,
                                     const SubstitutionLexicon& lex, Rng& rng) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < ap.premise_tokens.size(); ++i) {
    const auto& tok = ap.premise_tokens[i];
    if (tok.pos != Pos::kNoun && tok.pos != Pos::kAdjective) continue;
    if (lex.candidates(tok.surface)) eligible.push_back(i);
  }
  if (eligible.empty()) return std::nullopt;
  std::size_t idx = eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
  const auto& candidates = *lex.candidates(ap.premise_tokens[idx].surface);
  return substitute_premise(ap, {idx, candidates.front().surface},
                            Label::kContradiction, "antonym");
}

std::optional<NLIPair> apply_synonym(const AnnotatedPair& ap,
                                     const SubstitutionLexicon& lex, Rng& rng) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < ap.premise_tokens.size(); ++i) {
    const auto& tok = ap.premise_tokens[i];
    if (tok.pos != Pos::kVerb && tok.pos != Pos::kAdjective) continue;
    if (lex.candidates(tok.surface)) eligible.push_back(i);
  }
  if (eligible.empty()) return std::nullopt;
  std::size_t idx = eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
  const auto& candidates = *lex.candidates(ap.premise_tokens[idx].surface);
  // Highest vector similarity wins; unranked candidates count as 0.
  const SubstitutionCandidate* best = &candidates.front();
  for (const auto& c : candidates) {
    double cs = c.similarity.value_or(0.0);
    double bs = best->similarity.value_or(0.0);
    if (cs > bs || (cs == bs && c.surface < best->surface)) best = &c;
  }
  return substitute_premise(ap, {idx, best->surface}, Label::kEntailment,
                            "synonym");
}

std::optional<NLIPair> apply_spelling(const NLIPair& pair,
                                      const PinyinTable& pinyin,
                                      const CharFrequency& freq, Rng& rng,
                                      std::uint64_t freq_lo,
                                      std::uint64_t freq_hi) {
  auto chars = utf8_chars(pair.hypothesis);
  std::vector<std::pair<std::size_t, std::vector<std::string>>> eligible;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (!pinyin.mapping.count(chars[i])) continue;
    auto candidates =
        homophone_candidates(chars[i], pinyin, freq, freq_lo, freq_hi);
    if (!candidates.empty()) eligible.emplace_back(i, std::move(candidates));
  }
  if (eligible.empty()) return std::nullopt;
  const auto& [idx, candidates] =
      eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
  std::string substitute =
      candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
  NLIPair out = pair;
  std::string hypothesis;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    hypothesis += i == idx ? substitute : chars[i];
  }
  out.hypothesis = hypothesis;
  out.category = "spelling";
  out.subcategory = "homophone";
  out.provenance["seed_pair"] = pair.id;
  out.provenance["replaced"] = chars[idx];
  out.provenance["substitute"] = substitute;
  return out;
}

}  // namespace nliforge
