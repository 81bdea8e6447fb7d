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

#include "nliforge/heuristics.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "nliforge/text.hpp"

namespace nliforge {

namespace {

std::vector<std::string> stripped(const TokenSeq& seq) {
  std::vector<std::string> out;
  out.reserve(seq.tokens.size());
  for (const auto& t : seq.tokens) {
    if (!is_punctuation(t)) out.push_back(t);
  }
  return out;
}

std::size_t label_column(Label label) {
  switch (label) {
    case Label::kEntailment: return 0;
    case Label::kContradiction: return 1;
    case Label::kNeutral: return 2;
  }
  return 2;
}

}  // namespace

TokenSeq tokenize(std::string_view text, Granularity granularity) {
  TokenSeq seq;
  seq.granularity = granularity;
  if (granularity == Granularity::kCharacter) {
    for (auto& ch : utf8_chars(text)) {
      if (ch != " ") seq.tokens.push_back(std::move(ch));
    }
  } else {
    for (auto& w : split(text, ' ')) {
      if (!w.empty()) seq.tokens.push_back(std::move(w));
    }
  }
  return seq;
}

bool has_lexical_overlap(const TokenSeq& premise, const TokenSeq& hypothesis) {
  if (premise.granularity != hypothesis.granularity) {
    throw GranularityMismatch();
  }
  std::unordered_set<std::string> premise_set;
  for (const auto& t : stripped(premise)) premise_set.insert(t);
  for (const auto& t : stripped(hypothesis)) {
    if (!premise_set.count(t)) return false;
  }
  return true;
}

bool is_subsequence(const TokenSeq& premise, const TokenSeq& hypothesis) {
  if (premise.granularity != hypothesis.granularity) {
    throw GranularityMismatch();
  }
  auto p = stripped(premise);
  auto h = stripped(hypothesis);
  if (h.size() > p.size()) return false;
  if (h.empty()) return true;
  auto it = std::search(p.begin(), p.end(), h.begin(), h.end());
  return it != p.end();
}

HeuristicReport scan_corpus(const Dataset& dataset, Granularity granularity) {
  HeuristicReport report;
  for (const auto& pair : dataset.pairs) {
    TokenSeq p = tokenize(pair.premise, granularity);
    TokenSeq h = tokenize(pair.hypothesis, granularity);
    bool lexical = has_lexical_overlap(p, h);
    bool subseq = lexical && is_subsequence(p, h);
    std::size_t col = label_column(pair.label);
    if (lexical) ++report.counts[HeuristicReport::kLexicalOverlap][col];
    if (subseq) ++report.counts[HeuristicReport::kSubsequence][col];
    if (lexical || subseq) ++report.counts[HeuristicReport::kEither][col];
  }
  return report;
}

std::string format_heuristic_report(const HeuristicReport& report) {
  static const char* kRows[3] = {"lexical_overlap", "subsequence", "either"};
  std::string out =
      "heuristic\tentailment\tcontradiction\tneutral\tentailment_share\n";
  for (std::size_t row = 0; row < 3; ++row) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s\t%llu\t%llu\t%llu\t%.4f\n", kRows[row],
                  static_cast<unsigned long long>(report.counts[row][0]),
                  static_cast<unsigned long long>(report.counts[row][1]),
                  static_cast<unsigned long long>(report.counts[row][2]),
                  report.entailment_share(row));
    out += buf;
  }
  return out;
}

}  // namespace nliforge
