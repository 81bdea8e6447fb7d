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

#ifndef NLIFORGE_HEURISTICS_HPP_
#define NLIFORGE_HEURISTICS_HPP_

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nliforge/core.hpp"

namespace nliforge {

enum class Granularity { kCharacter, kWord };

struct TokenSeq {
  std::vector<std::string> tokens;
  Granularity granularity = Granularity::kCharacter;
};

// Character granularity splits UTF-8 code points; word granularity expects
// pre-tokenized input with spaces.
TokenSeq tokenize(std::string_view text, Granularity granularity);

class GranularityMismatch : public std::runtime_error {
 public:
  GranularityMismatch()
      : std::runtime_error("premise and hypothesis granularity differ") {}
};

// Token set of hypothesis is a subset of the token set of the premise.
// Punctuation tokens are stripped first; set (not multiset) semantics.
bool has_lexical_overlap(const TokenSeq& premise, const TokenSeq& hypothesis);

// Hypothesis tokens occur contiguously, in order, within the premise tokens
// (punctuation stripped). Implies lexical overlap.
bool is_subsequence(const TokenSeq& premise, const TokenSeq& hypothesis);

struct HeuristicReport {
  // Row-major: [heuristic][label] with labels E, C, N.
  static constexpr std::size_t kLexicalOverlap = 0;
  static constexpr std::size_t kSubsequence = 1;
  static constexpr std::size_t kEither = 2;

  std::array<std::array<std::uint64_t, 3>, 3> counts{};

  std::uint64_t row_total(std::size_t row) const {
    return counts[row][0] + counts[row][1] + counts[row][2];
  }
  // entailment count / row total; 0 for an empty row.
  double entailment_share(std::size_t row) const {
    std::uint64_t total = row_total(row);
    return total == 0 ? 0.0 : static_cast<double>(counts[row][0]) /
                                  static_cast<double>(total);
  }
};

// Counts each pair under every heuristic it satisfies; subsequence pairs are
// counted in both rows. The "either" row counts each qualifying pair once.
HeuristicReport scan_corpus(const Dataset& dataset, Granularity granularity);

// Table-style TSV emitter: heuristic, entailment, contradiction, neutral,
// entailment_share.
std::string format_heuristic_report(const HeuristicReport& report);

}  // namespace nliforge

#endif  // NLIFORGE_HEURISTICS_HPP_
