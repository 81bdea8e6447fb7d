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

#ifndef NLIFORGE_STRESS_HPP_
#define NLIFORGE_STRESS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "nliforge/core.hpp"
#include "nliforge/resources.hpp"
#include "nliforge/rng.hpp"

namespace nliforge {

struct AnnotatedToken {
  std::string surface;
  Pos pos = Pos::kOther;
};

// NLIPair plus externally produced POS annotations. The concatenated token
// surfaces must reconstruct the original texts.
struct AnnotatedPair {
  NLIPair pair;
  std::vector<AnnotatedToken> premise_tokens;
  std::vector<AnnotatedToken> hypothesis_tokens;
};

// TSV rows: id \t premise tokens \t hypothesis tokens, tokens space-joined
// as surface|pos. Pairs come from the matching JSONL dataset.
std::vector<AnnotatedPair> load_annotations(const Dataset& dataset,
                                            const std::string& path);

enum class DistractionTarget { kPremise, kHypothesis };

struct DistractionCondition {
  DistractionTarget target = DistractionTarget::kPremise;
  bool negated = false;
};

// Short condition codes used on the CLI: p, pn, h, hn.
std::optional<DistractionCondition> parse_condition(std::string_view code);
std::string condition_code(const DistractionCondition& cond);

// Appends the distractor (negated variant when cond.negated) to the target
// side before final punctuation, joined by the connector. Label preserved.
NLIPair apply_distraction(const NLIPair& pair, const DistractorStatement& d,
                          std::size_t distractor_index,
                          const DistractionCondition& cond,
                          const std::string& connector = "，而且");

// Replaces one noun/adjective premise token (uniform choice among eligible
// ones) with its antonym; the edited premise becomes the hypothesis and the
// label is contradiction. nullopt when nothing is eligible.
std::optional<NLIPair> apply_antonym(const AnnotatedPair& ap,
                                     const SubstitutionLexicon& lex, Rng& rng);

// As apply_antonym, but verbs/adjectives, the highest-similarity synonym is
// chosen (ties broken lexicographically) and the label is entailment.
std::optional<NLIPair> apply_synonym(const AnnotatedPair& ap,
                                     const SubstitutionLexicon& lex, Rng& rng);

// Swaps one uniformly chosen hypothesis character for a toneless-pinyin
// homophone within the frequency window. Label preserved; nullopt when no
// character is eligible.
std::optional<NLIPair> apply_spelling(const NLIPair& pair,
                                      const PinyinTable& pinyin,
                                      const CharFrequency& freq, Rng& rng,
                                      std::uint64_t freq_lo = 100,
                                      std::uint64_t freq_hi = 6000);

}  // namespace nliforge

#endif  // NLIFORGE_STRESS_HPP_
