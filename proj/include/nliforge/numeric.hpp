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

#ifndef NLIFORGE_NUMERIC_HPP_
#define NLIFORGE_NUMERIC_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nliforge/core.hpp"
#include "nliforge/rng.hpp"

namespace nliforge {

enum class QuantRelation { kLessThan, kMoreThan };

struct QuantPhrase {
  std::string surface;
  QuantRelation relation = QuantRelation::kLessThan;
};

// The six quantification phrases: three "less than" and three "more than"
// surfaces.
struct QuantLexicon {
  std::vector<QuantPhrase> phrases;

  std::vector<const QuantPhrase*> with_relation(QuantRelation rel) const;
  static QuantLexicon default_lexicon();
};

// A contiguous digit run inside a sentence (ASCII or full-width digits).
struct NumberSpan {
  std::size_t offset = 0;  // byte offset
  std::size_t length = 0;  // byte length
  std::uint64_t value = 0;
};

std::vector<NumberSpan> find_number_spans(const std::string& text);

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One E/C/N triple per seed sentence, built by number substitution plus
// quantifier prefixes; the neutral pair is the reversed entailment pair.
std::array<NLIPair, 3> generate_numeric(const std::string& seed_sentence,
                                        const QuantLexicon& q, Rng& rng);

// Interprets each side as an interval over the quantity: a bare number is a
// point, "less than v" is (0, v) and "more than v" is (v, inf). Entailment
// iff the premise interval is contained in the hypothesis interval,
// contradiction iff they are disjoint, neutral otherwise.
Label numeric_oracle(const NLIPair& pair, const QuantLexicon& q);

}  // namespace nliforge

#endif  // NLIFORGE_NUMERIC_HPP_
