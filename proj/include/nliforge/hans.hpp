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

#ifndef NLIFORGE_HANS_HPP_
#define NLIFORGE_HANS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nliforge/core.hpp"
#include "nliforge/resources.hpp"
#include "nliforge/rng.hpp"

namespace nliforge {

enum class Heuristic { kLexicalOverlap, kSubsequence };

std::string_view heuristic_name(Heuristic h);

// A slot in a template pattern. Agreement roles connect a predicate slot to
// its argument slots: a verb carrying the selectional feature subj_X forces
// the subject filler to carry X, and obj_X does the same for the object.
struct Slot {
  std::string name;
  Pos pos = Pos::kNoun;
  std::set<std::string> required_features;
  std::optional<std::string> subject_slot;
  std::optional<std::string> object_slot;
};

// Pattern element: literal text or a slot reference.
struct PatternPiece {
  bool is_slot = false;
  std::string text;  // literal text or slot name
};

struct Template {
  std::string id;
  Heuristic heuristic = Heuristic::kLexicalOverlap;
  Label label = Label::kNeutral;
  std::vector<Slot> slots;  // in fill order
  std::vector<PatternPiece> premise_pattern;
  std::vector<PatternPiece> hypothesis_pattern;
  std::string notes;
};

struct TemplateSet {
  std::vector<Template> templates;
};

// TSV columns: id, heuristic, label, slots, premise, hypothesis [, notes].
// Slot spec: "N1=noun+human;V=verb+transitive@subj:N1,obj:N2". Patterns use
// {N1} references.
TemplateSet load_templates(const std::string& path);

class SlotDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fills every slot with a vocabulary entry satisfying pos, features and
// agreement; distinct slots get distinct fillers and premise != hypothesis
// is enforced by rejection. Label comes from the template.
NLIPair instantiate_template(const Template& t, const Vocabulary& vocab,
                             Rng& rng);

struct HansOptions {
  std::size_t per_template = 50;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// per_template instantiations per template, then a global first-wins dedup
// on (premise, hypothesis). Every emitted pair is checked against the
// detector of its template's heuristic.
Dataset generate_hans(const TemplateSet& ts, const Vocabulary& vocab,
                      const HansOptions& options);

}  // namespace nliforge

#endif  // NLIFORGE_HANS_HPP_
