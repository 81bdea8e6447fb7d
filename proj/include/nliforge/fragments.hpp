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

#ifndef NLIFORGE_FRAGMENTS_HPP_
#define NLIFORGE_FRAGMENTS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nliforge/core.hpp"
#include "nliforge/rng.hpp"

namespace nliforge {
namespace fragments {

enum class StatementKind {
  kVisited,
  kNotVisited,
  kOnlyVisited,
  kHugged,
  kNotHugged,
  kOnlyHugged,
  kExistsUniversal,  // someone has been to every place and hugged everyone
  kConditional,
  kCountCompare,  // number of people the subject hugged
  kAgeRel,
  kYoungerThanAll
};

enum class CountRelation { kMoreThan, kFewerThan, kExactly };
enum class AgeRelation { kYounger, kOlder, kSame };

// Logic AST for one fragment sentence. Flat variant: the unused fields stay
// empty. Conditionals nest exactly one level (atomic or negated atomic on
// both sides).
struct Statement {
  StatementKind kind = StatementKind::kVisited;
  std::string subject;                 // person
  std::string object;                  // location or person
  std::vector<std::string> object_list;  // Only*/YoungerThanAll lists
  CountRelation count_relation = CountRelation::kMoreThan;
  std::uint64_t count = 0;
  AgeRelation age_relation = AgeRelation::kYounger;
  std::vector<Statement> parts;  // Conditional: [antecedent, consequent]

  static Statement visited(std::string p, std::string l);
  static Statement not_visited(std::string p, std::string l);
  static Statement only_visited(std::string p, std::vector<std::string> ls);
  static Statement hugged(std::string p, std::string q);
  static Statement not_hugged(std::string p, std::string q);
  static Statement only_hugged(std::string p, std::vector<std::string> qs);
  static Statement exists_universal();
  static Statement conditional(Statement antecedent, Statement consequent);
  static Statement count_compare(std::string p, CountRelation rel,
                                 std::uint64_t n);
  static Statement age_rel(std::string p, AgeRelation rel, std::string q);
  static Statement younger_than_all(std::string p,
                                    std::vector<std::string> qs);

  bool operator==(const Statement&) const = default;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decides the label by constraint propagation over a three-valued relational
// structure (cells true/false/unknown) with bounded case splitting for
// conditionals and the existential quantifier. Entailment iff the hypothesis
// holds in every completion, contradiction iff it fails in every completion.
Label oracle_label(const std::vector<Statement>& premises,
                   const Statement& hypothesis);

struct BruteForceBounds {
  std::size_t max_unknown_cells = 24;
  std::size_t max_persons_for_ages = 6;
};

// Independent testing oracle: enumerates every completion of the undetermined
// relation cells and every weak age order, filters by the premises and labels
// by universal truth/falsity. Throws OracleError when the instance exceeds
// the enumeration guard.
Label brute_force_label(const std::vector<Statement>& premises,
                        const Statement& hypothesis,
                        const BruteForceBounds& bounds = {});

// Deterministic Chinese realization of one statement (no trailing period).
std::string realize(const Statement& statement);

// Premise statements joined into one sentence; consecutive OnlyVisited
// statements sharing a location list render as one grouped-subject clause.
std::string realize_premises(const std::vector<Statement>& premises);

// Parses our own realization back into ASTs. Only the fixed surface frames
// are supported; anything else throws OracleError.
std::vector<Statement> parse_premises(const std::string& text);
Statement parse_statement(const std::string& clause);

enum class FragmentCategory {
  kBoolean,
  kComparative,
  kConditional,
  kCounting,
  kNegation,
  kQuantifier
};

std::string_view category_name(FragmentCategory c);
std::optional<FragmentCategory> parse_category(std::string_view name);

struct FragmentOptions {
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// count pairs balanced across the category's label templates. Every pair's
// label is re-verified with oracle_label before emission; a disagreement is
// a template bug and aborts generation.
Dataset generate_fragment(FragmentCategory category,
                          const std::vector<std::string>& names,
                          const std::vector<std::string>& places,
                          const FragmentOptions& options);

// All templates of a category applied with fixed entities; exposed for tests.
struct FragmentInstance {
  FragmentCategory category = FragmentCategory::kNegation;
  std::vector<Statement> premises;
  Statement hypothesis;
  std::string template_id;
  Label label = Label::kNeutral;
};

FragmentInstance make_instance(FragmentCategory category,
                               const std::string& template_id,
                               const std::vector<std::string>& names,
                               const std::vector<std::string>& places,
                               Rng& rng);

std::vector<std::string> template_ids(FragmentCategory category);

}  // namespace fragments
}  // namespace nliforge

#endif  // NLIFORGE_FRAGMENTS_HPP_
