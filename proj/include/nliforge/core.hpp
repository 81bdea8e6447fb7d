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

#ifndef NLIFORGE_CORE_HPP_
#define NLIFORGE_CORE_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nliforge {

enum class Label { kEntailment, kNeutral, kContradiction };

std::string_view label_name(Label label);

// Returns nullopt for anything outside the closed three-value set.
std::optional<Label> parse_label(std::string_view name);

// One premise/hypothesis record. All generators emit these and the scorer
// consumes them. Immutable by convention after construction.
struct NLIPair {
  std::string id;
  std::string premise;
  std::string hypothesis;
  Label label = Label::kNeutral;
  std::string category;
  std::string subcategory;
  std::map<std::string, std::string> provenance;
};

struct Dataset {
  std::vector<NLIPair> pairs;
  std::map<std::string, std::string> meta;
};

// Returns the list of violated invariants; empty means the pair is
// well-formed. Violations are data, not failures.
std::vector<std::string> validate_pair(const NLIPair& pair);

// Dataset-level validation: per-pair checks plus id uniqueness.
std::vector<std::string> validate_dataset(const Dataset& dataset);

// Drops later duplicates of (premise, hypothesis), keeping the first
// occurrence in order. Idempotent.
Dataset dedup(Dataset dataset);

// Stable ids of the form <category>-<subcategory>-<counter>.
std::string make_id(std::string_view category, std::string_view subcategory,
                    std::size_t counter);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON Lines, one object per pair; meta goes to a <name>.meta.json sidecar.
void write_dataset(const Dataset& dataset, const std::string& path);
Dataset read_dataset(const std::string& path);

std::string digest_file(const std::string& path);

}  // namespace nliforge

#endif  // NLIFORGE_CORE_HPP_
