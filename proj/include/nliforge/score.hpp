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

#ifndef NLIFORGE_SCORE_HPP_
#define NLIFORGE_SCORE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nliforge/core.hpp"

namespace nliforge {

class ScoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// id -> predicted label; ids unique.
using PredictionFile = std::map<std::string, Label>;

PredictionFile read_predictions(const std::string& path);
void write_predictions(const PredictionFile& preds, const std::string& path);

struct Slice {
  std::size_t total = 0;
  std::size_t correct = 0;

  double accuracy() const {
    return static_cast<double>(correct) / static_cast<double>(total);
  }
};

struct ScoreReport {
  Slice overall;
  std::map<std::string, Slice> per_category;
  std::map<std::string, Slice> per_gold_label;
  // Empty slices report as absent rather than 0/0.
  std::optional<double> entailment_acc;
  // Pooled over gold contradiction and neutral.
  std::optional<double> non_entailment_acc;
  std::optional<double> delta;  // percentage points
};

// Every gold id must have a prediction; missing ids raise ScoreError listing
// them all.
ScoreReport score(const Dataset& gold, const PredictionFile& preds);

// reference_acc is in percentage points (paper-table convention); returns
// reference_acc - 100 * non_entailment_acc.
double delta(double reference_acc, const ScoreReport& report);

// One gold label and exactly five annotator labels per id.
struct AnnotationRow {
  std::string id;
  Label gold = Label::kNeutral;
  std::vector<Label> annotations;
};

using AnnotationSheet = std::vector<AnnotationRow>;

AnnotationSheet read_annotation_sheet(const std::string& path);
void write_annotation_sheet(const AnnotationSheet& sheet,
                            const std::string& path);

// Fraction of ids where the modal annotator label equals gold. A tie among
// modal labels counts as disagreement.
double agreement(const AnnotationSheet& sheet);

// Uniform sample without replacement, deterministic under seed.
Dataset sample_for_annotation(const Dataset& dataset, std::size_t n,
                              std::uint64_t seed);

// Percentages with two decimals, matching the paper tables.
std::string format_score_tsv(const ScoreReport& report);
std::string format_score_markdown(const ScoreReport& report);

}  // namespace nliforge

#endif  // NLIFORGE_SCORE_HPP_
