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

#include "nliforge/score.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "nliforge/rng.hpp"
#include "nliforge/text.hpp"

namespace nliforge {

PredictionFile read_predictions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  PredictionFile preds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    std::string id = j.value("id", "");
    auto label = parse_label(j.value("label", ""));
    if (id.empty() || !label) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": expected {id, label}");
    }
    if (!preds.emplace(id, *label).second) {
      throw IoError(path + ":" + std::to_string(lineno) + ": duplicate id '" +
                    id + "'");
    }
  }
  return preds;
}

void write_predictions(const PredictionFile& preds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const auto& [id, label] : preds) {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["label"] = label_name(label);
    out << j.dump() << '\n';
  }
}

ScoreReport score(const Dataset& gold, const PredictionFile& preds) {
  std::vector<std::string> missing;
  for (const auto& pair : gold.pairs) {
    if (!preds.count(pair.id)) missing.push_back(pair.id);
  }
  if (!missing.empty()) {
    throw ScoreError("missing predictions for: " + join(missing, ", "));
  }

  ScoreReport report;
  Slice entail;
  Slice non_entail;
  for (const auto& pair : gold.pairs) {
    bool correct = preds.at(pair.id) == pair.label;
    auto tally = [&](Slice& s) {
      ++s.total;
      if (correct) ++s.correct;
    };
    tally(report.overall);
    tally(report.per_category[pair.category]);
    tally(report.per_gold_label[std::string(label_name(pair.label))]);
    tally(pair.label == Label::kEntailment ? entail : non_entail);
  }
  if (entail.total > 0) report.entailment_acc = entail.accuracy();
  if (non_entail.total > 0) report.non_entailment_acc = non_entail.accuracy();
  return report;
}

double delta(double reference_acc, const ScoreReport& report) {
  if (!report.non_entailment_acc) {
    throw ScoreError("delta requires a non-entailment accuracy");
  }
  return reference_acc - 100.0 * *report.non_entailment_acc;
}

AnnotationSheet read_annotation_sheet(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  AnnotationSheet sheet;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 7) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": expected 7 columns (id, gold, a1..a5)");
    }
    AnnotationRow row;
    row.id = trim(cols[0]);
    auto parse = [&](const std::string& cell) {
      auto label = parse_label(trim(cell));
      if (!label) {
        throw IoError(path + ":" + std::to_string(lineno) +
                      ": unknown label '" + trim(cell) + "'");
      }
      return *label;
    };
    row.gold = parse(cols[1]);
    for (std::size_t i = 2; i < 7; ++i) row.annotations.push_back(parse(cols[i]));
    sheet.push_back(std::move(row));
  }
  return sheet;
}

void write_annotation_sheet(const AnnotationSheet& sheet,
                            const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const auto& row : sheet) {
    out << row.id << '\t' << label_name(row.gold);
    for (Label a : row.annotations) out << '\t' << label_name(a);
    out << '\n';
  }
}

double agreement(const AnnotationSheet& sheet) {
  if (sheet.empty()) throw ScoreError("empty annotation sheet");
  std::size_t matches = 0;
  for (const auto& row : sheet) {
    if (row.annotations.size() != 5) {
      throw ScoreError(row.id + ": expected 5 annotations, got " +
                       std::to_string(row.annotations.size()));
    }
    std::array<std::size_t, 3> votes{};
    for (Label a : row.annotations) ++votes[static_cast<std::size_t>(a)];
    std::size_t best = *std::max_element(votes.begin(), votes.end());
    std::size_t modes = 0;
    std::size_t modal = 0;
    for (std::size_t i = 0; i < votes.size(); ++i) {
      if (votes[i] == best) {
        ++modes;
        modal = i;
      }
    }
    // A tie among modal labels counts as disagreement.
    if (modes == 1 && static_cast<Label>(modal) == row.gold) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(sheet.size());
}

Dataset sample_for_annotation(const Dataset& dataset, std::size_t n,
                              std::uint64_t seed) {
  if (n > dataset.pairs.size()) {
    throw ScoreError("sample size " + std::to_string(n) + " exceeds dataset (" +
                     std::to_string(dataset.pairs.size()) + ")");
  }
  std::vector<std::size_t> order(dataset.pairs.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, "sample_for_annotation"));
  rng.shuffle(order);
  Dataset out;
  for (std::size_t i = 0; i < n; ++i) {
    out.pairs.push_back(dataset.pairs[order[i]]);
  }
  out.meta["sampled_from"] = std::to_string(dataset.pairs.size());
  out.meta["seed"] = std::to_string(seed);
  return out;
}

namespace {

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * fraction);
  return buf;
}

std::string points(double pts) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", pts);
  return buf;
}

}  // namespace

std::string format_score_tsv(const ScoreReport& report) {
  std::ostringstream out;
  out << "slice\tcount\taccuracy\n";
  out << "overall\t" << report.overall.total << '\t'
      << percent(report.overall.accuracy()) << '\n';
  for (const auto& [name, slice] : report.per_category) {
    out << "category:" << name << '\t' << slice.total << '\t'
        << percent(slice.accuracy()) << '\n';
  }
  for (const auto& [name, slice] : report.per_gold_label) {
    out << "gold:" << name << '\t' << slice.total << '\t'
        << percent(slice.accuracy()) << '\n';
  }
  if (report.entailment_acc) {
    out << "entailment\t-\t" << percent(*report.entailment_acc) << '\n';
  }
  if (report.non_entailment_acc) {
    out << "non_entailment\t-\t" << percent(*report.non_entailment_acc)
        << '\n';
  }
  if (report.delta) out << "delta\t-\t" << points(*report.delta) << '\n';
  return out.str();
}

std::string format_score_markdown(const ScoreReport& report) {
  std::ostringstream out;
  out << "| Slice | Count | Accuracy |\n|---|---|---|\n";
  out << "| overall | " << report.overall.total << " | "
      << percent(report.overall.accuracy()) << " |\n";
  for (const auto& [name, slice] : report.per_category) {
    out << "| category:" << name << " | " << slice.total << " | "
        << percent(slice.accuracy()) << " |\n";
  }
  for (const auto& [name, slice] : report.per_gold_label) {
    out << "| gold:" << name << " | " << slice.total << " | "
        << percent(slice.accuracy()) << " |\n";
  }
  if (report.entailment_acc) {
    out << "| entailment | - | " << percent(*report.entailment_acc) << " |\n";
  }
  if (report.non_entailment_acc) {
    out << "| non_entailment | - | " << percent(*report.non_entailment_acc)
        << " |\n";
  }
  if (report.delta) out << "| delta | - | " << points(*report.delta) << " |\n";
  return out.str();
}

}  // namespace nliforge
