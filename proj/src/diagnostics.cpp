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

#include "nliforge/diagnostics.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nliforge/text.hpp"

namespace nliforge {
namespace diagnostics {

const std::vector<std::string>& phenomenon_inventory() {
  static const std::vector<std::string> kInventory = {
      "classifier",        "idioms",
      "non-core argument", "pro-drop",
      "time-of-event",     "anaphora",
      "argument structure", "common sense",
      "comparatives",      "double negation",
      "lexical semantics", "monotonicity",
      "negation",          "world knowledge",
      "CLUE",              "CLUE-expansion"};
  return kInventory;
}

bool is_chinese_specific(std::string_view phenomenon) {
  return phenomenon == "classifier" || phenomenon == "idioms" ||
         phenomenon == "non-core argument" || phenomenon == "pro-drop" ||
         phenomenon == "time-of-event";
}

DiagnosticReport validate_diagnostics(
    const std::vector<DiagnosticRecord>& records,
    const std::map<std::string, std::size_t>* manifest) {
  DiagnosticReport report;
  report.total = records.size();
  const auto& inventory = phenomenon_inventory();

  // Idiom premises written under the three-hypothesis convention must appear
  // exactly three times.
  std::map<std::string, std::size_t> idiom_groups;

  for (const auto& rec : records) {
    for (const auto& v : validate_pair(rec.pair)) {
      report.violations.push_back(rec.pair.id + ": " + v);
    }
    bool known = std::find(inventory.begin(), inventory.end(),
                           rec.phenomenon) != inventory.end();
    if (!known) {
      report.violations.push_back(rec.pair.id + ": unknown phenomenon '" +
                                  rec.phenomenon + "'");
    } else if (rec.chinese_specific != is_chinese_specific(rec.phenomenon)) {
      report.violations.push_back(
          rec.pair.id + ": chinese_specific flag inconsistent with '" +
          rec.phenomenon + "'");
    }
    ++report.counts[rec.phenomenon];
    auto conv = rec.pair.provenance.find("convention");
    if (rec.phenomenon == "idioms" && conv != rec.pair.provenance.end() &&
        conv->second == "three_hypotheses") {
      ++idiom_groups[rec.pair.premise];
    }
  }

  for (const auto& [premise, n] : idiom_groups) {
    if (n != 3) {
      report.violations.push_back("idiom premise '" + premise + "' has " +
                                  std::to_string(n) +
                                  " hypotheses, expected 3");
    }
  }

  if (manifest) {
    for (const auto& [phenomenon, expected] : *manifest) {
      std::size_t actual = 0;
      auto it = report.counts.find(phenomenon);
      if (it != report.counts.end()) actual = it->second;
      if (actual != expected) {
        report.manifest_mismatches.push_back(
            phenomenon + ": expected " + std::to_string(expected) + ", got " +
            std::to_string(actual));
      }
    }
  }
  return report;
}

std::vector<DiagnosticRecord> read_diagnostics(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::vector<DiagnosticRecord> records;
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
    DiagnosticRecord rec;
    rec.pair.id = j.value("id", "");
    rec.pair.premise = j.value("premise", "");
    rec.pair.hypothesis = j.value("hypothesis", "");
    auto label = parse_label(j.value("label", ""));
    if (!label) {
      throw IoError(path + ":" + std::to_string(lineno) + ": unknown label '" +
                    j.value("label", "") + "'");
    }
    rec.pair.label = *label;
    rec.pair.category = j.value("category", "diagnostic");
    rec.pair.subcategory = j.value("subcategory", "");
    if (j.contains("provenance")) {
      for (auto& [k, v] : j["provenance"].items()) {
        rec.pair.provenance[k] = v.get<std::string>();
      }
    }
    rec.phenomenon = j.value("phenomenon", "");
    rec.chinese_specific = j.value("chinese_specific", false);
    records.push_back(std::move(rec));
  }
  return records;
}

void write_diagnostics(const std::vector<DiagnosticRecord>& records,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const auto& rec : records) {
    nlohmann::ordered_json j;
    j["id"] = rec.pair.id;
    j["premise"] = rec.pair.premise;
    j["hypothesis"] = rec.pair.hypothesis;
    j["label"] = label_name(rec.pair.label);
    j["category"] = rec.pair.category;
    j["subcategory"] = rec.pair.subcategory;
    j["phenomenon"] = rec.phenomenon;
    j["chinese_specific"] = rec.chinese_specific;
    j["provenance"] = rec.pair.provenance;
    out << j.dump() << '\n';
  }
}

std::string format_diagnostic_report(const DiagnosticReport& report) {
  std::ostringstream out;
  out << "phenomenon\tcount\n";
  for (const auto& [phenomenon, count] : report.counts) {
    out << phenomenon << '\t' << count << '\n';
  }
  out << "total\t" << report.total << '\n';
  for (const auto& v : report.violations) out << "violation\t" << v << '\n';
  for (const auto& m : report.manifest_mismatches) {
    out << "manifest_mismatch\t" << m << '\n';
  }
  return out.str();
}

}  // namespace diagnostics
}  // namespace nliforge
