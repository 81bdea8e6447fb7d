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

#include "nliforge/core.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "nliforge/rng.hpp"
#include "nliforge/text.hpp"

namespace nliforge {

std::string_view label_name(Label label) {
  switch (label) {
    case Label::kEntailment: return "entailment";
    case Label::kNeutral: return "neutral";
    case Label::kContradiction: return "contradiction";
  }
  return "neutral";
}

std::optional<Label> parse_label(std::string_view name) {
  if (name == "entailment") return Label::kEntailment;
  if (name == "neutral") return Label::kNeutral;
  if (name == "contradiction") return Label::kContradiction;
  return std::nullopt;
}

std::vector<std::string> validate_pair(const NLIPair& pair) {
  std::vector<std::string> violations;
  if (trim(pair.id).empty()) violations.push_back("empty id");
  if (trim(pair.premise).empty()) violations.push_back("empty premise");
  if (trim(pair.hypothesis).empty()) violations.push_back("empty hypothesis");
  return violations;
}

std::vector<std::string> validate_dataset(const Dataset& dataset) {
  std::vector<std::string> violations;
  std::unordered_set<std::string> seen_ids;
  for (const auto& pair : dataset.pairs) {
    for (auto& v : validate_pair(pair)) {
      violations.push_back(pair.id + ": " + v);
    }
    if (!seen_ids.insert(pair.id).second) {
      violations.push_back(pair.id + ": duplicate id");
    }
  }
  return violations;
}

Dataset dedup(Dataset dataset) {
  std::unordered_set<std::string> seen;
  std::vector<NLIPair> kept;
  kept.reserve(dataset.pairs.size());
  for (auto& pair : dataset.pairs) {
    std::string key = pair.premise + '\x1f' + pair.hypothesis;
    if (seen.insert(std::move(key)).second) {
      kept.push_back(std::move(pair));
    }
  }
  dataset.pairs = std::move(kept);
  return dataset;
}

std::string make_id(std::string_view category, std::string_view subcategory,
                    std::size_t counter) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06zu", counter);
  std::string id(category);
  id += '-';
  id += subcategory;
  id += '-';
  id += buf;
  return id;
}

namespace {

std::string meta_path(const std::string& path) {
  auto dot = path.rfind('.');
  auto slash = path.rfind('/');
  std::string base = (dot != std::string::npos &&
                      (slash == std::string::npos || dot > slash))
                         ? path.substr(0, dot)
                         : path;
  return base + ".meta.json";
}

}  // namespace

void write_dataset(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const auto& pair : dataset.pairs) {
    nlohmann::ordered_json j;
    j["id"] = pair.id;
    j["premise"] = pair.premise;
    j["hypothesis"] = pair.hypothesis;
    j["label"] = label_name(pair.label);
    j["category"] = pair.category;
    j["subcategory"] = pair.subcategory;
    j["provenance"] = pair.provenance;
    out << j.dump() << '\n';
  }
  if (!dataset.meta.empty()) {
    nlohmann::ordered_json m(dataset.meta);
    std::ofstream mout(meta_path(path), std::ios::binary);
    if (!mout) throw IoError("cannot open for writing: " + meta_path(path));
    mout << m.dump(2) << '\n';
  }
}

Dataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  Dataset dataset;
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
    NLIPair pair;
    pair.id = j.value("id", "");
    pair.premise = j.value("premise", "");
    pair.hypothesis = j.value("hypothesis", "");
    auto label = parse_label(j.value("label", ""));
    if (!label) {
      throw IoError(path + ":" + std::to_string(lineno) + ": unknown label '" +
                    j.value("label", "") + "'");
    }
    pair.label = *label;
    pair.category = j.value("category", "");
    pair.subcategory = j.value("subcategory", "");
    if (j.contains("provenance")) {
      for (auto& [k, v] : j["provenance"].items()) {
        pair.provenance[k] = v.get<std::string>();
      }
    }
    dataset.pairs.push_back(std::move(pair));
  }
  std::ifstream min(meta_path(path), std::ios::binary);
  if (min) {
    nlohmann::json m = nlohmann::json::parse(min, nullptr, false);
    if (!m.is_discarded() && m.is_object()) {
      for (auto& [k, v] : m.items()) {
        if (v.is_string()) dataset.meta[k] = v.get<std::string>();
      }
    }
  }
  return dataset;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(ss.str())));
  return buf;
}

}  // namespace nliforge
