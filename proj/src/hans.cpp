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

#include "nliforge/hans.hpp"

#include <fstream>
#include <thread>
#include <unordered_set>

#include "nliforge/heuristics.hpp"
#include "nliforge/rng.hpp"
#include "nliforge/text.hpp"

namespace nliforge {

namespace {

constexpr int kMaxRejections = 500;

[[noreturn]] void fail(const std::string& path, std::size_t lineno,
                       const std::string& what) {
  throw LoadError(path + ":" + std::to_string(lineno) + ": " + what);
}

std::vector<PatternPiece> parse_pattern(const std::string& text,
                                        const std::string& path,
                                        std::size_t lineno) {
  std::vector<PatternPiece> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      auto close = text.find('}', i);
      if (close == std::string::npos) fail(path, lineno, "unclosed '{'");
      pieces.push_back({true, text.substr(i + 1, close - i - 1)});
      i = close + 1;
    } else {
      auto open = text.find('{', i);
      if (open == std::string::npos) open = text.size();
      pieces.push_back({false, text.substr(i, open - i)});
      i = open;
    }
  }
  return pieces;
}

Slot parse_slot_spec(const std::string& spec, const std::string& path,
                     std::size_t lineno) {
  auto eq = spec.find('=');
  if (eq == std::string::npos) fail(path, lineno, "slot spec lacks '='");
  Slot slot;
  slot.name = trim(spec.substr(0, eq));
  std::string rest = spec.substr(eq + 1);
  std::string roles;
  auto at = rest.find('@');
  if (at != std::string::npos) {
    roles = rest.substr(at + 1);
    rest = rest.substr(0, at);
  }
  auto parts = split(rest, '+');
  auto pos = parse_pos(trim(parts[0]));
  if (!pos) fail(path, lineno, "unknown POS '" + trim(parts[0]) + "'");
  slot.pos = *pos;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!trim(parts[i]).empty()) slot.required_features.insert(trim(parts[i]));
  }
  if (!roles.empty()) {
    for (auto& role : split(roles, ',')) {
      auto colon = role.find(':');
      if (colon == std::string::npos) fail(path, lineno, "bad role spec");
      std::string kind = trim(role.substr(0, colon));
      std::string target = trim(role.substr(colon + 1));
      if (kind == "subj") slot.subject_slot = target;
      else if (kind == "obj") slot.object_slot = target;
      else fail(path, lineno, "unknown role '" + kind + "'");
    }
  }
  return slot;
}

const Slot* find_slot(const Template& t, const std::string& name) {
  for (const auto& s : t.slots) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void validate_template(const Template& t, const std::string& path,
                       std::size_t lineno) {
  std::set<std::string> premise_refs;
  for (const auto& p : t.premise_pattern) {
    if (p.is_slot) premise_refs.insert(p.text);
  }
  for (const auto& p : t.hypothesis_pattern) {
    if (!p.is_slot) continue;
    if (!premise_refs.count(p.text)) {
      fail(path, lineno,
           "hypothesis slot '" + p.text + "' not used in premise");
    }
  }
  auto check_ref = [&](const std::string& name) {
    if (!find_slot(t, name)) {
      fail(path, lineno, "pattern references undeclared slot '" + name + "'");
    }
  };
  for (const auto& p : t.premise_pattern) {
    if (p.is_slot) check_ref(p.text);
  }
  for (const auto& s : t.slots) {
    if (s.subject_slot) check_ref(*s.subject_slot);
    if (s.object_slot) check_ref(*s.object_slot);
  }
}

std::string realize(const std::vector<PatternPiece>& pattern,
                    const std::map<std::string, std::string>& fillers) {
  std::string out;
  for (const auto& p : pattern) {
    out += p.is_slot ? fillers.at(p.text) : p.text;
  }
  return out;
}

// Selectional features on a predicate entry translate to argument features:
// subj_animate on the verb requires animate on the subject filler.
bool agreement_ok(const LexEntry& predicate, const LexEntry& argument,
                  std::string_view prefix) {
  for (const auto& f : predicate.features) {
    if (f.size() > prefix.size() &&
        std::string_view(f).substr(0, prefix.size()) == prefix) {
      if (!argument.has_feature(f.substr(prefix.size()))) return false;
    }
  }
  return true;
}

}  // namespace

std::string_view heuristic_name(Heuristic h) {
  return h == Heuristic::kLexicalOverlap ? "lexical_overlap" : "subsequence";
}

TemplateSet load_templates(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open: " + path);
  TemplateSet set;
  std::set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() < 6) fail(path, lineno, "expected >= 6 columns");
    Template t;
    t.id = trim(cols[0]);
    if (!ids.insert(t.id).second) {
      fail(path, lineno, "duplicate template id '" + t.id + "'");
    }
    std::string h = trim(cols[1]);
    if (h == "lexical_overlap") t.heuristic = Heuristic::kLexicalOverlap;
    else if (h == "subsequence") t.heuristic = Heuristic::kSubsequence;
    else fail(path, lineno, "unknown heuristic '" + h + "'");
    auto label = parse_label(trim(cols[2]));
    if (!label) fail(path, lineno, "unknown label '" + trim(cols[2]) + "'");
    t.label = *label;
    for (auto& spec : split(trim(cols[3]), ';')) {
      if (!trim(spec).empty()) {
        t.slots.push_back(parse_slot_spec(trim(spec), path, lineno));
      }
    }
    t.premise_pattern = parse_pattern(trim(cols[4]), path, lineno);
    t.hypothesis_pattern = parse_pattern(trim(cols[5]), path, lineno);
    if (cols.size() > 6) t.notes = trim(cols[6]);
    validate_template(t, path, lineno);
    set.templates.push_back(std::move(t));
  }
  return set;
}

NLIPair instantiate_template(const Template& t, const Vocabulary& vocab,
                             Rng& rng) {
  // Base candidate pools; an empty pool is unsatisfiable regardless of
  // agreement and reported up front.
  std::vector<std::vector<const LexEntry*>> pools;
  pools.reserve(t.slots.size());
  for (const auto& slot : t.slots) {
    auto pool = vocab.lookup(slot.pos, slot.required_features);
    if (pool.empty()) {
      throw SlotDomainError("template " + t.id + ": empty slot domain for '" +
                            slot.name + "'");
    }
    pools.push_back(std::move(pool));
  }

  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::map<std::string, const LexEntry*> chosen;
    bool ok = true;
    for (std::size_t i = 0; i < t.slots.size() && ok; ++i) {
      const Slot& slot = t.slots[i];
      std::vector<const LexEntry*> candidates;
      for (const LexEntry* e : pools[i]) {
        bool distinct = true;
        for (const auto& [name, other] : chosen) {
          if (other->surface == e->surface) {
            distinct = false;
            break;
          }
        }
        if (!distinct) continue;
        // Agreement with already assigned arguments.
        if (slot.subject_slot && chosen.count(*slot.subject_slot) &&
            !agreement_ok(*e, *chosen.at(*slot.subject_slot), "subj_")) {
          continue;
        }
        if (slot.object_slot && chosen.count(*slot.object_slot) &&
            !agreement_ok(*e, *chosen.at(*slot.object_slot), "obj_")) {
          continue;
        }
        // Agreement with an already assigned predicate naming this slot.
        bool arg_ok = true;
        for (const auto& [name, pred] : chosen) {
          const Slot* ps = find_slot(t, name);
          if (ps->subject_slot == slot.name &&
              !agreement_ok(*pred, *e, "subj_")) {
            arg_ok = false;
          }
          if (ps->object_slot == slot.name && !agreement_ok(*pred, *e, "obj_")) {
            arg_ok = false;
          }
        }
        if (arg_ok) candidates.push_back(e);
      }
      if (candidates.empty()) {
        ok = false;
        break;
      }
      chosen[slot.name] = rng.pick(candidates);
    }
    if (!ok) continue;

    std::map<std::string, std::string> fillers;
    for (const auto& [name, e] : chosen) fillers[name] = e->surface;
    NLIPair pair;
    pair.premise = realize(t.premise_pattern, fillers);
    pair.hypothesis = realize(t.hypothesis_pattern, fillers);
    if (pair.premise == pair.hypothesis) continue;
    pair.label = t.label;
    pair.category = "hans";
    pair.subcategory = std::string(heuristic_name(t.heuristic));
    pair.provenance["template"] = t.id;
    std::vector<std::string> parts;
    for (const auto& [name, surface] : fillers) {
      parts.push_back(name + "=" + surface);
    }
    pair.provenance["fillers"] = join(parts, " ");
    return pair;
  }
  throw SlotDomainError("template " + t.id +
                        ": could not satisfy constraints after " +
                        std::to_string(kMaxRejections) + " attempts");
}

Dataset generate_hans(const TemplateSet& ts, const Vocabulary& vocab,
                      const HansOptions& options) {
  if (options.per_template < 1) {
    throw std::invalid_argument("per_template must be >= 1");
  }
  std::vector<std::vector<NLIPair>> per_template(ts.templates.size());

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Template& t = ts.templates[i];
      Rng rng(derive_seed(options.seed, t.id));
      per_template[i].reserve(options.per_template);
      for (std::size_t k = 0; k < options.per_template; ++k) {
        per_template[i].push_back(instantiate_template(t, vocab, rng));
      }
    }
  };

  unsigned threads = options.threads == 0 ? 1 : options.threads;
  if (threads <= 1 || ts.templates.size() <= 1) {
    run_range(0, ts.templates.size());
  } else {
    std::vector<std::thread> workers;
    std::size_t n = ts.templates.size();
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      std::size_t begin = std::min<std::size_t>(w * chunk, n);
      std::size_t end = std::min<std::size_t>(begin + chunk, n);
      if (begin < end) workers.emplace_back(run_range, begin, end);
    }
    for (auto& w : workers) w.join();
  }

  Dataset dataset;
  for (auto& batch : per_template) {
    for (auto& pair : batch) dataset.pairs.push_back(std::move(pair));
  }
  std::size_t pre_dedup = dataset.pairs.size();
  dataset = dedup(std::move(dataset));

  std::size_t counter = 0;
  for (auto& pair : dataset.pairs) {
    pair.id = make_id(pair.category, pair.subcategory, counter++);
    TokenSeq p = tokenize(pair.premise, Granularity::kCharacter);
    TokenSeq h = tokenize(pair.hypothesis, Granularity::kCharacter);
    bool detected = pair.subcategory == "subsequence" ? is_subsequence(p, h)
                                                      : has_lexical_overlap(p, h);
    if (!detected) {
      throw std::logic_error("generated pair from template " +
                             pair.provenance.at("template") +
                             " fails its heuristic detector: " + pair.premise +
                             " / " + pair.hypothesis);
    }
  }
  dataset.meta["generator"] = "nli-forge gen-hans";
  dataset.meta["seed"] = std::to_string(options.seed);
  dataset.meta["per_template"] = std::to_string(options.per_template);
  dataset.meta["pre_dedup_count"] = std::to_string(pre_dedup);
  return dataset;
}

}  // namespace nliforge
