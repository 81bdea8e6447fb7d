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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "nliforge/core.hpp"
#include "nliforge/diagnostics.hpp"
#include "nliforge/fragments.hpp"
#include "nliforge/hans.hpp"
#include "nliforge/heuristics.hpp"
#include "nliforge/numeric.hpp"
#include "nliforge/resources.hpp"
#include "nliforge/score.hpp"
#include "nliforge/stress.hpp"
#include "nliforge/text.hpp"

namespace {

using namespace nliforge;

std::string resource_dir() {
  const char* env = std::getenv("NLI_FORGE_RESOURCES");
  return env ? env : "resources";
}

std::string default_resource(const std::string& flag_value,
                             const std::string& filename) {
  if (!flag_value.empty()) return flag_value;
  return resource_dir() + "/" + filename;
}

// All randomness flows from --seed; when omitted we draw one from system
// entropy and print it so the run stays reproducible after the fact.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  std::uint64_t s =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  std::cout << "seed: " << s << "\n";
  return s;
}

void add_resource_digest(Dataset& dataset, const std::string& key,
                         const std::string& path) {
  dataset.meta["digest_" + key] = digest_file(path);
}

int run_gen_hans(const std::string& templates_path, const std::string& vocab_path,
                 std::size_t per_template, std::optional<std::uint64_t> seed,
                 unsigned threads, const std::string& out) {
  HansOptions options;
  options.per_template = per_template;
  options.seed = resolve_seed(seed);
  options.threads = threads;
  TemplateSet ts = load_templates(templates_path);
  Vocabulary vocab = load_vocabulary(vocab_path);
  Dataset dataset = generate_hans(ts, vocab, options);
  dataset.meta["threads_independent"] = "true";
  add_resource_digest(dataset, "templates", templates_path);
  add_resource_digest(dataset, "vocabulary", vocab_path);
  write_dataset(dataset, out);
  std::cout << "wrote " << dataset.pairs.size() << " pairs to " << out << "\n";
  return 0;
}

int run_gen_fragments(const std::string& category_name,
                      const std::string& names_path,
                      const std::string& places_path, std::size_t count,
                      std::optional<std::uint64_t> seed, unsigned threads,
                      const std::string& out) {
  auto category = fragments::parse_category(category_name);
  if (!category) {
    std::cerr << "unknown fragment category: " << category_name << "\n";
    return 1;
  }
  fragments::FragmentOptions options;
  options.count = count;
  options.seed = resolve_seed(seed);
  options.threads = threads;
  auto names = load_lines(names_path);
  auto places = load_lines(places_path);
  Dataset dataset = fragments::generate_fragment(*category, names, places, options);
  add_resource_digest(dataset, "names", names_path);
  add_resource_digest(dataset, "places", places_path);
  write_dataset(dataset, out);
  std::cout << "wrote " << dataset.pairs.size() << " pairs to " << out << "\n";
  return 0;
}

int run_gen_numeric(const std::string& seeds_path,
                    std::optional<std::uint64_t> seed, const std::string& out) {
  std::uint64_t master = resolve_seed(seed);
  auto sentences = load_lines(seeds_path);
  QuantLexicon lexicon = QuantLexicon::default_lexicon();
  Dataset dataset;
  std::map<std::string, std::size_t> counters;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    Rng rng(derive_seed(master, "numeric:" + std::to_string(i)));
    for (NLIPair& pair : generate_numeric(sentences[i], lexicon, rng)) {
      pair.id = make_id(pair.category, pair.subcategory,
                        counters[pair.subcategory]++);
      pair.provenance["seed_line"] = std::to_string(i + 1);
      dataset.pairs.push_back(std::move(pair));
    }
  }
  dataset.meta["generator"] = "nli-forge gen-numeric";
  dataset.meta["seed"] = std::to_string(master);
  add_resource_digest(dataset, "seeds", seeds_path);
  write_dataset(dataset, out);
  std::cout << "wrote " << dataset.pairs.size() << " pairs to " << out << "\n";
  return 0;
}

int run_perturb(const std::string& kind, const std::string& input,
                const std::string& annotations, const std::string& condition,
                std::optional<std::uint64_t> seed, const std::string& out) {
  std::uint64_t master = resolve_seed(seed);
  Dataset in = read_dataset(input);
  Dataset dataset;
  dataset.meta["generator"] = "nli-forge perturb";
  dataset.meta["kind"] = kind;
  dataset.meta["seed"] = std::to_string(master);
  add_resource_digest(dataset, "input", input);

  if (kind == "distraction") {
    // Aliases ph/hh accepted for the plain premise/hypothesis conditions.
    std::string code = condition == "ph" ? "p"
                       : condition == "hh" ? "h"
                                           : condition;
    auto cond = parse_condition(code);
    if (!cond) {
      std::cerr << "unknown condition: " << condition << "\n";
      return 1;
    }
    std::string path = resource_dir() + "/distractors.tsv";
    DistractorSet distractors = load_distractors(path);
    add_resource_digest(dataset, "distractors", path);
    for (const auto& pair : in.pairs) {
      Rng rng(derive_seed(master, "distraction:" + pair.id));
      std::size_t idx =
          static_cast<std::size_t>(rng.below(distractors.statements.size()));
      dataset.pairs.push_back(
          apply_distraction(pair, distractors.statements[idx], idx, *cond));
    }
  } else if (kind == "antonym" || kind == "synonym") {
    if (annotations.empty()) {
      std::cerr << kind << " requires --annotations\n";
      return 1;
    }
    std::string path = resource_dir() +
                       (kind == "antonym" ? "/antonyms.tsv" : "/synonyms.tsv");
    SubstitutionLexicon lex = load_substitutions(path);
    add_resource_digest(dataset, "substitutions", path);
    for (const auto& ap : load_annotations(in, annotations)) {
      Rng rng(derive_seed(master, kind + ":" + ap.pair.id));
      auto result = kind == "antonym" ? apply_antonym(ap, lex, rng)
                                      : apply_synonym(ap, lex, rng);
      if (result) dataset.pairs.push_back(std::move(*result));
    }
  } else if (kind == "spelling") {
    std::string pinyin_path = resource_dir() + "/pinyin.tsv";
    std::string freq_path = resource_dir() + "/charfreq.tsv";
    PinyinTable pinyin = load_pinyin(pinyin_path);
    CharFrequency freq = load_char_frequency(freq_path);
    add_resource_digest(dataset, "pinyin", pinyin_path);
    add_resource_digest(dataset, "charfreq", freq_path);
    for (const auto& pair : in.pairs) {
      Rng rng(derive_seed(master, "spelling:" + pair.id));
      auto result = apply_spelling(pair, pinyin, freq, rng);
      if (result) dataset.pairs.push_back(std::move(*result));
    }
  } else {
    std::cerr << "unknown perturbation kind: " << kind << "\n";
    return 1;
  }

  dataset = dedup(std::move(dataset));
  std::map<std::string, std::size_t> counters;
  for (auto& pair : dataset.pairs) {
    pair.id = make_id(pair.category, pair.subcategory,
                      counters[pair.category + pair.subcategory]++);
  }
  write_dataset(dataset, out);
  std::cout << "wrote " << dataset.pairs.size() << " pairs to " << out << "\n";
  return 0;
}

int run_scan(const std::string& input, const std::string& granularity,
             const std::string& report_path) {
  Granularity g;
  if (granularity == "char") g = Granularity::kCharacter;
  else if (granularity == "word") g = Granularity::kWord;
  else {
    std::cerr << "unknown granularity: " << granularity << "\n";
    return 1;
  }
  Dataset dataset = read_dataset(input);
  HeuristicReport report = scan_corpus(dataset, g);
  std::string text = format_heuristic_report(report);
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + report_path);
    out << text;
  }
  return 0;
}

int run_validate(const std::string& input, const std::string& kind,
                 const std::string& manifest_path) {
  if (kind == "pairs") {
    Dataset dataset = read_dataset(input);
    auto violations = validate_dataset(dataset);
    for (const auto& v : violations) std::cout << "violation\t" << v << "\n";
    std::cout << "pairs\t" << dataset.pairs.size() << "\nviolations\t"
              << violations.size() << "\n";
    return violations.empty() ? 0 : 1;
  }
  if (kind == "diagnostics") {
    auto records = diagnostics::read_diagnostics(input);
    std::map<std::string, std::size_t> manifest;
    if (!manifest_path.empty()) {
      for (const auto& line : load_lines(manifest_path)) {
        auto cols = split(line, '\t');
        if (cols.size() != 2) {
          std::cerr << "manifest rows must be phenomenon\tcount\n";
          return 1;
        }
        manifest[trim(cols[0])] = std::stoull(trim(cols[1]));
      }
    }
    auto report = diagnostics::validate_diagnostics(
        records, manifest_path.empty() ? nullptr : &manifest);
    std::cout << diagnostics::format_diagnostic_report(report);
    return report.violations.empty() && report.manifest_mismatches.empty() ? 0
                                                                           : 1;
  }
  std::cerr << "unknown validation kind: " << kind << "\n";
  return 1;
}

int run_score(const std::string& gold_path, const std::string& pred_path,
              std::optional<double> delta_ref, const std::string& report_path,
              const std::string& format) {
  Dataset gold = read_dataset(gold_path);
  PredictionFile preds = read_predictions(pred_path);
  ScoreReport report = score(gold, preds);
  if (delta_ref) report.delta = delta(*delta_ref, report);
  std::string text = format == "markdown" ? format_score_markdown(report)
                                          : format_score_tsv(report);
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + report_path);
    out << text;
  }
  return 0;
}

int run_sample(const std::string& input, std::size_t n,
               std::optional<std::uint64_t> seed, const std::string& out) {
  std::uint64_t master = resolve_seed(seed);
  Dataset dataset = read_dataset(input);
  Dataset sampled = sample_for_annotation(dataset, n, master);
  write_dataset(sampled, out);
  std::cout << "wrote " << sampled.pairs.size() << " pairs to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nli-forge: Chinese NLI challenge data generator and scorer"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  unsigned threads = 1;

  // gen-hans
  auto* gh = app.add_subcommand("gen-hans", "Generate HANS-style pairs from templates");
  std::string gh_templates, gh_vocab, gh_out;
  std::size_t gh_per_template = 50;
  gh->add_option("--templates", gh_templates, "Template TSV");
  gh->add_option("--vocab", gh_vocab, "Vocabulary TSV");
  gh->add_option("--per-template", gh_per_template, "Instantiations per template");
  gh->add_option("--seed", seed, "Master seed");
  gh->add_option("--threads", threads, "Worker threads");
  gh->add_option("--out", gh_out, "Output JSONL")->required();

  // perturb
  auto* pt = app.add_subcommand("perturb", "Apply a stress perturbation to a dataset");
  std::string pt_kind, pt_input, pt_annotations, pt_condition = "p", pt_out;
  pt->add_option("--kind", pt_kind, "distraction|antonym|synonym|spelling")->required();
  pt->add_option("--input", pt_input, "Input JSONL")->required();
  pt->add_option("--annotations", pt_annotations, "POS annotation TSV");
  pt->add_option("--condition", pt_condition, "Distraction condition: p|pn|h|hn");
  pt->add_option("--seed", seed, "Master seed");
  pt->add_option("--out", pt_out, "Output JSONL")->required();

  // gen-numeric
  auto* gn = app.add_subcommand("gen-numeric", "Generate numeric E/C/N triples");
  std::string gn_seeds, gn_out;
  gn->add_option("--seeds", gn_seeds, "Seed sentences, one per line");
  gn->add_option("--seed", seed, "Master seed");
  gn->add_option("--out", gn_out, "Output JSONL")->required();

  // gen-fragments
  auto* gf = app.add_subcommand("gen-fragments", "Generate semantic fragment pairs");
  std::string gf_category, gf_names, gf_places, gf_out;
  std::size_t gf_count = 1000;
  gf->add_option("--category", gf_category,
                 "boolean|comparative|conditional|counting|negation|quantifier")
      ->required();
  gf->add_option("--names", gf_names, "Person name list");
  gf->add_option("--places", gf_places, "Place name list");
  gf->add_option("--count", gf_count, "Pairs to generate");
  gf->add_option("--seed", seed, "Master seed");
  gf->add_option("--threads", threads, "Worker threads");
  gf->add_option("--out", gf_out, "Output JSONL")->required();

  // scan
  auto* sc = app.add_subcommand("scan", "Scan a corpus for HANS heuristics");
  std::string sc_input, sc_granularity = "char", sc_report;
  sc->add_option("--input", sc_input, "Input JSONL")->required();
  sc->add_option("--granularity", sc_granularity, "char|word");
  sc->add_option("--report", sc_report, "Report TSV path (stdout if omitted)");

  // validate
  auto* va = app.add_subcommand("validate", "Validate a dataset file");
  std::string va_input, va_kind = "pairs", va_manifest;
  va->add_option("--input", va_input, "Input JSONL")->required();
  va->add_option("--kind", va_kind, "pairs|diagnostics");
  va->add_option("--manifest", va_manifest, "Expected per-phenomenon counts TSV");

  // score
  auto* so = app.add_subcommand("score", "Score predictions against gold");
  std::string so_gold, so_pred, so_report, so_format = "tsv";
  std::optional<double> so_delta_ref;
  so->add_option("--gold", so_gold, "Gold JSONL")->required();
  so->add_option("--pred", so_pred, "Predictions JSONL")->required();
  so->add_option("--delta-ref", so_delta_ref, "Reference accuracy in points");
  so->add_option("--report", so_report, "Report path (stdout if omitted)");
  so->add_option("--format", so_format, "tsv|markdown");

  // sample
  auto* sa = app.add_subcommand("sample", "Sample pairs for annotation");
  std::string sa_input, sa_out;
  std::size_t sa_n = 50;
  sa->add_option("--input", sa_input, "Input JSONL")->required();
  sa->add_option("--n", sa_n, "Sample size");
  sa->add_option("--seed", seed, "Master seed");
  sa->add_option("--out", sa_out, "Output JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gh->parsed()) {
      return run_gen_hans(default_resource(gh_templates, "hans_templates.tsv"),
                          default_resource(gh_vocab, "vocabulary.tsv"),
                          gh_per_template, seed, threads, gh_out);
    }
    if (pt->parsed()) {
      return run_perturb(pt_kind, pt_input, pt_annotations, pt_condition, seed,
                         pt_out);
    }
    if (gn->parsed()) {
      return run_gen_numeric(default_resource(gn_seeds, "numeric_seeds.txt"),
                             seed, gn_out);
    }
    if (gf->parsed()) {
      return run_gen_fragments(gf_category,
                               default_resource(gf_names, "names.tsv"),
                               default_resource(gf_places, "places.tsv"),
                               gf_count, seed, threads, gf_out);
    }
    if (sc->parsed()) return run_scan(sc_input, sc_granularity, sc_report);
    if (va->parsed()) return run_validate(va_input, va_kind, va_manifest);
    if (so->parsed()) {
      return run_score(so_gold, so_pred, so_delta_ref, so_report, so_format);
    }
    if (sa->parsed()) return run_sample(sa_input, sa_n, seed, sa_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
