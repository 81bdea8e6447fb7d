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

#include "nliforge/numeric.hpp"

#include <optional>

#include "nliforge/text.hpp"

namespace nliforge {

std::vector<const QuantPhrase*> QuantLexicon::with_relation(
    QuantRelation rel) const {
  std::vector<const QuantPhrase*> out;
  for (const auto& p : phrases) {
    if (p.relation == rel) out.push_back(&p);
  }
  return out;
}

QuantLexicon QuantLexicon::default_lexicon() {
  return QuantLexicon{{{"不到", QuantRelation::kLessThan},
                       {"少于", QuantRelation::kLessThan},
                       {"低于", QuantRelation::kLessThan},
                       {"超过", QuantRelation::kMoreThan},
                       {"多于", QuantRelation::kMoreThan},
                       {"高于", QuantRelation::kMoreThan}}};
}

std::vector<NumberSpan> find_number_spans(const std::string& text) {
  std::vector<NumberSpan> spans;
  auto chars = utf8_chars(text);
  std::size_t offset = 0;
  std::size_t i = 0;
  while (i < chars.size()) {
    if (is_digit_char(chars[i])) {
      NumberSpan span;
      span.offset = offset;
      std::uint64_t value = 0;
      while (i < chars.size() && is_digit_char(chars[i])) {
        value = value * 10 + static_cast<std::uint64_t>(digit_value(chars[i]));
        span.length += chars[i].size();
        offset += chars[i].size();
        ++i;
      }
      span.value = value;
      spans.push_back(span);
    } else {
      offset += chars[i].size();
      ++i;
    }
  }
  return spans;
}

namespace {

std::string replace_span(const std::string& text, const NumberSpan& span,
                         const std::string& replacement) {
  return text.substr(0, span.offset) + replacement +
         text.substr(span.offset + span.length);
}

std::uint64_t order_of_magnitude(std::uint64_t x) {
  std::uint64_t step = 1;
  while (x >= 10) {
    x /= 10;
    step *= 10;
  }
  return step;
}

// y is sampled from {x +- k*step} with step the order of magnitude of x,
// bounded positive and distinct from x.
std::uint64_t sample_alternative(std::uint64_t x, Rng& rng) {
  std::uint64_t step = order_of_magnitude(x);
  for (;;) {
    std::int64_t k =
        static_cast<std::int64_t>(rng.below(19)) - 9;  // [-9, 9]
    if (k == 0) continue;
    __int128 y = static_cast<__int128>(x) + static_cast<__int128>(k) * step;
    if (y > 0 && y != static_cast<__int128>(x)) {
      return static_cast<std::uint64_t>(y);
    }
  }
}

// Open/closed interval over positive quantities; hi_infinite means no upper
// bound.
struct Interval {
  std::uint64_t lo = 0;
  bool lo_open = false;
  std::uint64_t hi = 0;
  bool hi_open = false;
  bool hi_infinite = false;

  static Interval point(std::uint64_t v) { return {v, false, v, false, false}; }
  static Interval less_than(std::uint64_t v) { return {0, true, v, true, false}; }
  static Interval more_than(std::uint64_t v) { return {v, true, 0, false, true}; }
};

bool subset(const Interval& a, const Interval& b) {
  // Lower bound of b must not cut into a.
  bool lower_ok =
      a.lo > b.lo || (a.lo == b.lo && (b.lo_open ? a.lo_open : true));
  if (!lower_ok) return false;
  if (b.hi_infinite) return true;
  if (a.hi_infinite) return false;
  return a.hi < b.hi || (a.hi == b.hi && (b.hi_open ? a.hi_open : true));
}

bool disjoint(const Interval& a, const Interval& b) {
  auto above = [](const Interval& x, const Interval& y) {
    // Every point of y is above every point of x.
    if (x.hi_infinite) return false;
    return x.hi < y.lo || (x.hi == y.lo && (x.hi_open || y.lo_open));
  };
  return above(a, b) || above(b, a);
}

struct Side {
  std::optional<QuantRelation> relation;
  std::uint64_t value = 0;

  Interval interval() const {
    if (!relation) return Interval::point(value);
    return *relation == QuantRelation::kLessThan ? Interval::less_than(value)
                                                 : Interval::more_than(value);
  }
};

std::optional<QuantRelation> leading_quant(
    const std::vector<std::string>& chars, std::size_t begin, std::size_t end,
    const QuantLexicon& q, std::size_t* consumed) {
  std::string text;
  for (std::size_t i = begin; i < end; ++i) text += chars[i];
  for (const auto& p : q.phrases) {
    if (starts_with(text, p.surface)) {
      std::size_t n = utf8_length(p.surface);
      *consumed = n;
      return p.relation;
    }
  }
  *consumed = 0;
  return std::nullopt;
}

Side parse_side(const std::vector<std::string>& chars, std::size_t begin,
                std::size_t end, std::optional<QuantRelation> shared_quant,
                const QuantLexicon& q) {
  Side side;
  std::size_t consumed = 0;
  auto rel = leading_quant(chars, begin, end, q, &consumed);
  if (rel) {
    side.relation = rel;
    begin += consumed;
  } else {
    side.relation = shared_quant;
  }
  if (begin >= end) throw NumericError("not a numeric pair: no digits");
  std::uint64_t value = 0;
  for (std::size_t i = begin; i < end; ++i) {
    int d = digit_value(chars[i]);
    if (d < 0) throw NumericError("not a numeric pair: differing non-numeric text");
    value = value * 10 + static_cast<std::uint64_t>(d);
  }
  side.value = value;
  return side;
}

}  // namespace

std::array<NLIPair, 3> generate_numeric(const std::string& seed_sentence,
                                        const QuantLexicon& q, Rng& rng) {
  auto spans = find_number_spans(seed_sentence);
  if (spans.empty()) throw NumericError("no numeral in seed sentence");
  const NumberSpan& span = spans[static_cast<std::size_t>(rng.below(spans.size()))];
  std::uint64_t x = span.value;

  // Entailment: replace x with y and prefix with the quantifier that makes
  // the statement weaker than the premise.
  std::uint64_t y = sample_alternative(x, rng);
  QuantRelation e_rel =
      y > x ? QuantRelation::kLessThan : QuantRelation::kMoreThan;
  auto e_phrases = q.with_relation(e_rel);
  const QuantPhrase* e_phrase =
      e_phrases[static_cast<std::size_t>(rng.below(e_phrases.size()))];
  std::string entailed_text =
      replace_span(seed_sentence, span, e_phrase->surface + std::to_string(y));

  NLIPair e;
  e.premise = seed_sentence;
  e.hypothesis = entailed_text;
  e.label = Label::kEntailment;
  e.category = "numeric";
  e.subcategory = "rule1";
  e.provenance["x"] = std::to_string(x);
  e.provenance["y"] = std::to_string(y);
  e.provenance["quant"] = e_phrase->surface;

  // Contradiction: either a different bare number (rule 2a) or a false
  // quantifier prefix on the original number (rule 2b).
  NLIPair c;
  c.premise = seed_sentence;
  c.label = Label::kContradiction;
  c.category = "numeric";
  if (rng.below(2) == 0) {
    std::uint64_t y2 = sample_alternative(x, rng);
    c.hypothesis = replace_span(seed_sentence, span, std::to_string(y2));
    c.subcategory = "rule2a";
    c.provenance["y"] = std::to_string(y2);
  } else {
    const QuantPhrase& phrase =
        q.phrases[static_cast<std::size_t>(rng.below(q.phrases.size()))];
    c.hypothesis =
        replace_span(seed_sentence, span, phrase.surface + std::to_string(x));
    c.subcategory = "rule2b";
    c.provenance["quant"] = phrase.surface;
  }
  c.provenance["x"] = std::to_string(x);

  // Neutral: the reversed entailment pair.
  NLIPair n;
  n.premise = entailed_text;
  n.hypothesis = seed_sentence;
  n.label = Label::kNeutral;
  n.category = "numeric";
  n.subcategory = "rule3";
  n.provenance = e.provenance;

  return {e, c, n};
}

Label numeric_oracle(const NLIPair& pair, const QuantLexicon& q) {
  auto p = utf8_chars(pair.premise);
  auto h = utf8_chars(pair.hypothesis);
  std::size_t lcp = 0;
  while (lcp < p.size() && lcp < h.size() && p[lcp] == h[lcp]) ++lcp;
  std::size_t lcs = 0;
  while (lcs < p.size() - lcp && lcs < h.size() - lcp &&
         p[p.size() - 1 - lcs] == h[h.size() - 1 - lcs])
    ++lcs;
  if (lcp == p.size() && lcp == h.size()) return Label::kEntailment;

  // Grow the differing middles to cover whole adjacent digit runs so that
  // numbers sharing digits compare by full value.
  while (lcp > 0 && is_digit_char(p[lcp - 1])) --lcp;
  while (lcs > 0 && is_digit_char(p[p.size() - lcs])) --lcs;

  std::size_t shared_consumed = 0;
  std::optional<QuantRelation> shared_quant;
  // A quantifier phrase ending the common prefix scopes over both sides.
  {
    std::string tail;
    std::size_t start = lcp >= 4 ? lcp - 4 : 0;
    for (std::size_t i = start; i < lcp; ++i) tail += p[i];
    for (const auto& phrase : q.phrases) {
      if (ends_with(tail, phrase.surface)) {
        shared_quant = phrase.relation;
        break;
      }
    }
    (void)shared_consumed;
  }

  Side ps = parse_side(p, lcp, p.size() - lcs, shared_quant, q);
  Side hs = parse_side(h, lcp, h.size() - lcs, shared_quant, q);

  Interval pi = ps.interval();
  Interval hi = hs.interval();
  if (subset(pi, hi)) return Label::kEntailment;
  if (disjoint(pi, hi)) return Label::kContradiction;
  return Label::kNeutral;
}

}  // namespace nliforge
