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

#include "nliforge/fragments.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_set>

#include "nliforge/text.hpp"

namespace nliforge {
namespace fragments {

// ---------------------------------------------------------------------------
// Statement constructors

Statement Statement::visited(std::string p, std::string l) {
  Statement s;
  s.kind = StatementKind::kVisited;
  s.subject = std::move(p);
  s.object = std::move(l);
  return s;
}

Statement Statement::not_visited(std::string p, std::string l) {
  Statement s = visited(std::move(p), std::move(l));
  s.kind = StatementKind::kNotVisited;
  return s;
}

Statement Statement::only_visited(std::string p, std::vector<std::string> ls) {
  Statement s;
  s.kind = StatementKind::kOnlyVisited;
  s.subject = std::move(p);
  s.object_list = std::move(ls);
  return s;
}

Statement Statement::hugged(std::string p, std::string q) {
  Statement s;
  s.kind = StatementKind::kHugged;
  s.subject = std::move(p);
  s.object = std::move(q);
  return s;
}

Statement Statement::not_hugged(std::string p, std::string q) {
  Statement s = hugged(std::move(p), std::move(q));
  s.kind = StatementKind::kNotHugged;
  return s;
}

Statement Statement::only_hugged(std::string p, std::vector<std::string> qs) {
  Statement s;
  s.kind = StatementKind::kOnlyHugged;
  s.subject = std::move(p);
  s.object_list = std::move(qs);
  return s;
}

Statement Statement::exists_universal() {
  Statement s;
  s.kind = StatementKind::kExistsUniversal;
  return s;
}

Statement Statement::conditional(Statement antecedent, Statement consequent) {
  Statement s;
  s.kind = StatementKind::kConditional;
  s.parts.push_back(std::move(antecedent));
  s.parts.push_back(std::move(consequent));
  return s;
}

Statement Statement::count_compare(std::string p, CountRelation rel,
                                   std::uint64_t n) {
  Statement s;
  s.kind = StatementKind::kCountCompare;
  s.subject = std::move(p);
  s.count_relation = rel;
  s.count = n;
  return s;
}

Statement Statement::age_rel(std::string p, AgeRelation rel, std::string q) {
  Statement s;
  s.kind = StatementKind::kAgeRel;
  s.subject = std::move(p);
  s.object = std::move(q);
  s.age_relation = rel;
  return s;
}

Statement Statement::younger_than_all(std::string p,
                                      std::vector<std::string> qs) {
  Statement s;
  s.kind = StatementKind::kYoungerThanAll;
  s.subject = std::move(p);
  s.object_list = std::move(qs);
  return s;
}

// ---------------------------------------------------------------------------
// Domain collection with open-world padding

namespace {

struct Domain {
  std::vector<std::string> persons;   // mentioned, then fresh
  std::vector<std::string> locations;  // mentioned, then one fresh
  std::size_t mentioned_persons = 0;

  std::size_t person(const std::string& name) const {
    for (std::size_t i = 0; i < persons.size(); ++i) {
      if (persons[i] == name) return i;
    }
    throw OracleError("unknown person: " + name);
  }
  std::size_t location(const std::string& name) const {
    for (std::size_t i = 0; i < locations.size(); ++i) {
      if (locations[i] == name) return i;
    }
    throw OracleError("unknown location: " + name);
  }
};

void collect_entities(const Statement& st, std::vector<std::string>& persons,
                      std::vector<std::string>& locations,
                      std::uint64_t& max_count) {
  auto add = [](std::vector<std::string>& v, const std::string& e) {
    if (!e.empty() && std::find(v.begin(), v.end(), e) == v.end()) {
      v.push_back(e);
    }
  };
  switch (st.kind) {
    case StatementKind::kVisited:
    case StatementKind::kNotVisited:
      add(persons, st.subject);
      add(locations, st.object);
      break;
    case StatementKind::kOnlyVisited:
      add(persons, st.subject);
      for (const auto& l : st.object_list) add(locations, l);
      break;
    case StatementKind::kHugged:
    case StatementKind::kNotHugged:
      add(persons, st.subject);
      add(persons, st.object);
      break;
    case StatementKind::kOnlyHugged:
      add(persons, st.subject);
      for (const auto& q : st.object_list) add(persons, q);
      break;
    case StatementKind::kExistsUniversal:
      break;
    case StatementKind::kConditional:
      for (const auto& part : st.parts) {
        collect_entities(part, persons, locations, max_count);
      }
      break;
    case StatementKind::kCountCompare:
      add(persons, st.subject);
      max_count = std::max(max_count, st.count);
      break;
    case StatementKind::kAgeRel:
      add(persons, st.subject);
      add(persons, st.object);
      break;
    case StatementKind::kYoungerThanAll:
      add(persons, st.subject);
      for (const auto& q : st.object_list) add(persons, q);
      break;
  }
}

// Mentioned entities plus padding: one fresh location always, and fresh
// persons up to (max numeral in any CountCompare) + 1 so that counting and
// existential hypotheses stay falsifiable-or-satisfiable.
Domain collect_domain(const std::vector<Statement>& premises,
                      const Statement& hypothesis) {
  Domain d;
  std::uint64_t max_count = 0;
  for (const auto& st : premises) {
    collect_entities(st, d.persons, d.locations, max_count);
  }
  collect_entities(hypothesis, d.persons, d.locations, max_count);
  d.mentioned_persons = d.persons.size();
  std::size_t fresh = static_cast<std::size_t>(max_count) + 1;
  for (std::size_t i = 0; i < fresh; ++i) {
    d.persons.push_back("#fresh_p" + std::to_string(i));
  }
  d.locations.push_back("#fresh_l");
  return d;
}

// ---------------------------------------------------------------------------
// Three-valued sketch and constraint propagation

enum class Tri : std::uint8_t { kF, kT, kU };

Tri tri_not(Tri v) {
  if (v == Tri::kU) return Tri::kU;
  return v == Tri::kT ? Tri::kF : Tri::kT;
}

struct Sketch {
  std::size_t persons = 0;
  std::size_t locations = 0;
  std::vector<Tri> visited;  // persons x locations
  std::vector<Tri> hugged;   // persons x persons, diagonal unused
  std::vector<std::pair<std::size_t, std::size_t>> age_lt;  // strict p < q
  std::vector<std::pair<std::size_t, std::size_t>> age_eq;

  Tri& vis(std::size_t p, std::size_t l) { return visited[p * locations + l]; }
  Tri vis(std::size_t p, std::size_t l) const {
    return visited[p * locations + l];
  }
  Tri& hug(std::size_t p, std::size_t q) { return hugged[p * persons + q]; }
  Tri hug(std::size_t p, std::size_t q) const {
    return hugged[p * persons + q];
  }
};

Sketch make_sketch(const Domain& d) {
  Sketch s;
  s.persons = d.persons.size();
  s.locations = d.locations.size();
  s.visited.assign(s.persons * s.locations, Tri::kU);
  s.hugged.assign(s.persons * s.persons, Tri::kU);
  // Nobody hugs themselves: pin the diagonal so evaluation agrees with
  // enumeration over completions.
  for (std::size_t p = 0; p < s.persons; ++p) s.hug(p, p) = Tri::kF;
  return s;
}

bool set_cell(Tri& cell, Tri value) {
  if (cell == Tri::kU) {
    cell = value;
    return true;
  }
  return cell == value;
}

// Age closure over equality classes; strict edges must form a DAG.
struct AgeClosure {
  std::vector<std::size_t> rep;            // union-find representative
  std::vector<std::vector<bool>> reach;    // strict reachability of reps

  std::size_t find(std::size_t x) const {
    while (rep[x] != x) x = rep[x];
    return x;
  }
};

bool build_age_closure(const Sketch& s, AgeClosure& out) {
  std::size_t n = s.persons;
  out.rep.resize(n);
  std::iota(out.rep.begin(), out.rep.end(), 0);
  auto find = [&](std::size_t x) {
    while (out.rep[x] != x) x = out.rep[x];
    return x;
  };
  for (auto& [a, b] : s.age_eq) {
    std::size_t ra = find(a), rb = find(b);
    if (ra != rb) out.rep[ra] = rb;
  }
  out.reach.assign(n, std::vector<bool>(n, false));
  for (auto& [a, b] : s.age_lt) {
    out.reach[find(a)][find(b)] = true;
  }
  // Floyd-Warshall transitive closure; n is small.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!out.reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (out.reach[k][j]) out.reach[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (out.reach[find(i)][find(i)]) return false;  // strict cycle
  }
  return true;
}

enum class Forced { kNone, kLt, kGt, kEq };

Forced forced_age(const AgeClosure& c, std::size_t p, std::size_t q) {
  std::size_t rp = c.find(p), rq = c.find(q);
  if (rp == rq) return Forced::kEq;
  if (c.reach[rp][rq]) return Forced::kLt;
  if (c.reach[rq][rp]) return Forced::kGt;
  return Forced::kNone;
}

class Oracle {
 public:
  Oracle(const Domain& domain) : domain_(domain) {}

  // Asserts one statement on a sketch, possibly splitting it. Returns the
  // surviving (locally consistent) sketches.
  std::vector<Sketch> assert_statement(Sketch sketch, const Statement& st) {
    switch (st.kind) {
      case StatementKind::kVisited:
        return assert_cell(std::move(sketch), st, Tri::kT);
      case StatementKind::kNotVisited:
        return assert_cell(std::move(sketch), st, Tri::kF);
      case StatementKind::kHugged:
        return assert_cell(std::move(sketch), st, Tri::kT);
      case StatementKind::kNotHugged:
        return assert_cell(std::move(sketch), st, Tri::kF);
      case StatementKind::kOnlyVisited: {
        std::size_t p = domain_.person(st.subject);
        std::set<std::size_t> on;
        for (const auto& l : st.object_list) on.insert(domain_.location(l));
        for (std::size_t l = 0; l < sketch.locations; ++l) {
          if (!set_cell(sketch.vis(p, l), on.count(l) ? Tri::kT : Tri::kF)) {
            return {};
          }
        }
        return one(std::move(sketch));
      }
      case StatementKind::kOnlyHugged: {
        std::size_t p = domain_.person(st.subject);
        std::set<std::size_t> on;
        for (const auto& q : st.object_list) on.insert(domain_.person(q));
        for (std::size_t q = 0; q < sketch.persons; ++q) {
          if (q == p) continue;
          if (!set_cell(sketch.hug(p, q), on.count(q) ? Tri::kT : Tri::kF)) {
            return {};
          }
        }
        return one(std::move(sketch));
      }
      case StatementKind::kAgeRel: {
        std::size_t p = domain_.person(st.subject);
        std::size_t q = domain_.person(st.object);
        switch (st.age_relation) {
          case AgeRelation::kYounger: sketch.age_lt.emplace_back(p, q); break;
          case AgeRelation::kOlder: sketch.age_lt.emplace_back(q, p); break;
          case AgeRelation::kSame: sketch.age_eq.emplace_back(p, q); break;
        }
        AgeClosure closure;
        if (!build_age_closure(sketch, closure)) return {};
        return one(std::move(sketch));
      }
      case StatementKind::kYoungerThanAll: {
        std::size_t p = domain_.person(st.subject);
        for (const auto& qn : st.object_list) {
          sketch.age_lt.emplace_back(p, domain_.person(qn));
        }
        AgeClosure closure;
        if (!build_age_closure(sketch, closure)) return {};
        return one(std::move(sketch));
      }
      case StatementKind::kConditional: {
        const Statement& ant = st.parts[0];
        const Statement& cons = st.parts[1];
        Tri av = eval(sketch, ant);
        if (av == Tri::kF) return one(std::move(sketch));
        if (av == Tri::kT) return assert_statement(std::move(sketch), cons);
        // Unknown antecedent: two-way case split on its truth.
        std::vector<Sketch> out;
        for (Sketch& s : assert_statement(sketch, ant)) {
          for (Sketch& s2 : assert_statement(std::move(s), cons)) {
            out.push_back(std::move(s2));
          }
        }
        for (Sketch& s : assert_statement(std::move(sketch), negate(ant))) {
          out.push_back(std::move(s));
        }
        return out;
      }
      case StatementKind::kExistsUniversal: {
        // Case split on the witness over every person, including fresh ones.
        std::vector<Sketch> out;
        for (std::size_t x = 0; x < sketch.persons; ++x) {
          Sketch branch = sketch;
          bool ok = true;
          for (std::size_t l = 0; l < branch.locations && ok; ++l) {
            ok = set_cell(branch.vis(x, l), Tri::kT);
          }
          for (std::size_t q = 0; q < branch.persons && ok; ++q) {
            if (q != x) ok = set_cell(branch.hug(x, q), Tri::kT);
          }
          if (ok) out.push_back(std::move(branch));
        }
        return out;
      }
      case StatementKind::kCountCompare: {
        Tri v = eval(sketch, st);
        if (v == Tri::kT) return one(std::move(sketch));
        if (v == Tri::kF) return {};
        throw OracleError(
            "CountCompare premise with undetermined row is unsupported");
      }
    }
    return one(std::move(sketch));
  }

  // Three-valued evaluation. Hypothesis forms keep their cells independent,
  // so Kleene truth coincides with truth across completions.
  Tri eval(const Sketch& s, const Statement& st) const {
    switch (st.kind) {
      case StatementKind::kVisited:
        return s.vis(domain_.person(st.subject), domain_.location(st.object));
      case StatementKind::kNotVisited:
        return tri_not(
            s.vis(domain_.person(st.subject), domain_.location(st.object)));
      case StatementKind::kHugged:
        return s.hug(domain_.person(st.subject), domain_.person(st.object));
      case StatementKind::kNotHugged:
        return tri_not(
            s.hug(domain_.person(st.subject), domain_.person(st.object)));
      case StatementKind::kOnlyVisited: {
        std::size_t p = domain_.person(st.subject);
        std::set<std::size_t> on;
        for (const auto& l : st.object_list) on.insert(domain_.location(l));
        bool unknown = false;
        for (std::size_t l = 0; l < s.locations; ++l) {
          Tri want = on.count(l) ? Tri::kT : Tri::kF;
          Tri have = s.vis(p, l);
          if (have == Tri::kU) unknown = true;
          else if (have != want) return Tri::kF;
        }
        return unknown ? Tri::kU : Tri::kT;
      }
      case StatementKind::kOnlyHugged: {
        std::size_t p = domain_.person(st.subject);
        std::set<std::size_t> on;
        for (const auto& q : st.object_list) on.insert(domain_.person(q));
        bool unknown = false;
        for (std::size_t q = 0; q < s.persons; ++q) {
          if (q == p) continue;
          Tri want = on.count(q) ? Tri::kT : Tri::kF;
          Tri have = s.hug(p, q);
          if (have == Tri::kU) unknown = true;
          else if (have != want) return Tri::kF;
        }
        return unknown ? Tri::kU : Tri::kT;
      }
      case StatementKind::kExistsUniversal: {
        bool any_unknown = false;
        for (std::size_t x = 0; x < s.persons; ++x) {
          bool all_true = true;
          bool some_false = false;
          for (std::size_t l = 0; l < s.locations; ++l) {
            Tri v = s.vis(x, l);
            if (v != Tri::kT) all_true = false;
            if (v == Tri::kF) some_false = true;
          }
          for (std::size_t q = 0; q < s.persons; ++q) {
            if (q == x) continue;
            Tri v = s.hug(x, q);
            if (v != Tri::kT) all_true = false;
            if (v == Tri::kF) some_false = true;
          }
          if (all_true) return Tri::kT;
          if (!some_false) any_unknown = true;
        }
        return any_unknown ? Tri::kU : Tri::kF;
      }
      case StatementKind::kConditional: {
        Tri a = eval(s, st.parts[0]);
        Tri c = eval(s, st.parts[1]);
        Tri na = tri_not(a);
        if (na == Tri::kT || c == Tri::kT) return Tri::kT;
        if (na == Tri::kF && c == Tri::kF) return Tri::kF;
        return Tri::kU;
      }
      case StatementKind::kCountCompare: {
        std::size_t p = domain_.person(st.subject);
        std::uint64_t forced = 0;
        std::uint64_t unknown = 0;
        for (std::size_t q = 0; q < s.persons; ++q) {
          if (q == p) continue;
          Tri v = s.hug(p, q);
          if (v == Tri::kT) ++forced;
          else if (v == Tri::kU) ++unknown;
        }
        std::uint64_t lo = forced;
        std::uint64_t hi = forced + unknown;
        std::uint64_t n = st.count;
        switch (st.count_relation) {
          case CountRelation::kMoreThan:
            if (lo > n) return Tri::kT;
            if (hi <= n) return Tri::kF;
            return Tri::kU;
          case CountRelation::kFewerThan:
            if (hi < n) return Tri::kT;
            if (lo >= n) return Tri::kF;
            return Tri::kU;
          case CountRelation::kExactly:
            if (lo == n && hi == n) return Tri::kT;
            if (n < lo || n > hi) return Tri::kF;
            return Tri::kU;
        }
        return Tri::kU;
      }
      case StatementKind::kAgeRel: {
        AgeClosure c;
        if (!build_age_closure(s, c)) {
          throw OracleError("inconsistent age constraints");
        }
        Forced f = forced_age(c, domain_.person(st.subject),
                              domain_.person(st.object));
        switch (st.age_relation) {
          case AgeRelation::kYounger:
            if (f == Forced::kLt) return Tri::kT;
            if (f == Forced::kGt || f == Forced::kEq) return Tri::kF;
            return Tri::kU;
          case AgeRelation::kOlder:
            if (f == Forced::kGt) return Tri::kT;
            if (f == Forced::kLt || f == Forced::kEq) return Tri::kF;
            return Tri::kU;
          case AgeRelation::kSame:
            if (f == Forced::kEq) return Tri::kT;
            if (f == Forced::kLt || f == Forced::kGt) return Tri::kF;
            return Tri::kU;
        }
        return Tri::kU;
      }
      case StatementKind::kYoungerThanAll: {
        bool unknown = false;
        for (const auto& qn : st.object_list) {
          Tri v = eval(s, Statement::age_rel(st.subject, AgeRelation::kYounger,
                                             qn));
          if (v == Tri::kF) return Tri::kF;
          if (v == Tri::kU) unknown = true;
        }
        return unknown ? Tri::kU : Tri::kT;
      }
    }
    return Tri::kU;
  }

 private:
  static std::vector<Sketch> one(Sketch s) {
    std::vector<Sketch> v;
    v.push_back(std::move(s));
    return v;
  }

  std::vector<Sketch> assert_cell(Sketch sketch, const Statement& st,
                                  Tri value) {
    Tri* cell = nullptr;
    if (st.kind == StatementKind::kVisited ||
        st.kind == StatementKind::kNotVisited) {
      cell = &sketch.vis(domain_.person(st.subject),
                         domain_.location(st.object));
    } else {
      std::size_t p = domain_.person(st.subject);
      std::size_t q = domain_.person(st.object);
      if (p == q) {
        // Nobody hugs themselves here: asserting it is inconsistent,
        // denying it is vacuous.
        return value == Tri::kT ? std::vector<Sketch>{} : one(std::move(sketch));
      }
      cell = &sketch.hug(p, q);
    }
    if (!set_cell(*cell, value)) return {};
    return one(std::move(sketch));
  }

  static Statement negate(const Statement& st) {
    Statement out = st;
    switch (st.kind) {
      case StatementKind::kVisited: out.kind = StatementKind::kNotVisited; break;
      case StatementKind::kNotVisited: out.kind = StatementKind::kVisited; break;
      case StatementKind::kHugged: out.kind = StatementKind::kNotHugged; break;
      case StatementKind::kNotHugged: out.kind = StatementKind::kHugged; break;
      default:
        throw OracleError("conditional antecedent must be (negated) atomic");
    }
    return out;
  }

  const Domain& domain_;
};

}  // namespace

Label oracle_label(const std::vector<Statement>& premises,
                   const Statement& hypothesis) {
  Domain domain = collect_domain(premises, hypothesis);
  Oracle oracle(domain);
  std::vector<Sketch> sketches;
  sketches.push_back(make_sketch(domain));
  for (const auto& premise : premises) {
    std::vector<Sketch> next;
    for (Sketch& s : sketches) {
      for (Sketch& s2 : oracle.assert_statement(std::move(s), premise)) {
        next.push_back(std::move(s2));
      }
    }
    sketches = std::move(next);
    if (sketches.empty()) throw OracleError("inconsistent premises");
  }

  bool all_true = true;
  bool all_false = true;
  for (const Sketch& s : sketches) {
    Tri v = oracle.eval(s, hypothesis);
    if (v != Tri::kT) all_true = false;
    if (v != Tri::kF) all_false = false;
  }
  if (all_true) return Label::kEntailment;
  if (all_false) return Label::kContradiction;
  return Label::kNeutral;
}

// ---------------------------------------------------------------------------
// Brute-force oracle: full enumeration of completions

namespace {

struct World {
  std::size_t persons = 0;
  std::size_t locations = 0;
  std::vector<bool> visited;
  std::vector<bool> hugged;
  std::vector<std::size_t> age_rank;  // higher rank = older

  bool vis(std::size_t p, std::size_t l) const {
    return visited[p * locations + l];
  }
  bool hug(std::size_t p, std::size_t q) const {
    return hugged[p * persons + q];
  }
};

bool holds(const World& w, const Domain& d, const Statement& st) {
  switch (st.kind) {
    case StatementKind::kVisited:
      return w.vis(d.person(st.subject), d.location(st.object));
    case StatementKind::kNotVisited:
      return !w.vis(d.person(st.subject), d.location(st.object));
    case StatementKind::kHugged:
      return w.hug(d.person(st.subject), d.person(st.object));
    case StatementKind::kNotHugged:
      return !w.hug(d.person(st.subject), d.person(st.object));
    case StatementKind::kOnlyVisited: {
      std::size_t p = d.person(st.subject);
      std::set<std::size_t> on;
      for (const auto& l : st.object_list) on.insert(d.location(l));
      for (std::size_t l = 0; l < w.locations; ++l) {
        if (w.vis(p, l) != (on.count(l) != 0)) return false;
      }
      return true;
    }
    case StatementKind::kOnlyHugged: {
      std::size_t p = d.person(st.subject);
      std::set<std::size_t> on;
      for (const auto& q : st.object_list) on.insert(d.person(q));
      for (std::size_t q = 0; q < w.persons; ++q) {
        if (q == p) continue;
        if (w.hug(p, q) != (on.count(q) != 0)) return false;
      }
      return true;
    }
    case StatementKind::kExistsUniversal:
      for (std::size_t x = 0; x < w.persons; ++x) {
        bool all = true;
        for (std::size_t l = 0; l < w.locations && all; ++l) {
          all = w.vis(x, l);
        }
        for (std::size_t q = 0; q < w.persons && all; ++q) {
          if (q != x) all = w.hug(x, q);
        }
        if (all) return true;
      }
      return false;
    case StatementKind::kConditional:
      return !holds(w, d, st.parts[0]) || holds(w, d, st.parts[1]);
    case StatementKind::kCountCompare: {
      std::size_t p = d.person(st.subject);
      std::uint64_t count = 0;
      for (std::size_t q = 0; q < w.persons; ++q) {
        if (q != p && w.hug(p, q)) ++count;
      }
      switch (st.count_relation) {
        case CountRelation::kMoreThan: return count > st.count;
        case CountRelation::kFewerThan: return count < st.count;
        case CountRelation::kExactly: return count == st.count;
      }
      return false;
    }
    case StatementKind::kAgeRel: {
      std::size_t p = d.person(st.subject);
      std::size_t q = d.person(st.object);
      switch (st.age_relation) {
        case AgeRelation::kYounger: return w.age_rank[p] < w.age_rank[q];
        case AgeRelation::kOlder: return w.age_rank[p] > w.age_rank[q];
        case AgeRelation::kSame: return w.age_rank[p] == w.age_rank[q];
      }
      return false;
    }
    case StatementKind::kYoungerThanAll: {
      std::size_t p = d.person(st.subject);
      for (const auto& qn : st.object_list) {
        if (w.age_rank[p] >= w.age_rank[d.person(qn)]) return false;
      }
      return true;
    }
  }
  return false;
}

bool uses_relation(const Statement& st, bool& uses_visit, bool& uses_hug,
                   bool& uses_age) {
  switch (st.kind) {
    case StatementKind::kVisited:
    case StatementKind::kNotVisited:
    case StatementKind::kOnlyVisited:
      uses_visit = true;
      break;
    case StatementKind::kHugged:
    case StatementKind::kNotHugged:
    case StatementKind::kOnlyHugged:
    case StatementKind::kCountCompare:
      uses_hug = true;
      break;
    case StatementKind::kExistsUniversal:
      uses_visit = uses_hug = true;
      break;
    case StatementKind::kConditional:
      for (const auto& part : st.parts) {
        uses_relation(part, uses_visit, uses_hug, uses_age);
      }
      break;
    case StatementKind::kAgeRel:
    case StatementKind::kYoungerThanAll:
      uses_age = true;
      break;
  }
  return true;
}

// Direct facts pin cells before enumeration; everything else is checked per
// completion.
void pin_direct_facts(const std::vector<Statement>& premises, const Domain& d,
                      std::vector<int>& visited, std::vector<int>& hugged,
                      std::size_t locations, std::size_t persons) {
  auto pin = [](std::vector<int>& cells, std::size_t idx, int value) {
    if (cells[idx] != -1 && cells[idx] != value) {
      throw OracleError("inconsistent premises");
    }
    cells[idx] = value;
  };
  for (const auto& st : premises) {
    switch (st.kind) {
      case StatementKind::kVisited:
        pin(visited, d.person(st.subject) * locations + d.location(st.object),
            1);
        break;
      case StatementKind::kNotVisited:
        pin(visited, d.person(st.subject) * locations + d.location(st.object),
            0);
        break;
      case StatementKind::kOnlyVisited: {
        std::size_t p = d.person(st.subject);
        std::set<std::size_t> on;
        for (const auto& l : st.object_list) on.insert(d.location(l));
        for (std::size_t l = 0; l < locations; ++l) {
          pin(visited, p * locations + l, on.count(l) ? 1 : 0);
        }
        break;
      }
      case StatementKind::kHugged:
        pin(hugged, d.person(st.subject) * persons + d.person(st.object), 1);
        break;
      case StatementKind::kNotHugged:
        pin(hugged, d.person(st.subject) * persons + d.person(st.object), 0);
        break;
      case StatementKind::kOnlyHugged: {
        std::size_t p = d.person(st.subject);
        std::set<std::size_t> on;
        for (const auto& q : st.object_list) on.insert(d.person(q));
        for (std::size_t q = 0; q < persons; ++q) {
          if (q == p) continue;
          pin(hugged, p * persons + q, on.count(q) ? 1 : 0);
        }
        break;
      }
      default:
        break;  // conditionals etc. are checked per completion
    }
  }
}

}  // namespace

Label brute_force_label(const std::vector<Statement>& premises,
                        const Statement& hypothesis,
                        const BruteForceBounds& bounds) {
  Domain d = collect_domain(premises, hypothesis);
  std::size_t P = d.persons.size();
  std::size_t L = d.locations.size();

  bool uses_visit = false, uses_hug = false, uses_age = false;
  for (const auto& st : premises) {
    uses_relation(st, uses_visit, uses_hug, uses_age);
  }
  uses_relation(hypothesis, uses_visit, uses_hug, uses_age);

  std::vector<int> visited(uses_visit ? P * L : 0, -1);
  std::vector<int> hugged(uses_hug ? P * P : 0, -1);
  if (uses_hug) {
    for (std::size_t p = 0; p < P; ++p) hugged[p * P + p] = 0;
  }
  pin_direct_facts(premises, d, visited, hugged, L, P);

  std::vector<std::pair<bool, std::size_t>> free_cells;  // (is_visited, index)
  for (std::size_t i = 0; i < visited.size(); ++i) {
    if (visited[i] == -1) free_cells.emplace_back(true, i);
  }
  for (std::size_t i = 0; i < hugged.size(); ++i) {
    if (hugged[i] == -1) free_cells.emplace_back(false, i);
  }
  if (free_cells.size() > bounds.max_unknown_cells) {
    throw OracleError("too large to enumerate: " +
                      std::to_string(free_cells.size()) + " unknown cells");
  }
  if (uses_age && P > bounds.max_persons_for_ages) {
    throw OracleError("too large to enumerate: " + std::to_string(P) +
                      " persons with age constraints");
  }

  World w;
  w.persons = P;
  w.locations = L;
  w.visited.assign(uses_visit ? P * L : 0, false);
  w.hugged.assign(uses_hug ? P * P : 0, false);
  w.age_rank.assign(P, 0);

  bool any_model = false;
  bool all_true = true;
  bool all_false = true;

  // Every map persons -> ranks realizes a weak order, and every weak order
  // is realized by at least one map; duplicates are harmless.
  std::uint64_t age_combos = 1;
  if (uses_age) {
    for (std::size_t i = 0; i < P; ++i) age_combos *= P;
  }

  std::uint64_t cell_combos = 1ULL << free_cells.size();
  for (std::uint64_t mask = 0; mask < cell_combos; ++mask) {
    for (std::size_t i = 0; i < visited.size(); ++i) {
      w.visited[i] = visited[i] == 1;
    }
    for (std::size_t i = 0; i < hugged.size(); ++i) {
      w.hugged[i] = hugged[i] == 1;
    }
    for (std::size_t bit = 0; bit < free_cells.size(); ++bit) {
      bool value = (mask >> bit) & 1;
      auto [is_visited, idx] = free_cells[bit];
      (is_visited ? w.visited : w.hugged)[idx] = value;
    }
    for (std::uint64_t combo = 0; combo < age_combos; ++combo) {
      if (uses_age) {
        std::uint64_t c = combo;
        for (std::size_t i = 0; i < P; ++i) {
          w.age_rank[i] = static_cast<std::size_t>(c % P);
          c /= P;
        }
      }
      bool model = true;
      for (const auto& st : premises) {
        if (!holds(w, d, st)) {
          model = false;
          break;
        }
      }
      if (!model) continue;
      any_model = true;
      if (holds(w, d, hypothesis)) all_false = false;
      else all_true = false;
      if (!all_true && !all_false) return Label::kNeutral;
    }
  }
  if (!any_model) throw OracleError("inconsistent premises");
  if (all_true) return Label::kEntailment;
  if (all_false) return Label::kContradiction;
  return Label::kNeutral;
}

// ---------------------------------------------------------------------------
// Surface realization

namespace {

constexpr std::string_view kExistsClause =
    "有人到过每一个地方，拥抱过每一个人";

std::string list_join(const std::vector<std::string>& items) {
  return join(items, "、");
}

}  // namespace

std::string realize(const Statement& st) {
  switch (st.kind) {
    case StatementKind::kVisited:
      return st.subject + "到过" + st.object;
    case StatementKind::kNotVisited:
      return st.subject + "没到过" + st.object;
    case StatementKind::kOnlyVisited:
      return st.subject + "只到过" + list_join(st.object_list);
    case StatementKind::kHugged:
      return st.subject + "拥抱过" + st.object;
    case StatementKind::kNotHugged:
      return st.subject + "没拥抱过" + st.object;
    case StatementKind::kOnlyHugged:
      return st.subject + "只拥抱过" + list_join(st.object_list);
    case StatementKind::kExistsUniversal:
      return std::string(kExistsClause);
    case StatementKind::kConditional:
      return "如果" + realize(st.parts[0]) + "，那么" + realize(st.parts[1]);
    case StatementKind::kCountCompare:
      switch (st.count_relation) {
        case CountRelation::kMoreThan:
          return st.subject + "拥抱过超过" + std::to_string(st.count) + "个人";
        case CountRelation::kFewerThan:
          return st.subject + "拥抱过不到" + std::to_string(st.count) + "个人";
        case CountRelation::kExactly:
          return st.subject + "恰好拥抱过" + std::to_string(st.count) + "个人";
      }
      break;
    case StatementKind::kAgeRel:
      switch (st.age_relation) {
        case AgeRelation::kYounger:
          return st.subject + "比" + st.object + "小";
        case AgeRelation::kOlder:
          return st.subject + "比" + st.object + "大";
        case AgeRelation::kSame:
          return st.subject + "和" + st.object + "一样大";
      }
      break;
    case StatementKind::kYoungerThanAll:
      return st.subject + "比" + list_join(st.object_list) + "都小";
  }
  throw OracleError("unrealizable statement");
}

std::string realize_premises(const std::vector<Statement>& premises) {
  std::vector<std::string> clauses;
  std::size_t i = 0;
  while (i < premises.size()) {
    // Consecutive OnlyVisited statements over the same locations render as
    // one grouped-subject clause.
    if (premises[i].kind == StatementKind::kOnlyVisited) {
      std::vector<std::string> subjects{premises[i].subject};
      std::size_t j = i + 1;
      while (j < premises.size() &&
             premises[j].kind == StatementKind::kOnlyVisited &&
             premises[j].object_list == premises[i].object_list) {
        subjects.push_back(premises[j].subject);
        ++j;
      }
      if (subjects.size() > 1) {
        clauses.push_back(list_join(subjects) + "只到过" +
                          list_join(premises[i].object_list));
        i = j;
        continue;
      }
    }
    clauses.push_back(realize(premises[i]));
    ++i;
  }
  return join(clauses, "，") + "。";
}

// ---------------------------------------------------------------------------
// Parsing the fixed surface frames back into ASTs

namespace {

// Splits on the full-width comma at the byte level; the separator is a full
// code point, so byte search is safe.
std::vector<std::string> split_on(const std::string& text,
                                  std::string_view sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + sep.size();
  }
}

std::uint64_t parse_count(const std::string& digits) {
  if (digits.empty()) throw OracleError("missing numeral: " + digits);
  std::uint64_t v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw OracleError("bad numeral: " + digits);
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

// before/after a unique marker; npos-safe only for callers that checked.
struct SplitAt {
  std::string before;
  std::string after;
};

std::optional<SplitAt> split_marker(const std::string& s,
                                    std::string_view marker) {
  std::size_t pos = s.find(marker);
  if (pos == std::string::npos) return std::nullopt;
  return SplitAt{s.substr(0, pos), s.substr(pos + marker.size())};
}

}  // namespace

Statement parse_statement(const std::string& clause) {
  if (clause == kExistsClause) return Statement::exists_universal();
  if (starts_with(clause, "如果")) {
    std::string body = clause.substr(std::string("如果").size());
    auto parts = split_marker(body, "，那么");
    if (!parts) throw OracleError("conditional without consequent: " + clause);
    return Statement::conditional(parse_statement(parts->before),
                                  parse_statement(parts->after));
  }
  if (auto m = split_marker(clause, "恰好拥抱过")) {
    auto tail = split_marker(m->after, "个人");
    if (!tail) throw OracleError("count clause without 个人: " + clause);
    return Statement::count_compare(m->before, CountRelation::kExactly,
                                    parse_count(tail->before));
  }
  if (auto m = split_marker(clause, "拥抱过超过")) {
    auto tail = split_marker(m->after, "个人");
    if (!tail) throw OracleError("count clause without 个人: " + clause);
    return Statement::count_compare(m->before, CountRelation::kMoreThan,
                                    parse_count(tail->before));
  }
  if (auto m = split_marker(clause, "拥抱过不到")) {
    auto tail = split_marker(m->after, "个人");
    if (!tail) throw OracleError("count clause without 个人: " + clause);
    return Statement::count_compare(m->before, CountRelation::kFewerThan,
                                    parse_count(tail->before));
  }
  if (auto m = split_marker(clause, "没拥抱过")) {
    return Statement::not_hugged(m->before, m->after);
  }
  if (auto m = split_marker(clause, "只拥抱过")) {
    return Statement::only_hugged(m->before, split_on(m->after, "、"));
  }
  if (auto m = split_marker(clause, "拥抱过")) {
    return Statement::hugged(m->before, m->after);
  }
  if (auto m = split_marker(clause, "没到过")) {
    return Statement::not_visited(m->before, m->after);
  }
  if (auto m = split_marker(clause, "只到过")) {
    return Statement::only_visited(m->before, split_on(m->after, "、"));
  }
  if (auto m = split_marker(clause, "到过")) {
    return Statement::visited(m->before, m->after);
  }
  if (auto m = split_marker(clause, "一样大")) {
    auto subj = split_marker(m->before, "和");
    if (!subj || !m->after.empty()) {
      throw OracleError("bad age clause: " + clause);
    }
    return Statement::age_rel(subj->before, AgeRelation::kSame, subj->after);
  }
  if (auto m = split_marker(clause, "比")) {
    if (auto all = split_marker(m->after, "都小")) {
      if (!all->after.empty()) throw OracleError("bad age clause: " + clause);
      return Statement::younger_than_all(m->before,
                                         split_on(all->before, "、"));
    }
    if (ends_with(m->after, "小")) {
      std::string obj = m->after.substr(0, m->after.size() -
                                               std::string("小").size());
      return Statement::age_rel(m->before, AgeRelation::kYounger, obj);
    }
    if (ends_with(m->after, "大")) {
      std::string obj = m->after.substr(0, m->after.size() -
                                               std::string("大").size());
      return Statement::age_rel(m->before, AgeRelation::kOlder, obj);
    }
  }
  throw OracleError("unparsable clause: " + clause);
}

std::vector<Statement> parse_premises(const std::string& text) {
  std::string body = text;
  if (!ends_with(body, "。")) {
    throw OracleError("premise sentence must end with 。");
  }
  body = body.substr(0, body.size() - std::string("。").size());

  std::vector<std::string> segments = split_on(body, "，");
  std::vector<std::string> clauses;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    // Two frames legitimately contain the clause separator: the existential
    // sentence and 如果…那么…; re-merge them.
    if (segments[i] == "有人到过每一个地方" && i + 1 < segments.size() &&
        segments[i + 1] == "拥抱过每一个人") {
      clauses.push_back(segments[i] + "，" + segments[i + 1]);
      ++i;
      continue;
    }
    if (starts_with(segments[i], "如果") && i + 1 < segments.size() &&
        starts_with(segments[i + 1], "那么")) {
      clauses.push_back(segments[i] + "，" + segments[i + 1]);
      ++i;
      continue;
    }
    clauses.push_back(segments[i]);
  }

  std::vector<Statement> out;
  for (const auto& clause : clauses) {
    // Grouped subjects expand back into one OnlyVisited per person.
    auto m = split_marker(clause, "只到过");
    if (m && m->before.find("、") != std::string::npos) {
      auto locations = split_on(m->after, "、");
      for (const auto& subject : split_on(m->before, "、")) {
        out.push_back(Statement::only_visited(subject, locations));
      }
      continue;
    }
    out.push_back(parse_statement(clause));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Categories and templates

std::string_view category_name(FragmentCategory c) {
  switch (c) {
    case FragmentCategory::kBoolean: return "boolean";
    case FragmentCategory::kComparative: return "comparative";
    case FragmentCategory::kConditional: return "conditional";
    case FragmentCategory::kCounting: return "counting";
    case FragmentCategory::kNegation: return "negation";
    case FragmentCategory::kQuantifier: return "quantifier";
  }
  return "";
}

std::optional<FragmentCategory> parse_category(std::string_view name) {
  if (name == "boolean") return FragmentCategory::kBoolean;
  if (name == "comparative") return FragmentCategory::kComparative;
  if (name == "conditional") return FragmentCategory::kConditional;
  if (name == "counting") return FragmentCategory::kCounting;
  if (name == "negation") return FragmentCategory::kNegation;
  if (name == "quantifier") return FragmentCategory::kQuantifier;
  return std::nullopt;
}

std::vector<std::string> template_ids(FragmentCategory category) {
  switch (category) {
    case FragmentCategory::kNegation:
      return {"neg_only_e",  "neg_fact_e", "neg_only_c",
              "neg_fact_c",  "neg_plain_n", "neg_mixed_n"};
    case FragmentCategory::kBoolean:
      return {"bool_group_e",    "bool_member_e", "bool_group_c",
              "bool_member_c",   "bool_outsider_n", "bool_mixed_n"};
    case FragmentCategory::kQuantifier:
      return {"quant_only_e", "quant_onlyhug_e", "quant_visit_c",
              "quant_hug_c",  "quant_exists_n",  "quant_hug_n"};
    case FragmentCategory::kConditional:
      return {"cond_ponens_e", "cond_ponens_hug_e", "cond_ponens_c",
              "cond_ponens_hug_c", "cond_unfired_n", "cond_unfired_pos_n"};
    case FragmentCategory::kCounting:
      return {"count_within_e", "count_exact_e", "count_over_c",
              "count_under_c",  "count_open_n",  "count_exact_n"};
    case FragmentCategory::kComparative:
      return {"comp_trans_e", "comp_chain_e", "comp_trans_c",
              "comp_same_c",  "comp_peers_n", "comp_chain_n"};
  }
  return {};
}

namespace {

std::vector<std::string> sample_distinct(const std::vector<std::string>& pool,
                                         std::size_t k, Rng& rng) {
  if (pool.size() < k) {
    throw OracleError("entity pool too small: need " + std::to_string(k));
  }
  std::vector<std::string> out;
  std::unordered_set<std::size_t> used;
  while (out.size() < k) {
    std::size_t i = static_cast<std::size_t>(rng.below(pool.size()));
    if (used.insert(i).second) out.push_back(pool[i]);
  }
  return out;
}

FragmentInstance build_instance(FragmentCategory category,
                                const std::string& tid,
                                const std::vector<std::string>& names,
                                const std::vector<std::string>& places,
                                Rng& rng) {
  using S = Statement;
  FragmentInstance inst;
  inst.category = category;
  inst.template_id = tid;

  auto label_of = [](const std::string& id) {
    if (ends_with(id, "_e")) return Label::kEntailment;
    if (ends_with(id, "_c")) return Label::kContradiction;
    return Label::kNeutral;
  };
  inst.label = label_of(tid);

  if (tid == "neg_only_e" || tid == "neg_only_c" || tid == "neg_plain_n") {
    std::size_t k = 2 + rng.below(3);
    auto p = sample_distinct(names, k, rng);
    auto l = sample_distinct(places, k, rng);
    for (std::size_t i = 0; i < k; ++i) {
      inst.premises.push_back(tid == "neg_plain_n"
                                  ? S::visited(p[i], l[i])
                                  : S::only_visited(p[i], {l[i]}));
    }
    inst.hypothesis = tid == "neg_only_c" ? S::visited(p[0], l[1])
                                          : S::not_visited(p[0], l[1]);
  } else if (tid == "neg_fact_e") {
    auto p = sample_distinct(names, 2, rng);
    auto l = sample_distinct(places, 2, rng);
    inst.premises = {S::visited(p[1], l[1]), S::not_visited(p[0], l[0])};
    inst.hypothesis = S::not_visited(p[0], l[0]);
  } else if (tid == "neg_fact_c") {
    auto p = sample_distinct(names, 2, rng);
    auto l = sample_distinct(places, 2, rng);
    inst.premises = {S::visited(p[0], l[0]), S::visited(p[1], l[1])};
    inst.hypothesis = S::not_visited(p[0], l[0]);
  } else if (tid == "neg_mixed_n") {
    auto p = sample_distinct(names, 2, rng);
    auto l = sample_distinct(places, 2, rng);
    inst.premises = {S::only_visited(p[1], {l[1]}), S::visited(p[0], l[0])};
    inst.hypothesis = S::not_visited(p[0], l[1]);
  } else if (tid == "bool_group_e" || tid == "bool_member_e" ||
             tid == "bool_group_c" || tid == "bool_member_c") {
    auto p = sample_distinct(names, 3, rng);
    auto l = sample_distinct(places, 2, rng);
    for (const auto& name : p) {
      inst.premises.push_back(S::only_visited(name, {l[0]}));
    }
    const std::string& subj = p[static_cast<std::size_t>(rng.below(3))];
    if (tid == "bool_group_e") inst.hypothesis = S::not_visited(subj, l[1]);
    else if (tid == "bool_member_e") inst.hypothesis = S::visited(subj, l[0]);
    else if (tid == "bool_group_c") inst.hypothesis = S::not_visited(subj, l[0]);
    else inst.hypothesis = S::visited(subj, l[1]);
  } else if (tid == "bool_outsider_n" || tid == "bool_mixed_n") {
    auto p = sample_distinct(names, 3, rng);
    auto l = sample_distinct(places, 2, rng);
    inst.premises = {S::only_visited(p[0], {l[0]}),
                     S::only_visited(p[1], {l[0]})};
    inst.premises.push_back(tid == "bool_outsider_n"
                                ? S::visited(p[2], l[1])
                                : S::not_visited(p[2], l[1]));
    inst.hypothesis = S::visited(p[2], l[0]);
  } else if (tid == "quant_exists_n" || tid == "quant_hug_n") {
    auto p = sample_distinct(names, 2, rng);
    inst.premises = {S::exists_universal()};
    inst.hypothesis = tid == "quant_hug_n" ? S::hugged(p[0], p[1])
                                           : S::not_hugged(p[0], p[1]);
  } else if (tid == "quant_only_e") {
    auto p = sample_distinct(names, 1, rng);
    auto l = sample_distinct(places, 2, rng);
    inst.premises = {S::exists_universal(), S::only_visited(p[0], {l[0]})};
    inst.hypothesis = S::not_visited(p[0], l[1]);
  } else if (tid == "quant_onlyhug_e") {
    auto p = sample_distinct(names, 3, rng);
    inst.premises = {S::exists_universal(), S::only_hugged(p[0], {p[1]})};
    inst.hypothesis = S::not_hugged(p[0], p[2]);
  } else if (tid == "quant_visit_c") {
    auto p = sample_distinct(names, 1, rng);
    auto l = sample_distinct(places, 1, rng);
    inst.premises = {S::exists_universal(), S::visited(p[0], l[0])};
    inst.hypothesis = S::not_visited(p[0], l[0]);
  } else if (tid == "quant_hug_c") {
    auto p = sample_distinct(names, 2, rng);
    inst.premises = {S::exists_universal(), S::not_hugged(p[0], p[1])};
    inst.hypothesis = S::hugged(p[0], p[1]);
  } else if (tid == "cond_ponens_e" || tid == "cond_ponens_c") {
    auto p = sample_distinct(names, 2, rng);
    auto l = sample_distinct(places, 2, rng);
    inst.premises = {
        S::visited(p[0], l[0]),
        S::conditional(S::visited(p[0], l[0]), S::visited(p[1], l[1]))};
    inst.hypothesis = tid == "cond_ponens_e" ? S::visited(p[1], l[1])
                                             : S::not_visited(p[1], l[1]);
  } else if (tid == "cond_ponens_hug_e" || tid == "cond_ponens_hug_c") {
    auto p = sample_distinct(names, 3, rng);
    auto l = sample_distinct(places, 1, rng);
    bool neg = tid == "cond_ponens_hug_c";
    inst.premises = {
        S::not_visited(p[0], l[0]),
        S::conditional(S::not_visited(p[0], l[0]),
                       neg ? S::not_hugged(p[1], p[2])
                           : S::hugged(p[1], p[2]))};
    inst.hypothesis = S::hugged(p[1], p[2]);
  } else if (tid == "cond_unfired_n" || tid == "cond_unfired_pos_n") {
    auto p = sample_distinct(names, 2, rng);
    auto l = sample_distinct(places, 2, rng);
    inst.premises = {
        S::visited(p[0], l[0]),
        S::conditional(S::not_visited(p[0], l[0]), S::visited(p[1], l[1]))};
    inst.hypothesis = tid == "cond_unfired_pos_n"
                          ? S::visited(p[1], l[1])
                          : S::not_visited(p[1], l[1]);
  } else if (tid == "count_within_e" || tid == "count_exact_e" ||
             tid == "count_over_c" || tid == "count_under_c") {
    std::size_t k = 5 + rng.below(4);
    auto p = sample_distinct(names, k + 1, rng);
    std::vector<std::string> huggees(p.begin() + 1, p.end());
    inst.premises = {S::only_hugged(p[0], huggees)};
    if (tid == "count_within_e") {
      inst.hypothesis = S::count_compare(p[0], CountRelation::kFewerThan,
                                         k + 1 + rng.below(4));
    } else if (tid == "count_exact_e") {
      inst.hypothesis = S::count_compare(p[0], CountRelation::kExactly, k);
    } else if (tid == "count_over_c") {
      inst.hypothesis = S::count_compare(p[0], CountRelation::kMoreThan,
                                         k + 2 + rng.below(4));
    } else {
      inst.hypothesis = S::count_compare(p[0], CountRelation::kFewerThan,
                                         1 + rng.below(k));
    }
  } else if (tid == "count_open_n" || tid == "count_exact_n") {
    std::size_t k = 3 + rng.below(3);
    auto p = sample_distinct(names, k + 1, rng);
    for (std::size_t i = 1; i <= k; ++i) {
      inst.premises.push_back(S::hugged(p[0], p[i]));
    }
    inst.hypothesis =
        tid == "count_open_n"
            ? S::count_compare(p[0], CountRelation::kMoreThan,
                               k + 1 + rng.below(3))
            : S::count_compare(p[0], CountRelation::kExactly,
                               k + rng.below(3));
  } else if (tid == "comp_trans_e" || tid == "comp_trans_c" ||
             tid == "comp_peers_n") {
    std::size_t k = 2 + rng.below(2);
    auto p = sample_distinct(names, k + 2, rng);
    std::vector<std::string> elders(p.begin() + 1, p.begin() + 1 + k);
    inst.premises = {S::younger_than_all(p[0], elders)};
    if (tid == "comp_peers_n") {
      inst.hypothesis = S::age_rel(elders[0], AgeRelation::kOlder, elders[1]);
    } else {
      const std::string& twin = p[k + 1];
      inst.premises.push_back(S::age_rel(p[0], AgeRelation::kSame, twin));
      const std::string& elder = rng.pick(elders);
      inst.hypothesis = S::age_rel(
          twin,
          tid == "comp_trans_e" ? AgeRelation::kYounger : AgeRelation::kOlder,
          elder);
    }
  } else if (tid == "comp_chain_e" || tid == "comp_same_c" ||
             tid == "comp_chain_n") {
    auto p = sample_distinct(names, 3, rng);
    if (tid == "comp_chain_n") {
      inst.premises = {S::age_rel(p[0], AgeRelation::kYounger, p[1]),
                       S::age_rel(p[0], AgeRelation::kYounger, p[2])};
      inst.hypothesis = S::age_rel(p[1], AgeRelation::kSame, p[2]);
    } else {
      inst.premises = {S::age_rel(p[0], AgeRelation::kYounger, p[1]),
                       S::age_rel(p[1], AgeRelation::kYounger, p[2])};
      inst.hypothesis = tid == "comp_chain_e"
                            ? S::age_rel(p[2], AgeRelation::kOlder, p[0])
                            : S::age_rel(p[0], AgeRelation::kSame, p[2]);
    }
  } else {
    throw OracleError("unknown template: " + tid);
  }
  return inst;
}

}  // namespace

FragmentInstance make_instance(FragmentCategory category,
                               const std::string& template_id,
                               const std::vector<std::string>& names,
                               const std::vector<std::string>& places,
                               Rng& rng) {
  FragmentInstance inst =
      build_instance(category, template_id, names, places, rng);
  Label verified = oracle_label(inst.premises, inst.hypothesis);
  if (verified != inst.label) {
    throw std::logic_error("template " + template_id +
                           " disagrees with the oracle: expected " +
                           std::string(label_name(inst.label)) + ", got " +
                           std::string(label_name(verified)));
  }
  return inst;
}

namespace {

NLIPair instance_to_pair(const FragmentInstance& inst) {
  NLIPair pair;
  pair.premise = realize_premises(inst.premises);
  pair.hypothesis = realize(inst.hypothesis) + "。";
  pair.label = inst.label;
  pair.category = "fragment";
  pair.subcategory = std::string(category_name(inst.category));
  pair.provenance["template"] = inst.template_id;
  return pair;
}

}  // namespace

Dataset generate_fragment(FragmentCategory category,
                          const std::vector<std::string>& names,
                          const std::vector<std::string>& places,
                          const FragmentOptions& options) {
  std::vector<std::string> tids = template_ids(category);
  std::string cat(category_name(category));

  // One derived seed per output index keeps the result independent of the
  // thread count.
  auto generate_at = [&](std::size_t index, std::size_t retry) {
    std::string tag = cat + ":" + std::to_string(index);
    if (retry > 0) tag += ":" + std::to_string(retry);
    Rng rng(derive_seed(options.seed, tag));
    const std::string& tid = tids[index % tids.size()];
    return instance_to_pair(make_instance(category, tid, names, places, rng));
  };

  std::vector<NLIPair> pairs(options.count);
  unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || options.count < 2) {
    for (std::size_t i = 0; i < options.count; ++i) pairs[i] = generate_at(i, 0);
  } else {
    std::vector<std::thread> workers;
    std::size_t chunk = (options.count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(options.count, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([&, begin, end] {
        for (std::size_t i = begin; i < end; ++i) pairs[i] = generate_at(i, 0);
      });
    }
    for (auto& w : workers) w.join();
  }

  // Serial uniqueness pass: duplicates are regenerated with a retry-tagged
  // seed, so the final output is still deterministic.
  Dataset out;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < options.count; ++i) {
    NLIPair pair = pairs[i];
    std::size_t retry = 0;
    while (!seen.insert(pair.premise + '\x1f' + pair.hypothesis).second) {
      ++retry;
      if (retry > 1000) {
        throw OracleError("cannot generate " + std::to_string(options.count) +
                          " distinct pairs for " + cat);
      }
      pair = generate_at(i, retry);
    }
    pair.id = make_id("fragment", cat, i + 1);
    out.pairs.push_back(std::move(pair));
  }
  out.meta["generator"] = "gen-fragments";
  out.meta["category"] = cat;
  out.meta["seed"] = std::to_string(options.seed);
  out.meta["count"] = std::to_string(options.count);
  return out;
}

}  // namespace fragments
}  // namespace nliforge
