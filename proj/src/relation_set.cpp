// Copyright 2026 The qstr authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qstr/relation_set.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace qstr {

RelationSet make_relation_set(const Calculus& calc,
                              std::vector<Relation> relations) {
  RelationSet set;
  set.calculus_id = calc.id();
  for (const auto& r : relations)
    if (r.calculus_id() != calc.id()) throw CalculusMismatch();
  set.relations = std::move(relations);
  return set;
}

std::string serialize_relation(const Calculus& calc, const Relation& r) {
  if (r.calculus_id() != calc.id()) throw CalculusMismatch();
  std::vector<std::string> names;
  r.for_each_atom([&](AtomId a) { names.push_back(calc.atom_name(a)); });
  std::sort(names.begin(), names.end());
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ' ';
    out += names[i];
  }
  return out;
}

void canonicalize(const Calculus& calc, RelationSet& set) {
  std::vector<std::pair<std::string, Relation>> keyed;
  keyed.reserve(set.relations.size());
  for (const auto& r : set.relations)
    keyed.emplace_back(serialize_relation(calc, r), r);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    int ca = a.second.count(), cb = b.second.count();
    if (ca != cb) return ca < cb;
    return a.first < b.first;
  });
  set.relations.clear();
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i && keyed[i].second == keyed[i - 1].second) continue;
    set.relations.push_back(keyed[i].second);
  }
}

bool set_contains(const RelationSet& set, const Relation& r) {
  for (const auto& m : set.relations)
    if (m == r) return true;
  return false;
}

bool same_relations(const RelationSet& a, const RelationSet& b) {
  if (a.calculus_id != b.calculus_id) return false;
  std::unordered_set<Relation, RelationHash> in_a(a.relations.begin(),
                                                  a.relations.end());
  std::unordered_set<Relation, RelationHash> in_b(b.relations.begin(),
                                                  b.relations.end());
  return in_a == in_b;
}

std::string analyze_subalgebra(const Calculus& calc, RelationSet& set) {
  if (set.calculus_id != calc.id()) throw CalculusMismatch();
  std::unordered_set<Relation, RelationHash> members(set.relations.begin(),
                                                     set.relations.end());
  set.contains_all_atoms = true;
  for (AtomId a = 0; a < calc.atom_count(); ++a) {
    if (!members.count(calc.atom_relation(a))) {
      set.contains_all_atoms = false;
      break;
    }
  }
  set.is_closed = false;
  for (const auto& r : set.relations) {
    if (r.empty()) return "contains the empty relation";
    if (!members.count(calc.converse(r)))
      return "converse of '" + serialize_relation(calc, r) + "' missing";
  }
  for (const auto& r : set.relations) {
    for (const auto& s : set.relations) {
      if (!members.count(calc.compose(r, s)))
        return "composition of '" + serialize_relation(calc, r) + "' and '" +
               serialize_relation(calc, s) + "' missing";
      Relation meet = r & s;
      if (!meet.empty() && !members.count(meet))
        return "intersection of '" + serialize_relation(calc, r) + "' and '" +
               serialize_relation(calc, s) + "' missing";
    }
  }
  set.is_closed = true;
  if (!set.contains_all_atoms) return "does not contain every atom";
  return "";
}

std::string serialize_relation_set(const Calculus& calc,
                                   const RelationSet& set) {
  RelationSet copy = set;
  canonicalize(calc, copy);
  std::string out;
  for (const auto& r : copy.relations) {
    out += serialize_relation(calc, r);
    out += '\n';
  }
  return out;
}

Relation parse_relation_names(const Calculus& calc, const std::string& text) {
  Relation r = calc.empty_relation();
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) r.set(calc.atom_id(tok));
  return r;
}

RelationSet parse_relation_set(const Calculus& calc, const std::string& text) {
  RelationSet set;
  set.calculus_id = calc.id();
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) continue;
    set.relations.push_back(parse_relation_names(calc, line));
  }
  return set;
}

}  // namespace qstr
