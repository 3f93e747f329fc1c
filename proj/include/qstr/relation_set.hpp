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

#ifndef QSTR_RELATION_SET_HPP_
#define QSTR_RELATION_SET_HPP_

#include <string>
#include <vector>

#include "qstr/calculus.hpp"
#include "qstr/relation.hpp"

namespace qstr {

// A finite family of relations of one calculus. Algorithms that need fast
// membership build their own indices; this is plain data plus two computed
// flags.
struct RelationSet {
  std::uint32_t calculus_id = 0;
  std::vector<Relation> relations;
  bool is_closed = false;
  bool contains_all_atoms = false;

  std::size_t size() const { return relations.size(); }
};

RelationSet make_relation_set(const Calculus& calc,
                              std::vector<Relation> relations);

// Sorts by (cardinality, serialized form) and removes duplicates.
void canonicalize(const Calculus& calc, RelationSet& set);

bool set_contains(const RelationSet& set, const Relation& r);

bool same_relations(const RelationSet& a, const RelationSet& b);

// Checks closure under converse, weak composition and nonempty intersection
// plus atom membership, and updates the flags. Returns a human-readable
// reason when the set is not a subalgebra, empty string otherwise.
std::string analyze_subalgebra(const Calculus& calc, RelationSet& set);

// Atom names in lexicographic order, space separated. Empty relation gives
// the empty string.
std::string serialize_relation(const Calculus& calc, const Relation& r);

// One relation per line in canonical order, each line lex-sorted names.
std::string serialize_relation_set(const Calculus& calc,
                                   const RelationSet& set);

// Whitespace-separated atom names; aliases accepted.
Relation parse_relation_names(const Calculus& calc, const std::string& text);

// Inverse of serialize_relation_set; '#' starts a comment, blank lines are
// skipped.
RelationSet parse_relation_set(const Calculus& calc, const std::string& text);

}  // namespace qstr

#endif  // QSTR_RELATION_SET_HPP_
