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

#ifndef QSTR_CALCULUS_HPP_
#define QSTR_CALCULUS_HPP_

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qstr/errors.hpp"
#include "qstr/relation.hpp"

namespace qstr {

// Raw ingredients for a Calculus. Composition entries are atom id lists so
// that tables can be assembled before the calculus (and its relation id)
// exists.
struct CalculusData {
  std::string name;
  std::vector<std::string> atom_names;
  // Extra accepted spellings, e.g. the compass names of the product atoms.
  std::vector<std::pair<std::string, std::string>> aliases;
  std::vector<AtomId> converse;
  // composition[a * n + b] = atoms of a weak-composed-with b.
  std::vector<std::vector<AtomId>> composition;
  AtomId identity = -1;
  std::optional<std::vector<int>> dimension;
  // Cover edges of the conceptual neighbourhood order, smaller -> larger.
  std::optional<std::vector<std::pair<AtomId, AtomId>>> cng_cover;
};

// Immutable atom tables of one qualitative calculus. Construction validates
// shapes, converse involution, the identity law and acyclicity of the
// neighbourhood order; the heavier axioms (associativity, cycle law) are
// checked by verify_relation_algebra.
class Calculus {
 public:
  explicit Calculus(CalculusData data);

  Calculus(const Calculus&) = delete;
  Calculus& operator=(const Calculus&) = delete;

  const std::string& name() const { return name_; }
  std::uint32_t id() const { return id_; }
  int atom_count() const { return n_; }

  const std::string& atom_name(AtomId a) const {
    check_atom(a);
    return atom_names_[a];
  }
  // Accepts primary names and aliases; throws UnknownAtomName.
  AtomId atom_id(const std::string& name) const;

  AtomId identity_atom() const { return identity_; }
  AtomId converse_atom(AtomId a) const {
    check_atom(a);
    return converse_[a];
  }

  Relation empty_relation() const { return Relation(id_); }
  Relation universal() const { return universal_; }
  Relation atom_relation(AtomId a) const {
    check_atom(a);
    Relation r(id_);
    r.set(a);
    return r;
  }
  Relation identity_relation() const { return atom_relation(identity_); }

  // Weak composition of atoms, straight table lookup.
  const Relation& compose_atoms(AtomId a, AtomId b) const {
    check_atom(a);
    check_atom(b);
    return comp_[static_cast<std::size_t>(a) * n_ + b];
  }

  // Weak composition lifted to relations: union over atom pairs.
  Relation compose(const Relation& r, const Relation& s) const;

  Relation converse(const Relation& r) const;

  bool has_dimension_map() const { return dims_.has_value(); }
  int atom_dimension(AtomId a) const;
  // Max atom dimension; throws EmptyRelation / NoDimensionMap.
  int dimension(const Relation& r) const;

  bool has_cng() const { return cng_cover_.has_value(); }
  const std::vector<std::pair<AtomId, AtomId>>& cng_cover() const;
  // Reflexive-transitive reachability along cover edges.
  const Relation& up_set(AtomId a) const;
  const Relation& down_set(AtomId a) const;

 private:
  void check_atom(AtomId a) const {
    if (a < 0 || a >= n_) throw InvalidAtom(a);
  }
  void validate() const;

  std::string name_;
  std::uint32_t id_;
  int n_;
  std::vector<std::string> atom_names_;
  std::unordered_map<std::string, AtomId> name_index_;
  std::vector<AtomId> converse_;
  std::vector<Relation> comp_;
  AtomId identity_;
  Relation universal_;
  std::optional<std::vector<int>> dims_;
  std::optional<std::vector<std::pair<AtomId, AtomId>>> cng_cover_;
  std::vector<Relation> up_;
  std::vector<Relation> down_;
};

}  // namespace qstr

#endif  // QSTR_CALCULUS_HPP_
