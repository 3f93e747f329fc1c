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

#include "qstr/calculus.hpp"

#include <atomic>

namespace qstr {

namespace {
std::uint32_t next_calculus_id() {
  static std::atomic<std::uint32_t> counter{1};
  return counter.fetch_add(1);
}
}  // namespace

Calculus::Calculus(CalculusData data)
    : name_(std::move(data.name)),
      id_(next_calculus_id()),
      n_(static_cast<int>(data.atom_names.size())),
      atom_names_(std::move(data.atom_names)),
      converse_(std::move(data.converse)),
      identity_(data.identity),
      universal_(id_),
      dims_(std::move(data.dimension)),
      cng_cover_(std::move(data.cng_cover)) {
  if (n_ <= 0 || n_ > kMaxAtoms)
    throw Error("calculus " + name_ + ": unsupported atom count");
  for (AtomId a = 0; a < n_; ++a) {
    if (!name_index_.emplace(atom_names_[a], a).second)
      throw Error("calculus " + name_ + ": duplicate atom name " +
                  atom_names_[a]);
    universal_.set(a);
  }
  for (const auto& [alias, primary] : data.aliases) {
    auto it = name_index_.find(primary);
    if (it == name_index_.end()) throw UnknownAtomName(primary);
    if (!name_index_.emplace(alias, it->second).second)
      throw Error("calculus " + name_ + ": duplicate alias " + alias);
  }

  if (data.composition.size() != static_cast<std::size_t>(n_) * n_)
    throw Error("calculus " + name_ + ": composition table has wrong shape");
  comp_.reserve(data.composition.size());
  for (const auto& atoms : data.composition) {
    Relation r(id_);
    for (AtomId a : atoms) {
      if (a < 0 || a >= n_) throw InvalidAtom(a);
      r.set(a);
    }
    comp_.push_back(r);
  }

  validate();

  if (cng_cover_) {
    // Reflexive-transitive closure of the cover edges, fixpoint iteration.
    up_.assign(n_, empty_relation());
    down_.assign(n_, empty_relation());
    for (AtomId a = 0; a < n_; ++a) up_[a].set(a);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [lo, hi] : *cng_cover_) {
        Relation merged = up_[lo] | up_[hi];
        if (merged != up_[lo]) {
          up_[lo] = merged;
          changed = true;
        }
      }
    }
    for (AtomId a = 0; a < n_; ++a)
      for (AtomId b = 0; b < n_; ++b)
        if (up_[b].test(a)) down_[a].set(b);
    for (AtomId a = 0; a < n_; ++a)
      if ((up_[a] & down_[a]) != atom_relation(a))
        throw Error("calculus " + name_ + ": neighbourhood order has a cycle");
  }
}

void Calculus::validate() const {
  if (converse_.size() != static_cast<std::size_t>(n_))
    throw Error("calculus " + name_ + ": converse table has wrong shape");
  for (AtomId a = 0; a < n_; ++a) {
    AtomId c = converse_[a];
    if (c < 0 || c >= n_) throw InvalidAtom(c);
    if (converse_[c] != a)
      throw Error("calculus " + name_ + ": converse is not an involution at " +
                  atom_names_[a]);
  }
  if (identity_ < 0 || identity_ >= n_)
    throw Error("calculus " + name_ + ": missing identity atom");
  if (converse_[identity_] != identity_)
    throw Error("calculus " + name_ + ": identity atom is not self-converse");
  for (AtomId a = 0; a < n_; ++a) {
    if (compose_atoms(identity_, a) != atom_relation(a) ||
        compose_atoms(a, identity_) != atom_relation(a))
      throw Error("calculus " + name_ + ": identity law fails at " +
                  atom_names_[a]);
  }
  if (dims_ && dims_->size() != static_cast<std::size_t>(n_))
    throw Error("calculus " + name_ + ": dimension map has wrong shape");
  if (cng_cover_) {
    for (const auto& [lo, hi] : *cng_cover_)
      if (lo < 0 || lo >= n_ || hi < 0 || hi >= n_) throw InvalidAtom(lo);
  }
}

AtomId Calculus::atom_id(const std::string& name) const {
  auto it = name_index_.find(name);
  if (it == name_index_.end()) throw UnknownAtomName(name);
  return it->second;
}

Relation Calculus::compose(const Relation& r, const Relation& s) const {
  if (r.calculus_id() != id_ || s.calculus_id() != id_)
    throw CalculusMismatch();
  Relation out(id_);
  r.for_each_atom([&](AtomId a) {
    const Relation* row = &comp_[static_cast<std::size_t>(a) * n_];
    s.for_each_atom([&](AtomId b) { out |= row[b]; });
  });
  return out;
}

Relation Calculus::converse(const Relation& r) const {
  if (r.calculus_id() != id_) throw CalculusMismatch();
  Relation out(id_);
  r.for_each_atom([&](AtomId a) { out.set(converse_[a]); });
  return out;
}

int Calculus::atom_dimension(AtomId a) const {
  check_atom(a);
  if (!dims_) throw NoDimensionMap(name_);
  return (*dims_)[a];
}

int Calculus::dimension(const Relation& r) const {
  if (r.calculus_id() != id_) throw CalculusMismatch();
  if (!dims_) throw NoDimensionMap(name_);
  if (r.empty()) throw EmptyRelation("dimension");
  int d = 0;
  r.for_each_atom([&](AtomId a) {
    if ((*dims_)[a] > d) d = (*dims_)[a];
  });
  return d;
}

const std::vector<std::pair<AtomId, AtomId>>& Calculus::cng_cover() const {
  if (!cng_cover_) throw NoCngOrder(name_);
  return *cng_cover_;
}

const Relation& Calculus::up_set(AtomId a) const {
  if (!cng_cover_) throw NoCngOrder(name_);
  check_atom(a);
  return up_[a];
}

const Relation& Calculus::down_set(AtomId a) const {
  if (!cng_cover_) throw NoCngOrder(name_);
  check_atom(a);
  return down_[a];
}

}  // namespace qstr
