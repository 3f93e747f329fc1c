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

#ifndef QSTR_CALCULI_HPP_
#define QSTR_CALCULI_HPP_

#include <memory>
#include <string>

#include "qstr/calculus.hpp"
#include "qstr/relation_set.hpp"

namespace qstr {

// Builders for the six supported calculi. The point and interval tables are
// derived from model-enumeration oracles, never transcribed; the region
// table is embedded literal data gated on the axiom audit; the coarse
// region calculus is projected from it block-wise; the two product calculi
// are assembled componentwise.
std::unique_ptr<Calculus> build_pa();
std::unique_ptr<Calculus> build_ia();
std::unique_ptr<Calculus> build_rcc8();
std::unique_ptr<Calculus> build_rcc5(const Calculus& rcc8);
std::unique_ptr<Calculus> build_product(const Calculus& left,
                                        const Calculus& right,
                                        const std::string& name);

// Shared instances, built once: PA, IA, RCC5, RCC8, CRA, RA
// (case-insensitive). Throws UnknownCalculus.
const Calculus& calculus_by_name(const std::string& name);

// Atom of a point pair under the order on the line.
AtomId pa_classify(long long x, long long y);
// Atom of an interval pair from its four endpoint comparisons; requires
// xm < xp and ym < yp.
AtomId ia_classify(long long xm, long long xp, long long ym, long long yp);

// Model-enumeration oracles: compose two atoms by enumerating all endpoint
// orderings of three points (resp. intervals) and collecting the relations
// realised between the outer pair. Independent re-derivation of the table
// entries.
Relation pa_atom_composition_oracle(const Calculus& pa, AtomId a, AtomId b);
Relation ia_atom_composition_oracle(const Calculus& ia, AtomId a, AtomId b);

// Product atom packing: the atom of (a1, a2) in a row-major product table.
inline AtomId product_pack(AtomId a1, AtomId a2, int right_atom_count) {
  return a1 * right_atom_count + a2;
}
inline std::pair<AtomId, AtomId> product_unpack(AtomId a,
                                                int right_atom_count) {
  return {a / right_atom_count, a % right_atom_count};
}

// All nonempty order intervals of the conceptual neighbourhood order.
RelationSet convex_relations(const Calculus& calc);

// Atoms lying between lo and hi in the neighbourhood order.
Relation interval_relation(const Calculus& calc, AtomId lo, AtomId hi);

// Smallest convex relation containing r (r nonempty).
Relation convex_hull(const Calculus& calc, const Relation& r);

bool is_convex(const Calculus& calc, const Relation& r);

// True iff the convex hull adds only atoms of strictly smaller dimension.
bool is_preconvex(const Calculus& calc, const Relation& r);

}  // namespace qstr

#endif  // QSTR_CALCULI_HPP_
