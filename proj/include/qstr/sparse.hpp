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

#ifndef QSTR_SPARSE_HPP_
#define QSTR_SPARSE_HPP_

#include <vector>

#include "qstr/graph.hpp"
#include "qstr/qcn.hpp"
#include "qstr/solve.hpp"

namespace qstr {

// Path consistency restricted to the triangles of a chordal cover. Only
// entries on cover edges are ever touched. On distributive-subalgebra
// networks the fixpoint values on those edges coincide with full path
// consistency; on arbitrary networks they may stay looser.
SolveOutcome enforce_ppc(const Qcn& input, const ChordalStructure& cs);

// Snapshot of one eliminated variable: the neighbours it saw and the
// constraints towards them at removal time.
struct EliminationRecord {
  int vertex = -1;
  std::vector<int> neighbours;        // ascending ids, alive at record time
  std::vector<Relation> constraints;  // parallel to neighbours, R_{vertex,w}
};

struct EliminationResult {
  SolveOutcome outcome;
  std::vector<EliminationRecord> stack;  // in elimination order
  std::vector<int> residual;             // vertices never eliminated
};

// Eliminates variables down to a residual of at most two. Before removing
// v, every neighbour pair is tightened through v, which is what licenses
// dropping v at all; an empty intersection decides INCONSISTENT. The
// verdict matches full path consistency when the entries come from a
// distributive subalgebra; elsewhere it is only a relaxation. The first
// overload picks the minimum-degree vertex of the evolving graph; the
// second follows `order`, which must reach a residual of at most two.
EliminationResult eliminate_variables(const Qcn& input);
EliminationResult eliminate_variables(const Qcn& input,
                                      const std::vector<int>& order);

// Lowest-atom scenario of the residual network, embedded in a full-size
// network whose other entries stay universal. Requires a consistent run.
Qcn residual_scenario(const EliminationResult& elim);

// Replays the elimination stack backwards on top of `base`, placing each
// vertex by the same intersection-of-compositions construction used for
// scenario extraction, against its recorded constraints and the scenario
// built so far. The result solves the pre-elimination network. Wipeout
// means the entries were not drawn from a distributive subalgebra.
Qcn reconstruct_scenario(const EliminationResult& elim, const Qcn& base);

}  // namespace qstr

#endif  // QSTR_SPARSE_HPP_
