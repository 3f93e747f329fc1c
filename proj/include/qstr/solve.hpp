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

#ifndef QSTR_SOLVE_HPP_
#define QSTR_SOLVE_HPP_

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "qstr/qcn.hpp"
#include "qstr/relation_set.hpp"

namespace qstr {

enum class Verdict { kConsistent, kInconsistent };

struct SolveStats {
  std::uint64_t refinements = 0;  // entries actually shrunk
  std::uint64_t queue_ops = 0;    // worklist pops
  double wall_ms = 0.0;
};

struct SolveOutcome {
  Verdict verdict = Verdict::kInconsistent;
  std::optional<Qcn> refined;   // fixpoint network, consistent runs only
  std::optional<Qcn> scenario;  // atomic solution when one was built
  SolveStats stats;
};

// Path-consistency closure by pairwise refinement to a fixpoint. The
// worklist pops the smallest (i, j) pair first, so runs are deterministic;
// the fixpoint itself is order-independent.
SolveOutcome enforce_pc(const Qcn& input);

// True iff every entry is nonempty and R_ij is within R_ik composed with
// R_kj for all triples.
bool is_path_consistent(const Qcn& net);

// Depth-first search over atomic refinements: repeatedly enforce path
// consistency, split the lowest unresolved pair on its atoms in ascending
// order, and backtrack on wipeout. Produces a scenario when consistent.
SolveOutcome solve_backtrack(const Qcn& input);

enum class EnumerationOrder { kForward, kReverse };

// All atomic path-consistent refinements of the input, in deterministic
// order, at most `limit` of them. The estimated search space (product of
// entry cardinalities) must not exceed `guard`.
std::vector<Qcn> enumerate_scenarios(const Qcn& input,
                                     std::size_t limit = SIZE_MAX,
                                     EnumerationOrder order = EnumerationOrder::kForward,
                                     double guard = 1e7);

struct MinimalityReport {
  bool minimal = false;
  // Atoms never realized by any scenario, as (i, j, atom) with i < j.
  std::vector<std::tuple<int, int, AtomId>> infeasible;
};

// A network is minimal when every atom of every off-diagonal entry appears
// in some scenario. Exhaustive, so only sensible at enumeration scale.
MinimalityReport check_minimal(const Qcn& net);

// Builds a scenario from a path-consistent network without search: each new
// variable is placed by intersecting compositions through the already
// placed ones, then committing the lowest feasible atom pair by pair. Never
// backtracks; wipeout means the entries were not drawn from a distributive
// pool. When `pool` is given, membership of every entry is checked first.
Qcn extract_scenario_distributive(const Qcn& input,
                                  const RelationSet* pool = nullptr);

}  // namespace qstr

#endif  // QSTR_SOLVE_HPP_
