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

#ifndef QSTR_ALGEBRA_HPP_
#define QSTR_ALGEBRA_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qstr/calculus.hpp"
#include "qstr/relation.hpp"

namespace qstr {

enum class SetOp { kUnion, kIntersection, kDifference, kComplement };

// Boolean set operation with full calculus checking; kComplement ignores b.
Relation set_op(const Calculus& calc, SetOp op, const Relation& a,
                const Relation& b);

// True iff the three emptiness conditions of the rotation identity agree:
// (R composed S) meets T, (conv R composed T) meets S, (T composed conv S)
// meets R are either all true or all false.
bool cycle_law_holds(const Calculus& calc, const Relation& r,
                     const Relation& s, const Relation& t);

struct ValidationReport {
  struct Check {
    std::string name;
    bool passed = false;
    std::uint64_t cases = 0;
    std::string detail;  // first counterexample when failed
  };
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

// Exhaustive atom-level audit of the table axioms: identity law, converse
// involution, converse-composition symmetry, associativity and the cycle
// law. Atom level suffices because every operation distributes over union.
ValidationReport verify_relation_algebra(const Calculus& calc);

}  // namespace qstr

#endif  // QSTR_ALGEBRA_HPP_
