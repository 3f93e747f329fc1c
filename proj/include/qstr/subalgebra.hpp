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

#ifndef QSTR_SUBALGEBRA_HPP_
#define QSTR_SUBALGEBRA_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "qstr/calculus.hpp"
#include "qstr/relation_set.hpp"

namespace qstr {

// Three members with nonempty pairwise but empty triple intersection.
struct HellyWitness {
  Relation r, s, t;
};

struct DistributivityWitness {
  Relation r, s, t;
  bool left_side = true;  // r over (s meet t) vs (s meet t) over r
  Relation lhs, rhs;
};

// 4096 unless the QSTR_CLOSURE_CAP environment variable overrides it.
std::size_t default_closure_cap();

struct ClosureOutcome {
  enum class Status { kCompleted, kHellyViolation, kCapExceeded };
  Status status = Status::kCompleted;
  RelationSet set;  // canonical; only meaningful when completed
  std::optional<HellyWitness> witness;
  std::size_t size_at_stop = 0;
};

// Least set containing the seed and every atom that is closed under
// converse, weak composition and nonempty intersection. With
// fail_fast_helly the run aborts on the first triple violating the Helly
// property, which decides distributivity early for non-candidates.
ClosureOutcome close_set(const Calculus& calc,
                         const std::vector<Relation>& seed, std::size_t cap,
                         bool fail_fast_helly);

// close_set without the fail-fast; throws CapExceeded. cap 0 means default.
RelationSet closure(const Calculus& calc, const RelationSet& seed,
                    std::size_t cap = 0);

// Helly property: every pairwise intersecting triple has a common atom.
bool is_helly(const Calculus& calc, const RelationSet& set,
              HellyWitness* witness = nullptr);

// Definitional check that weak composition distributes over nonempty
// intersection on both sides. Requires a subalgebra (closed and containing
// every atom), otherwise throws NotASubalgebra.
bool is_distributive(const Calculus& calc, const RelationSet& set,
                     DistributivityWitness* witness = nullptr);

struct CrossCheck {
  bool helly = false;
  bool distributive = false;
  bool agree() const { return helly == distributive; }
};

// Runs both characterisations independently and returns whether they
// agree; they must agree on subalgebras.
bool helly_equals_distributive_check(const Calculus& calc,
                                     const RelationSet& set,
                                     CrossCheck* detail = nullptr);

struct EnumerationOptions {
  std::size_t cap = 0;          // 0 = default_closure_cap()
  bool cross_validate = false;  // audit every completed closure
  std::size_t helly_samples = 100000;  // product-path random triples
  std::uint64_t sample_seed = 20260816;
};

struct EnumerationResult {
  RelationSet bhat;                  // closure of the atoms
  std::vector<RelationSet> maximal;  // convex-style set first
  std::size_t candidates_examined = 0;
  std::size_t d_members = 0;
  std::size_t closures_completed = 0;
  std::size_t cross_checks = 0;
  std::size_t cross_agreements = 0;
};

// Maximal distributive subalgebras. Small calculi run the candidate /
// d-relation two-clique search; the point-pair product runs the seed
// comparison procedure; the interval-pair product is assembled from the
// factor results and revalidated by sampling.
EnumerationResult enumerate_maximal_distributive(
    const Calculus& calc, const EnumerationOptions& opts = {});

// Componentwise products {A x B}; the factors must match the product's
// construction order.
RelationSet product_subalgebra(const Calculus& product, const Calculus& left,
                               const Calculus& right, const RelationSet& ls,
                               const RelationSet& rs);

}  // namespace qstr

#endif  // QSTR_SUBALGEBRA_HPP_
