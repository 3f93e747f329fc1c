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

#ifndef QSTR_GENERATE_HPP_
#define QSTR_GENERATE_HPP_

#include <cstdint>

#include "qstr/qcn.hpp"
#include "qstr/relation_set.hpp"

namespace qstr {

// Random network: each pair (i < j, ascending) is constrained with
// probability `density` by a label drawn uniformly from the non-universal
// members of `pool`. Same seed, same network, on any platform; the
// generator never consults platform distributions.
Qcn random_qcn(const Calculus& calc, int n, double density,
               const RelationSet& pool, std::uint64_t seed);

}  // namespace qstr

#endif  // QSTR_GENERATE_HPP_
