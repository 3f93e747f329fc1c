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

#ifndef QSTR_REALIZE_HPP_
#define QSTR_REALIZE_HPP_

#include <vector>

#include "qstr/qcn.hpp"

namespace qstr {

// Concrete interpretation of a scenario, one row of integers per variable:
// a point (x) for the point calculus, endpoints (lo, hi) for intervals, a
// coordinate pair (x, y) for compass directions, and a box
// (xlo, xhi, ylo, yhi) for rectangles.
struct Realization {
  std::vector<std::vector<long long>> coords;
};

// Maps an atomic path-consistent network onto integer coordinates and
// re-classifies every pair to confirm the constraints hold. Region
// calculi have no point-valued interpretation here.
Realization realize_solution(const Qcn& scenario);

}  // namespace qstr

#endif  // QSTR_REALIZE_HPP_
