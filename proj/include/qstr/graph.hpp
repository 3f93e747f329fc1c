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

#ifndef QSTR_GRAPH_HPP_
#define QSTR_GRAPH_HPP_

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "qstr/qcn.hpp"

namespace qstr {

// Undirected graph over network variables, no self-loops; edges stored as
// (i < j), sorted and unique.
struct ConstraintGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// Edges are exactly the pairs carrying a non-universal constraint.
ConstraintGraph constraint_graph(const Qcn& net);

// A chordal supergraph of some constraint graph together with a perfect
// elimination order and its full triangle list.
struct ChordalStructure {
  int n = 0;
  std::vector<std::pair<int, int>> edges;     // (i < j), sorted, unique
  std::vector<int> peo;                       // elimination order, front first
  std::vector<std::array<int, 3>> triangles;  // i < j < k, all edges present
  std::size_t fill_edges = 0;                 // edges added on top of the input
};

enum class Heuristic { kMinFill, kMinDegree };

// Chordal completion by simulated elimination: repeatedly remove the vertex
// the heuristic prefers (ties to the smallest id) and connect its remaining
// neighbours. Already chordal graphs come back unchanged.
ChordalStructure triangulate(const ConstraintGraph& g,
                             Heuristic heuristic = Heuristic::kMinFill);

// True iff eliminating vertices in peo order leaves every vertex with a
// clique of later neighbours. peo must be a permutation of 0..n-1, with n
// inferred from its length.
bool verify_chordal(const std::vector<std::pair<int, int>>& edges,
                    const std::vector<int>& peo);

}  // namespace qstr

#endif  // QSTR_GRAPH_HPP_
