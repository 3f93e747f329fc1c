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

#include "qstr/graph.hpp"

#include <algorithm>

#include "qstr/errors.hpp"

namespace qstr {

namespace {

// Adjacency matrix of the (validated) input graph.
std::vector<char> adjacency(const ConstraintGraph& g) {
  const int n = g.n;
  if (n < 0) throw Error("graph has a negative vertex count");
  std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
  for (auto [i, j] : g.edges) {
    if (i < 0 || i >= n) throw IndexOutOfRange(i, n);
    if (j < 0 || j >= n) throw IndexOutOfRange(j, n);
    if (i == j) throw Error("graph edges must join distinct vertices");
    adj[static_cast<std::size_t>(i) * n + j] = 1;
    adj[static_cast<std::size_t>(j) * n + i] = 1;
  }
  return adj;
}

}  // namespace

ConstraintGraph constraint_graph(const Qcn& net) {
  ConstraintGraph g;
  g.n = net.size();
  const Relation star = net.calculus().universal();
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (net.at(i, j) != star) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

ChordalStructure triangulate(const ConstraintGraph& g, Heuristic heuristic) {
  const int n = g.n;
  std::vector<char> adj = adjacency(g);
  std::vector<char> alive(n, 1);
  auto at = [&](int i, int j) -> char& {
    return adj[static_cast<std::size_t>(i) * n + j];
  };

  ChordalStructure cs;
  cs.n = n;
  cs.peo.reserve(n);

  for (int round = 0; round < n; ++round) {
    // Cost of eliminating v now: missing edges among its alive neighbours
    // (min-fill) or its alive degree (min-degree). Smallest id wins ties.
    int best = -1;
    long long best_cost = 0;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      std::vector<int> nbrs;
      for (int w = 0; w < n; ++w) {
        if (w != v && alive[w] && at(v, w)) nbrs.push_back(w);
      }
      long long cost = 0;
      if (heuristic == Heuristic::kMinDegree) {
        cost = static_cast<long long>(nbrs.size());
      } else {
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
          for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
            if (!at(nbrs[a], nbrs[b])) ++cost;
          }
        }
      }
      if (best < 0 || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }

    cs.peo.push_back(best);
    std::vector<int> nbrs;
    for (int w = 0; w < n; ++w) {
      if (w != best && alive[w] && at(best, w)) nbrs.push_back(w);
    }
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
        if (!at(nbrs[a], nbrs[b])) {
          at(nbrs[a], nbrs[b]) = at(nbrs[b], nbrs[a]) = 1;
          ++cs.fill_edges;
        }
      }
    }
    alive[best] = 0;
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (at(i, j)) cs.edges.emplace_back(i, j);
    }
  }
  for (auto [i, j] : cs.edges) {
    for (int k = j + 1; k < n; ++k) {
      if (at(i, k) && at(j, k)) cs.triangles.push_back({i, j, k});
    }
  }

  if (!verify_chordal(cs.edges, cs.peo))
    throw Error("triangulation produced a non-chordal graph");
  return cs;
}

bool verify_chordal(const std::vector<std::pair<int, int>>& edges,
                    const std::vector<int>& peo) {
  const int n = static_cast<int>(peo.size());
  std::vector<int> pos(n, -1);
  for (int t = 0; t < n; ++t) {
    int v = peo[t];
    if (v < 0 || v >= n || pos[v] != -1) return false;
    pos[v] = t;
  }

  ConstraintGraph g;
  g.n = n;
  for (auto [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n || i == j) return false;
    g.edges.emplace_back(i, j);
  }
  std::vector<char> adj = adjacency(g);
  auto at = [&](int i, int j) {
    return adj[static_cast<std::size_t>(i) * n + j];
  };

  for (int v = 0; v < n; ++v) {
    std::vector<int> later;
    for (int w = 0; w < n; ++w) {
      if (w != v && at(v, w) && pos[w] > pos[v]) later.push_back(w);
    }
    for (std::size_t a = 0; a < later.size(); ++a) {
      for (std::size_t b = a + 1; b < later.size(); ++b) {
        if (!at(later[a], later[b])) return false;
      }
    }
  }
  return true;
}

}  // namespace qstr
