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

#include "qstr/realize.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qstr/calculi.hpp"
#include "qstr/errors.hpp"
#include "qstr/solve.hpp"

namespace qstr {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Longest-path ranks over strict edges u -> v (u smaller). Only
// representative nodes are queried by the callers; a cycle means the input
// order was contradictory, which path consistency is supposed to exclude.
std::vector<long long> order_ranks(int nodes,
                                   const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> succ(nodes);
  std::vector<int> indegree(nodes, 0);
  for (auto [u, v] : edges) {
    succ[u].push_back(v);
    ++indegree[v];
  }
  std::vector<long long> rank(nodes, 0);
  std::vector<int> ready;
  for (int v = 0; v < nodes; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  int done = 0;
  while (!ready.empty()) {
    int u = ready.back();
    ready.pop_back();
    ++done;
    for (int v : succ[u]) {
      rank[v] = std::max(rank[v], rank[u] + 1);
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }
  if (done != nodes)
    throw ConstructionFailure("the endpoint order contains a cycle");
  return rank;
}

// One node per variable; '=' merges, '<' and '>' become strict edges
// between class representatives.
std::vector<std::vector<long long>> realize_points(const Qcn& s) {
  const Calculus& pa = s.calculus();
  const AtomId lt = pa.atom_id("<");
  const AtomId eq = pa.atom_id("=");
  const int n = s.size();

  Dsu dsu(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (s.at(i, j).first_atom() == eq) dsu.unite(i, j);
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      AtomId a = s.at(i, j).first_atom();
      if (a == eq) continue;
      int u = dsu.find(i), v = dsu.find(j);
      if (u == v)
        throw ConstructionFailure("strict order inside an equality class");
      edges.emplace_back(a == lt ? u : v, a == lt ? v : u);
    }
  }
  auto rank = order_ranks(n, edges);
  std::vector<std::vector<long long>> coords(n);
  for (int i = 0; i < n; ++i) coords[i] = {rank[dsu.find(i)]};
  return coords;
}

struct EndpointSigns {
  // Comparisons x-lo vs y-lo, x-lo vs y-hi, x-hi vs y-lo, x-hi vs y-hi,
  // each -1, 0 or 1.
  std::array<int, 4> cmp;
};

// Derived by classifying every endpoint configuration on a small grid, so
// the table cannot drift from the classifier.
const std::array<EndpointSigns, 13>& ia_signs() {
  static const std::array<EndpointSigns, 13> table = [] {
    std::array<EndpointSigns, 13> t{};
    std::array<bool, 13> seen{};
    auto sign = [](long long a, long long b) {
      return a < b ? -1 : (a == b ? 0 : 1);
    };
    for (long long xm = 0; xm < 4; ++xm)
      for (long long xp = xm + 1; xp < 4; ++xp)
        for (long long ym = 0; ym < 4; ++ym)
          for (long long yp = ym + 1; yp < 4; ++yp) {
            AtomId a = ia_classify(xm, xp, ym, yp);
            EndpointSigns e{{sign(xm, ym), sign(xm, yp), sign(xp, ym),
                             sign(xp, yp)}};
            if (seen[a] && t[a].cmp != e.cmp)
              throw Error("interval atom maps to two endpoint orders");
            t[a] = e;
            seen[a] = true;
          }
    for (bool b : seen) {
      if (!b) throw Error("interval endpoint table is incomplete");
    }
    return t;
  }();
  return table;
}

// Two nodes per variable (lo = 2i, hi = 2i + 1); atom signs merge or order
// endpoint classes, and every interval keeps lo strictly below hi.
std::vector<std::vector<long long>> realize_intervals(const Qcn& s) {
  const int n = s.size();
  const auto& signs = ia_signs();

  Dsu dsu(2 * n);
  std::vector<std::array<int, 2>> raw_edges;
  auto apply = [&](int sign, int u, int v, bool merge_pass) {
    if (merge_pass) {
      if (sign == 0) dsu.unite(u, v);
    } else if (sign != 0) {
      raw_edges.push_back(sign < 0 ? std::array<int, 2>{u, v}
                                   : std::array<int, 2>{v, u});
    }
  };
  for (int pass = 0; pass < 2; ++pass) {
    bool merge_pass = pass == 0;
    for (int i = 0; i < n; ++i) {
      if (!merge_pass) raw_edges.push_back({2 * i, 2 * i + 1});
      for (int j = i + 1; j < n; ++j) {
        const auto& e = signs[s.at(i, j).first_atom()];
        apply(e.cmp[0], 2 * i, 2 * j, merge_pass);
        apply(e.cmp[1], 2 * i, 2 * j + 1, merge_pass);
        apply(e.cmp[2], 2 * i + 1, 2 * j, merge_pass);
        apply(e.cmp[3], 2 * i + 1, 2 * j + 1, merge_pass);
      }
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : raw_edges) {
    int u = dsu.find(e[0]), v = dsu.find(e[1]);
    if (u == v)
      throw ConstructionFailure("strict order inside an equality class");
    edges.emplace_back(u, v);
  }
  auto rank = order_ranks(2 * n, edges);
  std::vector<std::vector<long long>> coords(n);
  for (int i = 0; i < n; ++i) {
    coords[i] = {rank[dsu.find(2 * i)], rank[dsu.find(2 * i + 1)]};
  }
  return coords;
}

// Projects a product scenario onto one side.
Qcn project_component(const Qcn& s, const Calculus& factor, bool left,
                      int right_atoms) {
  Qcn out(factor, s.size());
  for (int i = 0; i < s.size(); ++i) {
    for (int j = i + 1; j < s.size(); ++j) {
      auto [a1, a2] = product_unpack(s.at(i, j).first_atom(), right_atoms);
      out.set(i, j, factor.atom_relation(left ? a1 : a2));
    }
  }
  return out;
}

void verify(bool ok, int i, int j) {
  if (!ok)
    throw Error("realization failed verification at (" + std::to_string(i) +
                "," + std::to_string(j) + ")");
}

}  // namespace

Realization realize_solution(const Qcn& scenario) {
  const Calculus& calc = scenario.calculus();
  if (!is_scenario(scenario))
    throw NotAtomic("realization needs a single atom per pair");
  if (!is_path_consistent(scenario))
    throw NotPathConsistent("realization needs a path-consistent scenario");

  const std::string& name = calc.name();
  Realization result;
  const int n = scenario.size();

  if (name == "PA") {
    result.coords = realize_points(scenario);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        verify(pa_classify(result.coords[i][0], result.coords[j][0]) ==
                   scenario.at(i, j).first_atom(),
               i, j);
      }
    }
  } else if (name == "IA") {
    result.coords = realize_intervals(scenario);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        verify(ia_classify(result.coords[i][0], result.coords[i][1],
                           result.coords[j][0], result.coords[j][1]) ==
                   scenario.at(i, j).first_atom(),
               i, j);
      }
    }
  } else if (name == "CRA" || name == "RA") {
    const Calculus& factor =
        calculus_by_name(name == "CRA" ? "PA" : "IA");
    const int right = factor.atom_count();
    auto xs = realize_solution(project_component(scenario, factor, true, right));
    auto ys = realize_solution(project_component(scenario, factor, false, right));
    result.coords.resize(n);
    for (int i = 0; i < n; ++i) {
      result.coords[i] = xs.coords[i];
      result.coords[i].insert(result.coords[i].end(), ys.coords[i].begin(),
                              ys.coords[i].end());
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        auto [a1, a2] =
            product_unpack(scenario.at(i, j).first_atom(), right);
        AtomId got1, got2;
        if (name == "CRA") {
          got1 = pa_classify(result.coords[i][0], result.coords[j][0]);
          got2 = pa_classify(result.coords[i][1], result.coords[j][1]);
        } else {
          got1 = ia_classify(result.coords[i][0], result.coords[i][1],
                             result.coords[j][0], result.coords[j][1]);
          got2 = ia_classify(result.coords[i][2], result.coords[i][3],
                             result.coords[j][2], result.coords[j][3]);
        }
        verify(got1 == a1 && got2 == a2, i, j);
      }
    }
  } else {
    throw UnsupportedCalculus("calculus " + name +
                              " has no point interpretation here");
  }
  return result;
}

}  // namespace qstr
