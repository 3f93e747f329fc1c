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

#include "qstr/sparse.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "qstr/errors.hpp"

namespace qstr {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Shared elimination loop; `pick` returns the next vertex to remove from
// the alive set or -1 to fall back to the minimum-degree choice.
template <class Picker>
EliminationResult run_elimination(const Qcn& input, Picker pick) {
  const auto start = Clock::now();
  const Calculus& calc = input.calculus();
  const int n = input.size();
  const Relation star = calc.universal();

  Qcn net = input;
  std::vector<char> alive(n, 1);
  int alive_count = n;
  // Edge iff the entry is non-universal; kept in sync with refinements.
  std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
  auto edge = [&](int i, int j) -> char& {
    return adj[static_cast<std::size_t>(i) * n + j];
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (net.at(i, j) != star) edge(i, j) = edge(j, i) = 1;
    }
  }

  EliminationResult result;
  bool wiped = false;
  while (alive_count > 2 && !wiped) {
    int v = pick(alive, adj, alive_count);
    if (v < 0) {
      int best_deg = n + 1;
      for (int u = 0; u < n; ++u) {
        if (!alive[u]) continue;
        int deg = 0;
        for (int w = 0; w < n; ++w) {
          if (w != u && alive[w] && edge(u, w)) ++deg;
        }
        if (deg < best_deg) {
          best_deg = deg;
          v = u;
        }
      }
    }

    EliminationRecord rec;
    rec.vertex = v;
    for (int w = 0; w < n; ++w) {
      if (w != v && alive[w] && edge(v, w)) {
        rec.neighbours.push_back(w);
        rec.constraints.push_back(net.at(v, w));
      }
    }

    // Tighten every neighbour pair through v before dropping it; this is
    // the side condition that makes the removal harmless.
    for (std::size_t a = 0; a < rec.neighbours.size() && !wiped; ++a) {
      for (std::size_t b = a + 1; b < rec.neighbours.size() && !wiped; ++b) {
        int i = rec.neighbours[a], j = rec.neighbours[b];
        Relation refined =
            net.at(i, j) & calc.compose(net.at(i, v), net.at(v, j));
        if (refined == net.at(i, j)) continue;
        ++result.outcome.stats.refinements;
        if (refined.empty()) {
          wiped = true;
          break;
        }
        net.set(i, j, refined);
        edge(i, j) = edge(j, i) = 1;
      }
    }

    result.stack.push_back(std::move(rec));
    alive[v] = 0;
    --alive_count;
    ++result.outcome.stats.queue_ops;
  }

  for (int v = 0; v < n; ++v) {
    if (alive[v]) result.residual.push_back(v);
  }
  result.outcome.verdict =
      wiped ? Verdict::kInconsistent : Verdict::kConsistent;
  if (!wiped) result.outcome.refined = std::move(net);
  result.outcome.stats.wall_ms = elapsed_ms(start);
  return result;
}

}  // namespace

SolveOutcome enforce_ppc(const Qcn& input, const ChordalStructure& cs) {
  const auto start = Clock::now();
  const Calculus& calc = input.calculus();
  const int n = input.size();
  if (cs.n != n) throw Error("chordal structure built for a different size");

  std::vector<char> covered(static_cast<std::size_t>(n) * n, 0);
  for (auto [i, j] : cs.edges) {
    covered[static_cast<std::size_t>(i) * n + j] = 1;
    covered[static_cast<std::size_t>(j) * n + i] = 1;
  }
  const Relation star = calc.universal();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (input.at(i, j) != star &&
          !covered[static_cast<std::size_t>(i) * n + j])
        throw EdgeCoverViolation(i, j);
    }
  }

  // Edge ids in sorted order; the worklist pops the smallest first.
  std::map<std::pair<int, int>, int> edge_id;
  for (auto e : cs.edges) edge_id.emplace(e, static_cast<int>(edge_id.size()));
  std::vector<std::vector<int>> triangles_of(cs.edges.size());
  for (std::size_t t = 0; t < cs.triangles.size(); ++t) {
    const auto& tri = cs.triangles[t];
    triangles_of[edge_id.at({tri[0], tri[1]})].push_back(static_cast<int>(t));
    triangles_of[edge_id.at({tri[0], tri[2]})].push_back(static_cast<int>(t));
    triangles_of[edge_id.at({tri[1], tri[2]})].push_back(static_cast<int>(t));
  }

  Qcn net = input;
  SolveOutcome out;
  std::set<int> queue;
  for (std::size_t e = 0; e < cs.edges.size(); ++e)
    queue.insert(static_cast<int>(e));

  bool wiped = false;
  while (!queue.empty() && !wiped) {
    int e = *queue.begin();
    queue.erase(queue.begin());
    ++out.stats.queue_ops;
    auto [a, b] = cs.edges[e];

    for (int t : triangles_of[e]) {
      const auto& tri = cs.triangles[t];
      int c = tri[0] + tri[1] + tri[2] - a - b;
      // Refine the other two edges of this triangle through the popped one;
      // instances aimed at (a,b) rerun when those edges pop.
      const auto tighten = [&](int u, int v, const Relation& via) {
        Relation refined = net.at(u, v) & via;
        if (refined == net.at(u, v)) return;
        ++out.stats.refinements;
        if (refined.empty()) {
          wiped = true;
          return;
        }
        net.set(u, v, refined);
        queue.insert(edge_id.at({std::min(u, v), std::max(u, v)}));
      };
      tighten(a, c, calc.compose(net.at(a, b), net.at(b, c)));
      if (wiped) break;
      tighten(b, c, calc.compose(net.at(b, a), net.at(a, c)));
      if (wiped) break;
    }
  }

  out.verdict = wiped ? Verdict::kInconsistent : Verdict::kConsistent;
  if (!wiped) out.refined = std::move(net);
  out.stats.wall_ms = elapsed_ms(start);
  return out;
}

EliminationResult eliminate_variables(const Qcn& input) {
  return run_elimination(input, [](const std::vector<char>&,
                                   const std::vector<char>&,
                                   int) { return -1; });
}

EliminationResult eliminate_variables(const Qcn& input,
                                      const std::vector<int>& order) {
  const int n = input.size();
  if (static_cast<int>(order.size()) < n - 2)
    throw Error("elimination order must reach a residual of at most two "
                "variables");
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n) throw IndexOutOfRange(v, n);
    if (seen[v]) throw Error("elimination order repeats vertex " +
                             std::to_string(v));
    seen[v] = 1;
  }
  std::size_t next = 0;
  return run_elimination(
      input, [&order, &next](const std::vector<char>&,
                             const std::vector<char>&, int) {
        return order[next++];
      });
}

Qcn residual_scenario(const EliminationResult& elim) {
  if (elim.outcome.verdict != Verdict::kConsistent ||
      !elim.outcome.refined.has_value())
    throw ConstructionFailure("residual scenario needs a consistent "
                              "elimination run");
  const Qcn& net = *elim.outcome.refined;
  Qcn out(net.calculus(), net.size());
  if (elim.residual.size() == 2) {
    int i = elim.residual[0], j = elim.residual[1];
    out.set(i, j, net.calculus().atom_relation(net.at(i, j).first_atom()));
  }
  return out;
}

Qcn reconstruct_scenario(const EliminationResult& elim, const Qcn& base) {
  if (elim.outcome.verdict != Verdict::kConsistent ||
      !elim.outcome.refined.has_value())
    throw ConstructionFailure("reconstruction needs a consistent "
                              "elimination run");
  const Qcn& residual_net = *elim.outcome.refined;
  const Calculus& calc = residual_net.calculus();
  const int n = residual_net.size();
  if (&base.calculus() != &calc || base.size() != n)
    throw ConstructionFailure("base scenario does not match the network");
  for (std::size_t a = 0; a < elim.residual.size(); ++a) {
    for (std::size_t b = a + 1; b < elim.residual.size(); ++b) {
      int i = elim.residual[a], j = elim.residual[b];
      if (base.at(i, j).count() != 1 ||
          !base.at(i, j).subset_of(residual_net.at(i, j)))
        throw ConstructionFailure("base is not an atomic refinement of the "
                                  "residual network");
    }
  }

  Qcn out(calc, n);
  std::vector<int> placed = elim.residual;
  for (std::size_t a = 0; a < placed.size(); ++a) {
    for (std::size_t b = a + 1; b < placed.size(); ++b) {
      out.set(placed[a], placed[b], base.at(placed[a], placed[b]));
    }
  }

  // Re-insert in reverse elimination order. Feasible atoms towards each
  // placed vertex come from composing the recorded constraints with the
  // scenario so far; committing walks the placed vertices in ascending
  // order, as in scenario extraction.
  for (auto it = elim.stack.rbegin(); it != elim.stack.rend(); ++it) {
    const EliminationRecord& rec = *it;
    const int v = rec.vertex;

    std::vector<Relation> hat(placed.size(), calc.universal());
    for (std::size_t a = 0; a < placed.size(); ++a) {
      int i = placed[a];
      for (std::size_t t = 0; t < rec.neighbours.size(); ++t) {
        int w = rec.neighbours[t];
        hat[a] &= calc.compose(rec.constraints[t],
                               w == i ? calc.identity_relation()
                                      : out.at(w, i));
      }
      if (hat[a].empty())
        throw ConstructionFailure("no feasible atom between variables " +
                                  std::to_string(v) + " and " +
                                  std::to_string(i));
    }

    out.set(v, placed[0], calc.atom_relation(hat[0].first_atom()));
    for (std::size_t t = 1; t < placed.size(); ++t) {
      Relation feasible = hat[t];
      for (std::size_t s = 0; s < t; ++s) {
        feasible &=
            calc.compose(out.at(v, placed[s]), out.at(placed[s], placed[t]));
      }
      if (feasible.empty())
        throw ConstructionFailure("committed atoms left no choice between "
                                  "variables " +
                                  std::to_string(v) + " and " +
                                  std::to_string(placed[t]));
      out.set(v, placed[t], calc.atom_relation(feasible.first_atom()));
    }

    placed.insert(std::lower_bound(placed.begin(), placed.end(), v), v);
  }

  if (!is_path_consistent(out))
    throw ConstructionFailure("the rebuilt scenario is not path consistent; "
                              "the entries were not from a distributive "
                              "subalgebra");
  return out;
}

}  // namespace qstr
