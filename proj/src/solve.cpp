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

#include "qstr/solve.hpp"

#include <algorithm>
#include <chrono>
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

std::string pair_text(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Depth-first enumeration over one fixed pair order. Entries of `work` are
// swapped to single atoms on the way down and restored on the way up; a
// candidate atom survives only if every triangle it completes permits it,
// which by the cycle law needs one membership test per triangle.
struct ScenarioDfs {
  const Calculus& calc;
  Qcn work;
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> fixed;
  std::size_t limit;
  std::vector<Qcn> found;

  ScenarioDfs(const Qcn& input, std::vector<std::pair<int, int>> order,
              std::size_t max_results)
      : calc(input.calculus()),
        work(input),
        pairs(std::move(order)),
        fixed(static_cast<std::size_t>(input.size()) * input.size(), false),
        limit(max_results) {}

  bool run(std::size_t t) {
    if (t == pairs.size()) {
      found.push_back(work);
      return found.size() < limit;
    }
    auto [i, j] = pairs[t];
    const int n = work.size();
    const Relation dom = work.at(i, j);
    fixed[static_cast<std::size_t>(i) * n + j] = true;
    fixed[static_cast<std::size_t>(j) * n + i] = true;

    bool keep = true;
    std::vector<AtomId> atoms;
    dom.for_each_atom([&](AtomId a) { atoms.push_back(a); });
    for (AtomId a : atoms) {
      bool ok = true;
      for (int k = 0; k < n && ok; ++k) {
        if (k == i || k == j) continue;
        if (!fixed[static_cast<std::size_t>(i) * n + k] ||
            !fixed[static_cast<std::size_t>(j) * n + k])
          continue;
        ok = calc
                 .compose_atoms(work.at(i, k).first_atom(),
                                work.at(k, j).first_atom())
                 .test(a);
      }
      if (!ok) continue;
      work.set(i, j, calc.atom_relation(a));
      keep = run(t + 1);
      if (!keep) break;
    }

    fixed[static_cast<std::size_t>(i) * n + j] = false;
    fixed[static_cast<std::size_t>(j) * n + i] = false;
    work.set(i, j, dom);
    return keep;
  }
};

// Smallest pair with more than one atom, in lexicographic order.
std::optional<std::pair<int, int>> first_unresolved(const Qcn& net) {
  for (int i = 0; i < net.size(); ++i) {
    for (int j = i + 1; j < net.size(); ++j) {
      if (net.at(i, j).count() > 1) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

// `net` is path consistent on entry. Splits the lowest unresolved pair on
// its atoms in ascending order. A fully atomic fixpoint is accepted as a
// solution, which is sound for the calculi built here.
bool backtrack_step(const Qcn& net, SolveStats& stats, Qcn* solution) {
  auto pick = first_unresolved(net);
  if (!pick) {
    *solution = net;
    return true;
  }
  auto [i, j] = *pick;
  std::vector<AtomId> atoms;
  net.at(i, j).for_each_atom([&](AtomId a) { atoms.push_back(a); });
  for (AtomId a : atoms) {
    Qcn child = net;
    child.set(i, j, net.calculus().atom_relation(a));
    SolveOutcome sub = enforce_pc(child);
    stats.refinements += sub.stats.refinements;
    stats.queue_ops += sub.stats.queue_ops;
    if (sub.verdict == Verdict::kConsistent &&
        backtrack_step(*sub.refined, stats, solution)) {
      return true;
    }
  }
  return false;
}

}  // namespace

SolveOutcome enforce_pc(const Qcn& input) {
  const auto start = Clock::now();
  const Calculus& calc = input.calculus();
  Qcn net = input;
  const int n = net.size();

  SolveOutcome out;
  std::set<std::pair<int, int>> queue;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) queue.emplace(i, j);
  }

  bool wiped = false;
  while (!queue.empty() && !wiped) {
    auto [a, b] = *queue.begin();
    queue.erase(queue.begin());
    ++out.stats.queue_ops;

    for (int k = 0; k < n && !wiped; ++k) {
      if (k == a || k == b) continue;
      // The two rule instances this pair feeds: R_ak through b and R_bk
      // through a. Instances targeting (a,b) itself rerun when their source
      // pairs pop.
      const auto tighten = [&](int u, int v, const Relation& via) {
        Relation refined = net.at(u, v) & via;
        if (refined == net.at(u, v)) return;
        ++out.stats.refinements;
        if (refined.empty()) {
          wiped = true;
          return;
        }
        net.set(u, v, refined);
        queue.emplace(std::min(u, v), std::max(u, v));
      };
      tighten(a, k, calc.compose(net.at(a, b), net.at(b, k)));
      if (!wiped) tighten(b, k, calc.compose(net.at(b, a), net.at(a, k)));
    }
  }

  out.verdict = wiped ? Verdict::kInconsistent : Verdict::kConsistent;
  if (!wiped) out.refined = std::move(net);
  out.stats.wall_ms = elapsed_ms(start);
  return out;
}

bool is_path_consistent(const Qcn& net) {
  const Calculus& calc = net.calculus();
  const int n = net.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (net.at(i, j).empty()) return false;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (!net.at(i, j).subset_of(
                calc.compose(net.at(i, k), net.at(k, j))))
          return false;
      }
    }
  }
  return true;
}

SolveOutcome solve_backtrack(const Qcn& input) {
  const auto start = Clock::now();
  SolveOutcome top = enforce_pc(input);

  SolveOutcome out;
  out.stats = top.stats;
  if (top.verdict == Verdict::kConsistent) {
    Qcn solution = *top.refined;
    if (backtrack_step(*top.refined, out.stats, &solution)) {
      out.verdict = Verdict::kConsistent;
      out.refined = std::move(top.refined);
      out.scenario = std::move(solution);
    }
  }
  out.stats.wall_ms = elapsed_ms(start);
  return out;
}

std::vector<Qcn> enumerate_scenarios(const Qcn& input, std::size_t limit,
                                     EnumerationOrder order, double guard) {
  const int n = input.size();
  std::vector<std::pair<int, int>> pairs;
  double estimate = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      pairs.emplace_back(i, j);
      estimate *= input.at(i, j).count();
    }
  }
  if (estimate > guard) throw SearchSpaceTooLarge(estimate);
  if (order == EnumerationOrder::kReverse) {
    std::reverse(pairs.begin(), pairs.end());
  }
  if (limit == 0) return {};

  ScenarioDfs dfs(input, std::move(pairs), limit);
  dfs.run(0);
  return std::move(dfs.found);
}

MinimalityReport check_minimal(const Qcn& net) {
  const Calculus& calc = net.calculus();
  const int n = net.size();
  std::vector<Qcn> scenarios = enumerate_scenarios(net);

  std::vector<Relation> covered(static_cast<std::size_t>(n) * n,
                                calc.empty_relation());
  for (const Qcn& s : scenarios) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        covered[static_cast<std::size_t>(i) * n + j] |= s.at(i, j);
      }
    }
  }

  MinimalityReport report;
  report.minimal = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Relation missing =
          net.at(i, j) - covered[static_cast<std::size_t>(i) * n + j];
      missing.for_each_atom([&](AtomId a) {
        report.minimal = false;
        report.infeasible.emplace_back(i, j, a);
      });
    }
  }
  return report;
}

Qcn extract_scenario_distributive(const Qcn& input, const RelationSet* pool) {
  const Calculus& calc = input.calculus();
  const int n = input.size();
  if (!is_path_consistent(input))
    throw NotPathConsistent("scenario extraction requires a path-consistent "
                            "input");
  if (pool != nullptr) {
    if (pool->calculus_id != calc.id())
      throw CalculusMismatch("scenario extraction pool");
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!set_contains(*pool, input.at(i, j)))
          throw ConstructionFailure("entry " + pair_text(i, j) +
                                    " lies outside the supplied pool");
      }
    }
  }

  // Place variables one at a time. Feasible atoms towards each placed
  // variable are the intersection of all two-step compositions through the
  // others; the diagonal identity makes the j == i term the original entry,
  // so every hat set refines its constraint. Committing then proceeds pair
  // by pair, always on the lowest atom, never revisiting a choice. Empty
  // intersections mean the entries were not drawn from a distributive
  // subalgebra.
  Qcn out = input;
  for (int v = 1; v < n; ++v) {
    std::vector<Relation> hat(v, calc.universal());
    for (int i = 0; i < v; ++i) {
      for (int j = 0; j < v; ++j) {
        hat[i] &= calc.compose(input.at(v, j), out.at(j, i));
      }
      if (hat[i].empty())
        throw ConstructionFailure("no feasible atom between variables " +
                                  std::to_string(v) + " and " +
                                  std::to_string(i));
    }
    out.set(v, 0, calc.atom_relation(hat[0].first_atom()));
    for (int t = 1; t < v; ++t) {
      Relation feasible = hat[t];
      for (int i = 0; i < t; ++i) {
        feasible &= calc.compose(out.at(v, i), out.at(i, t));
      }
      if (feasible.empty())
        throw ConstructionFailure("committed atoms left no choice between "
                                  "variables " +
                                  std::to_string(v) + " and " +
                                  std::to_string(t));
      out.set(v, t, calc.atom_relation(feasible.first_atom()));
    }
  }

  if (!is_path_consistent(out))
    throw ConstructionFailure("the committed scenario is not path "
                              "consistent; the entries were not from a "
                              "distributive pool");
  return out;
}

}  // namespace qstr
