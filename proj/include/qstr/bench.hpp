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

#ifndef QSTR_BENCH_HPP_
#define QSTR_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qstr/relation_set.hpp"

namespace qstr {

struct BenchConfig {
  std::string calculus;   // name for calculus_by_name
  std::string pool_name;  // label echoed into the rows
  RelationSet pool;
  std::vector<int> ns;
  std::vector<double> densities;
  int repetitions = 1;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::string calculus;
  std::string pool;
  int n = 0;
  double density = 0.0;
  std::string solver;  // "pc", "ppc" or "ve"
  std::uint64_t seed = 0;
  std::string verdict;  // "consistent" or "inconsistent"
  double wall_ms = 0.0;
  std::uint64_t refinements = 0;
  std::size_t fill_edges = 0;  // ppc rows only, zero otherwise
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

// Runs full path consistency, partial path consistency on a min-fill
// triangulation, and variable elimination on every generated instance,
// three rows per instance. A verdict disagreement between the solvers
// aborts the run, since on the pools this harness is meant for the three
// must agree.
BenchReport bench(const BenchConfig& config);

// CSV with a fixed header:
// calculus,pool,n,density,solver,seed,verdict,wall_ms,refinements,fill_edges
std::string bench_csv(const BenchReport& report);

}  // namespace qstr

#endif  // QSTR_BENCH_HPP_
