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

#include "qstr/bench.hpp"

#include <sstream>

#include "qstr/calculi.hpp"
#include "qstr/errors.hpp"
#include "qstr/generate.hpp"
#include "qstr/graph.hpp"
#include "qstr/sparse.hpp"

namespace qstr {

namespace {

const char* verdict_text(Verdict v) {
  return v == Verdict::kConsistent ? "consistent" : "inconsistent";
}

}  // namespace

BenchReport bench(const BenchConfig& config) {
  const Calculus& calc = calculus_by_name(config.calculus);
  BenchReport report;
  std::uint64_t instance_seed = config.seed;

  for (int n : config.ns) {
    for (double density : config.densities) {
      for (int rep = 0; rep < config.repetitions; ++rep, ++instance_seed) {
        Qcn net = random_qcn(calc, n, density, config.pool, instance_seed);

        SolveOutcome pc = enforce_pc(net);
        ChordalStructure cs = triangulate(constraint_graph(net));
        SolveOutcome ppc = enforce_ppc(net, cs);
        EliminationResult ve = eliminate_variables(net);

        if (pc.verdict != ppc.verdict || pc.verdict != ve.outcome.verdict) {
          throw VerdictMismatch(
              "pc/ppc/ve disagree on " + config.calculus + " pool " +
              config.pool_name + " n " + std::to_string(n) + " seed " +
              std::to_string(instance_seed));
        }

        const auto row = [&](const char* solver, const SolveStats& stats,
                             Verdict verdict, std::size_t fill) {
          report.rows.push_back({config.calculus, config.pool_name, n,
                                 density, solver, instance_seed,
                                 verdict_text(verdict), stats.wall_ms,
                                 stats.refinements, fill});
        };
        row("pc", pc.stats, pc.verdict, 0);
        row("ppc", ppc.stats, ppc.verdict, cs.fill_edges);
        row("ve", ve.outcome.stats, ve.outcome.verdict, 0);
      }
    }
  }
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "calculus,pool,n,density,solver,seed,verdict,wall_ms,refinements,"
         "fill_edges\n";
  for (const BenchRow& r : report.rows) {
    out << r.calculus << ',' << r.pool << ',' << r.n << ',' << r.density
        << ',' << r.solver << ',' << r.seed << ',' << r.verdict << ','
        << r.wall_ms << ',' << r.refinements << ',' << r.fill_edges << '\n';
  }
  return out.str();
}

}  // namespace qstr
