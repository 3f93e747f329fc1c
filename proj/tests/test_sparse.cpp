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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qstr/bench.hpp"
#include "qstr/calculi.hpp"
#include "qstr/errors.hpp"
#include "qstr/generate.hpp"
#include "qstr/graph.hpp"
#include "qstr/sparse.hpp"

using namespace qstr;

namespace {

Relation rel(const Calculus& c, const std::string& names) {
  return parse_relation_names(c, names);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fixture_path(const std::string& name) {
  return std::string(QSTR_FIXTURE_DIR) + "/" + name;
}

// The stabilized interval subalgebra family: base closure plus its extras.
RelationSet sia_pool(const Calculus& ia) {
  return parse_relation_set(ia, read_file(fixture_path("ia_bhat.txt")) +
                                    read_file(fixture_path("ia_sia_extra.txt")));
}

bool has_edge(const ChordalStructure& cs, int i, int j) {
  return std::find(cs.edges.begin(), cs.edges.end(),
                   std::make_pair(std::min(i, j), std::max(i, j))) !=
         cs.edges.end();
}

}  // namespace

TEST_CASE("constraint graphs list exactly the constrained pairs") {
  const Calculus& pa = calculus_by_name("PA");
  Qcn net(pa, 5);
  net.set(0, 1, rel(pa, "<"));
  net.set(3, 2, rel(pa, "< ="));
  net.set(1, 4, rel(pa, "< >"));

  ConstraintGraph g = constraint_graph(net);
  CHECK(g.n == 5);
  std::vector<std::pair<int, int>> expected = {{0, 1}, {1, 4}, {2, 3}};
  CHECK(g.edges == expected);
}

TEST_CASE("triangulation adds the needed chords") {
  // Already chordal: a triangle with a pendant vertex.
  ConstraintGraph chordal{4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}}};
  for (Heuristic h : {Heuristic::kMinFill, Heuristic::kMinDegree}) {
    ChordalStructure cs = triangulate(chordal, h);
    CHECK(cs.fill_edges == 0);
    CHECK(cs.edges == chordal.edges);
    CHECK(cs.triangles.size() == 1);
    CHECK(verify_chordal(cs.edges, cs.peo));
  }

  // A 4-cycle needs exactly one of its two diagonals.
  ConstraintGraph cycle{4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
  for (Heuristic h : {Heuristic::kMinFill, Heuristic::kMinDegree}) {
    ChordalStructure cs = triangulate(cycle, h);
    CHECK(cs.fill_edges == 1);
    CHECK(cs.edges.size() == 5);
    CHECK(cs.triangles.size() == 2);
    CHECK(verify_chordal(cs.edges, cs.peo));
  }

  // Complete graphs come back as themselves under any order.
  ConstraintGraph k5{5, {}};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5.edges.emplace_back(i, j);
  ChordalStructure cs = triangulate(k5);
  CHECK(cs.fill_edges == 0);
  CHECK(cs.edges == k5.edges);
  CHECK(cs.triangles.size() == 10);
  CHECK(cs.peo.size() == 5);

  CHECK_THROWS_AS(triangulate(ConstraintGraph{3, {{0, 0}}}), Error);
  CHECK_THROWS_AS(triangulate(ConstraintGraph{3, {{0, 5}}}),
                  IndexOutOfRange);
}

TEST_CASE("chordality check rejects the bare cycle under every order") {
  std::vector<std::pair<int, int>> cycle = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  std::vector<int> order = {0, 1, 2, 3};
  int tried = 0;
  do {
    CHECK_FALSE(verify_chordal(cycle, order));
    ++tried;
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(tried == 24);

  // Trees are chordal with any leaf-first order.
  std::vector<std::pair<int, int>> tree = {{0, 1}, {1, 2}, {1, 3}};
  CHECK(verify_chordal(tree, {0, 2, 3, 1}));
  CHECK(verify_chordal(tree, {3, 2, 0, 1}));
  // A hub eliminated first sees its leaves unconnected.
  CHECK_FALSE(verify_chordal(tree, {1, 0, 2, 3}));

  // Malformed orders never pass.
  CHECK_FALSE(verify_chordal(tree, {0, 0, 2, 3}));
  CHECK_FALSE(verify_chordal(tree, {0, 1, 2, 7}));
}

TEST_CASE("partial path consistency over a complete cover equals the full "
          "closure") {
  const Calculus& ia = calculus_by_name("IA");
  RelationSet pool = convex_relations(ia);

  ConstraintGraph complete{8, {}};
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) complete.edges.emplace_back(i, j);
  ChordalStructure cover = triangulate(complete);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Qcn net = random_qcn(ia, 8, 0.6, pool, seed);
    SolveOutcome pc = enforce_pc(net);
    SolveOutcome ppc = enforce_ppc(net, cover);
    REQUIRE(pc.verdict == ppc.verdict);
    if (pc.verdict != Verdict::kConsistent) continue;
    for (int i = 0; i < 8; ++i) {
      for (int j = i + 1; j < 8; ++j) {
        CHECK(pc.refined->at(i, j) == ppc.refined->at(i, j));
      }
    }
  }

  // The ordered cycle lives on a single triangle and still empties.
  const Calculus& pa = calculus_by_name("PA");
  Qcn cycle(pa, 3);
  cycle.set(0, 1, rel(pa, "<"));
  cycle.set(1, 2, rel(pa, "<"));
  cycle.set(2, 0, rel(pa, "<"));
  ChordalStructure tri = triangulate(constraint_graph(cycle));
  CHECK(enforce_ppc(cycle, tri).verdict == Verdict::kInconsistent);
}

TEST_CASE("partial path consistency touches only covered entries") {
  const Calculus& pa = calculus_by_name("PA");
  Qcn net(pa, 4);
  net.set(0, 1, rel(pa, "<"));
  net.set(1, 2, rel(pa, "<"));
  // (0,2) completes the path triangle; (3, *) stays off-cover.
  ConstraintGraph g = constraint_graph(net);
  g.edges.emplace_back(0, 2);
  std::sort(g.edges.begin(), g.edges.end());
  ChordalStructure cs = triangulate(g);

  SolveOutcome out = enforce_ppc(net, cs);
  REQUIRE(out.verdict == Verdict::kConsistent);
  CHECK(out.refined->at(0, 2) == rel(pa, "<"));
  CHECK(out.refined->at(0, 3) == pa.universal());
  CHECK(out.refined->at(1, 3) == pa.universal());
  CHECK(out.refined->at(2, 3) == pa.universal());

  // A cover missing a constrained pair is rejected.
  Qcn wider = net;
  wider.set(0, 3, rel(pa, "<"));
  CHECK_THROWS_AS(enforce_ppc(wider, cs), EdgeCoverViolation);
  Qcn small(pa, 3);
  CHECK_THROWS_AS(enforce_ppc(small, cs), Error);
}

TEST_CASE("chordal covers reproduce the full fixpoint on distributive "
          "interval networks") {
  const Calculus& ia = calculus_by_name("IA");
  const RelationSet convex = convex_relations(ia);
  const RelationSet stabilized = sia_pool(ia);

  int compared = 0;
  for (const RelationSet* pool : {&convex, &stabilized}) {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      Qcn net = random_qcn(ia, 20, 0.15, *pool, seed * 7 + 1);
      ChordalStructure cs = triangulate(constraint_graph(net));
      SolveOutcome pc = enforce_pc(net);
      SolveOutcome ppc = enforce_ppc(net, cs);
      REQUIRE(pc.verdict == ppc.verdict);
      if (pc.verdict != Verdict::kConsistent) continue;
      for (auto [i, j] : cs.edges) {
        CHECK(pc.refined->at(i, j) == ppc.refined->at(i, j));
        ++compared;
      }
    }
  }
  CHECK(compared > 200);
}

TEST_CASE("the frozen interval instance bounds the chordal shortcut") {
  // Entries drawn from the whole algebra, not from a distributive
  // subalgebra: the verdicts still agree but the chordal fixpoint is
  // strictly looser on one edge.
  const Calculus& ia = calculus_by_name("IA");
  Qcn net = parse_qcn(
      "calculus: IA\n"
      "n: 10\n"
      "0 5 : o oi\n"
      "0 8 : oi si\n"
      "0 9 : d di\n"
      "1 5 : b bi\n"
      "2 6 : eq s\n"
      "2 7 : bi s\n"
      "2 8 : mi oi\n"
      "2 9 : bi d\n"
      "3 5 : b oi\n"
      "3 9 : mi\n"
      "4 6 : f fi\n"
      "4 7 : mi o\n"
      "5 6 : b eq\n");

  ChordalStructure cs = triangulate(constraint_graph(net));
  SolveOutcome pc = enforce_pc(net);
  SolveOutcome ppc = enforce_ppc(net, cs);
  REQUIRE(pc.verdict == Verdict::kConsistent);
  REQUIRE(ppc.verdict == Verdict::kConsistent);

  // The restricted rule set is never tighter anywhere.
  for (auto [i, j] : cs.edges) {
    CHECK(pc.refined->at(i, j).subset_of(ppc.refined->at(i, j)));
  }

  REQUIRE(has_edge(cs, 0, 2));
  CHECK(pc.refined->at(0, 2) == rel(ia, "di fi o"));
  CHECK(ppc.refined->at(0, 2) == rel(ia, "di fi o oi"));
  CHECK(pc.refined->at(0, 2) != ppc.refined->at(0, 2));
}

TEST_CASE("variable elimination solves the point path") {
  const Calculus& pa = calculus_by_name("PA");
  Qcn net(pa, 3);
  net.set(0, 1, rel(pa, "<"));
  net.set(1, 2, rel(pa, "<"));

  EliminationResult elim = eliminate_variables(net, {1});
  CHECK(elim.outcome.verdict == Verdict::kConsistent);
  REQUIRE(elim.stack.size() == 1);
  CHECK(elim.stack[0].vertex == 1);
  CHECK(elim.stack[0].neighbours == std::vector<int>{0, 2});
  CHECK(elim.stack[0].constraints[0] == rel(pa, ">"));
  CHECK(elim.stack[0].constraints[1] == rel(pa, "<"));
  CHECK(elim.residual == std::vector<int>{0, 2});
  CHECK(elim.outcome.refined->at(0, 2) == rel(pa, "<"));
  CHECK(elim.outcome.stats.refinements == 1);

  Qcn base = residual_scenario(elim);
  CHECK(base.at(0, 2) == rel(pa, "<"));

  Qcn full = reconstruct_scenario(elim, base);
  CHECK(is_scenario(full));
  CHECK(full.at(0, 1) == rel(pa, "<"));
  CHECK(full.at(1, 2) == rel(pa, "<"));
  CHECK(full.at(0, 2) == rel(pa, "<"));
}

TEST_CASE("degree one vertices eliminate without touching the rest") {
  const Calculus& pa = calculus_by_name("PA");
  Qcn star(pa, 4);
  star.set(0, 1, rel(pa, "<"));
  star.set(0, 2, rel(pa, "< ="));
  star.set(0, 3, rel(pa, ">"));

  EliminationResult elim = eliminate_variables(star);
  CHECK(elim.outcome.verdict == Verdict::kConsistent);
  CHECK(elim.outcome.stats.refinements == 0);
  REQUIRE(elim.stack.size() == 2);
  CHECK(elim.stack[0].vertex == 1);  // smallest id among the leaves
  CHECK(elim.stack[0].neighbours == std::vector<int>{0});
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      CHECK(elim.outcome.refined->at(i, j) == star.at(i, j));
    }
  }
}

TEST_CASE("elimination verdict matches path consistency on distributive "
          "pools") {
  const Calculus& ia = calculus_by_name("IA");
  const Calculus& pa = calculus_by_name("PA");
  int inconsistent_seen = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Qcn net = random_qcn(ia, 10, 0.45, convex_relations(ia), seed);
    EliminationResult ve = eliminate_variables(net);
    CHECK(ve.outcome.verdict == enforce_pc(net).verdict);
    if (ve.outcome.verdict == Verdict::kInconsistent) ++inconsistent_seen;
  }
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Qcn net = random_qcn(pa, 9, 0.5, convex_relations(pa), seed);
    EliminationResult ve = eliminate_variables(net);
    CHECK(ve.outcome.verdict == enforce_pc(net).verdict);
    if (ve.outcome.verdict == Verdict::kInconsistent) ++inconsistent_seen;
  }
  // The sample must exercise both verdicts to mean anything.
  CHECK(inconsistent_seen > 5);
}

TEST_CASE("reconstruction rebuilds a scenario of the original network") {
  const Calculus& pa = calculus_by_name("PA");
  RelationSet pool = convex_relations(pa);
  int verified = 0;
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    Qcn net = random_qcn(pa, 5, 0.5, pool, seed);
    EliminationResult elim = eliminate_variables(net);
    if (elim.outcome.verdict != Verdict::kConsistent) continue;

    Qcn full = reconstruct_scenario(elim, residual_scenario(elim));
    CHECK(is_scenario(full));
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        CHECK(full.at(i, j).subset_of(net.at(i, j)));
      }
    }
    std::set<std::string> keys;
    for (const Qcn& s : enumerate_scenarios(net)) keys.insert(serialize_qcn(s));
    CHECK(keys.count(serialize_qcn(full)) == 1);
    ++verified;
  }
  CHECK(verified >= 20);

  const Calculus& ia = calculus_by_name("IA");
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Qcn net = random_qcn(ia, 6, 0.6, convex_relations(ia), seed);
    EliminationResult elim = eliminate_variables(net);
    if (elim.outcome.verdict != Verdict::kConsistent) continue;
    Qcn full = reconstruct_scenario(elim, residual_scenario(elim));
    CHECK(is_scenario(full));
    for (int i = 0; i < 6; ++i) {
      for (int j = i + 1; j < 6; ++j) {
        CHECK(full.at(i, j).subset_of(net.at(i, j)));
      }
    }
  }
}

TEST_CASE("reconstruction validates its inputs") {
  const Calculus& pa = calculus_by_name("PA");
  Qcn net(pa, 3);
  net.set(0, 1, rel(pa, "<"));
  net.set(1, 2, rel(pa, "<"));
  net.set(0, 2, rel(pa, ">"));
  EliminationResult bad = eliminate_variables(net, {1});
  CHECK(bad.outcome.verdict == Verdict::kInconsistent);
  CHECK_THROWS_AS(residual_scenario(bad), ConstructionFailure);
  CHECK_THROWS_AS(reconstruct_scenario(bad, Qcn(pa, 3)),
                  ConstructionFailure);

  Qcn good(pa, 3);
  good.set(0, 1, rel(pa, "<"));
  good.set(1, 2, rel(pa, "<"));
  EliminationResult elim = eliminate_variables(good, {1});
  Qcn loose(pa, 3);  // (0,2) entry is universal, not atomic
  CHECK_THROWS_AS(reconstruct_scenario(elim, loose), ConstructionFailure);
  Qcn contradicting(pa, 3);
  contradicting.set(0, 2, rel(pa, ">"));  // outside the residual entry
  CHECK_THROWS_AS(reconstruct_scenario(elim, contradicting),
                  ConstructionFailure);

  // Nothing eliminated: the base comes straight back.
  Qcn pairnet(pa, 2);
  pairnet.set(0, 1, rel(pa, "< ="));
  EliminationResult none = eliminate_variables(pairnet);
  CHECK(none.stack.empty());
  Qcn base = residual_scenario(none);
  CHECK(base.at(0, 1) == rel(pa, "<"));
  CHECK(reconstruct_scenario(none, base) == base);
}

TEST_CASE("explicit elimination orders are validated") {
  const Calculus& pa = calculus_by_name("PA");
  Qcn net(pa, 5);
  net.set(0, 1, rel(pa, "<"));

  CHECK_THROWS_AS(eliminate_variables(net, {1}), Error);
  CHECK_THROWS_AS(eliminate_variables(net, {1, 1, 2}), Error);
  CHECK_THROWS_AS(eliminate_variables(net, {1, 2, 9}), IndexOutOfRange);

  EliminationResult elim = eliminate_variables(net, {4, 3, 2, 1, 0});
  REQUIRE(elim.stack.size() == 3);  // stops once two vertices remain
  CHECK(elim.stack[0].vertex == 4);
  CHECK(elim.stack[1].vertex == 3);
  CHECK(elim.stack[2].vertex == 2);
  CHECK(elim.residual == std::vector<int>{0, 1});
}

TEST_CASE("the benchmark harness emits consistent rows") {
  const Calculus& ia = calculus_by_name("IA");
  BenchConfig config;
  config.calculus = "IA";
  config.pool_name = "CIA";
  config.pool = convex_relations(ia);
  config.ns = {8, 12};
  config.densities = {0.3, 1.0};
  config.repetitions = 2;
  config.seed = 7;

  BenchReport report = bench(config);
  REQUIRE(report.rows.size() == 2 * 2 * 2 * 3);
  for (std::size_t r = 0; r < report.rows.size(); r += 3) {
    CHECK(report.rows[r].solver == "pc");
    CHECK(report.rows[r + 1].solver == "ppc");
    CHECK(report.rows[r + 2].solver == "ve");
    CHECK(report.rows[r].verdict == report.rows[r + 1].verdict);
    CHECK(report.rows[r].verdict == report.rows[r + 2].verdict);
    CHECK(report.rows[r].seed == report.rows[r + 2].seed);
    CHECK(report.rows[r].fill_edges == 0);
    CHECK(report.rows[r + 2].fill_edges == 0);
    // Dense instances are already complete, nothing to fill; sparse ones
    // never fill past the complete graph.
    int n = report.rows[r].n;
    if (report.rows[r].density == 1.0) {
      CHECK(report.rows[r + 1].fill_edges == 0);
    } else {
      CHECK(report.rows[r + 1].fill_edges <
            static_cast<std::size_t>(n * (n - 1) / 2));
    }
  }

  std::string csv = bench_csv(report);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line ==
        "calculus,pool,n,density,solver,seed,verdict,wall_ms,refinements,"
        "fill_edges");
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    ++count;
    CHECK(line.rfind("IA,CIA,", 0) == 0);
  }
  CHECK(count == report.rows.size());

  // Same config, same rows (timing aside): the generator is seeded.
  BenchReport again = bench(config);
  REQUIRE(again.rows.size() == report.rows.size());
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    CHECK(again.rows[r].verdict == report.rows[r].verdict);
    CHECK(again.rows[r].refinements == report.rows[r].refinements);
    CHECK(again.rows[r].fill_edges == report.rows[r].fill_edges);
  }
}
