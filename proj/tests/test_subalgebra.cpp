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

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qstr/calculi.hpp"
#include "qstr/errors.hpp"
#include "qstr/relation_set.hpp"
#include "qstr/subalgebra.hpp"

namespace {

using namespace qstr;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fixture_path(const char* name) {
  return std::string(QSTR_FIXTURE_DIR) + "/" + name;
}

Relation rel(const Calculus& calc, const std::string& names) {
  return parse_relation_names(calc, names);
}

RelationSet set_of(const Calculus& calc, const std::vector<std::string>& rs) {
  std::vector<Relation> v;
  for (const auto& s : rs) v.push_back(rel(calc, s));
  return make_relation_set(calc, v);
}

// All nonempty relations of a small calculus.
RelationSet full_algebra(const Calculus& calc) {
  std::vector<Relation> v;
  const std::uint64_t total = 1ull << calc.atom_count();
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    Relation r = calc.empty_relation();
    for (AtomId a = 0; a < calc.atom_count(); ++a) {
      if (mask >> a & 1u) r.set(a);
    }
    v.push_back(r);
  }
  return make_relation_set(calc, v);
}

bool contains(const RelationSet& set, const Relation& r) {
  return set_contains(set, r);
}

}  // namespace

TEST_CASE("closure of the point algebra atoms") {
  const Calculus& pa = calculus_by_name("PA");
  RelationSet bhat = closure(pa, make_relation_set(pa, {}));
  CHECK(bhat.size() == 4);
  CHECK(serialize_relation_set(pa, bhat) == "<\n=\n>\n< = >\n");
  CHECK(bhat.is_closed);
  CHECK(bhat.contains_all_atoms);
}

TEST_CASE("closure grows a seed into the generated subalgebra") {
  const Calculus& pa = calculus_by_name("PA");
  RelationSet with_leq = closure(pa, set_of(pa, {"< ="}));
  CHECK(serialize_relation_set(pa, with_leq) == "<\n=\n>\n< =\n= >\n< = >\n");
  RelationSet with_neq = closure(pa, set_of(pa, {"< >"}));
  CHECK(serialize_relation_set(pa, with_neq) == "<\n=\n>\n< >\n< = >\n");
}

TEST_CASE("closure of the interval algebra atoms matches the fixture") {
  const Calculus& ia = calculus_by_name("IA");
  RelationSet bhat = closure(ia, make_relation_set(ia, {}));
  CHECK(bhat.size() == 29);
  CHECK(serialize_relation_set(ia, bhat) == read_file(fixture_path("ia_bhat.txt")));
}

TEST_CASE("closure respects the size cap") {
  const Calculus& ia = calculus_by_name("IA");
  CHECK_THROWS_AS(closure(ia, make_relation_set(ia, {}), 20), CapExceeded);
  ClosureOutcome out = close_set(ia, {}, 20, false);
  CHECK(out.status == ClosureOutcome::Status::kCapExceeded);
  CHECK(out.size_at_stop == 20);
}

TEST_CASE("closure cap default reads the environment override") {
  unsetenv("QSTR_CLOSURE_CAP");
  CHECK(default_closure_cap() == 4096);
  setenv("QSTR_CLOSURE_CAP", "128", 1);
  CHECK(default_closure_cap() == 128);
  setenv("QSTR_CLOSURE_CAP", "bogus", 1);
  CHECK(default_closure_cap() == 4096);
  unsetenv("QSTR_CLOSURE_CAP");
}

TEST_CASE("closure rejects foreign and empty seed relations") {
  const Calculus& pa = calculus_by_name("PA");
  const Calculus& ia = calculus_by_name("IA");
  CHECK_THROWS_AS(close_set(pa, {ia.universal()}, 100, false),
                  CalculusMismatch);
  CHECK_THROWS_AS(close_set(pa, {pa.empty_relation()}, 100, false),
                  EmptyRelation);
}

TEST_CASE("triple intersection check finds a genuine witness") {
  const Calculus& pa = calculus_by_name("PA");
  RelationSet bad =
      set_of(pa, {"<", "=", ">", "< = >", "< =", "= >", "< >"});
  HellyWitness w;
  CHECK_FALSE(is_helly(pa, bad, &w));
  CHECK(w.r.intersects(w.s));
  CHECK(w.s.intersects(w.t));
  CHECK(w.r.intersects(w.t));
  CHECK((w.r & w.s & w.t).empty());

  RelationSet good = closure(pa, set_of(pa, {"< ="}));
  CHECK(is_helly(pa, good));
}

TEST_CASE("triples with a disjoint pair are vacuously fine") {
  const Calculus& pa = calculus_by_name("PA");
  CHECK(is_helly(pa, set_of(pa, {"<", ">", "="})));
}

TEST_CASE("a violating set stays violating under supersets") {
  const Calculus& ia = calculus_by_name("IA");
  std::vector<std::string> core = {"b m o", "o s d", "b d f eq"};
  RelationSet base = set_of(ia, core);
  // The core triple intersects pairwise but has no common atom.
  HellyWitness w;
  REQUIRE_FALSE(is_helly(ia, base, &w));
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    std::vector<Relation> grown = base.relations;
    for (int extra = 0; extra < 6; ++extra) {
      Relation r = ia.empty_relation();
      for (AtomId a = 0; a < ia.atom_count(); ++a) {
        if (rng() & 1) r.set(a);
      }
      if (!r.empty()) grown.push_back(r);
    }
    CHECK_FALSE(is_helly(ia, make_relation_set(ia, grown)));
  }
}

TEST_CASE("distributivity fails on the full point algebra with a witness") {
  const Calculus& pa = calculus_by_name("PA");
  RelationSet full = full_algebra(pa);
  DistributivityWitness w;
  REQUIRE_FALSE(is_distributive(pa, full, &w));
  // Recompute both sides from the witness triple.
  Relation st = w.s & w.t;
  REQUIRE_FALSE(st.empty());
  Relation lhs = w.left_side ? pa.compose(w.r, st) : pa.compose(st, w.r);
  Relation rhs = w.left_side
                     ? (pa.compose(w.r, w.s) & pa.compose(w.r, w.t))
                     : (pa.compose(w.s, w.r) & pa.compose(w.t, w.r));
  CHECK(lhs == w.lhs);
  CHECK(rhs == w.rhs);
  CHECK(lhs != rhs);
}

TEST_CASE("distributivity holds on the known good sets") {
  const Calculus& pa = calculus_by_name("PA");
  CHECK(is_distributive(pa, closure(pa, make_relation_set(pa, {}))));
  CHECK(is_distributive(pa, closure(pa, set_of(pa, {"< ="}))));
  CHECK(is_distributive(pa, closure(pa, set_of(pa, {"< >"}))));

  const Calculus& ia = calculus_by_name("IA");
  CHECK(is_distributive(ia, convex_relations(ia)));
  CHECK(is_distributive(ia, closure(ia, make_relation_set(ia, {}))));
}

TEST_CASE("distributivity checking demands a subalgebra") {
  const Calculus& pa = calculus_by_name("PA");
  CHECK_THROWS_AS(is_distributive(pa, set_of(pa, {"<", "="})),
                  NotASubalgebra);
  // Composition closure violated: missing the universal relation.
  CHECK_THROWS_AS(is_distributive(pa, set_of(pa, {"<", "=", ">"})),
                  NotASubalgebra);
  // Converse closure violated.
  CHECK_THROWS_AS(
      is_distributive(pa, set_of(pa, {"<", "=", ">", "< = >", "< ="})),
      NotASubalgebra);
}

TEST_CASE("the two characterisations agree") {
  const Calculus& pa = calculus_by_name("PA");
  CrossCheck detail;
  CHECK(helly_equals_distributive_check(pa, closure(pa, set_of(pa, {"< ="})),
                                        &detail));
  CHECK(detail.helly);
  CHECK(detail.distributive);

  CHECK(helly_equals_distributive_check(pa, full_algebra(pa), &detail));
  CHECK_FALSE(detail.helly);
  CHECK_FALSE(detail.distributive);

  const Calculus& rcc8 = calculus_by_name("RCC8");
  CHECK(helly_equals_distributive_check(
      rcc8, closure(rcc8, make_relation_set(rcc8, {})), &detail));
  CHECK(detail.helly);
  CHECK(detail.distributive);
}

TEST_CASE("point algebra enumeration finds the two known families") {
  const Calculus& pa = calculus_by_name("PA");
  EnumerationOptions opts;
  opts.cross_validate = true;
  EnumerationResult res = enumerate_maximal_distributive(pa, opts);
  REQUIRE(res.maximal.size() == 2);
  CHECK(serialize_relation_set(pa, res.maximal[0]) ==
        "<\n=\n>\n< =\n= >\n< = >\n");
  CHECK(serialize_relation_set(pa, res.maximal[1]) ==
        "<\n=\n>\n< >\n< = >\n");
  CHECK(res.bhat.size() == 4);
  CHECK(res.candidates_examined == 3);  // 2^3 - 1 minus the 4 closure members
  CHECK(res.d_members == 3);            // <=, >=, !=
  CHECK(res.cross_checks == res.closures_completed);
  CHECK(res.cross_checks == res.cross_agreements);

  // Maximality, exhaustively: any outside relation breaks the property.
  for (const RelationSet& s : res.maximal) {
    RelationSet probe = full_algebra(pa);
    for (const Relation& r : probe.relations) {
      if (contains(s, r)) continue;
      std::vector<Relation> seed = s.relations;
      seed.push_back(r);
      ClosureOutcome out = close_set(pa, seed, 64, true);
      CHECK(out.status == ClosureOutcome::Status::kHellyViolation);
    }
  }
}

TEST_CASE("product subalgebra assembles componentwise") {
  const Calculus& pa = calculus_by_name("PA");
  const Calculus& cra = calculus_by_name("CRA");
  RelationSet cpa = closure(pa, set_of(pa, {"< ="}));
  RelationSet spa = closure(pa, set_of(pa, {"< >"}));
  RelationSet cc = product_subalgebra(cra, pa, pa, cpa, cpa);
  CHECK(cc.size() == 36);
  CHECK(is_distributive(cra, cc));
  RelationSet cs = product_subalgebra(cra, pa, pa, cpa, spa);
  CHECK(cs.size() == 30);
  CHECK(is_distributive(cra, cs));

  // The compass relation NW|N|NE is <*> + =*> + >*> = (< = >) x (>).
  CHECK(contains(cc, rel(cra, "NW N NE")));

  CHECK_THROWS_AS(product_subalgebra(cra, pa, pa, set_of(pa, {"<"}), cpa),
                  NotASubalgebra);
  const Calculus& ia = calculus_by_name("IA");
  CHECK_THROWS_AS(product_subalgebra(cra, pa, pa, cpa,
                                     closure(ia, make_relation_set(ia, {}))),
                  CalculusMismatch);
}

TEST_CASE("base closure products sit inside every compass family") {
  const Calculus& pa = calculus_by_name("PA");
  const Calculus& cra = calculus_by_name("CRA");
  RelationSet bpa = closure(pa, make_relation_set(pa, {}));
  RelationSet bb = product_subalgebra(cra, pa, pa, bpa, bpa);
  EnumerationResult res = enumerate_maximal_distributive(cra);
  REQUIRE(res.maximal.size() == 4);
  for (const RelationSet& s : res.maximal) {
    for (const Relation& r : bb.relations) CHECK(contains(s, r));
  }
}

TEST_CASE("interval algebra enumeration matches the published tables") {
  const Calculus& ia = calculus_by_name("IA");
  EnumerationResult res = enumerate_maximal_distributive(ia);
  CHECK(res.candidates_examined == 8162);
  CHECK(res.d_members == 105);
  REQUIRE(res.maximal.size() == 2);

  CHECK(serialize_relation_set(ia, res.bhat) ==
        read_file(fixture_path("ia_bhat.txt")));

  RelationSet cia = parse_relation_set(
      ia, read_file(fixture_path("ia_bhat.txt")) +
              read_file(fixture_path("ia_cia_extra.txt")));
  canonicalize(ia, cia);
  CHECK(cia.size() == 82);
  CHECK(serialize_relation_set(ia, res.maximal[0]) ==
        serialize_relation_set(ia, cia));

  RelationSet sia = parse_relation_set(
      ia, read_file(fixture_path("ia_bhat.txt")) +
              read_file(fixture_path("ia_sia_extra.txt")));
  canonicalize(ia, sia);
  CHECK(sia.size() == 81);
  CHECK(serialize_relation_set(ia, res.maximal[1]) ==
        serialize_relation_set(ia, sia));

  // The larger family is exactly the convexity class.
  CHECK(serialize_relation_set(ia, res.maximal[0]) ==
        serialize_relation_set(ia, convex_relations(ia)));

  // The two families overlap exactly in the base closure.
  std::size_t common = 0;
  for (const Relation& r : res.maximal[0].relations) {
    if (contains(res.maximal[1], r)) ++common;
  }
  CHECK(common == res.bhat.size());

  // Maximality, sampled: outside relations break the property.
  std::mt19937_64 rng(4711);
  for (const RelationSet& s : res.maximal) {
    int probes = 0;
    while (probes < 25) {
      Relation r = ia.empty_relation();
      for (AtomId a = 0; a < ia.atom_count(); ++a) {
        if (rng() & 1) r.set(a);
      }
      if (r.empty() || contains(s, r)) continue;
      std::vector<Relation> seed = s.relations;
      seed.push_back(r);
      ClosureOutcome out = close_set(ia, seed, 8192, true);
      CHECK(out.status == ClosureOutcome::Status::kHellyViolation);
      ++probes;
    }
  }
}

TEST_CASE("region algebra enumerations find two families each") {
  const Calculus& rcc5 = calculus_by_name("RCC5");
  EnumerationResult r5 = enumerate_maximal_distributive(rcc5);
  CHECK(r5.bhat.size() == 12);
  REQUIRE(r5.maximal.size() == 2);
  CHECK(r5.maximal[0].size() == 14);
  CHECK(r5.maximal[1].size() == 20);
  CHECK(serialize_relation_set(rcc5, r5.maximal[0]) ==
        serialize_relation_set(rcc5, convex_relations(rcc5)));

  const Calculus& rcc8 = calculus_by_name("RCC8");
  EnumerationResult r8 = enumerate_maximal_distributive(rcc8);
  CHECK(r8.bhat.size() == 37);
  REQUIRE(r8.maximal.size() == 2);
  CHECK(r8.maximal[0].size() == 64);
  CHECK(r8.maximal[1].size() == 41);

  for (const EnumerationResult* res : {&r5, &r8}) {
    const Calculus& calc =
        res == &r5 ? rcc5 : rcc8;
    for (const RelationSet& s : res->maximal) {
      CHECK(is_distributive(calc, s));
      for (const Relation& r : res->bhat.relations) CHECK(contains(s, r));
      // Maximality, exhaustively over the whole calculus.
      RelationSet all = full_algebra(calc);
      for (const Relation& r : all.relations) {
        if (contains(s, r)) continue;
        std::vector<Relation> seed = s.relations;
        seed.push_back(r);
        ClosureOutcome out = close_set(calc, seed, 4096, true);
        CHECK(out.status == ClosureOutcome::Status::kHellyViolation);
      }
    }
  }
}

TEST_CASE("compass enumeration equals the point algebra products") {
  const Calculus& pa = calculus_by_name("PA");
  const Calculus& cra = calculus_by_name("CRA");
  EnumerationResult res = enumerate_maximal_distributive(cra);
  REQUIRE(res.maximal.size() == 4);
  CHECK(res.bhat.size() == 16);
  CHECK(res.maximal[0].size() == 36);

  RelationSet cpa = closure(pa, set_of(pa, {"< ="}));
  RelationSet spa = closure(pa, set_of(pa, {"< >"}));
  std::vector<std::string> expected = {
      serialize_relation_set(cra, product_subalgebra(cra, pa, pa, cpa, cpa)),
      serialize_relation_set(cra, product_subalgebra(cra, pa, pa, cpa, spa)),
      serialize_relation_set(cra, product_subalgebra(cra, pa, pa, spa, cpa)),
      serialize_relation_set(cra, product_subalgebra(cra, pa, pa, spa, spa)),
  };
  std::vector<std::string> got;
  for (const RelationSet& s : res.maximal) {
    got.push_back(serialize_relation_set(cra, s));
  }
  CHECK(got[0] == expected[0]);  // the convexity class leads
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);

  // Every member of every family factors into its projections.
  for (const RelationSet& s : res.maximal) {
    for (const Relation& r : s.relations) {
      Relation x = pa.empty_relation();
      Relation y = pa.empty_relation();
      r.for_each_atom([&](AtomId a) {
        auto [a1, a2] = product_unpack(a, pa.atom_count());
        x.set(a1);
        y.set(a2);
      });
      Relation rebuilt = cra.empty_relation();
      x.for_each_atom([&](AtomId a1) {
        y.for_each_atom([&](AtomId a2) {
          rebuilt.set(product_pack(a1, a2, pa.atom_count()));
        });
      });
      CHECK(rebuilt == r);
    }
  }
}

TEST_CASE("rectangle enumeration is the four interval products") {
  const Calculus& ra = calculus_by_name("RA");
  const Calculus& ia = calculus_by_name("IA");
  EnumerationResult res = enumerate_maximal_distributive(ra);
  REQUIRE(res.maximal.size() == 4);
  CHECK(res.bhat.size() == 841);
  CHECK(res.maximal[0].size() == 6724);
  CHECK(res.maximal[1].size() == 6642);
  CHECK(res.maximal[2].size() == 6642);
  CHECK(res.maximal[3].size() == 6561);

  // First family = products of the interval convexity class with itself.
  RelationSet cia = convex_relations(ia);
  CHECK(serialize_relation_set(
            ra, product_subalgebra(ra, ia, ia, cia, cia)) ==
        serialize_relation_set(ra, res.maximal[0]));

  // Maximality of the leading family, outside relations sampled in the
  // two shapes they can take.

  // A relation that is not a full product of its projections: together
  // with two base strips it violates the triple intersection property.
  auto strip_x = [&](AtomId alpha) {
    Relation s = ra.empty_relation();
    for (AtomId b = 0; b < ia.atom_count(); ++b) {
      s.set(product_pack(alpha, b, ia.atom_count()));
    }
    return s;
  };
  auto strip_y = [&](AtomId beta) {
    Relation s = ra.empty_relation();
    for (AtomId a = 0; a < ia.atom_count(); ++a) {
      s.set(product_pack(a, beta, ia.atom_count()));
    }
    return s;
  };
  std::mt19937_64 rng(31337);
  int ragged = 0;
  while (ragged < 25) {
    Relation r = ra.empty_relation();
    for (int bits = 0; bits < 5; ++bits) {
      r.set(static_cast<AtomId>(rng() % ra.atom_count()));
    }
    Relation x = ia.empty_relation();
    Relation y = ia.empty_relation();
    r.for_each_atom([&](AtomId a) {
      auto [a1, a2] = product_unpack(a, ia.atom_count());
      x.set(a1);
      y.set(a2);
    });
    AtomId alpha = -1, beta = -1;
    bool full = true;
    x.for_each_atom([&](AtomId a1) {
      y.for_each_atom([&](AtomId a2) {
        if (!r.test(product_pack(a1, a2, ia.atom_count()))) {
          full = false;
          alpha = a1;
          beta = a2;
        }
      });
    });
    if (full) continue;  // a genuine product; handled below
    Relation s = strip_x(alpha);
    Relation t = strip_y(beta);
    CHECK(r.intersects(s));
    CHECK(r.intersects(t));
    CHECK(s.intersects(t));
    CHECK_FALSE((r & s).intersects(t));
    ++ragged;
  }

  // A full product outside the family has a factor outside the interval
  // family; that factor already breaks the interval-level closure.
  RelationSet sia_extra =
      parse_relation_set(ia, read_file(fixture_path("ia_sia_extra.txt")));
  REQUIRE_FALSE(sia_extra.relations.empty());
  Relation bad_factor = sia_extra.relations.front();
  REQUIRE_FALSE(contains(cia, bad_factor));
  std::vector<Relation> seed = cia.relations;
  seed.push_back(bad_factor);
  ClosureOutcome out = close_set(ia, seed, 8192, true);
  CHECK(out.status == ClosureOutcome::Status::kHellyViolation);
}
