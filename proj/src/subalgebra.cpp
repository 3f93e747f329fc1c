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

#include "qstr/subalgebra.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qstr/calculi.hpp"
#include "qstr/errors.hpp"

namespace qstr {
namespace {

Relation relation_from_mask(const Calculus& calc, std::uint64_t mask) {
  Relation r = calc.empty_relation();
  for (AtomId a = 0; a < calc.atom_count(); ++a) {
    if (mask >> a & 1u) r.set(a);
  }
  return r;
}

// Triangular bit rows: row k records which members 0..k intersect member k.
class MeetRows {
 public:
  // Rows must be pushed in index order.
  void push(const std::vector<Relation>& members, std::size_t k) {
    std::vector<std::uint64_t> row(k / 64 + 1, 0);
    for (std::size_t i = 0; i <= k; ++i) {
      if (members[k].intersects(members[i])) row[i / 64] |= 1ull << (i % 64);
    }
    rows_.push_back(std::move(row));
  }

  // First triple a < b < k intersecting pairwise but with no common atom.
  // Scanning only triples that involve the newest member covers every
  // triple exactly once over the lifetime of a growing set.
  std::optional<HellyWitness> scan(const std::vector<Relation>& members,
                                   std::size_t k) const {
    const std::vector<std::uint64_t>& rk = rows_[k];
    for (std::size_t wb = 0; wb < rk.size(); ++wb) {
      std::uint64_t bbits = rk[wb];
      if (wb == k / 64) bbits &= ~(~0ull << (k % 64));
      while (bbits) {
        const std::size_t b = wb * 64 + std::countr_zero(bbits);
        bbits &= bbits - 1;
        const std::vector<std::uint64_t>& rb = rows_[b];
        for (std::size_t wa = 0; wa <= b / 64; ++wa) {
          std::uint64_t abits = rk[wa] & rb[wa];
          if (wa == b / 64) abits &= ~(~0ull << (b % 64));
          while (abits) {
            const std::size_t a = wa * 64 + std::countr_zero(abits);
            abits &= abits - 1;
            if (!(members[a] & members[b]).intersects(members[k])) {
              return HellyWitness{members[a], members[b], members[k]};
            }
          }
        }
      }
    }
    return std::nullopt;
  }

 private:
  std::vector<std::vector<std::uint64_t>> rows_;
};

class ClosureEngine {
 public:
  ClosureEngine(const Calculus& calc, std::size_t cap, bool fail_fast)
      : calc_(calc), cap_(cap), fail_fast_(fail_fast) {}

  ClosureOutcome run(const std::vector<Relation>& seed) {
    bool ok = true;
    for (AtomId a = 0; ok && a < calc_.atom_count(); ++a) {
      ok = add(calc_.atom_relation(a));
    }
    for (std::size_t s = 0; ok && s < seed.size(); ++s) {
      if (seed[s].calculus_id() != calc_.id()) {
        throw CalculusMismatch("closure seed relation from another calculus");
      }
      if (seed[s].empty()) throw EmptyRelation("closure seed");
      ok = add(seed[s]);
    }
    // Pairs (u, v <= u) only: the pair (u, w) for a later w is handled when
    // w itself is processed, so each unordered pair is visited once.
    for (std::size_t u = 0; ok && u < members_.size(); ++u) {
      const Relation cu = members_[u];
      ok = add(calc_.converse(cu));
      for (std::size_t v = 0; ok && v <= u; ++v) {
        const Relation cv = members_[v];
        ok = add(calc_.compose(cu, cv));
        if (ok && v != u) ok = add(calc_.compose(cv, cu));
        if (ok && v != u && cu.intersects(cv)) ok = add(cu & cv);
      }
    }
    return finish();
  }

 private:
  bool add(const Relation& r) {
    if (r.empty()) return true;
    if (index_.count(r)) return true;
    if (members_.size() >= cap_) {
      status_ = ClosureOutcome::Status::kCapExceeded;
      return false;
    }
    index_.emplace(r, members_.size());
    members_.push_back(r);
    if (fail_fast_) {
      const std::size_t k = members_.size() - 1;
      rows_.push(members_, k);
      if (auto w = rows_.scan(members_, k)) {
        status_ = ClosureOutcome::Status::kHellyViolation;
        witness_ = *w;
        return false;
      }
    }
    return true;
  }

  ClosureOutcome finish() {
    ClosureOutcome out;
    out.status = status_;
    out.size_at_stop = members_.size();
    out.witness = witness_;
    if (status_ == ClosureOutcome::Status::kCompleted) {
      out.set.calculus_id = calc_.id();
      out.set.relations = std::move(members_);
      canonicalize(calc_, out.set);
      out.set.is_closed = true;
      out.set.contains_all_atoms = true;
    }
    return out;
  }

  const Calculus& calc_;
  std::size_t cap_;
  bool fail_fast_;
  std::vector<Relation> members_;
  std::unordered_map<Relation, std::size_t, RelationHash> index_;
  MeetRows rows_;
  ClosureOutcome::Status status_ = ClosureOutcome::Status::kCompleted;
  std::optional<HellyWitness> witness_;
};

std::unordered_set<Relation, RelationHash> member_index(
    const RelationSet& set) {
  return {set.relations.begin(), set.relations.end()};
}

bool contains_all_of(const std::unordered_set<Relation, RelationHash>& outer,
                     const RelationSet& inner) {
  for (const Relation& r : inner.relations) {
    if (!outer.count(r)) return false;
  }
  return true;
}

// Deterministic output order: the set covering the convexity class comes
// first when the calculus carries a neighbourhood order, then larger sets,
// then canonical text.
void order_maximal(const Calculus& calc, std::vector<RelationSet>* sets) {
  std::optional<RelationSet> convex;
  if (calc.has_cng()) convex = convex_relations(calc);
  std::sort(sets->begin(), sets->end(),
            [&](const RelationSet& a, const RelationSet& b) {
              if (convex) {
                const bool ca = contains_all_of(member_index(a), *convex);
                const bool cb = contains_all_of(member_index(b), *convex);
                if (ca != cb) return ca;
              }
              if (a.size() != b.size()) return a.size() > b.size();
              return serialize_relation_set(calc, a) <
                     serialize_relation_set(calc, b);
            });
}

// PA, IA, RCC5, RCC8: every relation outside the base closure is tried as
// a single extension; the compatible extensions must split into exactly two
// mutually compatible groups whose joint closures are the two answers.
EnumerationResult enumerate_two_clique(const Calculus& calc,
                                       const EnumerationOptions& opts) {
  const std::size_t cap = opts.cap ? opts.cap : default_closure_cap();
  EnumerationResult res;

  auto audit = [&](const RelationSet& s) {
    if (!opts.cross_validate) return;
    ++res.cross_checks;
    if (helly_equals_distributive_check(calc, s)) ++res.cross_agreements;
  };

  ClosureOutcome base = close_set(calc, {}, cap, true);
  if (base.status != ClosureOutcome::Status::kCompleted) {
    throw StructureViolation(
        "the closure of the atoms fails the triple intersection property");
  }
  res.bhat = base.set;
  ++res.closures_completed;
  audit(res.bhat);

  const std::unordered_set<Relation, RelationHash> base_members =
      member_index(res.bhat);

  std::vector<Relation> extenders;
  const std::uint64_t total = 1ull << calc.atom_count();
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    Relation r = relation_from_mask(calc, mask);
    if (base_members.count(r)) continue;
    ++res.candidates_examined;
    std::vector<Relation> seed = res.bhat.relations;
    seed.push_back(r);
    ClosureOutcome out = close_set(calc, seed, cap, true);
    if (out.status == ClosureOutcome::Status::kCapExceeded) {
      throw CapExceeded(out.size_at_stop);
    }
    if (out.status != ClosureOutcome::Status::kCompleted) continue;
    ++res.closures_completed;
    audit(out.set);
    extenders.push_back(r);
  }
  res.d_members = extenders.size();
  if (extenders.empty()) {
    throw StructureViolation("no relation extends the base closure");
  }

  const std::size_t m = extenders.size();
  std::vector<char> edge(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      std::vector<Relation> seed = res.bhat.relations;
      seed.push_back(extenders[i]);
      seed.push_back(extenders[j]);
      ClosureOutcome out = close_set(calc, seed, cap, true);
      if (out.status == ClosureOutcome::Status::kCapExceeded) {
        throw CapExceeded(out.size_at_stop);
      }
      if (out.status != ClosureOutcome::Status::kCompleted) continue;
      ++res.closures_completed;
      audit(out.set);
      edge[i * m + j] = edge[j * m + i] = 1;
    }
  }

  std::vector<int> comp(m, -1);
  int ncomp = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<std::size_t> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < m; ++v) {
        if (edge[u * m + v] && comp[v] < 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
      }
    }
    ++ncomp;
  }
  if (ncomp != 2) {
    throw StructureViolation("the extension graph has " +
                             std::to_string(ncomp) +
                             " components, expected two");
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (comp[i] == comp[j] && !edge[i * m + j]) {
        throw StructureViolation(
            "an extension-graph component is not mutually compatible");
      }
    }
  }

  std::vector<RelationSet> finals;
  for (int c = 0; c < 2; ++c) {
    std::vector<Relation> seed = res.bhat.relations;
    for (std::size_t i = 0; i < m; ++i) {
      if (comp[i] == c) seed.push_back(extenders[i]);
    }
    ClosureOutcome out = close_set(calc, seed, cap, true);
    if (out.status != ClosureOutcome::Status::kCompleted) {
      throw StructureViolation(
          "a component's joint closure is not distributive");
    }
    ++res.closures_completed;
    audit(out.set);
    finals.push_back(std::move(out.set));
  }
  order_maximal(calc, &finals);
  res.maximal = std::move(finals);
  return res;
}

// CRA: the distinct single-extension closures are compared pairwise; the
// ones not contained in any other must absorb or reject everything else.
EnumerationResult enumerate_seed_procedure(const Calculus& calc,
                                           const EnumerationOptions& opts) {
  const std::size_t cap = opts.cap ? opts.cap : default_closure_cap();
  EnumerationResult res;

  auto audit = [&](const RelationSet& s) {
    if (!opts.cross_validate) return;
    ++res.cross_checks;
    if (helly_equals_distributive_check(calc, s)) ++res.cross_agreements;
  };

  ClosureOutcome base = close_set(calc, {}, cap, true);
  if (base.status != ClosureOutcome::Status::kCompleted) {
    throw StructureViolation(
        "the closure of the atoms fails the triple intersection property");
  }
  res.bhat = base.set;
  ++res.closures_completed;
  audit(res.bhat);

  const std::unordered_set<Relation, RelationHash> base_members =
      member_index(res.bhat);

  std::vector<RelationSet> seeds;
  std::unordered_set<std::string> seen;
  const std::uint64_t total = 1ull << calc.atom_count();
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    Relation r = relation_from_mask(calc, mask);
    if (base_members.count(r)) continue;
    ++res.candidates_examined;
    std::vector<Relation> seed = res.bhat.relations;
    seed.push_back(r);
    ClosureOutcome out = close_set(calc, seed, cap, true);
    if (out.status == ClosureOutcome::Status::kCapExceeded) {
      throw CapExceeded(out.size_at_stop);
    }
    if (out.status != ClosureOutcome::Status::kCompleted) continue;
    ++res.d_members;
    ++res.closures_completed;
    audit(out.set);
    if (seen.insert(serialize_relation_set(calc, out.set)).second) {
      seeds.push_back(std::move(out.set));
    }
  }

  std::vector<char> is_candidate(seeds.size(), 1);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = 0; j < seeds.size(); ++j) {
      if (i == j) continue;
      if (seeds[i].size() < seeds[j].size() &&
          contains_all_of(member_index(seeds[j]), seeds[i])) {
        is_candidate[i] = 0;
        break;
      }
    }
  }

  auto join = [&](const RelationSet& a, const RelationSet& b) {
    std::vector<Relation> seed = a.relations;
    seed.insert(seed.end(), b.relations.begin(), b.relations.end());
    return close_set(calc, seed, cap, true);
  };

  std::vector<std::string> candidate_keys;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (is_candidate[i]) {
      candidate_keys.push_back(serialize_relation_set(calc, seeds[i]));
    }
  }

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i + 1; j < seeds.size(); ++j) {
      ClosureOutcome out = join(seeds[i], seeds[j]);
      if (out.status == ClosureOutcome::Status::kCapExceeded) {
        throw CapExceeded(out.size_at_stop);
      }
      const bool clean = out.status == ClosureOutcome::Status::kCompleted;
      if (clean) {
        ++res.closures_completed;
        audit(out.set);
      }
      if (is_candidate[i] && is_candidate[j]) {
        if (clean) {
          throw StructureViolation(
              "two maximal candidate sets close cleanly together");
        }
      } else if (!is_candidate[i] && !is_candidate[j]) {
        if (clean) {
          const std::string key = serialize_relation_set(calc, out.set);
          if (std::find(candidate_keys.begin(), candidate_keys.end(), key) ==
              candidate_keys.end()) {
            throw StructureViolation(
                "a join of two non-candidate sets completes to an unknown "
                "set");
          }
        }
      } else {
        const RelationSet& cand = is_candidate[i] ? seeds[i] : seeds[j];
        const RelationSet& other = is_candidate[i] ? seeds[j] : seeds[i];
        if (contains_all_of(member_index(cand), other)) continue;
        if (clean) {
          throw StructureViolation(
              "a candidate set absorbs a set it does not contain");
        }
      }
    }
  }

  std::vector<RelationSet> finals;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (is_candidate[i]) finals.push_back(std::move(seeds[i]));
  }
  order_maximal(calc, &finals);
  res.maximal = std::move(finals);
  return res;
}

// RA: the four products of the interval-calculus answers, revalidated by
// factor-level distributivity and randomized triple sampling.
EnumerationResult enumerate_product_construction(
    const Calculus& calc, const EnumerationOptions& opts) {
  const Calculus& ia = calculus_by_name("IA");
  EnumerationOptions factor_opts;
  factor_opts.cap = opts.cap;
  EnumerationResult factors = enumerate_two_clique(ia, factor_opts);

  for (const RelationSet& f : factors.maximal) {
    if (!is_distributive(ia, f)) {
      throw StructureViolation("a factor set is not distributive");
    }
  }

  EnumerationResult res;
  res.bhat = product_subalgebra(calc, ia, ia, factors.bhat, factors.bhat);

  const RelationSet& c = factors.maximal[0];
  const RelationSet& s = factors.maximal[1];
  res.maximal.push_back(product_subalgebra(calc, ia, ia, c, c));
  res.maximal.push_back(product_subalgebra(calc, ia, ia, c, s));
  res.maximal.push_back(product_subalgebra(calc, ia, ia, s, c));
  res.maximal.push_back(product_subalgebra(calc, ia, ia, s, s));

  std::mt19937_64 rng(opts.sample_seed);
  for (const RelationSet& prod : res.maximal) {
    if (!contains_all_of(member_index(prod), res.bhat)) {
      throw StructureViolation(
          "a product set does not contain the closure of the atoms");
    }
    const std::vector<Relation>& v = prod.relations;
    for (std::size_t t = 0; t < opts.helly_samples; ++t) {
      const std::size_t i = rng() % v.size();
      const std::size_t j = rng() % v.size();
      const std::size_t k = rng() % v.size();
      if (i == j || j == k || i == k) continue;
      if (!v[i].intersects(v[j]) || !v[j].intersects(v[k]) ||
          !v[i].intersects(v[k])) {
        continue;
      }
      if (!(v[i] & v[j]).intersects(v[k])) {
        throw StructureViolation(
            "a sampled triple violates the intersection property in a "
            "product set");
      }
    }
  }
  return res;
}

}  // namespace

std::size_t default_closure_cap() {
  if (const char* env = std::getenv("QSTR_CLOSURE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) {
      return static_cast<std::size_t>(v);
    }
  }
  return 4096;
}

ClosureOutcome close_set(const Calculus& calc,
                         const std::vector<Relation>& seed, std::size_t cap,
                         bool fail_fast_helly) {
  ClosureEngine engine(calc, cap, fail_fast_helly);
  return engine.run(seed);
}

RelationSet closure(const Calculus& calc, const RelationSet& seed,
                    std::size_t cap) {
  if (!seed.relations.empty() && seed.calculus_id != calc.id()) {
    throw CalculusMismatch("closure seed set from another calculus");
  }
  ClosureOutcome out = close_set(
      calc, seed.relations, cap ? cap : default_closure_cap(), false);
  if (out.status == ClosureOutcome::Status::kCapExceeded) {
    throw CapExceeded(out.size_at_stop);
  }
  return std::move(out.set);
}

bool is_helly(const Calculus& calc, const RelationSet& set,
              HellyWitness* witness) {
  if (!set.relations.empty() && set.calculus_id != calc.id()) {
    throw CalculusMismatch("triple intersection check");
  }
  MeetRows rows;
  for (std::size_t k = 0; k < set.relations.size(); ++k) {
    rows.push(set.relations, k);
    if (auto w = rows.scan(set.relations, k)) {
      if (witness) *witness = *w;
      return false;
    }
  }
  return true;
}

bool is_distributive(const Calculus& calc, const RelationSet& set,
                     DistributivityWitness* witness) {
  if (set.calculus_id != calc.id()) {
    throw CalculusMismatch("distributivity check");
  }
  const std::vector<Relation>& ms = set.relations;
  const std::size_t n = ms.size();

  std::unordered_map<Relation, std::int32_t, RelationHash> index;
  index.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (ms[i].empty()) {
      throw NotASubalgebra("the empty relation is not a valid member");
    }
    index.emplace(ms[i], static_cast<std::int32_t>(i));
  }
  for (AtomId a = 0; a < calc.atom_count(); ++a) {
    if (!index.count(calc.atom_relation(a))) {
      throw NotASubalgebra("missing the atom " + calc.atom_name(a));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.count(calc.converse(ms[i]))) {
      throw NotASubalgebra("not closed under converse");
    }
  }

  std::vector<std::int32_t> comp(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto it = index.find(calc.compose(ms[i], ms[j]));
      if (it == index.end()) {
        throw NotASubalgebra("not closed under composition");
      }
      comp[i * n + j] = it->second;
    }
  }
  std::vector<std::int32_t> meet(n * n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    meet[i * n + i] = static_cast<std::int32_t>(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (!ms[i].intersects(ms[j])) continue;
      const auto it = index.find(ms[i] & ms[j]);
      if (it == index.end()) {
        throw NotASubalgebra("not closed under nonempty intersection");
      }
      meet[i * n + j] = meet[j * n + i] = it->second;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t* ci = &comp[i * n];
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::int32_t m = meet[j * n + k];
        if (m < 0) continue;
        if (ci[m] != meet[ci[j] * n + ci[k]]) {
          if (witness) {
            *witness = {ms[i],     ms[j],
                        ms[k],     true,
                        ms[ci[m]], ms[meet[ci[j] * n + ci[k]]]};
          }
          return false;
        }
        const std::int32_t left = comp[m * n + i];
        const std::int32_t right = meet[comp[j * n + i] * n + comp[k * n + i]];
        if (left != right) {
          if (witness) {
            *witness = {ms[i], ms[j], ms[k], false, ms[left], ms[right]};
          }
          return false;
        }
      }
    }
  }
  return true;
}

bool helly_equals_distributive_check(const Calculus& calc,
                                     const RelationSet& set,
                                     CrossCheck* detail) {
  CrossCheck c;
  c.helly = is_helly(calc, set);
  c.distributive = is_distributive(calc, set);
  if (detail) *detail = c;
  return c.agree();
}

EnumerationResult enumerate_maximal_distributive(
    const Calculus& calc, const EnumerationOptions& opts) {
  if (calc.name() == "RA") return enumerate_product_construction(calc, opts);
  if (calc.name() == "CRA") return enumerate_seed_procedure(calc, opts);
  if (calc.atom_count() <= 16) return enumerate_two_clique(calc, opts);
  throw UnsupportedCalculus(
      calc.name() +
      ": enumeration needs at most 16 atoms or a product decomposition");
}

RelationSet product_subalgebra(const Calculus& product, const Calculus& left,
                               const Calculus& right, const RelationSet& ls,
                               const RelationSet& rs) {
  if (ls.calculus_id != left.id() || rs.calculus_id != right.id()) {
    throw CalculusMismatch("product factors");
  }
  if (product.atom_count() != left.atom_count() * right.atom_count()) {
    throw CalculusMismatch("target calculus is not the factors' product");
  }
  auto ensure = [](const Calculus& c, const RelationSet& s,
                   const char* which) {
    if (s.is_closed && s.contains_all_atoms) return;
    RelationSet copy = s;
    const std::string reason = analyze_subalgebra(c, copy);
    if (!reason.empty()) {
      throw NotASubalgebra(std::string(which) + " factor: " + reason);
    }
  };
  ensure(left, ls, "left");
  ensure(right, rs, "right");

  RelationSet out;
  out.calculus_id = product.id();
  out.relations.reserve(ls.relations.size() * rs.relations.size());
  for (const Relation& a : ls.relations) {
    for (const Relation& b : rs.relations) {
      if (a.empty() || b.empty()) continue;
      Relation p = product.empty_relation();
      a.for_each_atom([&](AtomId a1) {
        b.for_each_atom([&](AtomId a2) {
          p.set(product_pack(a1, a2, right.atom_count()));
        });
      });
      out.relations.push_back(p);
    }
  }
  canonicalize(product, out);
  out.is_closed = true;
  out.contains_all_atoms = true;
  return out;
}

}  // namespace qstr
