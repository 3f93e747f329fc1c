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

#include "qstr/calculi.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

namespace qstr {

namespace {

int cmp3(long long a, long long b) { return a < b ? -1 : (a == b ? 0 : 1); }

// ---------------------------------------------------------------------------
// Point calculus

const char* const kPaAtoms[] = {"<", "=", ">"};

// Atom indices below match kPaAtoms.
constexpr AtomId kLt = 0, kEqPt = 1, kGt = 2;

// Composition of two point atoms by enumerating all orderings of three
// points on at most three levels.
std::uint32_t pa_compose_mask(AtomId a, AtomId b) {
  std::uint32_t out = 0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z) {
        if (pa_classify(x, y) != a || pa_classify(y, z) != b) continue;
        out |= 1u << pa_classify(x, z);
      }
  return out;
}

std::vector<AtomId> mask_to_atoms(std::uint32_t mask) {
  std::vector<AtomId> out;
  for (AtomId a = 0; mask; ++a, mask >>= 1)
    if (mask & 1) out.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------
// Interval calculus

const char* const kIaAtoms[] = {"b",  "m",  "o",  "s",  "d",  "f", "eq",
                                "fi", "di", "si", "oi", "mi", "bi"};
constexpr int kIaCount = 13;

const std::pair<const char*, const char*> kIaConversePairs[] = {
    {"b", "bi"}, {"m", "mi"}, {"o", "oi"}, {"s", "si"},
    {"d", "di"}, {"f", "fi"}, {"eq", "eq"}};

// Dimension of an atom as a region of the endpoint configuration space:
// two fewer than two per endpoint equality.
const int kIaDims[kIaCount] = {2, 1, 2, 1, 2, 1, 0, 1, 2, 1, 2, 1, 2};

// Cover edges of the interval neighbourhood lattice, smaller first.
const std::pair<const char*, const char*> kIaCng[] = {
    {"b", "m"},   {"m", "o"},   {"o", "s"},   {"o", "fi"},
    {"s", "d"},   {"s", "eq"},  {"fi", "eq"}, {"fi", "di"},
    {"d", "f"},   {"eq", "f"},  {"eq", "si"}, {"di", "si"},
    {"f", "oi"},  {"si", "oi"}, {"oi", "mi"}, {"mi", "bi"}};

// Full 13x13 table in one sweep over all endpoint orderings of three
// intervals (six endpoints, at most six levels).
std::array<std::array<std::uint16_t, kIaCount>, kIaCount> ia_table_oracle() {
  std::array<std::array<std::uint16_t, kIaCount>, kIaCount> table{};
  for (int xm = 0; xm < 6; ++xm)
    for (int xp = xm + 1; xp < 6; ++xp)
      for (int ym = 0; ym < 6; ++ym)
        for (int yp = ym + 1; yp < 6; ++yp) {
          AtomId a = ia_classify(xm, xp, ym, yp);
          for (int zm = 0; zm < 6; ++zm)
            for (int zp = zm + 1; zp < 6; ++zp) {
              AtomId b = ia_classify(ym, yp, zm, zp);
              table[a][b] |=
                  static_cast<std::uint16_t>(1u << ia_classify(xm, xp, zm, zp));
            }
        }
  return table;
}

// ---------------------------------------------------------------------------
// Region calculus, embedded table

const char* const kRcc8Atoms[] = {"DC",   "EC",    "PO", "TPP",
                                  "NTPP", "TPPi", "NTPPi", "EQ"};
constexpr int kRcc8Count = 8;

// "*" stands for the universal relation.
const char* const kRcc8Table[kRcc8Count][kRcc8Count] = {
    // DC
    {"*", "DC EC PO TPP NTPP", "DC EC PO TPP NTPP", "DC EC PO TPP NTPP",
     "DC EC PO TPP NTPP", "DC", "DC", "DC"},
    // EC
    {"DC EC PO TPPi NTPPi", "DC EC PO TPP TPPi EQ", "DC EC PO TPP NTPP",
     "EC PO TPP NTPP", "PO TPP NTPP", "DC EC", "DC", "EC"},
    // PO
    {"DC EC PO TPPi NTPPi", "DC EC PO TPPi NTPPi", "*", "PO TPP NTPP",
     "PO TPP NTPP", "DC EC PO TPPi NTPPi", "DC EC PO TPPi NTPPi", "PO"},
    // TPP
    {"DC", "DC EC", "DC EC PO TPP NTPP", "TPP NTPP", "NTPP",
     "DC EC PO TPP TPPi EQ", "DC EC PO TPPi NTPPi", "TPP"},
    // NTPP
    {"DC", "DC", "DC EC PO TPP NTPP", "NTPP", "NTPP", "DC EC PO TPP NTPP",
     "*", "NTPP"},
    // TPPi
    {"DC EC PO TPPi NTPPi", "EC PO TPPi NTPPi", "PO TPPi NTPPi",
     "PO TPP TPPi EQ", "PO TPP NTPP", "TPPi NTPPi", "NTPPi", "TPPi"},
    // NTPPi
    {"DC EC PO TPPi NTPPi", "PO TPPi NTPPi", "PO TPPi NTPPi",
     "PO TPPi NTPPi", "PO TPP NTPP TPPi NTPPi EQ", "NTPPi", "NTPPi",
     "NTPPi"},
    // EQ
    {"DC", "EC", "PO", "TPP", "NTPP", "TPPi", "NTPPi", "EQ"},
};

const std::pair<const char*, const char*> kRcc8ConversePairs[] = {
    {"DC", "DC"},     {"EC", "EC"},       {"PO", "PO"},
    {"TPP", "TPPi"}, {"NTPP", "NTPPi"}, {"EQ", "EQ"}};

// Coarse region calculus: atom -> union of fine atoms.
const char* const kRcc5Atoms[] = {"DR", "PO", "EQ", "PP", "PPi"};
const char* const kRcc5Blocks[] = {"DC EC", "PO", "EQ", "TPP NTPP",
                                   "TPPi NTPPi"};
constexpr int kRcc5Count = 5;

const std::pair<const char*, const char*> kRcc5Cng[] = {
    {"DR", "PO"}, {"PO", "PP"}, {"PO", "PPi"}, {"PP", "EQ"}, {"PPi", "EQ"}};

std::vector<AtomId> parse_atom_list(
    const std::unordered_map<std::string, AtomId>& index, int atom_count,
    const std::string& text) {
  if (text == "*") {
    std::vector<AtomId> all(atom_count);
    for (int i = 0; i < atom_count; ++i) all[i] = i;
    return all;
  }
  std::vector<AtomId> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(' ', pos);
    if (end == std::string::npos) end = text.size();
    std::string tok = text.substr(pos, end - pos);
    auto it = index.find(tok);
    if (it == index.end()) throw UnknownAtomName(tok);
    out.push_back(it->second);
    pos = end + 1;
  }
  return out;
}

std::vector<AtomId> converse_from_pairs(
    const std::unordered_map<std::string, AtomId>& index, int atom_count,
    const std::pair<const char*, const char*>* pairs, int pair_count) {
  std::vector<AtomId> conv(atom_count, -1);
  for (int i = 0; i < pair_count; ++i) {
    AtomId a = index.at(pairs[i].first);
    AtomId b = index.at(pairs[i].second);
    conv[a] = b;
    conv[b] = a;
  }
  return conv;
}

std::unordered_map<std::string, AtomId> name_index(
    const char* const* names, int count) {
  std::unordered_map<std::string, AtomId> index;
  for (int i = 0; i < count; ++i) index.emplace(names[i], i);
  return index;
}

}  // namespace

AtomId pa_classify(long long x, long long y) {
  int c = cmp3(x, y);
  return c < 0 ? kLt : (c == 0 ? kEqPt : kGt);
}

AtomId ia_classify(long long xm, long long xp, long long ym, long long yp) {
  if (xp < ym) return 0;    // b
  if (xp == ym) return 1;   // m
  if (xm == yp) return 11;  // mi
  if (xm > yp) return 12;   // bi
  int c1 = cmp3(xm, ym);
  int c2 = cmp3(xp, yp);
  if (c1 < 0) return c2 < 0 ? 2 : (c2 == 0 ? 7 : 8);   // o, fi, di
  if (c1 == 0) return c2 < 0 ? 3 : (c2 == 0 ? 6 : 9);  // s, eq, si
  return c2 < 0 ? 4 : (c2 == 0 ? 5 : 10);              // d, f, oi
}

Relation pa_atom_composition_oracle(const Calculus& pa, AtomId a, AtomId b) {
  if (a < 0 || a >= 3) throw InvalidAtom(a);
  if (b < 0 || b >= 3) throw InvalidAtom(b);
  Relation out = pa.empty_relation();
  for (AtomId c : mask_to_atoms(pa_compose_mask(a, b))) out.set(c);
  return out;
}

Relation ia_atom_composition_oracle(const Calculus& ia, AtomId a, AtomId b) {
  if (a < 0 || a >= kIaCount) throw InvalidAtom(a);
  if (b < 0 || b >= kIaCount) throw InvalidAtom(b);
  Relation out = ia.empty_relation();
  for (int xm = 0; xm < 6; ++xm)
    for (int xp = xm + 1; xp < 6; ++xp)
      for (int ym = 0; ym < 6; ++ym)
        for (int yp = ym + 1; yp < 6; ++yp) {
          if (ia_classify(xm, xp, ym, yp) != a) continue;
          for (int zm = 0; zm < 6; ++zm)
            for (int zp = zm + 1; zp < 6; ++zp) {
              if (ia_classify(ym, yp, zm, zp) != b) continue;
              out.set(ia_classify(xm, xp, zm, zp));
            }
        }
  return out;
}

std::unique_ptr<Calculus> build_pa() {
  CalculusData d;
  d.name = "PA";
  d.atom_names = {kPaAtoms, kPaAtoms + 3};
  d.converse = {kGt, kEqPt, kLt};
  d.composition.resize(9);
  for (AtomId a = 0; a < 3; ++a)
    for (AtomId b = 0; b < 3; ++b)
      d.composition[a * 3 + b] = mask_to_atoms(pa_compose_mask(a, b));
  d.identity = kEqPt;
  d.dimension = std::vector<int>{1, 0, 1};
  d.cng_cover = std::vector<std::pair<AtomId, AtomId>>{{kLt, kEqPt},
                                                       {kEqPt, kGt}};
  return std::make_unique<Calculus>(std::move(d));
}

std::unique_ptr<Calculus> build_ia() {
  auto index = name_index(kIaAtoms, kIaCount);
  CalculusData d;
  d.name = "IA";
  d.atom_names = {kIaAtoms, kIaAtoms + kIaCount};
  d.converse = converse_from_pairs(index, kIaCount, kIaConversePairs, 7);
  auto table = ia_table_oracle();
  d.composition.resize(kIaCount * kIaCount);
  for (AtomId a = 0; a < kIaCount; ++a)
    for (AtomId b = 0; b < kIaCount; ++b)
      d.composition[a * kIaCount + b] = mask_to_atoms(table[a][b]);
  d.identity = index.at("eq");
  d.dimension = std::vector<int>{kIaDims, kIaDims + kIaCount};
  std::vector<std::pair<AtomId, AtomId>> cng;
  for (const auto& [lo, hi] : kIaCng)
    cng.emplace_back(index.at(lo), index.at(hi));
  d.cng_cover = std::move(cng);
  return std::make_unique<Calculus>(std::move(d));
}

std::unique_ptr<Calculus> build_rcc8() {
  auto index = name_index(kRcc8Atoms, kRcc8Count);
  CalculusData d;
  d.name = "RCC8";
  d.atom_names = {kRcc8Atoms, kRcc8Atoms + kRcc8Count};
  d.converse = converse_from_pairs(index, kRcc8Count, kRcc8ConversePairs, 6);
  d.composition.resize(kRcc8Count * kRcc8Count);
  for (AtomId a = 0; a < kRcc8Count; ++a)
    for (AtomId b = 0; b < kRcc8Count; ++b)
      d.composition[a * kRcc8Count + b] =
          parse_atom_list(index, kRcc8Count, kRcc8Table[a][b]);
  d.identity = index.at("EQ");
  return std::make_unique<Calculus>(std::move(d));
}

std::unique_ptr<Calculus> build_rcc5(const Calculus& rcc8) {
  auto index5 = name_index(kRcc5Atoms, kRcc5Count);
  auto index8 = name_index(kRcc8Atoms, kRcc8Count);
  std::vector<Relation> blocks;  // fine-atom set of each coarse atom
  for (int i = 0; i < kRcc5Count; ++i) {
    Relation b = rcc8.empty_relation();
    for (AtomId a : parse_atom_list(index8, kRcc8Count, kRcc5Blocks[i]))
      b.set(a);
    blocks.push_back(b);
  }

  auto to_blocks = [&](const Relation& fine) {
    std::vector<AtomId> out;
    Relation rest = fine;
    for (int i = 0; i < kRcc5Count; ++i) {
      if (!blocks[i].intersects(fine)) continue;
      if (!blocks[i].subset_of(fine))
        throw ProjectionFailure("union is not block-aligned");
      out.push_back(i);
      rest -= blocks[i];
    }
    if (!rest.empty()) throw ProjectionFailure("stray fine atoms");
    return out;
  };

  CalculusData d;
  d.name = "RCC5";
  d.atom_names = {kRcc5Atoms, kRcc5Atoms + kRcc5Count};
  d.converse.resize(kRcc5Count);
  for (int i = 0; i < kRcc5Count; ++i) {
    auto conv = to_blocks(rcc8.converse(blocks[i]));
    if (conv.size() != 1) throw ProjectionFailure("converse not a block");
    d.converse[i] = conv[0];
  }
  d.composition.resize(kRcc5Count * kRcc5Count);
  for (int a = 0; a < kRcc5Count; ++a)
    for (int b = 0; b < kRcc5Count; ++b)
      d.composition[a * kRcc5Count + b] =
          to_blocks(rcc8.compose(blocks[a], blocks[b]));
  d.identity = index5.at("EQ");
  std::vector<std::pair<AtomId, AtomId>> cng;
  for (const auto& [lo, hi] : kRcc5Cng)
    cng.emplace_back(index5.at(lo), index5.at(hi));
  d.cng_cover = std::move(cng);
  return std::make_unique<Calculus>(std::move(d));
}

std::unique_ptr<Calculus> build_product(const Calculus& left,
                                        const Calculus& right,
                                        const std::string& name) {
  const int n1 = left.atom_count(), n2 = right.atom_count();
  CalculusData d;
  d.name = name;
  d.atom_names.reserve(static_cast<std::size_t>(n1) * n2);
  for (AtomId a1 = 0; a1 < n1; ++a1)
    for (AtomId a2 = 0; a2 < n2; ++a2)
      d.atom_names.push_back(left.atom_name(a1) + "*" + right.atom_name(a2));
  d.converse.resize(static_cast<std::size_t>(n1) * n2);
  for (AtomId a1 = 0; a1 < n1; ++a1)
    for (AtomId a2 = 0; a2 < n2; ++a2)
      d.converse[product_pack(a1, a2, n2)] =
          product_pack(left.converse_atom(a1), right.converse_atom(a2), n2);
  d.composition.resize(static_cast<std::size_t>(n1) * n2 * n1 * n2);
  for (AtomId a1 = 0; a1 < n1; ++a1)
    for (AtomId a2 = 0; a2 < n2; ++a2)
      for (AtomId b1 = 0; b1 < n1; ++b1)
        for (AtomId b2 = 0; b2 < n2; ++b2) {
          std::vector<AtomId> cell;
          left.compose_atoms(a1, b1).for_each_atom([&](AtomId c1) {
            right.compose_atoms(a2, b2).for_each_atom([&](AtomId c2) {
              cell.push_back(product_pack(c1, c2, n2));
            });
          });
          d.composition[static_cast<std::size_t>(
                            product_pack(a1, a2, n2)) * n1 * n2 +
                        product_pack(b1, b2, n2)] = std::move(cell);
        }
  d.identity = product_pack(left.identity_atom(), right.identity_atom(), n2);
  if (left.has_dimension_map() && right.has_dimension_map()) {
    std::vector<int> dims(static_cast<std::size_t>(n1) * n2);
    for (AtomId a1 = 0; a1 < n1; ++a1)
      for (AtomId a2 = 0; a2 < n2; ++a2)
        dims[product_pack(a1, a2, n2)] =
            left.atom_dimension(a1) + right.atom_dimension(a2);
    d.dimension = std::move(dims);
  }
  if (left.has_cng() && right.has_cng()) {
    std::vector<std::pair<AtomId, AtomId>> cng;
    for (const auto& [lo, hi] : left.cng_cover())
      for (AtomId a2 = 0; a2 < n2; ++a2)
        cng.emplace_back(product_pack(lo, a2, n2), product_pack(hi, a2, n2));
    for (AtomId a1 = 0; a1 < n1; ++a1)
      for (const auto& [lo, hi] : right.cng_cover())
        cng.emplace_back(product_pack(a1, lo, n2), product_pack(a1, hi, n2));
    d.cng_cover = std::move(cng);
  }
  // Compass spellings for the nine point-pair atoms.
  if (n1 == 3 && n2 == 3 && left.name() == "PA" && right.name() == "PA") {
    d.aliases = {{"NW", "<*>"}, {"N", "=*>"}, {"NE", ">*>"},
                 {"W", "<*="},  {"EQ", "=*="}, {"E", ">*="},
                 {"SW", "<*<"}, {"S", "=*<"},  {"SE", ">*<"}};
  }
  return std::make_unique<Calculus>(std::move(d));
}

const Calculus& calculus_by_name(const std::string& name) {
  static const auto pa = build_pa();
  static const auto ia = build_ia();
  static const auto rcc8 = build_rcc8();
  static const auto rcc5 = build_rcc5(*rcc8);
  static const auto cra = build_product(*pa, *pa, "CRA");
  static const auto ra = build_product(*ia, *ia, "RA");
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(c)));
  if (up == "PA") return *pa;
  if (up == "IA") return *ia;
  if (up == "RCC8") return *rcc8;
  if (up == "RCC5") return *rcc5;
  if (up == "CRA") return *cra;
  if (up == "RA") return *ra;
  throw UnknownCalculus(name);
}

RelationSet convex_relations(const Calculus& calc) {
  calc.cng_cover();  // raises when absent
  std::unordered_set<Relation, RelationHash> seen;
  std::vector<Relation> out;
  for (AtomId a = 0; a < calc.atom_count(); ++a)
    for (AtomId b = 0; b < calc.atom_count(); ++b) {
      if (!calc.up_set(a).test(b)) continue;
      Relation iv = calc.up_set(a) & calc.down_set(b);
      if (seen.insert(iv).second) out.push_back(iv);
    }
  RelationSet set = make_relation_set(calc, std::move(out));
  canonicalize(calc, set);
  return set;
}

Relation interval_relation(const Calculus& calc, AtomId lo, AtomId hi) {
  return calc.up_set(lo) & calc.down_set(hi);
}

Relation convex_hull(const Calculus& calc, const Relation& r) {
  if (r.calculus_id() != calc.id()) throw CalculusMismatch();
  if (r.empty()) throw EmptyRelation("convex_hull");
  calc.cng_cover();
  Relation acc = calc.universal();
  bool found = false;
  for (AtomId a = 0; a < calc.atom_count(); ++a)
    for (AtomId b = 0; b < calc.atom_count(); ++b) {
      if (!calc.up_set(a).test(b)) continue;
      Relation iv = calc.up_set(a) & calc.down_set(b);
      if (r.subset_of(iv)) {
        acc &= iv;
        found = true;
      }
    }
  if (!found)
    throw Error("calculus " + calc.name() +
                ": no interval covers the relation");
  return acc;
}

bool is_convex(const Calculus& calc, const Relation& r) {
  return convex_hull(calc, r) == r;
}

bool is_preconvex(const Calculus& calc, const Relation& r) {
  Relation extra = convex_hull(calc, r) - r;
  int dim = calc.dimension(r);
  bool ok = true;
  extra.for_each_atom([&](AtomId a) {
    if (calc.atom_dimension(a) >= dim) ok = false;
  });
  return ok;
}

}  // namespace qstr
