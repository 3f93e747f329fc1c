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

#ifndef QSTR_RELATION_HPP_
#define QSTR_RELATION_HPP_

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>

namespace qstr {

using AtomId = int;

// Largest atom count over the supported calculi (RA has 169 atoms).
constexpr int kMaxAtoms = 192;
constexpr int kRelationWords = kMaxAtoms / 64;

// A relation is a set of atoms of one calculus, stored as a fixed-width
// bitset. The owning calculus is tracked by id so cross-calculus mixes can
// be rejected; the cheap operators below only assert, the checked entry
// points live in algebra.hpp.
class Relation {
 public:
  Relation() : bits_{}, calc_(0) {}
  explicit Relation(std::uint32_t calculus_id) : bits_{}, calc_(calculus_id) {}

  std::uint32_t calculus_id() const { return calc_; }

  bool test(AtomId a) const {
    assert(a >= 0 && a < kMaxAtoms);
    return (bits_[a >> 6] >> (a & 63)) & 1u;
  }
  void set(AtomId a) {
    assert(a >= 0 && a < kMaxAtoms);
    bits_[a >> 6] |= std::uint64_t{1} << (a & 63);
  }
  void reset(AtomId a) {
    assert(a >= 0 && a < kMaxAtoms);
    bits_[a >> 6] &= ~(std::uint64_t{1} << (a & 63));
  }

  bool empty() const {
    for (auto w : bits_)
      if (w) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (auto w : bits_) c += std::popcount(w);
    return c;
  }

  // Lowest atom id present; relation must be nonempty.
  AtomId first_atom() const {
    for (int i = 0; i < kRelationWords; ++i)
      if (bits_[i]) return i * 64 + std::countr_zero(bits_[i]);
    assert(false);
    return -1;
  }

  bool subset_of(const Relation& o) const {
    assert(calc_ == o.calc_);
    for (int i = 0; i < kRelationWords; ++i)
      if (bits_[i] & ~o.bits_[i]) return false;
    return true;
  }

  bool intersects(const Relation& o) const {
    assert(calc_ == o.calc_);
    for (int i = 0; i < kRelationWords; ++i)
      if (bits_[i] & o.bits_[i]) return true;
    return false;
  }

  Relation& operator&=(const Relation& o) {
    assert(calc_ == o.calc_);
    for (int i = 0; i < kRelationWords; ++i) bits_[i] &= o.bits_[i];
    return *this;
  }
  Relation& operator|=(const Relation& o) {
    assert(calc_ == o.calc_);
    for (int i = 0; i < kRelationWords; ++i) bits_[i] |= o.bits_[i];
    return *this;
  }
  Relation& operator^=(const Relation& o) {
    assert(calc_ == o.calc_);
    for (int i = 0; i < kRelationWords; ++i) bits_[i] ^= o.bits_[i];
    return *this;
  }
  // Set difference.
  Relation& operator-=(const Relation& o) {
    assert(calc_ == o.calc_);
    for (int i = 0; i < kRelationWords; ++i) bits_[i] &= ~o.bits_[i];
    return *this;
  }

  friend Relation operator&(Relation a, const Relation& b) { return a &= b; }
  friend Relation operator|(Relation a, const Relation& b) { return a |= b; }
  friend Relation operator^(Relation a, const Relation& b) { return a ^= b; }
  friend Relation operator-(Relation a, const Relation& b) { return a -= b; }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.calc_ == b.calc_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const Relation& a, const Relation& b) {
    return !(a == b);
  }
  // Orders by bit pattern; only meaningful within one calculus.
  friend bool operator<(const Relation& a, const Relation& b) {
    for (int i = kRelationWords - 1; i >= 0; --i)
      if (a.bits_[i] != b.bits_[i]) return a.bits_[i] < b.bits_[i];
    return false;
  }

  // Visits atoms in ascending id order.
  template <class F>
  void for_each_atom(F&& f) const {
    for (int i = 0; i < kRelationWords; ++i) {
      std::uint64_t w = bits_[i];
      while (w) {
        f(i * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  std::uint64_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull + calc_;
    for (auto w : bits_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  std::array<std::uint64_t, kRelationWords> bits_;
  std::uint32_t calc_;
};

struct RelationHash {
  std::size_t operator()(const Relation& r) const {
    return static_cast<std::size_t>(r.hash());
  }
};

}  // namespace qstr

#endif  // QSTR_RELATION_HPP_
