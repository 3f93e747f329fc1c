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

#include "qstr/generate.hpp"

#include <random>
#include <vector>

#include "qstr/errors.hpp"

namespace qstr {

Qcn random_qcn(const Calculus& calc, int n, double density,
               const RelationSet& pool, std::uint64_t seed) {
  if (density < 0.0 || density > 1.0)
    throw Error("density must lie in [0, 1]");
  if (pool.calculus_id != calc.id()) throw CalculusMismatch("label pool");

  std::vector<Relation> labels;
  for (const Relation& r : pool.relations) {
    if (!r.empty() && r != calc.universal()) labels.push_back(r);
  }
  if (labels.empty())
    throw Error("the label pool has no usable non-universal relations");

  // Raw engine draws only; distribution classes vary across standard
  // libraries and would break seed reproducibility.
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
  auto below = [&rng](std::uint64_t k) {
    std::uint64_t excess = (0 - k) % k;  // 2^64 mod k
    for (;;) {
      std::uint64_t x = rng();
      if (excess == 0 || x < std::uint64_t(0) - excess) return x % k;
    }
  };

  // One density draw per pair whether or not it gets a label, so the pair
  // selection pattern depends only on the seed, not on the pool.
  Qcn net(calc, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unit() < density) {
        net.set(i, j, labels[below(labels.size())]);
      }
    }
  }
  return net;
}

}  // namespace qstr
