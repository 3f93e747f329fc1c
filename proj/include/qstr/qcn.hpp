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

#ifndef QSTR_QCN_HPP_
#define QSTR_QCN_HPP_

#include <string>
#include <vector>

#include "qstr/calculus.hpp"

namespace qstr {

// Binary qualitative constraint network. The matrix is kept
// converse-symmetric with identity diagonal at all times; unconstrained
// pairs hold the universal relation.
class Qcn {
 public:
  Qcn() = default;
  Qcn(const Calculus& calc, int n);

  const Calculus& calculus() const { return *calc_; }
  int size() const { return n_; }

  const Relation& at(int i, int j) const { return m_[index(i, j)]; }

  // Sets R_ij and R_ji = converse; the diagonal is immutable.
  void set(int i, int j, const Relation& r);

  bool operator==(const Qcn& o) const {
    return calc_ == o.calc_ && n_ == o.n_ && m_ == o.m_;
  }
  bool operator!=(const Qcn& o) const { return !(*this == o); }

 private:
  std::size_t index(int i, int j) const;

  const Calculus* calc_ = nullptr;
  int n_ = 0;
  std::vector<Relation> m_;
};

// Every off-diagonal entry is a single atom.
bool is_scenario(const Qcn& net);

// Text format: "calculus: NAME", "n: COUNT", then "i j : atom [atom ...]"
// lines; '#' starts a comment; unlisted pairs stay universal. Both
// orientations of a pair may appear if they agree up to converse.
Qcn parse_qcn(const std::string& text);

// Header plus one line per non-universal pair (i < j); parses back to an
// equal network.
std::string serialize_qcn(const Qcn& net);

}  // namespace qstr

#endif  // QSTR_QCN_HPP_
