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

#include "qstr/algebra.hpp"

namespace qstr {

Relation set_op(const Calculus& calc, SetOp op, const Relation& a,
                const Relation& b) {
  if (a.calculus_id() != calc.id()) throw CalculusMismatch();
  if (op != SetOp::kComplement && b.calculus_id() != calc.id())
    throw CalculusMismatch();
  switch (op) {
    case SetOp::kUnion:
      return a | b;
    case SetOp::kIntersection:
      return a & b;
    case SetOp::kDifference:
      return a - b;
    case SetOp::kComplement:
      return calc.universal() - a;
  }
  throw Error("unreachable set_op");
}

bool cycle_law_holds(const Calculus& calc, const Relation& r,
                     const Relation& s, const Relation& t) {
  bool c1 = calc.compose(r, s).intersects(t);
  bool c2 = calc.compose(calc.converse(r), t).intersects(s);
  bool c3 = calc.compose(t, calc.converse(s)).intersects(r);
  return c1 == c2 && c2 == c3;
}

namespace {

std::string atom_triple(const Calculus& c, AtomId a, AtomId b, AtomId d) {
  return "(" + c.atom_name(a) + ", " + c.atom_name(b) + ", " + c.atom_name(d) +
         ")";
}

}  // namespace

ValidationReport verify_relation_algebra(const Calculus& calc) {
  ValidationReport report;
  const int n = calc.atom_count();

  {
    ValidationReport::Check check{"identity-law", true, 0, ""};
    const AtomId e = calc.identity_atom();
    for (AtomId a = 0; a < n && check.passed; ++a) {
      ++check.cases;
      if (calc.compose_atoms(e, a) != calc.atom_relation(a) ||
          calc.compose_atoms(a, e) != calc.atom_relation(a)) {
        check.passed = false;
        check.detail = "atom " + calc.atom_name(a);
      }
    }
    report.checks.push_back(std::move(check));
  }

  {
    ValidationReport::Check check{"converse-involution", true, 0, ""};
    for (AtomId a = 0; a < n && check.passed; ++a) {
      ++check.cases;
      if (calc.converse_atom(calc.converse_atom(a)) != a) {
        check.passed = false;
        check.detail = "atom " + calc.atom_name(a);
      }
    }
    report.checks.push_back(std::move(check));
  }

  {
    // conv(a ; b) == conv(b) ; conv(a) for all atom pairs.
    ValidationReport::Check check{"converse-composition", true, 0, ""};
    for (AtomId a = 0; a < n && check.passed; ++a) {
      for (AtomId b = 0; b < n && check.passed; ++b) {
        ++check.cases;
        Relation lhs = calc.converse(calc.compose_atoms(a, b));
        Relation rhs = calc.compose_atoms(calc.converse_atom(b),
                                          calc.converse_atom(a));
        // compose_atoms returns a const ref into the table; the rhs here is
        // a copy because the second lookup may alias the first.
        if (lhs != rhs) {
          check.passed = false;
          check.detail = "(" + calc.atom_name(a) + ", " + calc.atom_name(b) +
                         ")";
        }
      }
    }
    report.checks.push_back(std::move(check));
  }

  {
    ValidationReport::Check check{"associativity", true, 0, ""};
    for (AtomId a = 0; a < n && check.passed; ++a) {
      Relation ra = calc.atom_relation(a);
      for (AtomId b = 0; b < n && check.passed; ++b) {
        const Relation& ab = calc.compose_atoms(a, b);
        for (AtomId c = 0; c < n; ++c) {
          ++check.cases;
          Relation lhs = calc.compose(ab, calc.atom_relation(c));
          Relation rhs = calc.compose(ra, calc.compose_atoms(b, c));
          if (lhs != rhs) {
            check.passed = false;
            check.detail = atom_triple(calc, a, b, c);
            break;
          }
        }
      }
    }
    report.checks.push_back(std::move(check));
  }

  {
    ValidationReport::Check check{"cycle-law", true, 0, ""};
    for (AtomId a = 0; a < n && check.passed; ++a) {
      const AtomId ca = calc.converse_atom(a);
      for (AtomId b = 0; b < n && check.passed; ++b) {
        const Relation& ab = calc.compose_atoms(a, b);
        const AtomId cb = calc.converse_atom(b);
        for (AtomId c = 0; c < n; ++c) {
          ++check.cases;
          bool c1 = ab.test(c);
          bool c2 = calc.compose_atoms(ca, c).test(b);
          bool c3 = calc.compose_atoms(c, cb).test(a);
          if (c1 != c2 || c2 != c3) {
            check.passed = false;
            check.detail = atom_triple(calc, a, b, c);
            break;
          }
        }
      }
    }
    report.checks.push_back(std::move(check));
  }

  return report;
}

}  // namespace qstr
