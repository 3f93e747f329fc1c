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

#ifndef QSTR_ERRORS_HPP_
#define QSTR_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qstr {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class UnknownAtomName : public Error {
 public:
  explicit UnknownAtomName(const std::string& name)
      : Error("unknown atom name: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnknownCalculus : public Error {
 public:
  explicit UnknownCalculus(const std::string& name)
      : Error("unknown calculus: " + name) {}
};

// Two relations from different calculi were combined.
class CalculusMismatch : public Error {
 public:
  CalculusMismatch() : Error("relations belong to different calculi") {}
  explicit CalculusMismatch(const std::string& where)
      : Error("relations belong to different calculi: " + where) {}
};

class InvalidAtom : public Error {
 public:
  explicit InvalidAtom(int atom)
      : Error("atom id out of range: " + std::to_string(atom)) {}
};

class EmptyRelation : public Error {
 public:
  explicit EmptyRelation(const std::string& op)
      : Error(op + " is undefined for the empty relation") {}
};

class NoDimensionMap : public Error {
 public:
  explicit NoDimensionMap(const std::string& calculus)
      : Error("calculus " + calculus + " carries no dimension map") {}
};

class NoCngOrder : public Error {
 public:
  explicit NoCngOrder(const std::string& calculus)
      : Error("calculus " + calculus + " carries no neighbourhood order") {}
};

// Raised when RCC5 block unions fail to project exactly.
class ProjectionFailure : public Error {
 public:
  explicit ProjectionFailure(const std::string& detail)
      : Error("projection failure: " + detail) {}
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t size)
      : Error("closure exceeded cap at " + std::to_string(size) +
              " relations"),
        size_(size) {}
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
};

class NotASubalgebra : public Error {
 public:
  explicit NotASubalgebra(const std::string& detail)
      : Error("relation set is not a subalgebra: " + detail) {}
};

// The two-clique structure expected by the maximal-subalgebra search failed.
class StructureViolation : public Error {
 public:
  explicit StructureViolation(const std::string& detail)
      : Error("enumeration structure violation: " + detail) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error("parse error at line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(int index, int n)
      : Error("variable index " + std::to_string(index) +
              " out of range for n = " + std::to_string(n)) {}
};

class NotAtomic : public Error {
 public:
  explicit NotAtomic(const std::string& detail)
      : Error("network is not atomic: " + detail) {}
};

class NotPathConsistent : public Error {
 public:
  explicit NotPathConsistent(const std::string& detail)
      : Error("network is not path consistent: " + detail) {}
};

// Scenario construction hit an empty intersection it cannot recover from.
class ConstructionFailure : public Error {
 public:
  explicit ConstructionFailure(const std::string& detail)
      : Error("scenario construction failed: " + detail) {}
};

class SearchSpaceTooLarge : public Error {
 public:
  explicit SearchSpaceTooLarge(double estimate)
      : Error("scenario space estimate " + std::to_string(estimate) +
              " exceeds the enumeration guard") {}
};

class EdgeCoverViolation : public Error {
 public:
  explicit EdgeCoverViolation(int i, int j)
      : Error("constraint (" + std::to_string(i) + "," + std::to_string(j) +
              ") is not covered by the supplied graph") {}
};

class UnsupportedCalculus : public Error {
 public:
  explicit UnsupportedCalculus(const std::string& detail)
      : Error(detail) {}
};

// Two solvers disagreed on a verdict; correctness regression, abort the run.
class VerdictMismatch : public Error {
 public:
  explicit VerdictMismatch(const std::string& detail)
      : Error("solver verdict mismatch: " + detail) {}
};

}  // namespace qstr

#endif  // QSTR_ERRORS_HPP_
