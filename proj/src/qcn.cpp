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

#include "qstr/qcn.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qstr/calculi.hpp"
#include "qstr/errors.hpp"
#include "qstr/relation_set.hpp"

namespace qstr {

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

// "key: value" with one value token; empty string on any other shape.
std::string keyed_value(const std::string& line, const std::string& key) {
  auto colon = line.find(':');
  if (colon == std::string::npos) return "";
  std::istringstream head(line.substr(0, colon));
  std::string k, junk;
  if (!(head >> k) || k != key || (head >> junk)) return "";
  std::istringstream tail(line.substr(colon + 1));
  std::string value;
  if (!(tail >> value) || (tail >> junk)) return "";
  return value;
}

}  // namespace

Qcn::Qcn(const Calculus& calc, int n) : calc_(&calc), n_(n) {
  if (n < 1) throw Error("a network needs at least one variable");
  m_.assign(static_cast<std::size_t>(n) * n, calc.universal());
  for (int i = 0; i < n; ++i) {
    m_[static_cast<std::size_t>(i) * n + i] = calc.identity_relation();
  }
}

std::size_t Qcn::index(int i, int j) const {
  if (i < 0 || i >= n_) throw IndexOutOfRange(i, n_);
  if (j < 0 || j >= n_) throw IndexOutOfRange(j, n_);
  return static_cast<std::size_t>(i) * n_ + j;
}

void Qcn::set(int i, int j, const Relation& r) {
  std::size_t ij = index(i, j), ji = index(j, i);
  if (i == j) throw Error("diagonal entries are fixed to the identity");
  if (r.calculus_id() != calc_->id()) throw CalculusMismatch("network entry");
  if (r.empty()) throw EmptyRelation("a network entry");
  m_[ij] = r;
  m_[ji] = calc_->converse(r);
}

bool is_scenario(const Qcn& net) {
  for (int i = 0; i < net.size(); ++i) {
    for (int j = i + 1; j < net.size(); ++j) {
      if (net.at(i, j).count() != 1) return false;
    }
  }
  return true;
}

Qcn parse_qcn(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  const Calculus* calc = nullptr;
  int n = -1;
  std::optional<Qcn> net;
  // Orientations already given explicitly, as i * n + j.
  std::vector<bool> given;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (blank(line)) continue;

    if (calc == nullptr) {
      std::string name = keyed_value(line, "calculus");
      if (name.empty())
        throw ParseError(lineno, "expected a 'calculus: NAME' header");
      calc = &calculus_by_name(name);
      continue;
    }
    if (n < 0) {
      std::string count = keyed_value(line, "n");
      if (count.empty())
        throw ParseError(lineno, "expected an 'n: COUNT' header");
      try {
        std::size_t used = 0;
        n = std::stoi(count, &used);
        if (used != count.size()) throw std::invalid_argument(count);
      } catch (const std::exception&) {
        throw ParseError(lineno, "variable count is not a number: " + count);
      }
      if (n < 1) throw ParseError(lineno, "variable count must be positive");
      net.emplace(*calc, n);
      given.assign(static_cast<std::size_t>(n) * n, false);
      continue;
    }

    std::istringstream row(line);
    int i = 0, j = 0;
    std::string colon;
    if (!(row >> i >> j >> colon) || colon != ":")
      throw ParseError(lineno, "expected 'i j : atom [atom ...]'");
    if (i < 0 || i >= n) throw IndexOutOfRange(i, n);
    if (j < 0 || j >= n) throw IndexOutOfRange(j, n);
    if (i == j)
      throw ParseError(lineno, "constraints relate two distinct variables");

    Relation r = calc->empty_relation();
    std::string name;
    int atoms = 0;
    while (row >> name) {
      r.set(calc->atom_id(name));
      ++atoms;
    }
    if (atoms == 0)
      throw ParseError(lineno, "a constraint needs at least one atom");

    std::size_t ij = static_cast<std::size_t>(i) * n + j;
    std::size_t ji = static_cast<std::size_t>(j) * n + i;
    if (given[ij])
      throw ParseError(lineno, "pair (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") is listed twice");
    if (given[ji]) {
      if (calc->converse(net->at(j, i)) != r)
        throw ParseError(lineno, "pair (" + std::to_string(i) + "," +
                                     std::to_string(j) +
                                     ") contradicts its converse entry");
    } else {
      net->set(i, j, r);
    }
    given[ij] = true;
  }

  if (calc == nullptr) throw ParseError(lineno, "missing 'calculus:' header");
  if (n < 0) throw ParseError(lineno, "missing 'n:' header");
  return *std::move(net);
}

std::string serialize_qcn(const Qcn& net) {
  const Calculus& calc = net.calculus();
  std::ostringstream out;
  out << "calculus: " << calc.name() << "\n";
  out << "n: " << net.size() << "\n";
  for (int i = 0; i < net.size(); ++i) {
    for (int j = i + 1; j < net.size(); ++j) {
      if (net.at(i, j) == calc.universal()) continue;
      out << i << " " << j << " : " << serialize_relation(calc, net.at(i, j))
          << "\n";
    }
  }
  return out.str();
}

}  // namespace qstr
