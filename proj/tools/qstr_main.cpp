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

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qstr/bench.hpp"
#include "qstr/calculi.hpp"
#include "qstr/errors.hpp"
#include "qstr/generate.hpp"
#include "qstr/graph.hpp"
#include "qstr/qcn.hpp"
#include "qstr/realize.hpp"
#include "qstr/relation_set.hpp"
#include "qstr/solve.hpp"
#include "qstr/sparse.hpp"
#include "qstr/subalgebra.hpp"

namespace {

using namespace qstr;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw Error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out.good()) throw Error("cannot write file: " + path);
  out << text;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

// Named pools are resolved per calculus; anything else is read as a
// relation-set file.
RelationSet resolve_pool(const Calculus& calc, const std::string& spec) {
  const std::string name = upper(spec);
  auto family = [&calc](const char* expected, std::size_t index) {
    if (calc.name() != expected)
      throw Error("pool is defined for " + std::string(expected) +
                  ", not for " + calc.name());
    auto res = enumerate_maximal_distributive(calc);
    return res.maximal.at(index);
  };

  if (name == "BHAT") {
    return closure(calc, make_relation_set(calc, {}));
  }
  if (name == "CONVEX") return convex_relations(calc);
  if (name == "ATOMS") {
    std::vector<Relation> atoms;
    for (int a = 0; a < calc.atom_count(); ++a)
      atoms.push_back(calc.atom_relation(a));
    return make_relation_set(calc, std::move(atoms));
  }
  if (name == "CPA") return family("PA", 0);
  if (name == "SPA") return family("PA", 1);
  if (name == "CIA") return family("IA", 0);
  if (name == "SIA") return family("IA", 1);
  if (name == "D514") return family("RCC5", 0);
  if (name == "D520") return family("RCC5", 1);
  if (name == "D864") return family("RCC8", 0);
  if (name == "D841") return family("RCC8", 1);
  if (name.rfind("MAX", 0) == 0 && name.size() == 4 &&
      std::isdigit(static_cast<unsigned char>(name[3]))) {
    std::size_t index = static_cast<std::size_t>(name[3] - '0');
    if (index == 0) throw Error("pool families are numbered from MAX1");
    auto res = enumerate_maximal_distributive(calc);
    if (index > res.maximal.size())
      throw Error(calc.name() + " has only " +
                  std::to_string(res.maximal.size()) + " maximal families");
    return res.maximal[index - 1];
  }
  if (std::filesystem::exists(spec)) {
    return parse_relation_set(calc, read_file(spec));
  }
  throw Error("unknown pool name or missing file: " + spec);
}

std::string verdict_text(Verdict v) {
  return v == Verdict::kConsistent ? "consistent" : "inconsistent";
}

int cmd_solve(const std::string& file, const std::string& method,
              const std::string& pool_spec, bool want_scenario,
              bool want_realize) {
  Qcn net = parse_qcn(read_file(file));
  const Calculus& calc = net.calculus();

  Verdict verdict;
  std::optional<Qcn> scenario;
  if (method == "pc") {
    verdict = enforce_pc(net).verdict;
  } else if (method == "ppc") {
    ChordalStructure cs = triangulate(constraint_graph(net));
    verdict = enforce_ppc(net, cs).verdict;
  } else if (method == "ve") {
    verdict = eliminate_variables(net).outcome.verdict;
  } else {
    SolveOutcome out = solve_backtrack(net);
    verdict = out.verdict;
    scenario = std::move(out.scenario);
  }
  std::cout << verdict_text(verdict) << "\n";
  if (verdict == Verdict::kInconsistent) return kExitNegative;

  if (want_scenario || want_realize) {
    if (!scenario.has_value()) {
      // Prefer the constructive extraction when a pool certifies the
      // entries as distributive; otherwise search.
      bool fast = false;
      SolveOutcome pc = enforce_pc(net);
      if (!pool_spec.empty() && pc.verdict == Verdict::kConsistent) {
        RelationSet pool = resolve_pool(calc, pool_spec);
        fast = true;
        for (int i = 0; i < net.size() && fast; ++i) {
          for (int j = i + 1; j < net.size() && fast; ++j) {
            fast = set_contains(pool, pc.refined->at(i, j));
          }
        }
        if (fast)
          scenario = extract_scenario_distributive(*pc.refined, &pool);
      }
      if (!scenario.has_value()) {
        SolveOutcome out = solve_backtrack(net);
        if (out.verdict == Verdict::kInconsistent)
          throw Error("refinement search refuted the network; no scenario");
        scenario = std::move(out.scenario);
      }
    }
    if (want_scenario) std::cout << serialize_qcn(*scenario);
    if (want_realize) {
      Realization r = realize_solution(*scenario);
      for (std::size_t i = 0; i < r.coords.size(); ++i) {
        std::cout << i << ":";
        for (long long c : r.coords[i]) std::cout << " " << c;
        std::cout << "\n";
      }
    }
  }
  return kExitOk;
}

int cmd_closure(const std::string& calculus, const std::string& seed_file,
                std::size_t cap) {
  const Calculus& calc = calculus_by_name(calculus);
  RelationSet seed = make_relation_set(calc, {});
  if (!seed_file.empty())
    seed = parse_relation_set(calc, read_file(seed_file));
  RelationSet closed = closure(calc, seed, cap);
  std::cout << serialize_relation_set(calc, closed);
  return kExitOk;
}

int cmd_maximal(const std::string& calculus, const std::string& out_dir) {
  const Calculus& calc = calculus_by_name(calculus);
  EnumerationResult res = enumerate_maximal_distributive(calc);

  std::filesystem::create_directories(out_dir);
  std::cout << "calculus: " << calc.name() << "\n";
  std::cout << "maximal distributive subalgebras: " << res.maximal.size()
            << "\n";
  std::cout << "sizes:";
  for (const RelationSet& s : res.maximal) std::cout << " " << s.size();
  std::cout << "\n";
  for (std::size_t k = 0; k < res.maximal.size(); ++k) {
    std::string name = calc.name() + "_maximal_" + std::to_string(k + 1) +
                       ".txt";
    std::string path = (std::filesystem::path(out_dir) / name).string();
    std::ofstream out(path);
    if (!out.good()) throw Error("cannot write file: " + path);
    out << serialize_relation_set(calc, res.maximal[k]);
    std::cout << "wrote: " << name << "\n";
  }
  return kExitOk;
}

int cmd_check(const std::string& calculus, const std::string& file,
              bool use_helly) {
  const Calculus& calc = calculus_by_name(calculus);
  RelationSet set = parse_relation_set(calc, read_file(file));

  if (use_helly) {
    HellyWitness witness;
    bool ok = is_helly(calc, set, &witness);
    std::cout << "helly: " << (ok ? "yes" : "no") << "\n";
    if (!ok) {
      std::cout << "witness r: " << serialize_relation(calc, witness.r)
                << "\n";
      std::cout << "witness s: " << serialize_relation(calc, witness.s)
                << "\n";
      std::cout << "witness t: " << serialize_relation(calc, witness.t)
                << "\n";
    }
    return ok ? kExitOk : kExitNegative;
  }

  DistributivityWitness witness;
  bool ok = is_distributive(calc, set, &witness);
  std::cout << "distributive: " << (ok ? "yes" : "no") << "\n";
  if (!ok) {
    const char* shape = witness.left_side
                            ? "r (s n t) != (r s) n (r t)"
                            : "(s n t) r != (s r) n (t r)";
    std::cout << "witness form: " << shape << "\n";
    std::cout << "witness r: " << serialize_relation(calc, witness.r) << "\n";
    std::cout << "witness s: " << serialize_relation(calc, witness.s) << "\n";
    std::cout << "witness t: " << serialize_relation(calc, witness.t) << "\n";
  }
  return ok ? kExitOk : kExitNegative;
}

int cmd_gen(const std::string& calculus, int n, double density,
            std::uint64_t seed, const std::string& pool_spec,
            const std::string& out_path) {
  const Calculus& calc = calculus_by_name(calculus);
  RelationSet pool = resolve_pool(calc, pool_spec);
  Qcn net = random_qcn(calc, n, density, pool, seed);
  write_output(out_path, serialize_qcn(net));
  return kExitOk;
}

int cmd_bench(const std::string& calculus, const std::string& pool_spec,
              const std::vector<int>& ns, const std::vector<double>& densities,
              int reps, std::uint64_t seed, const std::string& out_path) {
  const Calculus& calc = calculus_by_name(calculus);
  BenchConfig config;
  config.calculus = calc.name();
  config.pool_name = pool_spec;
  config.pool = resolve_pool(calc, pool_spec);
  config.ns = ns;
  config.densities = densities;
  config.repetitions = reps;
  config.seed = seed;
  write_output(out_path, bench_csv(bench(config)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qualitative constraint reasoning toolkit"};
  app.require_subcommand(1);

  std::string calculus = "PA";
  std::string method = "pc";
  std::string pool_spec;
  std::string in_file, seed_file, out_path, out_dir = ".";
  bool want_scenario = false, want_realize = false, use_helly = false;
  int n = 10, reps = 1;
  double density = 0.5;
  std::uint64_t seed = 1;
  std::vector<int> ns = {10};
  std::vector<double> densities = {0.5};

  auto* solve = app.add_subcommand("solve", "Decide a network file");
  solve->add_option("file", in_file, "network file")->required();
  solve->add_option("--method", method, "pc, ppc, ve or backtrack")
      ->check(CLI::IsMember({"pc", "ppc", "ve", "backtrack"}));
  solve->add_option("--subalgebra", pool_spec,
                    "pool name or file enabling constructive extraction");
  solve->add_flag("--scenario", want_scenario, "print an atomic solution");
  solve->add_flag("--realize", want_realize, "print numeric assignments");

  std::size_t cap = 0;
  auto* closure_cmd = app.add_subcommand("closure", "Close a relation set");
  closure_cmd->add_option("--calculus", calculus, "calculus name")
      ->required();
  closure_cmd->add_option("--seed-file", seed_file,
                          "relation set to close; atoms alone when omitted");
  closure_cmd->add_option("--cap", cap,
                          "size limit; 0 uses QSTR_CLOSURE_CAP or 4096");

  auto* maximal = app.add_subcommand(
      "maximal", "Enumerate maximal distributive subalgebras");
  maximal->add_option("--calculus", calculus, "calculus name")->required();
  maximal->add_option("--out-dir", out_dir, "output directory");

  auto* check = app.add_subcommand("check", "Check a relation-set file");
  check->add_option("--calculus", calculus, "calculus name")->required();
  check->add_option("file", in_file, "relation-set file")->required();
  check->add_flag("--helly", use_helly,
                  "check the triple intersection property instead");

  auto* gen = app.add_subcommand("gen", "Generate a random network");
  gen->add_option("--calculus", calculus, "calculus name")->required();
  gen->add_option("--n", n, "variable count")->required();
  gen->add_option("--density", density, "constraint probability");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--subalgebra", pool_spec, "label pool (default BHAT)");
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "Compare solvers, CSV out");
  bench_cmd->add_option("--calculus", calculus, "calculus name")->required();
  bench_cmd->add_option("--subalgebra", pool_spec, "label pool")->required();
  bench_cmd->add_option("--n", ns, "variable counts")->delimiter(',');
  bench_cmd->add_option("--density", densities, "densities")->delimiter(',');
  bench_cmd->add_option("--reps", reps, "instances per cell");
  bench_cmd->add_option("--seed", seed, "base seed");
  bench_cmd->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (solve->parsed())
      return cmd_solve(in_file, method, pool_spec, want_scenario,
                       want_realize);
    if (closure_cmd->parsed()) return cmd_closure(calculus, seed_file, cap);
    if (maximal->parsed()) return cmd_maximal(calculus, out_dir);
    if (check->parsed()) return cmd_check(calculus, in_file, use_helly);
    if (gen->parsed()) {
      return cmd_gen(calculus, n, density, seed,
                     pool_spec.empty() ? "BHAT" : pool_spec, out_path);
    }
    if (bench_cmd->parsed())
      return cmd_bench(calculus, pool_spec, ns, densities, reps, seed,
                       out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
