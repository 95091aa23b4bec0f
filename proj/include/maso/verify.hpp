// Copyright 2026 The Authors.
//
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

#ifndef MASO_VERIFY_HPP
#define MASO_VERIFY_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "maso/checks.hpp"
#include "maso/common.hpp"
#include "maso/extensions.hpp"
#include "maso/family.hpp"
#include "maso/functions.hpp"
#include "maso/generators.hpp"
#include "maso/instance.hpp"
#include "maso/json_io.hpp"
#include "maso/lifting.hpp"
#include "maso/maximize.hpp"
#include "maso/minimize.hpp"
#include "maso/oracle.hpp"
#include "maso/value_oracle.hpp"

namespace maso {

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckLine> lines;
  bool ok() const {
    for (const auto& line : lines)
      if (!line.passed) return false;
    return true;
  }
};

namespace verify_detail {

using Clock = std::chrono::steady_clock;

inline double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Body returns an empty string on success, a reason on failure; thrown
// exceptions become failures with the message as the reason.
template <typename Fn>
inline void run_check(SuiteResult& result, const std::string& name, Fn&& body) {
  CheckLine line;
  line.name = name;
  auto start = Clock::now();
  try {
    std::string why = body();
    line.passed = why.empty();
    line.detail = why.empty() ? "ok" : why;
  } catch (const std::exception& e) {
    line.passed = false;
    line.detail = std::string("threw: ") + e.what();
  }
  line.seconds = elapsed_seconds(start);
  result.lines.push_back(std::move(line));
}

inline std::vector<double> random_weights(Rng& rng, int n) {
  std::vector<double> w(n);
  for (double& x : w) x = (rng.uniform_index(9) + 1) * 0.5;
  return w;
}

inline FracPoint random_point(Rng& rng, int n, double hi = 1.0) {
  FracPoint z(n);
  for (double& x : z) x = rng.uniform01() * hi;
  return z;
}

// Representative instances of every shipped standard function.
inline std::vector<std::pair<std::string, ValueOracle>> function_zoo(
    int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::string, ValueOracle>> zoo;
  zoo.emplace_back("modular", make_modular(n, random_weights(rng, n)));

  const int items = n + 2;
  std::vector<Set> covers(n);
  for (int v = 0; v < n; ++v) {
    for (int it = 0; it < items; ++it)
      if (rng.uniform01() < 0.5) covers[v] = with(covers[v], it);
    if (covers[v] == 0) covers[v] = with(covers[v], static_cast<int>(rng.uniform_index(items)));
  }
  zoo.emplace_back("coverage", make_coverage(n, items, covers, random_weights(rng, items)));

  std::vector<std::vector<double>> utility(n);
  for (auto& row : utility) row = random_weights(rng, n);
  zoo.emplace_back("facility-location", make_facility_location(n, utility));

  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform01() < 0.4) edges.emplace_back(u, v);
  if (edges.empty()) edges.emplace_back(0, n > 1 ? 1 : 0);
  zoo.emplace_back("graph-cut", make_graph_cut(Graph(n, edges)));

  zoo.emplace_back("matroid-rank",
                   make_matroid_rank(family_uniform_matroid(n, (n + 1) / 2)));
  zoo.emplace_back("concave-sqrt", make_concave_sqrt(n, random_weights(rng, n)));
  zoo.emplace_back("concave-min-cap",
                   make_concave_min_cap(n, random_weights(rng, n), 2.5));
  zoo.emplace_back("sum", make_sum({make_modular(n, random_weights(rng, n)),
                                    make_coverage(n, items, covers, {})}));
  zoo.emplace_back("scale",
                   make_scale(make_coverage(n, items, covers, {}), 0.5));
  return zoo;
}

inline ParsedInstance parse_generated(const std::string& kind, GeneratorParams p,
                                      std::uint64_t seed) {
  return instance_from_json(generate_instance(kind, p, seed));
}

// One random monotone submodular oracle; the flavor cycles through the zoo.
inline ValueOracle random_monotone_oracle(Rng& rng, int n, int flavor) {
  switch (flavor % 4) {
    case 0:
      return make_modular(n, random_weights(rng, n));
    case 1: {
      const int items = n + 1;
      std::vector<Set> covers(n);
      for (int v = 0; v < n; ++v) {
        for (int it = 0; it < items; ++it)
          if (rng.uniform01() < 0.5) covers[v] = with(covers[v], it);
        if (covers[v] == 0)
          covers[v] = with(covers[v], static_cast<int>(rng.uniform_index(items)));
      }
      return make_coverage(n, items, covers, {});
    }
    case 2:
      return make_concave_sqrt(n, random_weights(rng, n));
    default: {
      std::vector<std::vector<double>> utility(n);
      for (auto& row : utility) row = random_weights(rng, n);
      return make_facility_location(n, utility);
    }
  }
}

inline std::vector<Set> random_disjoint_supports(Rng& rng, int n, int k) {
  std::vector<Set> supports(k, 0);
  for (int v = 0; v < n; ++v) {
    std::size_t pick = rng.uniform_index(k + 1);
    if (pick < static_cast<std::size_t>(k))
      supports[pick] = with(supports[pick], v);
  }
  return supports;
}

// Closure of seed sets under union and intersection (a ring family).
inline std::vector<Set> lattice_closure(std::vector<Set> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t count = members.size();
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = a + 1; b < count; ++b)
        for (Set candidate : {members[a] | members[b], members[a] & members[b]})
          if (std::find(members.begin(), members.end(), candidate) == members.end()) {
            members.push_back(candidate);
            grew = true;
          }
    std::sort(members.begin(), members.end());
  }
  return members;
}

// Closure under union/intersection for crossing pairs only.
inline std::vector<Set> crossing_closure(int n, std::vector<Set> members) {
  const Set top = full_mask(n);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t count = members.size();
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = a + 1; b < count; ++b) {
        if ((members[a] & members[b]) == 0 || (members[a] | members[b]) == top)
          continue;
        for (Set candidate : {members[a] | members[b], members[a] & members[b]})
          if (std::find(members.begin(), members.end(), candidate) == members.end()) {
            members.push_back(candidate);
            grew = true;
          }
      }
    std::sort(members.begin(), members.end());
  }
  return members;
}

// Base-family characterization: nonempty, equicardinal, and exchange holds.
inline Verdict check_base_family(const FeasibleFamily& fam) {
  if (fam.n() > kExhaustiveFamilyCap)
    throw CapacityError("base-family check is exhaustive, n <= 20");
  std::vector<Set> members;
  const Set top = full_mask(fam.n());
  for (Set s = 0;; ++s) {
    if (fam.contains(s)) members.push_back(s);
    if (s == top) break;
  }
  if (members.empty()) return Verdict::fail("family has no members");
  const int size = set_size(members.front());
  for (Set m : members)
    if (set_size(m) != size)
      return Verdict::fail("members are not equicardinal", members.front(), m);
  for (Set a : members)
    for (Set b : members) {
      if (a == b) continue;
      Set only_a = a & ~b;
      bool all_good = true;
      for_each_element(only_a, [&](int x) {
        bool found = false;
        for_each_element(b & ~a, [&](int y) {
          if (fam.contains(with(without(a, x), y))) found = true;
        });
        all_good = all_good && found;
      });
      if (!all_good) return Verdict::fail("exchange fails", a, b);
    }
  return Verdict::pass();
}

inline double blocker_beta(const FeasibleFamily& fam) {
  std::vector<Set> blocker =
      fam.blocker_known() ? fam.known_blocker() : compute_blocker(fam);
  int beta = 0;
  for (Set b : blocker) beta = std::max(beta, set_size(b));
  return std::max(1, beta);
}

inline PolytopeOracle polytope_for(const MasoInstance& inst) {
  switch (inst.outer.kind()) {
    case FamilyKind::kFullPowerset:
      return make_polytope_free(inst.n());
    case FamilyKind::kUniformMatroid:
    case FamilyKind::kPartitionMatroid:
      return make_polytope_partition(inst.n(), inst.outer.parts(),
                                     inst.outer.caps());
    default:
      throw PreconditionError(
          "relaxation polytope available for powerset, uniform, and partition "
          "families only");
  }
}

inline std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// Experiment runner shared by the command-line tool and the cli suite.
// ---------------------------------------------------------------------------

inline std::vector<std::string> known_algorithms() {
  return {"fracture", "disjointify", "bounded-blocker",
          "crossing", "maximize-pipeline", "lifted-greedy"};
}

// certificate_cap limits the brute-force assignment count spent on the
// per-row certificate; zero means the compiled default. It can only tighten
// the budget; the compiled cap stays in force either way.
inline ReportRow run_algorithm_cell(const MasoInstance& inst,
                                    const std::string& instance_id,
                                    const std::string& algo, std::uint64_t seed,
                                    bool timings, std::uint64_t certificate_cap = 0) {
  ReportRow row;
  row.instance_id = instance_id;
  row.algorithm = algo;
  row.seed = seed;
  auto start = verify_detail::Clock::now();

  Allocation alloc(inst.k);
  if (algo == "fracture") {
    MaLeResult relaxed = solve_ma_le(inst, 1e-9, 2000, seed);
    SaRounder rounder =
        make_sa_threshold_rounder(verify_detail::blocker_beta(inst.outer));
    FractureResult result =
        fracture_expand_return(inst, relaxed.assignment, rounder, seed);
    alloc = result.allocation;
    row.value = result.value;
    row.fractional_value = relaxed.value;
  } else if (algo == "disjointify") {
    SaRounder rounder = inst.n() <= kBruteForceSetCap
                            ? make_sa_exact_rounder()
                            : make_sa_threshold_rounder(
                                  verify_detail::blocker_beta(inst.outer));
    MinimizeResult result = minimize_via_disjointify(inst, rounder, seed);
    alloc = result.allocation;
    row.value = result.value;
    row.fractional_value = result.fractional_value;
  } else if (algo == "bounded-blocker") {
    MaLeResult relaxed = solve_ma_le(inst, 1e-9, 2000, seed);
    CeResult result = bounded_blocker_round(
        inst, relaxed.assignment, verify_detail::blocker_beta(inst.outer), seed);
    alloc = result.allocation;
    row.value = inst.allocation_value(alloc);
    row.fractional_value = relaxed.value;
  } else if (algo == "crossing") {
    MinimizeResult result = crossing_family_solve(inst, seed);
    alloc = result.allocation;
    row.value = result.value;
    row.fractional_value = result.fractional_value;
  } else if (algo == "maximize-pipeline") {
    PolytopeOracle p = verify_detail::polytope_for(inst);
    MaximizeResult result = maximize_pipeline(inst, p, 100, seed);
    alloc = result.allocation;
    row.value = result.value;
    row.fractional_value = result.fractional_value;
    row.factor_claimed = result.factor_claimed;
    row.factors_defined = true;
  } else if (algo == "lifted-greedy") {
    MaximizeResult result = lifted_greedy(inst, seed);
    alloc = result.allocation;
    row.value = result.value;
    row.fractional_value = result.fractional_value;
    row.factors_defined = true;
    row.factor_claimed = 0.0;  // p-system factor depends on the family
  } else {
    throw PreconditionError("unknown algorithm: " + algo);
  }

  row.feasible = inst.allocation_feasible(alloc);
  row.allocation = alloc.parts;
  bool within_cap = true;
  if (certificate_cap > 0) {
    double assignments = std::pow(static_cast<double>(inst.k) + 1.0, inst.n());
    within_cap = assignments <= static_cast<double>(certificate_cap);
  }
  try {
    if (!within_cap) throw CapacityError("above the per-run certificate cap");
    Certificate cert = certify(inst, alloc);
    if (cert.ratio_defined) {
      row.ratio = cert.ratio;
      row.ratio_defined = true;
      if (row.factors_defined) row.factor_observed = cert.ratio;
    } else if (cert.zero_optimum) {
      row.note = "zero optimum; ratio undefined";
    }
  } catch (const CapacityError& e) {
    row.note = std::string("certificate skipped: ") + e.what();
  }
  if (timings) row.runtime_ms = verify_detail::elapsed_seconds(start) * 1000.0;
  return row;
}

// Rows come back ordered by (instance, algorithm, seed) regardless of the
// order cells were named or executed in.
inline std::vector<ReportRow> run_experiment(const ParsedInstance& parsed,
                                             const std::vector<std::string>& algos,
                                             std::uint64_t seed_lo,
                                             std::uint64_t seed_hi, bool timings,
                                             std::uint64_t certificate_cap = 0) {
  if (seed_hi < seed_lo) throw PreconditionError("seed range is empty");
  std::vector<ReportRow> rows;
  for (const auto& algo : algos)
    for (std::uint64_t seed = seed_lo; seed <= seed_hi; ++seed)
      rows.push_back(run_algorithm_cell(parsed.instance, parsed.id, algo, seed,
                                        timings, certificate_cap));
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     if (a.instance_id != b.instance_id)
                       return a.instance_id < b.instance_id;
                     if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
                     return a.seed < b.seed;
                   });
  return rows;
}

// ---------------------------------------------------------------------------
// Module property suites.
// ---------------------------------------------------------------------------

inline SuiteResult verify_core() {
  using namespace verify_detail;
  SuiteResult result{"core", {}};

  run_check(result, "standard functions are submodular (exhaustive n=10)", [] {
    for (auto& [name, f] : function_zoo(10, 11)) {
      Verdict v = check_submodular(f);
      if (!v.ok) return name + ": " + v.detail;
    }
    return std::string();
  });

  run_check(result, "monotone claims hold (exhaustive n=10)", [] {
    for (auto& [name, f] : function_zoo(10, 12)) {
      if (!f.claims_monotone()) continue;
      Verdict v = check_monotone(f);
      if (!v.ok) return name + ": " + v.detail;
    }
    return std::string();
  });

  run_check(result, "blocker double application recovers minimal members", [] {
    Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    Graph path3(3, {{0, 1}, {1, 2}});
    std::vector<FeasibleFamily> families = {
        family_trivial_v(3), family_vertex_covers(k3), family_vertex_covers(path3),
        family_connected_spanning(Graph(3, {{0, 1}, {1, 2}, {0, 2}})),
        family_st_connected(path3, 0, 2),
        family_blocker(4, {0b0011, 0b1100}),
    };
    for (const auto& fam : families) {
      std::vector<Set> blocker = compute_blocker(fam);
      for (Set a : blocker)
        for (Set b : blocker)
          if (a != b && (a & ~b) == 0)
            return std::string("blocker is not an antichain");
      // Second application: the members of family_blocker are exactly the
      // transversals of the first blocker, so its minimal members are b(b(F)).
      FeasibleFamily re = family_blocker(fam.n(), blocker);
      std::vector<Set> twice = minimal_members(re);
      std::vector<Set> minimal = minimal_members(fam);
      std::sort(twice.begin(), twice.end());
      std::sort(minimal.begin(), minimal.end());
      if (twice != minimal)
        return std::string("double blocker disagrees with minimal members for ") +
               fam.name();
    }
    return std::string();
  });

  run_check(result, "peel_to_minimal reaches an irreducible member", [] {
    Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    std::vector<FeasibleFamily> families = {family_vertex_covers(k3),
                                            family_trivial_v(4),
                                            family_blocker(5, {0b00111, 0b11000})};
    for (const auto& fam : families) {
      Set top = full_mask(fam.n());
      if (!fam.contains(top)) continue;
      Set peeled = peel_to_minimal(fam, top);
      if (!fam.contains(peeled)) return std::string("peeled set left the family");
      if ((peeled & ~top) != 0) return std::string("peeled set is not a subset");
      bool removable = false;
      for_each_element(peeled, [&](int v) {
        if (fam.contains(without(peeled, v))) removable = true;
      });
      if (removable) return std::string("peeled set is not minimal");
    }
    return std::string();
  });

  run_check(result, "memoization is invisible (cold vs warm, bitwise)", [] {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      ValueOracle cold = random_monotone_oracle(rng, 8, trial);
      std::vector<Set> probes;
      for (int j = 0; j < 40; ++j)
        probes.push_back(static_cast<Set>(rng.next_u64()) & full_mask(8));
      std::vector<double> first;
      for (Set s : probes) first.push_back(cold(s));
      for (std::size_t j = 0; j < probes.size(); ++j)
        if (cold(probes[j]) != first[j])
          return std::string("warm cache changed a value");
    }
    return std::string();
  });

  return result;
}

inline SuiteResult verify_extensions() {
  using namespace verify_detail;
  SuiteResult result{"extensions", {}};

  run_check(result, "extension property on all sets (n=10)", [] {
    for (auto& [name, f] : function_zoo(10, 41)) {
      const Set top = full_mask(10);
      for (Set s = 0;; ++s) {
        FracPoint z(10, 0.0);
        for_each_element(s, [&](int v) { z[v] = 1.0; });
        double want = f(s);
        if (std::fabs(lovasz_eval(f, z) - want) > kTol)
          return name + ": convex extension breaks at a vertex";
        if (std::fabs(multilinear_eval_exact(f, z) - want) > kTol)
          return name + ": multilinear extension breaks at a vertex";
        if (s == top) break;
      }
    }
    return std::string();
  });

  run_check(result, "convexity of the level-set extension (100 triples)", [] {
    Rng rng(42);
    for (auto& [name, f] : function_zoo(8, 43)) {
      for (int trial = 0; trial < 100; ++trial) {
        FracPoint z = random_point(rng, 8, 1.5);
        FracPoint y = random_point(rng, 8, 1.5);
        double lambda = rng.uniform01();
        FracPoint mix(8);
        for (int v = 0; v < 8; ++v) mix[v] = lambda * z[v] + (1 - lambda) * y[v];
        if (lovasz_eval(f, mix) >
            lambda * lovasz_eval(f, z) + (1 - lambda) * lovasz_eval(f, y) + kTol)
          return name + ": convexity violated";
      }
    }
    return std::string();
  });

  run_check(result, "positive homogeneity (alpha in {0, 0.3, 2, 7})", [] {
    Rng rng(44);
    for (auto& [name, f] : function_zoo(8, 45)) {
      for (int trial = 0; trial < 25; ++trial) {
        FracPoint z = random_point(rng, 8);
        double base = lovasz_eval(f, z);
        for (double alpha : {0.0, 0.3, 2.0, 7.0}) {
          FracPoint scaled(8);
          for (int v = 0; v < 8; ++v) scaled[v] = alpha * z[v];
          if (std::fabs(lovasz_eval(f, scaled) - alpha * base) > kTol)
            return name + ": homogeneity violated at alpha " + fmt(alpha);
        }
      }
    }
    return std::string();
  });

  run_check(result, "monotone functions lift to monotone extensions", [] {
    Rng rng(46);
    for (auto& [name, f] : function_zoo(8, 47)) {
      if (!f.claims_monotone()) continue;
      for (int trial = 0; trial < 50; ++trial) {
        FracPoint z = random_point(rng, 8);
        FracPoint y(8);
        for (int v = 0; v < 8; ++v) y[v] = z[v] + rng.uniform01() * (1.0 - z[v]);
        if (lovasz_eval(f, z) > lovasz_eval(f, y) + kTol)
          return name + ": dominated point costs more";
      }
    }
    return std::string();
  });

  run_check(result, "subgradient inequality (100 pairs per function)", [] {
    Rng rng(48);
    for (auto& [name, f] : function_zoo(8, 49)) {
      for (int trial = 0; trial < 100; ++trial) {
        FracPoint z = random_point(rng, 8, 1.2);
        FracPoint y = random_point(rng, 8, 1.2);
        std::vector<double> s = lovasz_subgradient(f, z);
        double lhs = lovasz_eval(f, y);
        double rhs = lovasz_eval(f, z);
        for (int v = 0; v < 8; ++v) rhs += s[v] * (y[v] - z[v]);
        if (lhs < rhs - kTol) return name + ": subgradient inequality violated";
      }
    }
    return std::string();
  });

  run_check(result, "MC estimator consistency (>= 99 of 100 within 4 sigma)", [] {
    Rng rng(50);
    auto zoo = function_zoo(8, 51);
    const ValueOracle& f = zoo[1].second;  // coverage
    int within = 0;
    for (int run = 0; run < 100; ++run) {
      FracPoint z = random_point(rng, 8);
      double exact = multilinear_eval_exact(f, z);
      McEstimate est = multilinear_eval_mc(f, z, 1500, 1000 + run);
      if (std::fabs(est.estimate - exact) <= 4.0 * est.stderr_of_mean + 1e-12)
        ++within;
    }
    return within >= 99 ? std::string()
                        : "only " + std::to_string(within) + " runs within 4 sigma";
  });

  return result;
}

namespace verify_detail {

// Shared by the lifting suite and acceptance criterion 2.
inline std::string lifting_rows_1_2() {
  Rng rng(61);
  ValueOracle f1 = random_monotone_oracle(rng, 7, 1);
  ValueOracle f2 = random_monotone_oracle(rng, 7, 2);
  MasoInstance inst;
  inst.ground = GroundSet(7);
  inst.k = 2;
  inst.objectives = {f1, f2};
  inst.outer = family_uniform_matroid(7, 3);
  inst.sense = Sense::kMax;
  LiftedInstance lifted = lift_instance(inst);
  Verdict sub = check_submodular(lifted.f);
  if (!sub.ok) return "lifted sum not submodular: " + sub.detail;
  Verdict mono = check_monotone(lifted.f);
  if (!mono.ok) return "lifted sum not monotone: " + mono.detail;
  return std::string();
}

inline std::string lifting_row_3_psystem(int families) {
  Rng rng(62);
  for (int trial = 0; trial < families; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_index(3));  // 4..6
    FeasibleFamily fam;
    switch (trial % 3) {
      case 0:
        fam = family_uniform_matroid(n, 1 + static_cast<int>(rng.uniform_index(n)));
        break;
      case 1: {
        Set a = 0, b = 0;
        for (int v = 0; v < n; ++v) {
          if ((v + trial) % 2 == 0)
            a = with(a, v);
          else
            b = with(b, v);
        }
        fam = family_partition_matroid(n, {a, b}, {1, 2});
        break;
      }
      default: {
        Graph g(n, {});
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (rng.uniform01() < 0.7) edges.emplace_back(u, v);
        if (edges.empty()) edges.emplace_back(0, 1);
        // Edge ground set: keep it within the lifted p-system cap.
        while (static_cast<int>(edges.size()) > 6) edges.pop_back();
        fam = family_matchings(Graph(n, edges));
        break;
      }
    }
    MasoInstance inst;
    inst.ground = GroundSet(fam.n());
    inst.k = 2;
    inst.objectives = {make_modular(fam.n(), random_weights(rng, fam.n())),
                       make_modular(fam.n(), random_weights(rng, fam.n()))};
    inst.outer = fam;
    inst.sense = Sense::kMax;
    LiftedInstance lifted = lift_instance(inst);
    double p_ground = p_system_ratio(fam);
    double p_lifted = p_system_ratio(lifted.outer_lifted);
    if (p_lifted > p_ground + kTol)
      return "lifted ratio " + fmt(p_lifted) + " exceeds ground ratio " +
             fmt(p_ground);
  }
  return std::string();
}

inline std::string lifting_rows_5_6(int families) {
  Rng rng(63);
  for (int trial = 0; trial < families; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_index(3));
    const int k = n <= 5 ? 2 + static_cast<int>(rng.uniform_index(2)) : 2;
    FeasibleFamily matroid =
        trial % 2 == 0
            ? family_uniform_matroid(n, 1 + static_cast<int>(rng.uniform_index(n)))
            : family_partition_matroid(
                  n, {full_mask(n) & 0x5555555555555555ull,
                      full_mask(n) & 0xaaaaaaaaaaaaaaaaull},
                  {1, 2});
    MasoInstance inst;
    inst.ground = GroundSet(n);
    inst.k = k;
    for (int i = 0; i < k; ++i)
      inst.objectives.push_back(make_modular(n, random_weights(rng, n)));
    inst.outer = matroid;
    inst.sense = Sense::kMax;
    LiftedInstance lifted = lift_instance(inst);
    Verdict v = check_matroid(lifted.outer_lifted);
    if (!v.ok) return "lifted matroid check failed: " + v.detail;

    // Base family: bases of the same matroid, lifted.
    std::vector<Set> bases = bases_of(matroid, full_mask(n));
    MasoInstance base_inst = inst;
    base_inst.outer = family_explicit(n, bases);
    LiftedInstance base_lifted = lift_instance(base_inst);
    Verdict b = check_base_family(base_lifted.outer_lifted);
    if (!b.ok) return "lifted base family check failed: " + b.detail;
  }
  return std::string();
}

inline std::string lifting_row_7(int families) {
  Rng rng(64);
  for (int trial = 0; trial < families; ++trial) {
    const int n = 4;
    const int k = 2;
    FeasibleFamily m1 =
        family_uniform_matroid(n, 2 + static_cast<int>(rng.uniform_index(2)));
    FeasibleFamily m2 = family_partition_matroid(
        n, {Set{0b0011}, Set{0b1100}}, {1, 1 + static_cast<int>(rng.uniform_index(2))});
    MasoInstance inst;
    inst.ground = GroundSet(n);
    inst.k = k;
    inst.objectives = {make_modular(n, random_weights(rng, n)),
                       make_modular(n, random_weights(rng, n))};
    inst.sense = Sense::kMax;

    inst.outer = family_intersection(m1, m2);
    LiftedInstance both = lift_instance(inst);
    inst.outer = m1;
    LiftedInstance first = lift_instance(inst);
    inst.outer = m2;
    LiftedInstance second = lift_instance(inst);

    const Set top = full_mask(n * k);
    for (Set s = 0;; ++s) {
      bool joint = both.outer_lifted.contains(s);
      bool split = first.outer_lifted.contains(s) && second.outer_lifted.contains(s);
      if (joint != split)
        return "intersection lifting mismatch at set " + std::to_string(s);
      if (s == top) break;
    }
  }
  return std::string();
}

inline std::string lifting_rows_8_9() {
  Rng rng(65);
  // Row 8: per-agent matroids make the slice family a matroid.
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 5;
    const int k = 2;
    MasoInstance inst;
    inst.ground = GroundSet(n);
    inst.k = k;
    inst.objectives = {make_modular(n, random_weights(rng, n)),
                       make_modular(n, random_weights(rng, n))};
    inst.outer = family_full_powerset(n);
    inst.per_agent = {
        family_uniform_matroid(n, 1 + static_cast<int>(rng.uniform_index(3))),
        family_partition_matroid(n, {Set{0b00111}, Set{0b11000}}, {1, 2})};
    inst.sense = Sense::kMax;
    LiftedInstance lifted = lift_instance(inst);
    Verdict v = check_matroid(lifted.agent_lifted);
    if (!v.ok) return "slice family not a matroid: " + v.detail;
  }
  // Row 9: per-agent ring families make the slice family union/meet closed.
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 4;
    const int k = 2;
    std::vector<Set> seeds;
    for (int j = 0; j < 3; ++j)
      seeds.push_back(static_cast<Set>(rng.next_u64()) & full_mask(n));
    std::vector<Set> ring = lattice_closure(seeds);
    MasoInstance inst;
    inst.ground = GroundSet(n);
    inst.k = k;
    inst.objectives = {make_modular(n, random_weights(rng, n)),
                       make_modular(n, random_weights(rng, n))};
    inst.outer = family_full_powerset(n);
    inst.per_agent = {family_ring_explicit(n, ring), family_ring_explicit(n, ring)};
    inst.sense = Sense::kMin;
    LiftedInstance lifted = lift_instance(inst);
    std::vector<Set> members;
    const Set top = full_mask(n * k);
    for (Set s = 0;; ++s) {
      if (lifted.agent_lifted.contains(s)) members.push_back(s);
      if (s == top) break;
    }
    for (Set a : members)
      for (Set b : members)
        if (!lifted.agent_lifted.contains(a | b) ||
            !lifted.agent_lifted.contains(a & b))
          return std::string("slice family for rings is not lattice closed");
  }
  return std::string();
}

inline std::string lifting_additivity(int points) {
  Rng rng(66);
  const int n = 6, k = 2;
  MasoInstance inst;
  inst.ground = GroundSet(n);
  inst.k = k;
  inst.objectives = {random_monotone_oracle(rng, n, 1),
                     random_monotone_oracle(rng, n, 3)};
  inst.outer = family_full_powerset(n);
  inst.sense = Sense::kMax;
  LiftedInstance lifted = lift_instance(inst);
  for (int trial = 0; trial < points; ++trial) {
    FracPoint z_bar = random_point(rng, n * k);
    double joint = multilinear_eval_exact(lifted.f, z_bar);
    double split = 0.0;
    for (int i = 0; i < k; ++i) {
      FracPoint zi(z_bar.begin() + i * n, z_bar.begin() + (i + 1) * n);
      split += multilinear_eval_exact(inst.objectives[i], zi);
    }
    if (std::fabs(joint - split) > kTol)
      return "multilinear additivity off by " + fmt(joint - split);
  }
  return std::string();
}

inline std::string lifting_graph_counts() {
  struct RowCase {
    const char* name;
    Graph graph;
  };
  std::vector<RowCase> graphs = {
      {"path3", Graph(3, {{0, 1}, {1, 2}})},
      {"triangle", Graph(3, {{0, 1}, {1, 2}, {0, 2}})},
      {"star4", Graph(4, {{0, 1}, {0, 2}, {0, 3}})},
      {"cycle4", Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})},
      {"k4", Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})},
      {"cycle5", Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})},
  };
  for (const auto& c : graphs) {
    const int m = static_cast<int>(c.graph.edges.size());
    for (int k = 2; k <= (m <= 4 ? 3 : 2); ++k) {
      LiftedGraph lifted = lift_graph(c.graph, k);
      struct FamilyPair {
        const char* label;
        FeasibleFamily ground;
        FeasibleFamily direct;
      };
      std::vector<FamilyPair> rows;
      rows.push_back({"forests", family_graphic_forests(c.graph),
                      family_graphic_forests(lifted.multigraph)});
      rows.push_back({"matchings", family_matchings(c.graph),
                      family_matchings(lifted.multigraph)});
      rows.push_back({"st-paths", family_st_paths(c.graph, 0, c.graph.num_vertices - 1),
                      family_st_paths(lifted.multigraph, 0, c.graph.num_vertices - 1)});
      for (auto& row : rows) {
        MasoInstance inst;
        inst.ground = GroundSet(m);
        inst.k = k;
        for (int i = 0; i < k; ++i)
          inst.objectives.push_back(make_modular(m, std::vector<double>(m, 1.0)));
        inst.outer = row.ground;
        inst.sense = Sense::kMax;
        LiftedInstance li = lift_instance(inst);
        std::uint64_t via_lift = 0, via_graph = 0;
        const Set top = full_mask(m * k);
        for (Set s = 0;; ++s) {
          if (li.outer_lifted.contains(s)) ++via_lift;
          if (row.direct.contains(s)) ++via_graph;
          if (s == top) break;
        }
        if (via_lift != via_graph)
          return std::string(c.name) + "/" + row.label + " k=" + std::to_string(k) +
                 ": lifted count " + std::to_string(via_lift) + " vs multigraph " +
                 std::to_string(via_graph);
      }
    }
  }
  return std::string();
}

inline std::string disjoint_identity_lovasz(int trials) {
  Rng rng(71);
  const int n = 8, k = 3;
  for (int trial = 0; trial < trials; ++trial) {
    MasoInstance inst;
    inst.ground = GroundSet(n);
    inst.k = k;
    for (int i = 0; i < k; ++i)
      inst.objectives.push_back(random_monotone_oracle(rng, n, trial + i));
    inst.outer = family_full_powerset(n);
    inst.sense = Sense::kMin;
    std::vector<Set> supports = random_disjoint_supports(rng, n, k);
    PreAssignment pre{std::vector<Set>(supports)};
    ValueOracle g = g_function(inst, pre);
    FractionalAssignment z(k, n);
    double scale = trial % 3 == 0 ? 2.0 : 1.0;  // exercise points above one
    for (int i = 0; i < k; ++i)
      for_each_element(supports[i],
                       [&](int v) { z.parts[i][v] = rng.uniform01() * scale; });
    double joint = lovasz_eval(g, z.aggregate());
    double split = 0.0;
    for (int i = 0; i < k; ++i)
      split += lovasz_eval(inst.objectives[i], z.parts[i]);
    if (std::fabs(joint - split) > kTol)
      return "level-set identity off by " + fmt(joint - split);
  }
  return std::string();
}

inline std::string disjoint_identity_multilinear(int trials) {
  Rng rng(72);
  const int n = 8, k = 3;
  for (int trial = 0; trial < trials; ++trial) {
    MasoInstance inst;
    inst.ground = GroundSet(n);
    inst.k = k;
    for (int i = 0; i < k; ++i)
      inst.objectives.push_back(random_monotone_oracle(rng, n, trial + i));
    inst.outer = family_full_powerset(n);
    inst.sense = Sense::kMax;
    std::vector<Set> supports = random_disjoint_supports(rng, n, k);
    PreAssignment pre{std::vector<Set>(supports)};
    ValueOracle g = g_function(inst, pre);
    FractionalAssignment z(k, n);
    for (int i = 0; i < k; ++i)
      for_each_element(supports[i], [&](int v) { z.parts[i][v] = rng.uniform01(); });
    double joint = multilinear_eval_exact(g, z.aggregate());
    double split = 0.0;
    for (int i = 0; i < k; ++i)
      split += multilinear_eval_exact(inst.objectives[i], z.parts[i]);
    if (std::fabs(joint - split) > kTol)
      return "product identity off by " + fmt(joint - split);
  }
  return std::string();
}

inline std::string facility_k_approx(int seeds) {
  for (int seed = 0; seed < seeds; ++seed) {
    GeneratorParams p;
    p.n = 4 + seed % 3;       // 4..6
    p.k = 2 + (seed / 3) % 2;  // 2..3
    ParsedInstance parsed = parse_generated("facility-location", p, seed);
    const MasoInstance& inst = parsed.instance;
    MinimizeResult result =
        minimize_via_disjointify(inst, make_sa_exact_rounder(), seed);
    Certificate cert = certify(inst, result.allocation);
    if (!cert.feasible) return "seed " + std::to_string(seed) + ": infeasible output";
    if (cert.algo_value > inst.k * cert.opt_value + 1e-9)
      return "seed " + std::to_string(seed) + ": cost " + fmt(cert.algo_value) +
             " exceeds k*OPT " + fmt(inst.k * cert.opt_value);
  }
  return std::string();
}

inline std::string fracture_vc(int seeds) {
  for (int seed = 0; seed < seeds; ++seed) {
    GeneratorParams p;
    p.n = 4 + seed % 3;
    p.k = 2 + (seed / 3) % 2;
    ParsedInstance parsed = parse_generated("vertex-cover", p, seed);
    const MasoInstance& inst = parsed.instance;

    MaLeResult relaxed = solve_ma_le(inst, 1e-9, 2000, seed);
    double beta = blocker_beta(inst.outer);
    FractureResult frac = fracture_expand_return(
        inst, relaxed.assignment, make_sa_threshold_rounder(beta), seed);
    if (!inst.allocation_feasible(frac.allocation))
      return "seed " + std::to_string(seed) + ": fracture output infeasible";

    MinimizeResult direct =
        minimize_via_disjointify(inst, make_sa_exact_rounder(), seed);
    double value = std::min(frac.value, direct.value);
    Allocation best_alloc =
        frac.value <= direct.value ? frac.allocation : direct.allocation;
    Certificate cert = certify(inst, best_alloc);
    if (!cert.feasible) return "seed " + std::to_string(seed) + ": infeasible output";
    double log2n = std::log2(static_cast<double>(inst.n()));
    double bound = std::min<double>(inst.k, 4.0 * log2n * log2n) * 2.0;
    if (cert.zero_optimum) continue;
    if (value / cert.opt_value > bound + 1e-9)
      return "seed " + std::to_string(seed) + ": ratio " +
             fmt(value / cert.opt_value) + " exceeds " + fmt(bound);
  }
  return std::string();
}

inline std::string ce_rounding_bound(int instances, int trials) {
  Rng rng(73);
  for (int index = 0; index < instances; ++index) {
    const int n = 4 + index % 5;       // 4..8
    const int k = 2 + index % 2;       // 2..3
    MasoInstance inst;
    inst.ground = GroundSet(n);
    inst.k = k;
    for (int i = 0; i < k; ++i)
      inst.objectives.push_back(random_monotone_oracle(rng, n, index + i));
    inst.outer = family_trivial_v(n);
    inst.sense = Sense::kMin;
    Set target = peel_to_minimal(inst.outer, full_mask(n));

    // Aggregate mass one on every target element, split across agents.
    FractionalAssignment z(k, n);
    for (int v = 0; v < n; ++v) {
      std::vector<double> shares(k);
      double total = 0.0;
      for (double& s : shares) total += (s = rng.uniform01() + 0.05);
      for (int i = 0; i < k; ++i) z.parts[i][v] = shares[i] / total;
    }
    double fractional = assignment_extension_value(inst, z);

    double total_cost = 0.0;
    for (int t = 0; t < trials; ++t) {
      CeResult r = ce_rounding(inst, z, target, 1000ull * index + t);
      if ((r.allocation.cover() & target) != target)
        return "instance " + std::to_string(index) + ": target not covered";
      r.allocation.require_disjoint();
      total_cost += r.cost;
    }
    double mean = total_cost / trials;
    double bound = 4.0 * (std::log(static_cast<double>(set_size(target))) + 2.0);
    if (mean > bound * fractional + 1e-9)
      return "instance " + std::to_string(index) + ": mean cost " + fmt(mean) +
             " exceeds " + fmt(bound * fractional);
  }

  // Single-item two-agent iteration count is geometric with success 1/2.
  const int geo_trials = 1000;
  MasoInstance tiny;
  tiny.ground = GroundSet(1);
  tiny.k = 2;
  tiny.objectives = {make_modular(1, {1.0}), make_modular(1, {1.0})};
  tiny.outer = family_trivial_v(1);
  tiny.sense = Sense::kMin;
  FractionalAssignment half(2, 1);
  half.parts[0][0] = 0.5;
  half.parts[1][0] = 0.5;
  double iteration_sum = 0.0;
  for (int t = 0; t < geo_trials; ++t)
    iteration_sum += ce_rounding(tiny, half, Set{1}, 9000 + t).iterations;
  double mean_iter = iteration_sum / geo_trials;
  double sigma = std::sqrt(2.0 / geo_trials);
  if (std::fabs(mean_iter - 2.0) > 3.0 * sigma)
    return "iteration mean " + fmt(mean_iter) + " outside 2 +/- " + fmt(3 * sigma);
  return std::string();
}

inline std::string bounded_blocker_membership(int seeds) {
  Rng rng(74);
  for (int seed = 0; seed < seeds; ++seed) {
    MasoInstance inst;
    if (seed % 2 == 0) {
      GeneratorParams p;
      p.n = 4 + seed % 3;
      p.k = 2;
      inst = parse_generated("vertex-cover", p, seed).instance;
    } else {
      const int n = 5 + seed % 2;
      const int r = 2 + seed % 2;  // uniform hyperedge size
      std::vector<Set> hyperedges;
      for (int j = 0; j < n; ++j) {
        Set e = 0;
        while (set_size(e) < r)
          e = with(e, static_cast<int>(rng.uniform_index(n)));
        hyperedges.push_back(e);
      }
      inst.ground = GroundSet(n);
      inst.k = 2 + seed % 2;
      for (int i = 0; i < inst.k; ++i)
        inst.objectives.push_back(random_monotone_oracle(rng, n, seed + i));
      inst.outer = family_blocker(n, hyperedges);
      inst.sense = Sense::kMin;
    }
    MaLeResult relaxed = solve_ma_le(inst, 1e-9, 2000, seed);
    CeResult rounded = bounded_blocker_round(inst, relaxed.assignment,
                                             blocker_beta(inst.outer), seed);
    if (!inst.outer.contains(rounded.allocation.cover()))
      return "seed " + std::to_string(seed) + ": cover left the family";
  }
  return std::string();
}

inline std::string maximize_guarantee(int seeds) {
  for (int seed = 0; seed < seeds; ++seed) {
    GeneratorParams p;
    if (seed % 2 == 0) {
      p.n = 6;
      p.k = 2;
    } else {
      p.n = 4;
      p.k = 3;
    }
    ParsedInstance parsed = parse_generated("welfare", p, seed);
    const MasoInstance& inst = parsed.instance;
    PolytopeOracle poly = polytope_for(inst);
    MaximizeResult result = maximize_pipeline(inst, poly, 100, seed);
    Certificate cert = certify(inst, result.allocation);
    if (!cert.feasible) return "seed " + std::to_string(seed) + ": infeasible output";
    double floor = (1.0 - std::exp(-1.0) - 0.05) * cert.opt_value;
    if (result.value < floor - 1e-9)
      return "seed " + std::to_string(seed) + ": value " + fmt(result.value) +
             " below (1-1/e-0.05)*OPT " + fmt(floor);
  }
  return std::string();
}

inline std::string lifted_greedy_guarantee(int seeds) {
  Rng rng(75);
  for (int seed = 0; seed < seeds; ++seed) {
    FeasibleFamily fam;
    int n = 0;
    switch (seed % 5) {
      case 0:
        n = 5;
        fam = family_uniform_matroid(n, 2);
        break;
      case 1:
        n = 5;
        fam = family_partition_matroid(n, {Set{0b00111}, Set{0b11000}}, {1, 2});
        break;
      case 2: {
        Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
        n = static_cast<int>(g.edges.size());
        fam = family_graphic_forests(g);
        break;
      }
      case 3: {
        Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}});
        n = static_cast<int>(g.edges.size());
        fam = family_matchings(g);
        break;
      }
      default:
        n = 5;
        fam = family_intersection(
            family_partition_matroid(n, {Set{0b00011}, Set{0b11100}}, {1, 2}),
            family_partition_matroid(n, {Set{0b01010}, Set{0b10101}}, {1, 2}));
        break;
    }
    MasoInstance inst;
    inst.ground = GroundSet(n);
    inst.k = 2;
    for (int i = 0; i < inst.k; ++i)
      inst.objectives.push_back(random_monotone_oracle(rng, n, seed + i));
    inst.outer = fam;
    inst.sense = Sense::kMax;

    MaximizeResult result = lifted_greedy(inst, seed);
    Certificate cert = certify(inst, result.allocation);
    if (!cert.feasible) return "seed " + std::to_string(seed) + ": infeasible output";
    double p = p_system_ratio(fam);
    if (result.value * (p + 1.0) < cert.opt_value - 1e-9)
      return "seed " + std::to_string(seed) + ": value*(p+1) " +
             fmt(result.value * (p + 1.0)) + " below OPT " + fmt(cert.opt_value);
  }
  return std::string();
}

inline std::string crossing_solver_bound(int families) {
  Rng rng(76);
  int built = 0;
  int attempt = 0;
  while (built < families) {
    ++attempt;
    const int n = 5 + (attempt % 4);  // 5..8
    std::vector<Set> seeds;
    for (int j = 0; j < 3; ++j) {
      Set s = static_cast<Set>(rng.next_u64()) & full_mask(n);
      if (s == 0) s = with(Set{0}, attempt % n);
      seeds.push_back(s);
    }
    std::vector<Set> members = built % 2 == 0
                                   ? lattice_closure(seeds)
                                   : crossing_closure(n, seeds);
    members.erase(std::remove(members.begin(), members.end(), Set{0}), members.end());
    if (members.empty() || members.size() > 40) continue;
    FeasibleFamily fam;
    try {
      fam = built % 2 == 0 ? family_ring_explicit(n, members)
                           : family_crossing_explicit(n, members);
    } catch (const PreconditionError&) {
      continue;  // closure pruned by the empty-set removal; try again
    }
    MasoInstance inst;
    inst.ground = GroundSet(n);
    inst.k = 2;
    for (int i = 0; i < inst.k; ++i)
      inst.objectives.push_back(random_monotone_oracle(rng, n, built + i));
    inst.outer = fam;
    inst.sense = Sense::kMin;

    double ratio_sum = 0.0;
    int ratio_count = 0;
    int biggest_output = 1;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      MinimizeResult result = crossing_family_solve(inst, seed);
      if (!inst.outer.contains(result.allocation.cover()))
        return "family " + std::to_string(built) + ": output left the family";
      Certificate cert = certify(inst, result.allocation);
      biggest_output =
          std::max(biggest_output, set_size(result.allocation.cover()));
      if (cert.ratio_defined) {
        ratio_sum += cert.ratio;
        ++ratio_count;
      }
    }
    if (ratio_count > 0) {
      double mean = ratio_sum / ratio_count;
      double bound = 2.0 * (std::log(static_cast<double>(biggest_output)) + 2.0);
      if (mean > bound + 1e-9)
        return "family " + std::to_string(built) + ": mean ratio " + fmt(mean) +
               " exceeds " + fmt(bound);
    }
    ++built;
  }
  return std::string();
}

inline std::string lifted_brute_force_equality(int instances) {
  Rng rng(77);
  for (int index = 0; index < instances; ++index) {
    const int n = 2 + index % 3;  // 2..4
    const int k = 1 + index % 3;  // 1..3
    std::vector<Set> members;
    const Set top = full_mask(n);
    for (Set s = 0;; ++s) {
      if (rng.uniform01() < 0.4) members.push_back(s);
      if (s == top) break;
    }
    if (members.empty()) members.push_back(top);
    MasoInstance inst;
    inst.ground = GroundSet(n);
    inst.k = k;
    for (int i = 0; i < k; ++i)
      inst.objectives.push_back(random_monotone_oracle(rng, n, index + i));
    inst.outer = family_explicit(n, members);
    inst.sense = index % 2 == 0 ? Sense::kMin : Sense::kMax;

    BruteForceResult direct = brute_force_maso(inst);
    LiftedInstance lifted = lift_instance(inst);
    BruteForceSetResult via_lift =
        brute_force_so(lifted.f, lifted.combined, inst.sense);
    if (direct.feasible != via_lift.feasible)
      return "instance " + std::to_string(index) + ": feasibility disagrees";
    if (direct.feasible && direct.value != via_lift.value)
      return "instance " + std::to_string(index) + ": values differ: " +
             fmt(direct.value) + " vs " + fmt(via_lift.value);
  }
  return std::string();
}

}  // namespace verify_detail

inline SuiteResult verify_lifting() {
  using namespace verify_detail;
  SuiteResult result{"lifting", {}};
  run_check(result, "lifted objective stays submodular and monotone (nk=14)",
            [] { return lifting_rows_1_2(); });
  run_check(result, "lifting never raises the p-system ratio",
            [] { return lifting_row_3_psystem(8); });
  run_check(result, "lifted matroids and base families keep their structure",
            [] { return lifting_rows_5_6(8); });
  run_check(result, "lifting commutes with matroid intersection",
            [] { return lifting_row_7(4); });
  run_check(result, "per-agent structure lifts to the slice family",
            [] { return lifting_rows_8_9(); });
  run_check(result, "multilinear additivity across agent blocks (100 points)",
            [] { return lifting_additivity(100); });
  run_check(result, "lifted family counts match multigraph counts",
            [] { return lifting_graph_counts(); });
  return result;
}

inline SuiteResult verify_minimize() {
  using namespace verify_detail;
  SuiteResult result{"minimize", {}};
  run_check(result, "level-set identity over disjoint supports (100 points)",
            [] { return disjoint_identity_lovasz(100); });
  run_check(result, "disjointify dominates and inflates by at most k", [] {
    Rng rng(81);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 5, k = 2 + trial % 2;
      MasoInstance inst;
      inst.ground = GroundSet(n);
      inst.k = k;
      for (int i = 0; i < k; ++i)
        inst.objectives.push_back(random_monotone_oracle(rng, n, trial + i));
      inst.outer = family_trivial_v(n);
      inst.sense = Sense::kMin;
      FractionalAssignment z(k, n);
      for (int i = 0; i < k; ++i)
        for (int v = 0; v < n; ++v) z.parts[i][v] = rng.uniform01();
      FractionalAssignment hat = disjointify_max(z, k);
      FracPoint before = z.aggregate();
      FracPoint after = hat.aggregate();
      for (int v = 0; v < n; ++v)
        if (after[v] < before[v] - 1e-12)
          return std::string("aggregate not dominated");
      double inflated = assignment_extension_value(inst, hat);
      double base = assignment_extension_value(inst, z);
      if (inflated > k * base + 1e-9)
        return "inflation " + fmt(inflated) + " above k*input " + fmt(k * base);
    }
    return std::string();
  });
  run_check(result, "facility-location split stays within k*OPT (12 seeds)",
            [] { return facility_k_approx(12); });
  run_check(result, "level-set rounding keeps its cost bound (8 instances)",
            [] { return ce_rounding_bound(8, 200); });
  run_check(result, "fracture pipeline outputs stay feasible (12 seeds)",
            [] { return fracture_vc(12); });
  run_check(result, "threshold sets are members on bounded blockers (12 seeds)",
            [] { return bounded_blocker_membership(12); });
  return result;
}

inline SuiteResult verify_maximize() {
  using namespace verify_detail;
  SuiteResult result{"maximize", {}};
  run_check(result, "product identity over disjoint supports (100 points)",
            [] { return disjoint_identity_multilinear(100); });
  run_check(result, "endpoint transfers preserve the aggregate", [] {
    Rng rng(82);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 5, k = 2 + trial % 2;
      MasoInstance inst;
      inst.ground = GroundSet(n);
      inst.k = k;
      for (int i = 0; i < k; ++i)
        inst.objectives.push_back(random_monotone_oracle(rng, n, trial + i));
      inst.outer = family_full_powerset(n);
      inst.sense = Sense::kMax;
      FractionalAssignment z(k, n);
      // The pipeline feeds transfers an aggregate inside the polytope, so
      // per-item total mass never exceeds one.
      for (int i = 0; i < k; ++i)
        for (int v = 0; v < n; ++v) z.parts[i][v] = rng.uniform01() * 0.8 / k;
      FracPoint before = z.aggregate();
      FractionalAssignment moved = disjointify_supports(z, inst);
      FracPoint after = moved.aggregate();
      for (int v = 0; v < n; ++v)
        if (std::fabs(after[v] - before[v]) > 1e-9)
          return std::string("aggregate drifted during transfers");
      for (int v = 0; v < n; ++v) {
        int holders = 0;
        for (int i = 0; i < k; ++i)
          if (moved.parts[i][v] > 0.0) ++holders;
        if (holders > 1) return std::string("supports still overlap");
      }
    }
    return std::string();
  });
  run_check(result, "pipage keeps the multilinear value (30 runs)", [] {
    Rng rng(83);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 6;
      PolytopeOracle p = make_polytope_partition(
          n, {Set{0b000111}, Set{0b111000}}, {1 + trial % 2, 2});
      ValueOracle f = random_monotone_oracle(rng, n, trial);
      FracPoint z(n, 0.0);
      for (std::size_t part = 0; part < p.parts.size(); ++part) {
        double budget = p.caps[part];
        for_each_element(p.parts[part], [&](int v) {
          double x = rng.uniform01() * std::min(1.0, budget);
          z[v] = x;
          budget -= x;
        });
      }
      double before = multilinear_eval_exact(f, z);
      Set rounded = round_partition_matroid(z, p, f, trial);
      if (f(rounded) < before - 1e-9)
        return "rounded value " + fmt(f(rounded)) + " below relaxation " +
               fmt(before);
    }
    return std::string();
  });
  run_check(result, "continuous greedy clears its discretized floor (8 seeds)",
            [] { return maximize_guarantee(8); });
  run_check(result, "greedy on the lifted space obeys the p-system bound (15 seeds)",
            [] { return lifted_greedy_guarantee(15); });
  return result;
}

inline SuiteResult verify_oracle() {
  using namespace verify_detail;
  SuiteResult result{"oracle", {}};
  run_check(result, "single-agent enumeration matches the assignment scan", [] {
    Rng rng(91);
    for (int index = 0; index < 100; ++index) {
      const int n = 2 + index % 3;
      std::vector<Set> members;
      const Set top = full_mask(n);
      for (Set s = 0;; ++s) {
        if (rng.uniform01() < 0.5) members.push_back(s);
        if (s == top) break;
      }
      if (members.empty()) members.push_back(top);
      MasoInstance inst;
      inst.ground = GroundSet(n);
      inst.k = 1;
      inst.objectives.push_back(random_monotone_oracle(rng, n, index));
      inst.outer = family_explicit(n, members);
      inst.sense = index % 2 == 0 ? Sense::kMin : Sense::kMax;
      BruteForceResult assignment_scan = brute_force_maso(inst);
      BruteForceSetResult set_scan =
          brute_force_so(inst.objectives[0], inst.outer, inst.sense);
      if (assignment_scan.feasible != set_scan.feasible)
        return std::string("feasibility disagrees");
      if (assignment_scan.feasible && assignment_scan.value != set_scan.value)
        return std::string("optimal values disagree");
    }
    return std::string();
  });
  run_check(result, "lifted enumeration equals the direct scan (100 instances)",
            [] { return lifted_brute_force_equality(100); });
  run_check(result, "certificates are reproducible", [] {
    ParsedInstance parsed = parse_generated("facility-location", {}, 5);
    MinimizeResult a = minimize_via_disjointify(parsed.instance,
                                                make_sa_exact_rounder(), 7);
    MinimizeResult b = minimize_via_disjointify(parsed.instance,
                                                make_sa_exact_rounder(), 7);
    if (a.value != b.value) return std::string("values differ across reruns");
    for (int i = 0; i < parsed.instance.k; ++i)
      if (a.allocation.parts[i] != b.allocation.parts[i])
        return std::string("allocations differ across reruns");
    Certificate ca = certify(parsed.instance, a.allocation);
    Certificate cb = certify(parsed.instance, b.allocation);
    if (ca.opt_value != cb.opt_value || ca.ratio != cb.ratio)
      return std::string("certificates differ across reruns");
    return std::string();
  });
  return result;
}

inline SuiteResult verify_cli() {
  using namespace verify_detail;
  SuiteResult result{"cli", {}};
  run_check(result, "reports are byte-identical across reruns", [] {
    ParsedInstance parsed = parse_generated("welfare", {}, 3);
    std::vector<std::string> algos = {"lifted-greedy", "maximize-pipeline"};
    auto rows_a = run_experiment(parsed, algos, 0, 2, false);
    auto rows_b = run_experiment(parsed, algos, 0, 2, false);
    if (report_to_csv(rows_a) != report_to_csv(rows_b))
      return std::string("CSV outputs differ");
    if (report_to_json(parsed.id, rows_a).dump(2) !=
        report_to_json(parsed.id, rows_b).dump(2))
      return std::string("JSON outputs differ");
    return std::string();
  });
  run_check(result, "instances round-trip through serialization", [] {
    Rng rng(92);
    int kind_index = 0;
    for (const std::string& kind : generator_kinds()) {
      Json doc = generate_instance(kind, {}, 17 + kind_index);
      ParsedInstance direct = instance_from_json(doc);
      Json reparsed_doc = Json::parse(doc.dump(2));
      ParsedInstance reparsed = instance_from_json(reparsed_doc);
      const int n = direct.instance.n();
      for (int probe = 0; probe < 100; ++probe) {
        Set s = static_cast<Set>(rng.next_u64()) & full_mask(n);
        for (int i = 0; i < direct.instance.k; ++i)
          if (direct.instance.objectives[i](s) != reparsed.instance.objectives[i](s))
            return kind + ": objective values changed across the round trip";
        if (direct.instance.outer.contains(s) != reparsed.instance.outer.contains(s))
          return kind + ": family membership changed across the round trip";
      }
      ++kind_index;
    }
    return std::string();
  });
  return result;
}

// ---------------------------------------------------------------------------
// Acceptance criteria: one line each, runtime budgets enforced in-line.
// ---------------------------------------------------------------------------

namespace verify_detail {

template <typename Fn>
inline CheckLine criterion(const std::string& name, double budget_seconds, Fn&& body) {
  CheckLine line;
  line.name = name;
  auto start = Clock::now();
  std::string why;
  try {
    why = body();
  } catch (const std::exception& e) {
    why = std::string("threw: ") + e.what();
  }
  line.seconds = elapsed_seconds(start);
  bool in_budget = budget_seconds <= 0.0 || line.seconds < budget_seconds;
  line.passed = why.empty() && in_budget;
  std::ostringstream detail;
  if (!why.empty()) detail << why << "; ";
  if (!in_budget)
    detail << "runtime " << fmt(line.seconds) << "s over budget "
           << fmt(budget_seconds) << "s; ";
  if (line.passed) detail << "ok";
  line.detail = detail.str();
  return line;
}

}  // namespace verify_detail

inline SuiteResult verify_acceptance() {
  using namespace verify_detail;
  SuiteResult result{"acceptance", {}};

  result.lines.push_back(criterion("1 extension correctness", 10.0, [] {
    for (auto& [name, f] : function_zoo(10, 101)) {
      const Set top = full_mask(10);
      for (Set s = 0;; ++s) {
        FracPoint z(10, 0.0);
        for_each_element(s, [&](int v) { z[v] = 1.0; });
        double want = f(s);
        if (std::fabs(lovasz_eval(f, z) - want) > 1e-9)
          return name + ": level-set extension misses a vertex";
        if (std::fabs(multilinear_eval_exact(f, z) - want) > 1e-9)
          return name + ": product extension misses a vertex";
        if (s == top) break;
      }
      Rng rng(103);
      for (int trial = 0; trial < 100; ++trial) {
        FracPoint z = random_point(rng, 10, 1.4);
        FracPoint y = random_point(rng, 10, 1.4);
        double lambda = rng.uniform01();
        FracPoint mix(10);
        for (int v = 0; v < 10; ++v) mix[v] = lambda * z[v] + (1 - lambda) * y[v];
        if (f.claims_submodular() &&
            lovasz_eval(f, mix) >
                lambda * lovasz_eval(f, z) + (1 - lambda) * lovasz_eval(f, y) + 1e-9)
          return name + ": convexity violated";
        double base = lovasz_eval(f, z);
        for (double alpha : {0.0, 0.3, 2.0, 7.0}) {
          FracPoint scaled(10);
          for (int v = 0; v < 10; ++v) scaled[v] = alpha * z[v];
          if (std::fabs(lovasz_eval(f, scaled) - alpha * base) > 1e-9)
            return name + ": homogeneity violated";
        }
      }
    }
    return std::string();
  }));

  result.lines.push_back(criterion("2 lifting invariance", 60.0, [] {
    if (std::string why = lifting_rows_1_2(); !why.empty()) return "rows 1-2: " + why;
    if (std::string why = lifting_row_3_psystem(8); !why.empty())
      return "row 3: " + why;
    if (std::string why = lifting_rows_5_6(8); !why.empty()) return "rows 5-6: " + why;
    if (std::string why = lifting_row_7(4); !why.empty()) return "row 7: " + why;
    if (std::string why = lifting_rows_8_9(); !why.empty()) return "rows 8-9: " + why;
    if (std::string why = lifting_additivity(100); !why.empty())
      return "additivity: " + why;
    if (std::string why = lifting_graph_counts(); !why.empty())
      return "rows 10-12: " + why;
    return std::string();
  }));

  result.lines.push_back(criterion("3 disjoint-support identities", 0.0, [] {
    if (std::string why = disjoint_identity_lovasz(100); !why.empty())
      return "level-set: " + why;
    if (std::string why = disjoint_identity_multilinear(100); !why.empty())
      return "product: " + why;
    return std::string();
  }));

  result.lines.push_back(criterion("4 facility-location k-approximation", 30.0,
                                   [] { return facility_k_approx(50); }));

  result.lines.push_back(
      criterion("5 fracture rounding", 60.0, [] { return fracture_vc(50); }));

  result.lines.push_back(criterion("6 level-set rounding bound", 0.0,
                                   [] { return ce_rounding_bound(20, 500); }));

  result.lines.push_back(criterion("7 bounded-blocker membership", 0.0,
                                   [] { return bounded_blocker_membership(50); }));

  result.lines.push_back(criterion("8 maximization pipeline", 120.0,
                                   [] { return maximize_guarantee(30); }));

  result.lines.push_back(criterion("9 lifted greedy p-system guarantee", 0.0,
                                   [] { return lifted_greedy_guarantee(50); }));

  result.lines.push_back(criterion("10 crossing-family solver", 0.0,
                                   [] { return crossing_solver_bound(20); }));

  result.lines.push_back(criterion("11 oracle self-consistency", 0.0,
                                   [] { return lifted_brute_force_equality(100); }));

  result.suite = "acceptance";
  return result;
}

inline std::vector<std::string> verify_suite_names() {
  return {"core",     "extensions", "lifting", "minimize",
          "maximize", "oracle",     "cli",     "acceptance"};
}

inline SuiteResult run_suite(const std::string& name) {
  if (name == "core") return verify_core();
  if (name == "extensions") return verify_extensions();
  if (name == "lifting") return verify_lifting();
  if (name == "minimize") return verify_minimize();
  if (name == "maximize") return verify_maximize();
  if (name == "oracle") return verify_oracle();
  if (name == "cli") return verify_cli();
  if (name == "acceptance") return verify_acceptance();
  throw PreconditionError("unknown suite: " + name);
}

inline std::string format_suite(const SuiteResult& result) {
  std::ostringstream out;
  for (const auto& line : result.lines) {
    out << (line.passed ? "PASS" : "FAIL") << "  " << result.suite << ": "
        << line.name << " (" << verify_detail::fmt(line.seconds) << "s)";
    if (!line.passed || line.detail != "ok") out << " - " << line.detail;
    out << '\n';
  }
  out << (result.ok() ? "OK" : "FAILED") << "  suite " << result.suite << ", "
      << result.lines.size() << " checks\n";
  return out.str();
}

}  // namespace maso

#endif  // MASO_VERIFY_HPP
