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

#ifndef MASO_MINIMIZE_HPP
#define MASO_MINIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "maso/common.hpp"
#include "maso/extensions.hpp"
#include "maso/family.hpp"
#include "maso/functions.hpp"
#include "maso/instance.hpp"
#include "maso/simplex.hpp"
#include "maso/value_oracle.hpp"

namespace maso {

namespace detail {

inline std::vector<Set> blocker_of(const FeasibleFamily& fam) {
  if (fam.blocker_known()) return fam.known_blocker();
  return compute_blocker(fam);
}

inline double blocker_min_mass(const FracPoint& z, const std::vector<Set>& blocker) {
  double worst = std::numeric_limits<double>::infinity();
  for (Set b : blocker) {
    double mass = 0.0;
    for_each_element(b, [&](int v) { mass += z[v]; });
    worst = std::min(worst, mass);
  }
  return worst;
}

inline void require_min_monotone(const MasoInstance& inst, const char* who) {
  if (inst.sense != Sense::kMin)
    throw PreconditionError(std::string(who) + " requires a minimization instance");
  for (const auto& f : inst.objectives)
    if (!f.claims_monotone())
      throw PreconditionError(std::string(who) + " requires monotone objectives");
}

}  // namespace detail

struct MaLeResult {
  FractionalAssignment assignment;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

inline double assignment_extension_value(const MasoInstance& inst,
                                         const FractionalAssignment& z) {
  double total = 0.0;
  for (int i = 0; i < inst.k; ++i) total += lovasz_eval(inst.objectives[i], z.parts[i]);
  return total;
}

// Convex relaxation: minimize the summed Lovász extensions subject to the
// aggregate lying in the blocking polytope. Phase one is projected
// subgradient descent; phase two polishes with cutting planes built from the
// same subgradient oracle, whose LP value certifies the epsilon gap (the LP
// outer-approximates the convex objective from below).
inline MaLeResult solve_ma_le(const MasoInstance& inst, double eps = -1.0,
                              int max_iters = 2000, std::uint64_t seed = 0) {
  (void)seed;  // the scheme is deterministic; the parameter fixes the interface
  detail::require_min_monotone(inst, "solve_ma_le");
  const int n = inst.n();
  const int k = inst.k;
  auto blocker = detail::blocker_of(inst.outer);

  MaLeResult out;
  out.assignment = FractionalAssignment(k, n);
  if (blocker.empty()) {
    // The empty set is feasible, and zero is the floor of nonnegative costs.
    out.value = 0.0;
    out.converged = true;
    return out;
  }

  auto objective = [&](const FractionalAssignment& z) {
    return assignment_extension_value(inst, z);
  };
  auto aggregate_feasible = [&](const FractionalAssignment& z, double tol) {
    return detail::blocker_min_mass(z.aggregate(), blocker) >= 1.0 - tol;
  };

  // Start at the uniform split: every blocking set is nonempty, so the
  // aggregate of all-ones is feasible.
  FractionalAssignment z(k, n);
  for (auto& zi : z.parts) std::fill(zi.begin(), zi.end(), 1.0 / k);
  FractionalAssignment best = z;
  double best_value = objective(z);
  if (eps <= 0.0) eps = 1e-4 * std::max(best_value, 1.0);

  // Phase one: projected subgradient with a Polyak-style step against a
  // moving 0.95 target, falling back to a diminishing step.
  const int phase1 = std::min(max_iters, 300);
  for (int t = 1; t <= phase1; ++t) {
    std::vector<std::vector<double>> grads(k);
    double norm_sq = 0.0;
    for (int i = 0; i < k; ++i) {
      grads[i] = lovasz_subgradient(inst.objectives[i], z.parts[i]);
      for (double gvi : grads[i]) norm_sq += gvi * gvi;
    }
    double gap = objective(z) - 0.95 * best_value;
    double step = gap > 0.0 ? gap / (norm_sq + 1e-12)
                            : 0.5 / (std::sqrt(static_cast<double>(t)) * (1.0 + std::sqrt(norm_sq)));
    for (int i = 0; i < k; ++i)
      for (int v = 0; v < n; ++v)
        z.parts[i][v] = std::clamp(z.parts[i][v] - step * grads[i][v], 0.0, 1.0);
    // Projection back to feasibility: uniform scaling fixes every violated
    // blocker constraint in one move (coefficients are 0/1).
    double mass = detail::blocker_min_mass(z.aggregate(), blocker);
    if (mass < 1.0) {
      if (mass <= 1e-12) {
        z = best;
      } else {
        for (auto& zi : z.parts)
          for (double& x : zi) x /= mass;
      }
    }
    double value = objective(z);
    if (value < best_value && aggregate_feasible(z, 1e-9)) {
      best_value = value;
      best = z;
    }
    ++out.iterations;
  }

  // Phase two: Kelley cutting planes. Variables are z_{i,v} and one epigraph
  // variable t_i per agent; each cut is an Edmonds vertex y of agent i's base
  // region, enforcing t_i >= y.z_i. Monotone objectives with 0/1 blockers
  // keep the optimum inside the unit box, so the box bounds lose nothing.
  const int nz = k * n;
  LinearProgram lp;
  lp.nvars = nz + k;
  lp.c.assign(lp.nvars, 0.0);
  lp.lower.assign(lp.nvars, 0.0);
  lp.upper.assign(lp.nvars, 1.0);
  for (int i = 0; i < k; ++i) {
    lp.c[nz + i] = 1.0;
    lp.upper[nz + i] = inst.objectives[i](inst.ground.universe()) + 1.0;
  }
  for (Set b : blocker) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int i = 0; i < k; ++i)
      for_each_element(b, [&](int v) { row[i * n + v] = 1.0; });
    lp.add_row(std::move(row), 1.0, +1);
  }
  std::vector<std::vector<std::vector<double>>> cuts(k);
  auto add_cut = [&](int i, const std::vector<double>& y) {
    for (const auto& seen : cuts[i])
      if (seen == y) return false;
    cuts[i].push_back(y);
    std::vector<double> row(lp.nvars, 0.0);
    for (int v = 0; v < n; ++v) row[i * n + v] = -y[v];
    row[nz + i] = 1.0;
    lp.add_row(std::move(row), 0.0, +1);
    return true;
  };
  for (int i = 0; i < k; ++i) {
    add_cut(i, lovasz_subgradient(inst.objectives[i], best.parts[i]));
    add_cut(i, lovasz_subgradient(inst.objectives[i], FracPoint(n, 1.0)));
  }

  const int phase2 = std::max(100, max_iters / 4);
  for (int round = 0; round < phase2; ++round) {
    LpResult sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal)
      throw InvariantError("relaxation master LP failed to solve");
    FractionalAssignment zc(k, n);
    for (int i = 0; i < k; ++i)
      for (int v = 0; v < n; ++v) zc.parts[i][v] = std::max(0.0, sol.x[i * n + v]);
    // Simplex residue can leave a blocker a hair short; rescale it exact.
    double mass = detail::blocker_min_mass(zc.aggregate(), blocker);
    if (mass < 1.0 && mass > 0.0)
      for (auto& zi : zc.parts)
        for (double& x : zi) x /= mass;
    double value = objective(zc);
    ++out.iterations;
    if (value < best_value) {
      best_value = value;
      best = zc;
    }
    // sol.value <= true optimum, so this gap certifies eps-optimality.
    if (best_value - sol.value <= eps) {
      out.converged = true;
      break;
    }
    bool progressed = false;
    for (int i = 0; i < k; ++i)
      progressed |= add_cut(i, lovasz_subgradient(inst.objectives[i], zc.parts[i]));
    if (!progressed) break;  // exact support already in the model
  }

  out.assignment = best;
  out.value = best_value;
  return out;
}

// g(S) = sum_i f_i(S intersect V_i) over pairwise-disjoint supports.
inline ValueOracle g_function(const MasoInstance& inst, const PreAssignment& pre) {
  if (pre.k() != inst.k) throw PreconditionError("pre-assignment agent count mismatch");
  auto objectives = inst.objectives;
  auto supports = pre.supports;
  bool mono = true, sub = true;
  for (const auto& f : objectives) {
    mono = mono && f.claims_monotone();
    sub = sub && f.claims_submodular();
  }
  return ValueOracle(
      inst.n(),
      [objectives, supports](Set s) {
        double total = 0.0;
        for (size_t i = 0; i < objectives.size(); ++i)
          total += objectives[i](s & supports[i]);
        return total;
      },
      mono, sub, "pre-assignment-g");
}

// Concentrates each item's mass on its strongest agent, scaled by k. The
// result dominates the input aggregate, so feasibility survives; the
// objective inflates by at most k.
inline FractionalAssignment disjointify_max(const FractionalAssignment& z, int k) {
  if (z.k() != k) throw PreconditionError("agent count mismatch");
  z.validate();
  const int n = z.n();
  FractionalAssignment out(k, n);
  for (int v = 0; v < n; ++v) {
    int winner = 0;
    for (int i = 1; i < k; ++i)
      if (z.parts[i][v] > z.parts[winner][v]) winner = i;
    out.parts[winner][v] = k * z.parts[winner][v];
  }
  return out;
}

// Single-agent rounding slot: maps a fractional point that is feasible for
// fam to a member, with a declared cost factor alpha versus the Lovász value.
struct SaRounder {
  std::function<Set(const FracPoint&, const ValueOracle&, const FeasibleFamily&,
                    Set, std::uint64_t)>
      round;
  double alpha = 1.0;
  std::string name;
};

// Threshold rounding for beta-bounded blockers: keep {v : beta z(v) >= 1}.
// For monotone g this costs at most beta times the Lovász value.
inline SaRounder make_sa_threshold_rounder(double beta) {
  if (beta < 1.0) throw PreconditionError("threshold factor must be >= 1");
  SaRounder r;
  r.alpha = beta;
  r.name = "threshold";
  r.round = [beta](const FracPoint& z, const ValueOracle&, const FeasibleFamily& fam,
                   Set mask, std::uint64_t) {
    Set s = 0;
    for (size_t v = 0; v < z.size(); ++v)
      if (contains(mask, static_cast<int>(v)) && beta * z[v] >= 1.0 - 1e-12)
        s = with(s, static_cast<int>(v));
    if (!fam.contains(s))
      throw InvariantError("threshold set escaped the family; beta bound is wrong");
    return s;
  };
  return r;
}

// Exact single-agent step by enumeration within the support mask.
inline SaRounder make_sa_exact_rounder() {
  SaRounder r;
  r.alpha = 1.0;
  r.name = "exact";
  r.round = [](const FracPoint& z, const ValueOracle& g, const FeasibleFamily& fam,
               Set mask, std::uint64_t) {
    (void)z;
    if (set_size(mask) > kExhaustiveFamilyCap)
      throw CapacityError("exact rounding enumerates the mask, capped at 20 bits");
    bool found = false;
    Set best = 0;
    double best_value = 0.0;
    for_each_subset(mask, [&](Set s) {
      if (!fam.contains(s)) return;
      double value = g(s);
      if (!found || value < best_value) {
        found = true;
        best = s;
        best_value = value;
      }
    });
    if (!found) throw InfeasibleError("no family member inside the support");
    return best;
  };
  return r;
}

struct CeResult {
  Allocation allocation;
  int iterations = 0;
  double cost = 0.0;
};

namespace detail {

// Level-set sampling plus uncrossing, shared by the public operation and the
// fracture pipeline's per-bin calls (which target sets outside F). Draw
// order per iteration: agent index, then theta in (0,1].
inline CeResult ce_rounding_core(const std::vector<ValueOracle>& g,
                                 const ValueOracle& h,
                                 const FractionalAssignment& z, Set target,
                                 std::uint64_t seed) {
  const int k = z.k();
  const int n = z.n();
  CeResult out;
  out.allocation = Allocation(k);
  auto& parts = out.allocation.parts;

  Rng rng(seed);
  Set covered = 0;
  const int cap = static_cast<int>(
      std::ceil(64.0 * k * (std::log(std::max(1, set_size(target))) + 1.0)));
  while (target & ~covered) {
    if (++out.iterations > cap)
      throw InvariantError("coverage stalled: aggregate mass below the target");
    int i = rng.uniform_index(k);
    double theta = rng.uniform_open01();
    Set level = 0;
    for (int v = 0; v < n; ++v)
      if (z.parts[i][v] >= theta) level = with(level, v);
    parts[i] |= level;
    covered |= level;
  }

  auto g_sum = [&]() {
    double total = 0.0;
    for (int i = 0; i < k; ++i) total += g[i](parts[i]);
    return total;
  };
  auto h_sum = [&]() {
    double total = 0.0;
    for (int i = 0; i < k; ++i) total += h(parts[i]);
    return total;
  };

  // Uncrossing: resolve one overlapping pair at a time. Either resolution
  // keeps the union intact; the h test picks the side whose removal does not
  // increase the symmetric part.
  bool overlapping = true;
  while (overlapping) {
    overlapping = false;
    for (int i = 0; i < k && !overlapping; ++i) {
      for (int j = i + 1; j < k && !overlapping; ++j) {
        if ((parts[i] & parts[j]) == 0) continue;
        overlapping = true;
        double g_before = g_sum();
        double h_before = h_sum();
        Set union_before = out.allocation.cover();
        if (h(parts[i]) + h(parts[j] & ~parts[i]) <= h(parts[i]) + h(parts[j]))
          parts[j] &= ~parts[i];
        else
          parts[i] &= ~parts[j];
        if (out.allocation.cover() != union_before)
          throw InvariantError("uncrossing changed the covered set");
        if (g_sum() > g_before + kTol)
          throw InvariantError("uncrossing increased the monotone cost part");
        if (h_sum() > h_before + kTol)
          throw InvariantError("uncrossing increased the symmetric cost part");
      }
    }
  }
  out.allocation.require_disjoint();

  out.cost = 0.0;
  for (int i = 0; i < k; ++i) out.cost += g[i](parts[i]) + h(parts[i]);
  return out;
}

inline std::pair<std::vector<ValueOracle>, ValueOracle> split_objectives(
    const MasoInstance& inst) {
  if (inst.decomposition)
    return {inst.decomposition->g, inst.decomposition->h};
  return {inst.objectives, make_zero(inst.n())};
}

}  // namespace detail

// Randomized level-set rounding with uncrossing. Requires the target to be a
// member and the aggregate mass to dominate its indicator; elements keep
// being drawn until the target is covered, so the output's disjoint union
// contains target and stays in an upward-closed family.
inline CeResult ce_rounding(const MasoInstance& inst, const FractionalAssignment& z,
                            Set target, std::uint64_t seed) {
  if (z.k() != inst.k || z.n() != inst.n())
    throw PreconditionError("assignment shape mismatch");
  z.validate();
  if (!inst.outer.contains(target))
    throw PreconditionError("rounding target is not a family member");
  FracPoint aggregate = z.aggregate();
  for_each_element(target, [&](int v) {
    if (aggregate[v] < 1.0 - 1e-9)
      throw PreconditionError("aggregate mass does not dominate the target");
  });
  auto [g, h] = detail::split_objectives(inst);
  if (inst.decomposition)
    for (const auto& gi : g)
      if (!gi.claims_monotone())
        throw PreconditionError("ce_rounding requires monotone g parts");
  return detail::ce_rounding_core(g, h, z, target, seed);
}

// Threshold-then-round for beta-bounded blockers: U = {v : beta z(v) >= 1}
// must be a member (that is exactly what the beta bound promises), then
// CE-Rounding runs on the scaled assignment with target U.
inline CeResult bounded_blocker_round(const MasoInstance& inst,
                                      const FractionalAssignment& z, double beta,
                                      std::uint64_t seed) {
  detail::require_min_monotone(inst, "bounded_blocker_round");
  if (beta < 1.0) throw PreconditionError("beta must be >= 1");
  z.validate();
  FracPoint aggregate = z.aggregate();
  Set u = 0;
  for (int v = 0; v < inst.n(); ++v)
    if (beta * aggregate[v] >= 1.0 - 1e-12) u = with(u, v);
  if (!inst.outer.contains(u))
    throw InvariantError("threshold set is not a member; the beta bound is wrong");
  FractionalAssignment scaled = z;
  for (auto& zi : scaled.parts)
    for (double& x : zi) x = beta * x;
  auto [g, h] = detail::split_objectives(inst);
  return detail::ce_rounding_core(g, h, scaled, u, seed);
}

// h'(S) = h(S) + h(V minus S): symmetric by construction, submodular when h
// is (the reflection of a submodular function is submodular).
inline ValueOracle symmetrize_h(const ValueOracle& h) {
  const Set top = full_mask(h.n());
  return ValueOracle(
      h.n(), [h, top](Set s) { return h(s) + h(top & ~s); },
      /*monotone=*/false, h.claims_submodular(), "symmetrized-" + h.name());
}

struct FractureResult {
  Allocation allocation;
  double value = 0.0;
  double uniform_value = 0.0;   // cost of the power-of-two uniform solution
  double fractional_value = 0.0;  // input relaxation value
};

// Truncates the aggregate at one, spreading the cut proportionally across
// agents. With 0/1 blockers this never breaks feasibility: a blocking set
// with mass >= 1 keeps mass >= 1 after capping coordinates at 1.
namespace detail {

inline void truncate_aggregate(FractionalAssignment& z) {
  FracPoint aggregate = z.aggregate();
  for (int v = 0; v < z.n(); ++v)
    if (aggregate[v] > 1.0) {
      double scale = 1.0 / aggregate[v];
      for (auto& zi : z.parts) zi[v] *= scale;
    }
}

}  // namespace detail

// The fracture / expand / return rounding for monotone objectives over an
// upward-closed family: prune small coordinates, snap the aggregate onto
// powers of 1/2 (the uniform solution), partition each level bin by
// CE-Rounding at unit scale, then hand the reassembled point to the
// single-agent rounder through the pre-assignment objective.
inline FractureResult fracture_expand_return(const MasoInstance& inst,
                                             const FractionalAssignment& z_star,
                                             const SaRounder& rounder,
                                             std::uint64_t seed) {
  detail::require_min_monotone(inst, "fracture_expand_return");
  if (z_star.k() != inst.k || z_star.n() != inst.n())
    throw PreconditionError("assignment shape mismatch");
  z_star.validate();
  const int n = inst.n();
  const int k = inst.k;
  auto blocker = detail::blocker_of(inst.outer);
  if (detail::blocker_min_mass(z_star.aggregate(), blocker) < 1.0 - 1e-9)
    throw PreconditionError("input assignment is infeasible for the blocker");

  FractureResult out;
  out.fractional_value = assignment_extension_value(inst, z_star);

  // Fracture: truncate, prune small coordinates, double, truncate again.
  // Every blocking set has at most n elements, so pruned mass is below 1/2
  // and doubling restores feasibility.
  FractionalAssignment z = z_star;
  detail::truncate_aggregate(z);
  const double small = 1.0 / (2.0 * n);
  FracPoint aggregate = z.aggregate();
  for (int v = 0; v < n; ++v)
    if (aggregate[v] <= small)
      for (auto& zi : z.parts) zi[v] = 0.0;
  for (auto& zi : z.parts)
    for (double& x : zi) x *= 2.0;
  detail::truncate_aggregate(z);

  aggregate = z.aggregate();
  Set support = support_of(aggregate, 0.0);
  if (support == 0) {
    if (!inst.outer.contains(0))
      throw InfeasibleError("pruning erased the support of a nontrivial family");
    out.allocation = Allocation(k);
    return out;
  }

  // Uniform solution: push every surviving aggregate value up to the next
  // power of 1/2, scaling agents proportionally. Bin j holds values in
  // (2^-(j+1), 2^-j].
  std::vector<int> bin(n, -1);
  int max_bin = 0;
  for_each_element(support, [&](int v) {
    int j = 0;
    while (aggregate[v] <= std::ldexp(1.0, -(j + 1)) && j < 64) ++j;
    bin[v] = j;
    max_bin = std::max(max_bin, j);
    double scale = std::ldexp(1.0, -j) / aggregate[v];
    for (auto& zi : z.parts) zi[v] *= scale;
  });
  out.uniform_value = assignment_extension_value(inst, z);
  if (out.uniform_value > 4.0 * out.fractional_value + 1e-9)
    throw InvariantError("uniform solution exceeded four times the input value");

  // Expand and return: each bin scaled to unit aggregate is partitioned by
  // CE-Rounding (no symmetric part), then folded back at its own scale.
  std::vector<ValueOracle> g_parts = inst.objectives;
  ValueOracle h0 = make_zero(n);
  Rng seeder(seed);
  FractionalAssignment z_hat(k, n);
  for (int j = 0; j <= max_bin; ++j) {
    Set zone = 0;
    for (int v = 0; v < n; ++v)
      if (bin[v] == j) zone = with(zone, v);
    if (zone == 0) continue;
    FractionalAssignment expanded(k, n);
    for (int i = 0; i < k; ++i)
      for_each_element(zone, [&](int v) {
        expanded.parts[i][v] = std::min(1.0, std::ldexp(z.parts[i][v], j));
      });
    CeResult rounded = detail::ce_rounding_core(g_parts, h0, expanded, zone,
                                                seeder.next_u64());
    if (rounded.allocation.cover() != zone)
      throw InvariantError("bin rounding missed part of its zone");
    for (int i = 0; i < k; ++i)
      for_each_element(rounded.allocation.parts[i], [&](int v) {
        z_hat.parts[i][v] = std::ldexp(1.0, -j);
      });
  }

  // The reassembled point has pairwise-disjoint supports and the same
  // aggregate as the uniform solution, so it is feasible as well.
  std::vector<Set> supports(k);
  for (int i = 0; i < k; ++i) supports[i] = support_of(z_hat.parts[i]);
  PreAssignment pre{std::vector<Set>(supports)};
  ValueOracle g = g_function(inst, pre);
  Set rounded = rounder.round(z_hat.aggregate(), g, inst.outer, pre.cover(),
                              seeder.next_u64());
  if (!inst.outer.contains(rounded))
    throw InvariantError("single-agent rounder left the family");

  out.allocation = Allocation(k);
  for (int i = 0; i < k; ++i) out.allocation.parts[i] = rounded & supports[i];
  out.allocation.require_disjoint();
  if (!inst.allocation_feasible(out.allocation))
    throw InvariantError("fracture output allocation is infeasible");
  out.value = inst.allocation_value(out.allocation);
  return out;
}

struct MinimizeResult {
  Allocation allocation;
  double value = 0.0;
  double fractional_value = 0.0;
};

// Lemma-style k-approximation route: relax, concentrate each item on its
// best agent, and let the single-agent rounder finish over the
// pre-assignment objective.
inline MinimizeResult minimize_via_disjointify(const MasoInstance& inst,
                                               const SaRounder& rounder,
                                               std::uint64_t seed,
                                               double eps = 1e-10) {
  detail::require_min_monotone(inst, "minimize_via_disjointify");
  MaLeResult relaxed = solve_ma_le(inst, eps, 2000, seed);
  MinimizeResult out;
  out.fractional_value = relaxed.value;
  FractionalAssignment z_hat = disjointify_max(relaxed.assignment, inst.k);

  std::vector<Set> supports(inst.k);
  for (int i = 0; i < inst.k; ++i) supports[i] = support_of(z_hat.parts[i]);
  PreAssignment pre{std::vector<Set>(supports)};
  ValueOracle g = g_function(inst, pre);
  Set mask = pre.cover();
  if (mask == 0 && !inst.outer.contains(0))
    throw InfeasibleError("empty relaxation support for a nontrivial family");
  Set rounded = rounder.round(z_hat.aggregate(), g, inst.outer, mask, seed);
  if (!inst.outer.contains(rounded))
    throw InvariantError("single-agent rounder left the family");
  out.allocation = Allocation(inst.k);
  for (int i = 0; i < inst.k; ++i) out.allocation.parts[i] = rounded & supports[i];
  out.allocation.require_disjoint();
  if (!inst.allocation_feasible(out.allocation))
    throw InvariantError("disjointify output allocation is infeasible");
  out.value = inst.allocation_value(out.allocation);
  return out;
}

inline constexpr int kCrossingEnumerationCap = 16;

// Crossing-family minimization: every member other than the extremes shows
// up in some F_uv = {A : u in A, v not in A}, which is a ring family whose
// minimal member M is the intersection of its members. Covering M exactly is
// a facility-location subproblem solved by the relaxation plus CE-Rounding.
inline MinimizeResult crossing_family_solve(const MasoInstance& inst,
                                            std::uint64_t seed) {
  detail::require_min_monotone(inst, "crossing_family_solve");
  const int n = inst.n();
  const int k = inst.k;
  if (n > kCrossingEnumerationCap)
    throw CapacityError("crossing-family enumeration capped at n <= 16");

  const Set top = full_mask(n);
  std::vector<Set> members;
  for (Set s = 0;; ++s) {
    if (inst.outer.contains(s)) members.push_back(s);
    if (s == top) break;
  }
  if (members.empty()) throw InfeasibleError("family has no members");

  std::vector<Set> candidates;
  auto push_unique = [&](Set m) {
    if (std::find(candidates.begin(), candidates.end(), m) == candidates.end())
      candidates.push_back(m);
  };
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      Set meet = 0;
      bool any = false;
      for (Set m : members)
        if (contains(m, u) && !contains(m, v)) {
          meet = any ? (meet & m) : m;
          any = true;
        }
      if (any) push_unique(meet);
    }
  if (inst.outer.contains(top)) push_unique(top);
  if (inst.outer.contains(0)) push_unique(0);

  MinimizeResult best;
  bool have_best = false;
  Rng seeder(seed);
  for (Set m : candidates) {
    std::uint64_t sub_seed = seeder.next_u64();
    if (!inst.outer.contains(m))
      throw InvariantError("candidate minimal set escaped the family");
    MinimizeResult trial;
    if (m == 0) {
      trial.allocation = Allocation(k);
    } else {
      // Facility-location subproblem: cover M exactly.
      MasoInstance sub = inst;
      std::vector<Set> singles;
      for_each_element(m, [&](int v) { singles.push_back(Set{1} << v); });
      sub.outer = family_blocker(n, singles);
      sub.decomposition.reset();
      MaLeResult relaxed = solve_ma_le(sub, 1e-9, 2000, sub_seed);
      trial.fractional_value = relaxed.value;
      FractionalAssignment z = relaxed.assignment;
      for (auto& zi : z.parts)
        for (int v = 0; v < n; ++v)
          if (!contains(m, v)) zi[v] = 0.0;  // stray mass only costs
      CeResult rounded = ce_rounding(sub, z, m, sub_seed);
      trial.allocation = rounded.allocation;
      if (trial.allocation.cover() != m)
        throw InvariantError("subproblem cover mismatch");
    }
    trial.value = inst.allocation_value(trial.allocation);
    if (!inst.allocation_feasible(trial.allocation))
      throw InvariantError("crossing-family output is infeasible");
    if (!have_best || trial.value < best.value) {
      best = trial;
      have_best = true;
    }
  }
  return best;
}

}  // namespace maso

#endif  // MASO_MINIMIZE_HPP
