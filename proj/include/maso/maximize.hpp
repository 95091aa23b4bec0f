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

#ifndef MASO_MAXIMIZE_HPP
#define MASO_MAXIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "maso/common.hpp"
#include "maso/extensions.hpp"
#include "maso/family.hpp"
#include "maso/instance.hpp"
#include "maso/lifting.hpp"
#include "maso/minimize.hpp"  // g_function shared with the rounding step
#include "maso/value_oracle.hpp"

namespace maso {

enum class PolytopeKind { kMatroid, kPartitionMatroid, kExplicit };

// Relaxed feasible region P(F) for the maximization side. linear_max returns
// a maximizing vertex (fractional for non-matroid kinds); membership tests a
// point against P.
struct PolytopeOracle {
  PolytopeKind kind = PolytopeKind::kExplicit;
  int n = 0;
  bool downwards_closed = false;
  std::function<FracPoint(const std::vector<double>&)> linear_max;
  std::function<bool(const FracPoint&)> membership;
  std::vector<Set> parts;  // partition kinds only
  std::vector<int> caps;
};

namespace detail {

// Max-weight independent set by matroid greedy: descending weight, ties by
// ascending index, zero and negative weights never enter.
inline Set matroid_linear_max(const FeasibleFamily& fam, const std::vector<double>& w) {
  std::vector<int> order(fam.n());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w[a] > w[b]; });
  Set s = 0;
  for (int v : order) {
    if (w[v] <= 0.0) break;
    if (fam.contains(with(s, v))) s = with(s, v);
  }
  return s;
}

inline FracPoint indicator(Set s, int n) {
  FracPoint z(n, 0.0);
  for_each_element(s, [&](int v) { z[v] = 1.0; });
  return z;
}

}  // namespace detail

inline PolytopeOracle make_polytope_from_matroid(const FeasibleFamily& matroid) {
  PolytopeOracle p;
  p.kind = PolytopeKind::kMatroid;
  p.n = matroid.n();
  p.downwards_closed = true;
  p.linear_max = [matroid](const std::vector<double>& w) {
    return detail::indicator(detail::matroid_linear_max(matroid, w), matroid.n());
  };
  // z in P(M) iff z(S) <= rank(S) for every S; rank by greedy probes.
  p.membership = [matroid](const FracPoint& z) {
    if (static_cast<int>(z.size()) != matroid.n()) return false;
    if (matroid.n() > kExhaustiveFamilyCap)
      throw CapacityError("matroid polytope membership is exhaustive, n <= 20");
    for (double x : z)
      if (x < -1e-12 || x > 1.0 + 1e-12) return false;
    const Set top = full_mask(matroid.n());
    for (Set s = 0;; ++s) {
      Set indep = 0;
      for_each_element(s, [&](int v) {
        if (matroid.contains(with(indep, v))) indep = with(indep, v);
      });
      double mass = 0.0;
      for_each_element(s, [&](int v) { mass += z[v]; });
      if (mass > set_size(indep) + 1e-9) return false;
      if (s == top) break;
    }
    return true;
  };
  return p;
}

inline PolytopeOracle make_polytope_partition(int n, std::vector<Set> parts,
                                              std::vector<int> caps) {
  FeasibleFamily fam = family_partition_matroid(n, parts, caps);
  PolytopeOracle p;
  p.kind = PolytopeKind::kPartitionMatroid;
  p.n = n;
  p.downwards_closed = true;
  p.parts = std::move(parts);
  p.caps = std::move(caps);
  auto shared_parts = p.parts;
  auto shared_caps = p.caps;
  p.linear_max = [fam](const std::vector<double>& w) {
    return detail::indicator(detail::matroid_linear_max(fam, w), fam.n());
  };
  p.membership = [shared_parts, shared_caps](const FracPoint& z) {
    for (double x : z)
      if (x < -1e-12 || x > 1.0 + 1e-12) return false;
    for (size_t j = 0; j < shared_parts.size(); ++j) {
      double mass = 0.0;
      for_each_element(shared_parts[j], [&](int v) { mass += z[v]; });
      if (mass > shared_caps[j] + 1e-9) return false;
    }
    return true;
  };
  return p;
}

inline PolytopeOracle make_polytope_uniform(int n, int rank) {
  return make_polytope_partition(n, {full_mask(n)}, {rank});
}

// Free allocation (F = all subsets): singleton parts with unit caps.
inline PolytopeOracle make_polytope_free(int n) {
  std::vector<Set> parts;
  std::vector<int> caps;
  for (int v = 0; v < n; ++v) {
    parts.push_back(Set{1} << v);
    caps.push_back(1);
  }
  return make_polytope_partition(n, std::move(parts), std::move(caps));
}

// Axis-aligned box {0 <= z <= ub}: the simplest downwards-closed region for
// the nonmonotone slot. Vertices are fractional when ub is.
inline PolytopeOracle make_polytope_box(FracPoint ub) {
  for (double u : ub)
    if (u < 0.0 || u > 1.0 + 1e-12)
      throw PreconditionError("box bounds must sit inside [0,1]");
  PolytopeOracle p;
  p.kind = PolytopeKind::kExplicit;
  p.n = static_cast<int>(ub.size());
  p.downwards_closed = true;
  auto bounds = std::make_shared<FracPoint>(std::move(ub));
  p.linear_max = [bounds](const std::vector<double>& w) {
    FracPoint z(bounds->size(), 0.0);
    for (size_t v = 0; v < bounds->size(); ++v)
      if (w[v] > 0.0) z[v] = (*bounds)[v];
    return z;
  };
  p.membership = [bounds](const FracPoint& z) {
    if (z.size() != bounds->size()) return false;
    for (size_t v = 0; v < z.size(); ++v)
      if (z[v] < -1e-12 || z[v] > (*bounds)[v] + 1e-9) return false;
    return true;
  };
  return p;
}

struct CgResult {
  FractionalAssignment assignment;
  double value = 0.0;
};

inline double assignment_multilinear_value(const MasoInstance& inst,
                                           const FractionalAssignment& z) {
  double total = 0.0;
  for (int i = 0; i < inst.k; ++i)
    total += multilinear_eval_exact(inst.objectives[i], z.parts[i]);
  return total;
}

// T-step continuous greedy over the product region W = {(z_1..z_k) :
// sum_i z_i in P}. A linear objective over W concentrates each item's weight
// on its best agent, so each step is one linear_max over P; the winning
// agent receives the vertex mass scaled by 1/T.
inline CgResult continuous_greedy_ma(const MasoInstance& inst, const PolytopeOracle& p,
                                     int steps, std::uint64_t seed) {
  (void)seed;  // exact gradients make the schedule deterministic
  if (inst.sense != Sense::kMax)
    throw PreconditionError("continuous greedy requires a maximization instance");
  for (const auto& f : inst.objectives)
    if (!f.claims_monotone())
      throw PreconditionError("nonmonotone objectives must go through the nonmonotone slot");
  if (steps < 1) throw PreconditionError("continuous greedy needs at least one step");
  if (p.n != inst.n()) throw PreconditionError("polytope ground set mismatch");

  const int n = inst.n();
  const int k = inst.k;
  CgResult out;
  out.assignment = FractionalAssignment(k, n);
  auto& z = out.assignment;
  std::vector<double> weights(n, 0.0);
  std::vector<int> best_agent(n, 0);
  for (int t = 0; t < steps; ++t) {
    for (int v = 0; v < n; ++v) {
      int b = 0;
      double c = multilinear_partial(inst.objectives[0], z.parts[0], v);
      for (int i = 1; i < k; ++i) {
        double ci = multilinear_partial(inst.objectives[i], z.parts[i], v);
        if (ci > c) {
          c = ci;
          b = i;
        }
      }
      best_agent[v] = b;
      weights[v] = std::max(c, 0.0);
    }
    FracPoint vertex = p.linear_max(weights);
    for (int v = 0; v < n; ++v)
      if (vertex[v] > 0.0)
        z.parts[best_agent[v]][v] =
            std::min(1.0, z.parts[best_agent[v]][v] + vertex[v] / steps);
  }
  out.value = assignment_multilinear_value(inst, out.assignment);
  return out;
}

// Endpoint transfers (proof STEP 2): while an item is held by two agents,
// the multilinear value is linear in shifting mass between them, so one of
// the two full transfers is at least as good. Ascending (item, lowest agent
// pair) order; ties hand the mass to the lower agent.
inline FractionalAssignment disjointify_supports(const FractionalAssignment& z_in,
                                                 const MasoInstance& inst) {
  FractionalAssignment z = z_in;
  z.validate();
  const int n = z.n();
  const int k = z.k();
  double value = assignment_multilinear_value(inst, z);
  int moves = 0;
  for (int v = 0; v < n; ++v) {
    while (true) {
      int first = -1, second = -1;
      for (int i = 0; i < k; ++i)
        if (z.parts[i][v] > 0.0) {
          if (first < 0)
            first = i;
          else {
            second = i;
            break;
          }
        }
      if (second < 0) break;
      if (++moves > n * k) throw InvariantError("support disjointification stalled");
      double ci = multilinear_partial(inst.objectives[first], z.parts[first], v);
      double cj = multilinear_partial(inst.objectives[second], z.parts[second], v);
      double mass = z.parts[first][v] + z.parts[second][v];
      if (ci >= cj) {
        z.parts[first][v] = mass;
        z.parts[second][v] = 0.0;
      } else {
        z.parts[second][v] = mass;
        z.parts[first][v] = 0.0;
      }
      double now = assignment_multilinear_value(inst, z);
      if (now < value - kTol)
        throw InvariantError("endpoint transfer decreased the multilinear value");
      value = now;
    }
  }
  return z;
}

// Pipage-style rounding inside a partition or uniform matroid: within each
// part, merge two fractional coordinates along the endpoint that does not
// lose multilinear value (the slice is convex, so an endpoint wins), then
// settle a final lone fractional coordinate by comparing its endpoints.
inline Set round_partition_matroid(const FracPoint& z_in, const PolytopeOracle& p,
                                   const ValueOracle& f, std::uint64_t seed) {
  (void)seed;  // exact evaluation keeps the walk deterministic
  if (p.kind != PolytopeKind::kPartitionMatroid && p.kind != PolytopeKind::kMatroid)
    throw PreconditionError("rounding supports partition and uniform matroids");
  if (p.parts.empty())
    throw PreconditionError("rounding needs the partition structure");
  if (!p.membership(z_in)) throw PreconditionError("point lies outside the polytope");
  if (f.n() != p.n) throw PreconditionError("oracle ground set mismatch");

  FracPoint z = z_in;
  auto fractional = [&](int v) { return z[v] > 1e-12 && z[v] < 1.0 - 1e-12; };
  const double before = multilinear_eval_exact(f, z_in);

  for (size_t part = 0; part < p.parts.size(); ++part) {
    while (true) {
      int u = -1, w = -1;
      for_each_element(p.parts[part], [&](int v) {
        if (!fractional(v)) return;
        if (u < 0)
          u = v;
        else if (w < 0)
          w = v;
      });
      if (w < 0) break;
      // Move t along e_u - e_w; endpoints keep both coordinates in [0,1].
      double t_up = std::min(1.0 - z[u], z[w]);
      double t_down = -std::min(z[u], 1.0 - z[w]);
      FracPoint zu = z, zd = z;
      zu[u] += t_up;
      zu[w] -= t_up;
      zd[u] += t_down;
      zd[w] -= t_down;
      if (multilinear_eval_exact(f, zu) >= multilinear_eval_exact(f, zd))
        z = zu;
      else
        z = zd;
    }
    // The lone survivor: part mass stays under the integer cap either way,
    // so both endpoints are feasible. Coordinates at zero are never raised.
    int lone = -1;
    for_each_element(p.parts[part], [&](int v) {
      if (fractional(v)) lone = v;
    });
    if (lone >= 0) {
      FracPoint z1 = z, z0 = z;
      z1[lone] = 1.0;
      z0[lone] = 0.0;
      z = multilinear_eval_exact(f, z1) >= multilinear_eval_exact(f, z0) ? z1 : z0;
    }
  }

  Set out = 0;
  for (int v = 0; v < p.n; ++v)
    if (z[v] > 0.5) out = with(out, v);
  double after = f(out);
  if (after < before - kTol)
    throw InvariantError("rounding lost multilinear value");
  return out;
}

struct MaximizeResult {
  Allocation allocation;
  double value = 0.0;
  double fractional_value = 0.0;
  double factor_claimed = 0.0;
  bool certified = false;
};

// Monotone maximization: continuous greedy on the product region, endpoint
// transfers to disjoint supports, then single-agent rounding through the
// pre-assignment objective.
inline MaximizeResult maximize_pipeline(const MasoInstance& inst,
                                        const PolytopeOracle& p, int steps,
                                        std::uint64_t seed) {
  CgResult cg = continuous_greedy_ma(inst, p, steps, seed);
  FractionalAssignment z = disjointify_supports(cg.assignment, inst);

  std::vector<Set> supports(inst.k);
  for (int i = 0; i < inst.k; ++i) supports[i] = support_of(z.parts[i]);
  PreAssignment pre{std::vector<Set>(supports)};
  ValueOracle g = g_function(inst, pre);
  Set rounded = round_partition_matroid(z.aggregate(), p, g, seed);

  MaximizeResult out;
  out.fractional_value = cg.value;
  out.factor_claimed = 1.0 - std::exp(-1.0) - 2.0 / steps;
  out.certified = true;
  out.allocation = Allocation(inst.k);
  for (int i = 0; i < inst.k; ++i) out.allocation.parts[i] = rounded & supports[i];
  out.allocation.require_disjoint();
  if (!inst.allocation_feasible(out.allocation))
    throw InvariantError("maximization output is infeasible");
  out.value = inst.allocation_value(out.allocation);
  // Split-objective identity: g at the rounded set equals the summed parts.
  if (std::fabs(out.value - g(rounded)) > kTol)
    throw InvariantError("pre-assignment objective identity failed");
  return out;
}

// Combinatorial greedy on the lifted instance: repeatedly add the feasible
// lifted element of maximum marginal gain, ties to the lowest lifted index,
// until no feasible augmentation remains. Maximality drives the p-system
// guarantee value*(p+1) >= OPT.
inline MaximizeResult lifted_greedy(const MasoInstance& inst, std::uint64_t seed) {
  (void)seed;  // fully deterministic
  if (inst.sense != Sense::kMax)
    throw PreconditionError("lifted greedy requires a maximization instance");
  for (const auto& f : inst.objectives)
    if (!f.claims_monotone())
      throw PreconditionError("lifted greedy requires monotone objectives");
  LiftedInstance lifted = lift_instance(inst);
  const int m = lifted.lifted_ground.n;
  Set s = 0;
  double current = lifted.f(s);
  while (true) {
    int best = -1;
    double best_gain = 0.0;
    for (int e = 0; e < m; ++e) {
      if (contains(s, e) || !lifted.combined.contains(with(s, e))) continue;
      double gain = lifted.f(with(s, e)) - current;
      // Zero-gain augmentations never enter: any optimum element still
      // feasible at the stop has zero marginal too, so the p-system charging
      // argument is unharmed and all-zero objectives yield the empty set.
      if (gain > kTol && (best < 0 || gain > best_gain + kTol)) {
        best = e;
        best_gain = gain;
      }
    }
    if (best < 0) break;
    s = with(s, best);
    current += best_gain;
  }
  MaximizeResult out;
  out.allocation = unlift(s, inst.k, inst.n());
  out.allocation.require_disjoint();
  if (!inst.allocation_feasible(out.allocation))
    throw InvariantError("lifted greedy output is infeasible");
  out.value = inst.allocation_value(out.allocation);
  out.fractional_value = out.value;
  out.certified = true;
  return out;
}

// Pluggable continuous solver for the nonmonotone slot.
struct ContinuousSolver {
  std::function<CgResult(const MasoInstance&, const PolytopeOracle&, std::uint64_t)>
      solve;
  double factor = 0.0;  // zero means uncertified
  bool certified = false;
  std::string name;
};

inline ContinuousSolver make_continuous_greedy_solver(int steps) {
  ContinuousSolver s;
  s.factor = 1.0 - std::exp(-1.0) - 2.0 / steps;
  s.certified = true;
  s.name = "continuous-greedy";
  s.solve = [steps](const MasoInstance& inst, const PolytopeOracle& p,
                    std::uint64_t seed) {
    return continuous_greedy_ma(inst, p, steps, seed);
  };
  return s;
}

// Baseline for the nonmonotone slot: seeded random-order coordinate ascent
// over the box/polytope, improving the exact multilinear value. No factor is
// claimed.
inline ContinuousSolver make_heuristic_coordinate_ascent(int passes = 8,
                                                         double step = 0.125) {
  ContinuousSolver s;
  s.factor = 0.0;
  s.certified = false;
  s.name = "heuristic-coordinate-ascent";
  s.solve = [passes, step](const MasoInstance& inst, const PolytopeOracle& p,
                           std::uint64_t seed) {
    const int n = inst.n();
    const int k = inst.k;
    Rng rng(seed);
    CgResult out;
    out.assignment = FractionalAssignment(k, n);
    double value = assignment_multilinear_value(inst, out.assignment);
    std::vector<std::pair<int, int>> coords;
    for (int i = 0; i < k; ++i)
      for (int v = 0; v < n; ++v) coords.emplace_back(i, v);
    for (int pass = 0; pass < passes; ++pass) {
      // Fisher-Yates with the run's own stream keeps the schedule seeded.
      for (int idx = static_cast<int>(coords.size()) - 1; idx > 0; --idx)
        std::swap(coords[idx], coords[rng.uniform_index(idx + 1)]);
      for (auto [i, v] : coords) {
        double old = out.assignment.parts[i][v];
        double trial = std::min(1.0, old + step);
        if (trial == old) continue;
        out.assignment.parts[i][v] = trial;
        if (!p.membership(out.assignment.aggregate())) {
          out.assignment.parts[i][v] = old;
          continue;
        }
        double now = assignment_multilinear_value(inst, out.assignment);
        if (now >= value + 1e-12)
          value = now;
        else
          out.assignment.parts[i][v] = old;
      }
    }
    out.value = value;
    return out;
  };
  return s;
}

// Nonmonotone branch: a caller-supplied continuous solver feeds the same
// endpoint-transfer and rounding machinery. Requires a downwards-closed
// region; the guarantee is the solver's factor times the rounding's (one
// for the matroid kinds, none for the greedy fallback).
inline MaximizeResult nonmonotone_slot(const MasoInstance& inst,
                                       const PolytopeOracle& p,
                                       const ContinuousSolver& solver,
                                       std::uint64_t seed) {
  if (inst.sense != Sense::kMax)
    throw PreconditionError("the nonmonotone slot maximizes");
  if (!p.downwards_closed)
    throw PreconditionError("the nonmonotone slot needs a downwards-closed region");
  CgResult cg = solver.solve(inst, p, seed);
  FractionalAssignment z = disjointify_supports(cg.assignment, inst);

  std::vector<Set> supports(inst.k);
  for (int i = 0; i < inst.k; ++i) supports[i] = support_of(z.parts[i]);
  PreAssignment pre{std::vector<Set>(supports)};
  ValueOracle g = g_function(inst, pre);

  MaximizeResult out;
  out.fractional_value = cg.value;
  out.factor_claimed = solver.certified ? solver.factor : 0.0;
  out.certified = solver.certified;
  out.allocation = Allocation(inst.k);

  if (p.kind == PolytopeKind::kPartitionMatroid || p.kind == PolytopeKind::kMatroid) {
    Set rounded = round_partition_matroid(z.aggregate(), p, g, seed);
    for (int i = 0; i < inst.k; ++i) out.allocation.parts[i] = rounded & supports[i];
  } else {
    // Feasibility-first greedy: take an item when its agent does not lose
    // value and the cover stays in the family.
    Set cover = 0;
    for (int v = 0; v < inst.n(); ++v) {
      for (int i = 0; i < inst.k; ++i) {
        if (z.parts[i][v] <= 0.0) continue;
        Set next_part = with(out.allocation.parts[i], v);
        if (!inst.outer.contains(with(cover, v))) break;
        if (inst.objectives[i](next_part) + kTol >=
            inst.objectives[i](out.allocation.parts[i])) {
          out.allocation.parts[i] = next_part;
          cover = with(cover, v);
        }
        break;  // supports are disjoint; only one agent holds v
      }
    }
  }
  out.allocation.require_disjoint();
  if (!inst.allocation_feasible(out.allocation))
    throw InvariantError("nonmonotone slot output is infeasible");
  out.value = inst.allocation_value(out.allocation);
  return out;
}

}  // namespace maso

#endif  // MASO_MAXIMIZE_HPP
