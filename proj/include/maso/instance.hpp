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

#ifndef MASO_INSTANCE_HPP
#define MASO_INSTANCE_HPP

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "maso/common.hpp"
#include "maso/family.hpp"
#include "maso/value_oracle.hpp"

namespace maso {

enum class Sense { kMin, kMax };

// Pairwise-disjoint parts S_1..S_k; the disjoint union is their cover.
struct Allocation {
  std::vector<Set> parts;

  Allocation() = default;
  explicit Allocation(int k) : parts(k, Set{0}) {
    if (k < 1) throw PreconditionError("allocation needs at least one agent");
  }

  int k() const { return static_cast<int>(parts.size()); }

  Set cover() const {
    Set u = 0;
    for (Set s : parts) u |= s;
    return u;
  }

  bool disjoint() const {
    Set seen = 0;
    for (Set s : parts) {
      if (s & seen) return false;
      seen |= s;
    }
    return true;
  }

  void require_disjoint() const {
    if (!disjoint()) throw InvariantError("allocation parts overlap");
  }
};

// Pairwise-disjoint supports V_1..V_k for the pre-assignment objective.
struct PreAssignment {
  std::vector<Set> supports;

  PreAssignment() = default;
  explicit PreAssignment(std::vector<Set> v) : supports(std::move(v)) {
    Set seen = 0;
    for (Set s : supports) {
      if (s & seen) throw PreconditionError("pre-assignment supports overlap");
      seen |= s;
    }
  }

  int k() const { return static_cast<int>(supports.size()); }
  Set cover() const {
    Set u = 0;
    for (Set s : supports) u |= s;
    return u;
  }
};

// Nonnegative fractional point over V. The minimization side allows values
// above 1 (the extension is positively homogeneous); maximization-side code
// validates the [0,1] range where it applies.
using FracPoint = std::vector<double>;

inline void require_nonnegative_point(const FracPoint& z) {
  for (double x : z)
    if (!(x >= 0.0)) throw PreconditionError("fractional point has a negative component");
}

inline void require_unit_box(const FracPoint& z) {
  require_nonnegative_point(z);
  for (double x : z)
    if (x > 1.0 + 1e-12) throw PreconditionError("fractional point leaves [0,1]");
}

inline Set support_of(const FracPoint& z, double eps = 0.0) {
  Set s = 0;
  for (size_t v = 0; v < z.size(); ++v)
    if (z[v] > eps) s = with(s, static_cast<int>(v));
  return s;
}

struct FractionalAssignment {
  std::vector<FracPoint> parts;  // z_1..z_k, each of length n

  FractionalAssignment() = default;
  FractionalAssignment(int k, int n) : parts(k, FracPoint(n, 0.0)) {
    if (k < 1) throw PreconditionError("assignment needs at least one agent");
  }

  int k() const { return static_cast<int>(parts.size()); }
  int n() const { return parts.empty() ? 0 : static_cast<int>(parts[0].size()); }

  FracPoint aggregate() const {
    FracPoint z(n(), 0.0);
    for (const auto& zi : parts)
      for (size_t v = 0; v < zi.size(); ++v) z[v] += zi[v];
    return z;
  }

  void validate() const {
    for (const auto& zi : parts) {
      if (static_cast<int>(zi.size()) != n())
        throw PreconditionError("assignment parts have mismatched lengths");
      require_nonnegative_point(zi);
    }
  }
};

// Objective split f_i = g_i + h with one shared h (possibly zero).
struct Decomposition {
  std::vector<ValueOracle> g;
  ValueOracle h;
};

struct MasoInstance {
  GroundSet ground;
  int k = 1;
  std::vector<ValueOracle> objectives;  // f_1..f_k
  FeasibleFamily outer;                 // F
  std::vector<FeasibleFamily> per_agent;  // empty (plain MASO) or k families
  Sense sense = Sense::kMin;
  std::optional<Decomposition> decomposition;

  int n() const { return ground.n; }
  bool constrained_agents() const { return !per_agent.empty(); }

  const FeasibleFamily& agent_family(int i) const {
    if (per_agent.empty())
      throw PreconditionError("instance has no per-agent families");
    return per_agent.at(i);
  }

  // Structural validation plus a seeded spot-check of the decomposition
  // identity f_i = g_i + h.
  void validate() const {
    if (k < 1) throw PreconditionError("instance needs at least one agent");
    if (static_cast<int>(objectives.size()) != k)
      throw PreconditionError("instance needs one objective per agent");
    for (const auto& f : objectives)
      if (f.n() != ground.n)
        throw PreconditionError("objective ground set mismatch");
    if (!outer.valid() || outer.n() != ground.n)
      throw PreconditionError("outer family ground set mismatch");
    if (!per_agent.empty()) {
      if (static_cast<int>(per_agent.size()) != k)
        throw PreconditionError("per-agent family count mismatch");
      for (const auto& fam : per_agent)
        if (!fam.valid() || fam.n() != ground.n)
          throw PreconditionError("per-agent family ground set mismatch");
    }
    if (decomposition) {
      if (static_cast<int>(decomposition->g.size()) != k)
        throw PreconditionError("decomposition needs one g per agent");
      for (const auto& g : decomposition->g)
        if (g.n() != ground.n) throw PreconditionError("decomposition g ground set mismatch");
      if (!decomposition->h.valid() || decomposition->h.n() != ground.n)
        throw PreconditionError("decomposition h ground set mismatch");
      Rng rng(0x9e3779b97f4a7c15ull);
      const Set mask = ground.universe();
      for (int t = 0; t < 16; ++t) {
        Set s = rng.next_u64() & mask;
        for (int i = 0; i < k; ++i) {
          double lhs = objectives[i](s);
          double rhs = decomposition->g[i](s) + decomposition->h(s);
          if (std::fabs(lhs - rhs) > kTol * (1.0 + std::fabs(lhs)))
            throw PreconditionError("decomposition does not match the objectives");
        }
      }
    }
  }

  double allocation_value(const Allocation& alloc) const {
    if (alloc.k() != k) throw PreconditionError("allocation agent count mismatch");
    double total = 0.0;
    for (int i = 0; i < k; ++i) total += objectives[i](alloc.parts[i]);
    return total;
  }

  bool allocation_feasible(const Allocation& alloc) const {
    if (alloc.k() != k || !alloc.disjoint()) return false;
    if (!outer.contains(alloc.cover())) return false;
    if (!per_agent.empty())
      for (int i = 0; i < k; ++i)
        if (!per_agent[i].contains(alloc.parts[i])) return false;
    return true;
  }
};

}  // namespace maso

#endif  // MASO_INSTANCE_HPP
