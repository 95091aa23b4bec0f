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

#ifndef MASO_LIFTING_HPP
#define MASO_LIFTING_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "maso/checks.hpp"
#include "maso/common.hpp"
#include "maso/family.hpp"
#include "maso/instance.hpp"
#include "maso/value_oracle.hpp"

namespace maso {

// Lifted ground set layout is agent-major: pair (agent i, item v) lives at
// index i*n + v, so an agent's slice is one shift away.
inline int lifted_index(int agent, int item, int n) { return agent * n + item; }
inline int lifted_agent(int index, int n) { return index / n; }
inline int lifted_item(int index, int n) { return index % n; }

inline Set lifted_slice(Set s, int agent, int n) {
  return (s >> (agent * n)) & full_mask(n);
}

// Items saturated by a lifted set: union of the agent slices.
inline Set lifted_cov(Set s, int k, int n) {
  Set c = 0;
  for (int i = 0; i < k; ++i) c |= lifted_slice(s, i, n);
  return c;
}

inline Allocation unlift(Set s, int k, int n) {
  Allocation alloc(k);
  for (int i = 0; i < k; ++i) alloc.parts[i] = lifted_slice(s, i, n);
  return alloc;
}

inline Set embed(const Allocation& alloc, int n) {
  Set s = 0;
  for (int i = 0; i < alloc.k(); ++i) s |= alloc.parts[i] << (i * n);
  return s;
}

struct LiftedInstance {
  GroundSet lifted_ground;
  int k = 1;
  int n = 0;
  ValueOracle f;                // S -> sum_i f_i(S_i)
  FeasibleFamily outer_lifted;  // cov(S) in F and |S| = |cov(S)|
  FeasibleFamily agent_lifted;  // every slice S_i in F_i
  FeasibleFamily combined;      // intersection of the two
};

inline LiftedInstance lift_instance(const MasoInstance& inst) {
  const int n = inst.n();
  const int k = inst.k;
  if (n * k > kMaxGround)
    throw CapacityError("lifted ground set exceeds the bitset cap");

  std::vector<std::string> labels;
  if (!inst.ground.labels.empty() || k > 1) {
    for (int i = 0; i < k; ++i)
      for (int v = 0; v < n; ++v)
        labels.push_back("a" + std::to_string(i + 1) + ":" + inst.ground.label(v));
  }

  LiftedInstance out;
  out.k = k;
  out.n = n;
  out.lifted_ground = GroundSet(n * k, std::move(labels));

  auto objectives = inst.objectives;
  bool mono = true, sub = true;
  for (const auto& f : objectives) {
    mono = mono && f.claims_monotone();
    sub = sub && f.claims_submodular();
  }
  out.f = ValueOracle(
      n * k,
      [objectives, k, n](Set s) {
        double total = 0.0;
        for (int i = 0; i < k; ++i) total += objectives[i](lifted_slice(s, i, n));
        return total;
      },
      mono, sub, "lifted-sum");

  auto outer = inst.outer;
  out.outer_lifted = FeasibleFamily(
      FamilyKind::kPredicate, n * k,
      [outer, k, n](Set s) {
        Set c = lifted_cov(s, k, n);
        return set_size(s) == set_size(c) && outer.contains(c);
      },
      /*up=*/false, /*down=*/outer.downward_closed(), "lifted-outer");

  if (inst.per_agent.empty()) {
    out.agent_lifted = family_full_powerset(n * k);
  } else {
    auto per_agent = inst.per_agent;
    bool up = true, down = true;
    for (const auto& fam : per_agent) {
      up = up && fam.upward_closed();
      down = down && fam.downward_closed();
    }
    out.agent_lifted = FeasibleFamily(
        FamilyKind::kPredicate, n * k,
        [per_agent, k, n](Set s) {
          for (int i = 0; i < k; ++i)
            if (!per_agent[i].contains(lifted_slice(s, i, n))) return false;
          return true;
        },
        up, down, "lifted-agents");
  }
  out.combined = family_intersection(out.outer_lifted, out.agent_lifted);
  return out;
}

// Basis-cardinality correspondence between a lifted set S under F' and its
// coverage under F: the achievable minimal and maximal basis sizes agree.
inline Verdict check_bases_correspondence(const FeasibleFamily& outer,
                                          const FeasibleFamily& outer_lifted,
                                          Set lifted_set, int k, int n) {
  auto lifted_bases = bases_of(outer_lifted, lifted_set);
  auto ground_bases = bases_of(outer, lifted_cov(lifted_set, k, n));
  auto span = [](const std::vector<Set>& bases) {
    int lo = -1, hi = -1;
    for (Set b : bases) {
      int sz = set_size(b);
      lo = lo < 0 ? sz : std::min(lo, sz);
      hi = std::max(hi, sz);
    }
    return std::pair<int, int>{lo, hi};
  };
  auto [llo, lhi] = span(lifted_bases);
  auto [glo, ghi] = span(ground_bases);
  if (llo != glo || lhi != ghi)
    return Verdict::fail("basis sizes diverge: lifted [" + std::to_string(llo) +
                         "," + std::to_string(lhi) + "] vs ground [" +
                         std::to_string(glo) + "," + std::to_string(ghi) + "]");
  return Verdict::pass();
}

// The lifted edge space as a multigraph: k parallel copies of every edge,
// copy i of edge e at index i*m + e, matching the agent-major layout.
struct LiftedGraph {
  Graph multigraph;
  int copies = 1;
  std::vector<int> copy_of;   // lifted edge -> original edge
  std::vector<int> agent_of;  // lifted edge -> copy index
};

inline LiftedGraph lift_graph(const Graph& g, int k) {
  if (k < 1) throw PreconditionError("copy count must be positive");
  LiftedGraph out;
  out.copies = k;
  std::vector<std::pair<int, int>> edges;
  const int m = static_cast<int>(g.edges.size());
  for (int i = 0; i < k; ++i)
    for (int e = 0; e < m; ++e) {
      edges.push_back(g.edges[e]);
      out.copy_of.push_back(e);
      out.agent_of.push_back(i);
    }
  out.multigraph = Graph(g.num_vertices, std::move(edges));
  return out;
}

}  // namespace maso

#endif  // MASO_LIFTING_HPP
