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

#ifndef MASO_FAMILY_HPP
#define MASO_FAMILY_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maso/common.hpp"

namespace maso {

struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  Graph() = default;
  Graph(int nv, std::vector<std::pair<int, int>> es)
      : num_vertices(nv), edges(std::move(es)) {
    if (nv < 0) throw PreconditionError("negative vertex count");
    for (auto [u, v] : edges)
      if (u < 0 || u >= nv || v < 0 || v >= nv)
        throw PreconditionError("edge endpoint out of range");
  }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Returns false if x and y were already joined.
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent_[x] = y;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

inline bool edge_set_is_forest(const Graph& g, Set edges) {
  detail::UnionFind uf(g.num_vertices);
  bool ok = true;
  for_each_element(edges, [&](int e) {
    auto [u, v] = g.edges[e];
    if (u == v || !uf.unite(u, v)) ok = false;
  });
  return ok;
}

inline bool edge_set_spans_connected(const Graph& g, Set edges) {
  if (g.num_vertices <= 1) return true;
  detail::UnionFind uf(g.num_vertices);
  int components = g.num_vertices;
  for_each_element(edges, [&](int e) {
    auto [u, v] = g.edges[e];
    if (uf.unite(u, v)) --components;
  });
  return components == 1;
}

inline bool edge_set_is_matching(const Graph& g, Set edges) {
  std::vector<int> degree(g.num_vertices, 0);
  bool ok = true;
  for_each_element(edges, [&](int e) {
    auto [u, v] = g.edges[e];
    if (u == v) {
      ok = false;  // a loop meets its vertex twice
      return;
    }
    if (++degree[u] > 1 || ++degree[v] > 1) ok = false;
  });
  return ok;
}

inline bool edge_set_connects(const Graph& g, Set edges, int s, int t) {
  if (s == t) return true;
  detail::UnionFind uf(g.num_vertices);
  for_each_element(edges, [&](int e) {
    auto [u, v] = g.edges[e];
    uf.unite(u, v);
  });
  return uf.find(s) == uf.find(t);
}

// True when the edge set forms one simple path with endpoints s and t.
// s == t admits only the empty set.
inline bool edge_set_is_st_path(const Graph& g, Set edges, int s, int t) {
  if (s == t) return edges == 0;
  if (edges == 0) return false;
  std::vector<int> degree(g.num_vertices, 0);
  bool simple = true;
  for_each_element(edges, [&](int e) {
    auto [u, v] = g.edges[e];
    if (u == v) {
      simple = false;
      return;
    }
    if (++degree[u] > 2 || ++degree[v] > 2) simple = false;
  });
  if (!simple) return false;
  if (degree[s] != 1 || degree[t] != 1) return false;
  for (int v = 0; v < g.num_vertices; ++v)
    if (v != s && v != t && degree[v] == 1) return false;
  // Acyclic, one component containing both terminals: a path.
  return edge_set_is_forest(g, edges) && edge_set_connects(g, edges, s, t);
}

inline bool vertex_set_is_cover(const Graph& g, Set verts) {
  for (auto [u, v] : g.edges)
    if (!contains(verts, u) && !contains(verts, v)) return false;
  return true;
}

enum class FamilyKind {
  kPredicate,
  kFullPowerset,
  kTrivialV,
  kExplicit,
  kUniformMatroid,
  kPartitionMatroid,
  kGraphicForests,
  kSpanningTrees,
  kConnectedSpanning,
  kMatchings,
  kStConnected,
  kStPaths,
  kVertexCovers,
  kBlockerDefined,
  kRing,
  kCrossing,
  kIntersection,
};

// Feasibility family over subsets of [n], probed through contains(). Closure
// flags describe declared structure; blocker/beta are filled in where the
// construction knows them and cached otherwise.
class FeasibleFamily {
 public:
  FeasibleFamily() = default;

  FeasibleFamily(FamilyKind kind, int n, std::function<bool(Set)> fn,
                 bool upward_closed, bool downward_closed, std::string name)
      : impl_(std::make_shared<Impl>()) {
    if (n < 0 || n > kMaxGround) throw CapacityError("family ground set size out of range");
    if (!fn) throw PreconditionError("family needs a membership predicate");
    impl_->kind = kind;
    impl_->n = n;
    impl_->fn = std::move(fn);
    impl_->upward_closed = upward_closed;
    impl_->downward_closed = downward_closed;
    impl_->name = std::move(name);
  }

  bool valid() const { return impl_ != nullptr; }
  FamilyKind kind() const { return impl_->kind; }
  int n() const { return impl_->n; }
  const std::string& name() const { return impl_->name; }
  bool upward_closed() const { return impl_->upward_closed; }
  bool downward_closed() const { return impl_->downward_closed; }

  bool contains(Set s) const {
    if (!impl_) throw PreconditionError("family is empty");
    if (s & ~full_mask(impl_->n)) throw PreconditionError("set outside family ground set");
    return impl_->fn(s);
  }

  bool blocker_known() const { return impl_->blocker_known; }
  const std::vector<Set>& known_blocker() const {
    if (!impl_->blocker_known) throw PreconditionError("blocker not attached to family");
    return impl_->blocker;
  }
  // Attaching a blocker also fixes beta = max listed blocking-set size: for
  // z with z(B) >= 1 on every B, the set {v : beta z(v) >= 1} meets every B.
  void set_blocker(std::vector<Set> blocker) {
    std::sort(blocker.begin(), blocker.end());
    int beta = 0;
    for (Set b : blocker) beta = std::max(beta, set_size(b));
    impl_->blocker = std::move(blocker);
    impl_->blocker_known = true;
    impl_->beta = static_cast<double>(beta);
  }

  // Zero means no bound is known.
  double beta_hint() const { return impl_->beta; }

  const std::shared_ptr<const Graph>& graph() const { return impl_->graph; }
  void set_graph(std::shared_ptr<const Graph> g) { impl_->graph = std::move(g); }
  int source() const { return impl_->s; }
  int sink() const { return impl_->t; }
  void set_terminals(int s, int t) {
    impl_->s = s;
    impl_->t = t;
  }

  // Partition structure (uniform and partition matroids).
  const std::vector<Set>& parts() const { return impl_->parts; }
  const std::vector<int>& caps() const { return impl_->caps; }
  void set_partition(std::vector<Set> parts, std::vector<int> caps) {
    impl_->parts = std::move(parts);
    impl_->caps = std::move(caps);
  }

 private:
  struct Impl {
    FamilyKind kind = FamilyKind::kPredicate;
    int n = 0;
    std::function<bool(Set)> fn;
    bool upward_closed = false;
    bool downward_closed = false;
    std::string name;
    bool blocker_known = false;
    std::vector<Set> blocker;
    double beta = 0.0;
    std::shared_ptr<const Graph> graph;
    int s = -1, t = -1;
    std::vector<Set> parts;
    std::vector<int> caps;
  };
  std::shared_ptr<Impl> impl_;
};

inline FeasibleFamily family_full_powerset(int n) {
  return FeasibleFamily(FamilyKind::kFullPowerset, n, [](Set) { return true; },
                        /*up=*/true, /*down=*/true, "full-powerset");
}

// Single member: the whole ground set. Its blocker is the singletons.
inline FeasibleFamily family_trivial_v(int n) {
  const Set top = full_mask(n);
  FeasibleFamily fam(FamilyKind::kTrivialV, n,
                     [top](Set s) { return s == top; },
                     /*up=*/true, /*down=*/false, "trivial-V");
  std::vector<Set> blocker;
  for (int v = 0; v < n; ++v) blocker.push_back(Set{1} << v);
  fam.set_blocker(std::move(blocker));
  return fam;
}

inline FeasibleFamily family_explicit(int n, std::vector<Set> members,
                                      bool upward_closed = false,
                                      bool downward_closed = false) {
  const Set mask = full_mask(n);
  for (Set m : members)
    if (m & ~mask) throw PreconditionError("explicit member outside ground set");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto shared = std::make_shared<std::vector<Set>>(std::move(members));
  return FeasibleFamily(
      FamilyKind::kExplicit, n,
      [shared](Set s) {
        return std::binary_search(shared->begin(), shared->end(), s);
      },
      upward_closed, downward_closed, "explicit");
}

inline FeasibleFamily family_uniform_matroid(int n, int rank) {
  if (rank < 0 || rank > n) throw PreconditionError("uniform matroid rank out of range");
  FeasibleFamily fam(FamilyKind::kUniformMatroid, n,
                     [rank](Set s) { return set_size(s) <= rank; },
                     /*up=*/false, /*down=*/true, "uniform-matroid");
  fam.set_partition({full_mask(n)}, {rank});
  return fam;
}

inline FeasibleFamily family_partition_matroid(int n, std::vector<Set> parts,
                                               std::vector<int> caps) {
  if (parts.size() != caps.size())
    throw PreconditionError("partition matroid needs one cap per part");
  Set seen = 0;
  for (size_t j = 0; j < parts.size(); ++j) {
    if (parts[j] == 0) throw PreconditionError("empty partition part");
    if (parts[j] & ~full_mask(n)) throw PreconditionError("part outside ground set");
    if (parts[j] & seen) throw PreconditionError("partition parts overlap");
    if (caps[j] < 0) throw PreconditionError("negative partition cap");
    seen |= parts[j];
  }
  if (seen != full_mask(n)) throw PreconditionError("parts must cover the ground set");
  auto shared_parts = std::make_shared<std::vector<Set>>(parts);
  auto shared_caps = std::make_shared<std::vector<int>>(caps);
  FeasibleFamily fam(
      FamilyKind::kPartitionMatroid, n,
      [shared_parts, shared_caps](Set s) {
        for (size_t j = 0; j < shared_parts->size(); ++j)
          if (set_size(s & (*shared_parts)[j]) > (*shared_caps)[j]) return false;
        return true;
      },
      /*up=*/false, /*down=*/true, "partition-matroid");
  fam.set_partition(std::move(parts), std::move(caps));
  return fam;
}

inline FeasibleFamily family_graphic_forests(const Graph& g) {
  if (static_cast<int>(g.edges.size()) > kMaxGround)
    throw CapacityError("too many edges for an edge ground set");
  auto shared = std::make_shared<const Graph>(g);
  FeasibleFamily fam(FamilyKind::kGraphicForests,
                     static_cast<int>(g.edges.size()),
                     [shared](Set s) { return edge_set_is_forest(*shared, s); },
                     /*up=*/false, /*down=*/true, "graphic-forests");
  fam.set_graph(shared);
  return fam;
}

inline FeasibleFamily family_spanning_trees(const Graph& g) {
  if (static_cast<int>(g.edges.size()) > kMaxGround)
    throw CapacityError("too many edges for an edge ground set");
  auto shared = std::make_shared<const Graph>(g);
  FeasibleFamily fam(FamilyKind::kSpanningTrees,
                     static_cast<int>(g.edges.size()),
                     [shared](Set s) {
                       return set_size(s) == shared->num_vertices - 1 &&
                              edge_set_is_forest(*shared, s) &&
                              edge_set_spans_connected(*shared, s);
                     },
                     /*up=*/false, /*down=*/false, "spanning-trees");
  fam.set_graph(shared);
  return fam;
}

inline FeasibleFamily family_connected_spanning(const Graph& g) {
  if (static_cast<int>(g.edges.size()) > kMaxGround)
    throw CapacityError("too many edges for an edge ground set");
  auto shared = std::make_shared<const Graph>(g);
  FeasibleFamily fam(
      FamilyKind::kConnectedSpanning, static_cast<int>(g.edges.size()),
      [shared](Set s) { return edge_set_spans_connected(*shared, s); },
      /*up=*/true, /*down=*/false, "connected-spanning");
  fam.set_graph(shared);
  return fam;
}

inline FeasibleFamily family_matchings(const Graph& g) {
  if (static_cast<int>(g.edges.size()) > kMaxGround)
    throw CapacityError("too many edges for an edge ground set");
  auto shared = std::make_shared<const Graph>(g);
  FeasibleFamily fam(FamilyKind::kMatchings, static_cast<int>(g.edges.size()),
                     [shared](Set s) { return edge_set_is_matching(*shared, s); },
                     /*up=*/false, /*down=*/true, "matchings");
  fam.set_graph(shared);
  return fam;
}

inline FeasibleFamily family_st_connected(const Graph& g, int s, int t) {
  if (static_cast<int>(g.edges.size()) > kMaxGround)
    throw CapacityError("too many edges for an edge ground set");
  if (s < 0 || s >= g.num_vertices || t < 0 || t >= g.num_vertices)
    throw PreconditionError("terminal out of range");
  auto shared = std::make_shared<const Graph>(g);
  FeasibleFamily fam(
      FamilyKind::kStConnected, static_cast<int>(g.edges.size()),
      [shared, s, t](Set e) { return edge_set_connects(*shared, e, s, t); },
      /*up=*/true, /*down=*/false, "st-connected");
  fam.set_graph(shared);
  fam.set_terminals(s, t);
  return fam;
}

inline FeasibleFamily family_st_paths(const Graph& g, int s, int t) {
  if (static_cast<int>(g.edges.size()) > kMaxGround)
    throw CapacityError("too many edges for an edge ground set");
  if (s < 0 || s >= g.num_vertices || t < 0 || t >= g.num_vertices)
    throw PreconditionError("terminal out of range");
  auto shared = std::make_shared<const Graph>(g);
  FeasibleFamily fam(
      FamilyKind::kStPaths, static_cast<int>(g.edges.size()),
      [shared, s, t](Set e) { return edge_set_is_st_path(*shared, e, s, t); },
      /*up=*/false, /*down=*/false, "st-paths");
  fam.set_graph(shared);
  fam.set_terminals(s, t);
  return fam;
}

inline FeasibleFamily family_vertex_covers(const Graph& g) {
  if (g.num_vertices > kMaxGround)
    throw CapacityError("too many vertices for a vertex ground set");
  auto shared = std::make_shared<const Graph>(g);
  FeasibleFamily fam(FamilyKind::kVertexCovers, g.num_vertices,
                     [shared](Set s) { return vertex_set_is_cover(*shared, s); },
                     /*up=*/true, /*down=*/false, "vertex-covers");
  fam.set_graph(shared);
  // Each edge is a blocking set: a cover must touch it. Loops block alone.
  std::vector<Set> blocker;
  for (auto [u, v] : g.edges)
    blocker.push_back(with(with(Set{0}, u), v));
  std::sort(blocker.begin(), blocker.end());
  blocker.erase(std::unique(blocker.begin(), blocker.end()), blocker.end());
  // Keep only inclusion-minimal sets (a loop's singleton subsumes its pairs).
  std::vector<Set> minimal;
  for (Set b : blocker) {
    bool dominated = false;
    for (Set other : blocker)
      if (other != b && (other & ~b) == 0) dominated = true;
    if (!dominated) minimal.push_back(b);
  }
  fam.set_blocker(std::move(minimal));
  return fam;
}

// F = sets meeting every listed blocking set. Upward closed by construction.
inline FeasibleFamily family_blocker(int n, std::vector<Set> blocking_sets) {
  const Set mask = full_mask(n);
  for (Set b : blocking_sets) {
    if (b == 0) throw InfeasibleError("an empty blocking set leaves no members");
    if (b & ~mask) throw PreconditionError("blocking set outside ground set");
  }
  std::sort(blocking_sets.begin(), blocking_sets.end());
  blocking_sets.erase(std::unique(blocking_sets.begin(), blocking_sets.end()),
                      blocking_sets.end());
  std::vector<Set> minimal;
  for (Set b : blocking_sets) {
    bool dominated = false;
    for (Set other : blocking_sets)
      if (other != b && (other & ~b) == 0) dominated = true;
    if (!dominated) minimal.push_back(b);
  }
  auto shared = std::make_shared<std::vector<Set>>(minimal);
  FeasibleFamily fam(FamilyKind::kBlockerDefined, n,
                     [shared](Set s) {
                       for (Set b : *shared)
                         if ((s & b) == 0) return false;
                       return true;
                     },
                     /*up=*/true, /*down=*/false, "blocker-defined");
  fam.set_blocker(std::move(minimal));
  return fam;
}

namespace detail {

inline void check_lattice_closure(int n, const std::vector<Set>& members,
                                  bool crossing_only) {
  const Set mask = full_mask(n);
  for (Set m : members)
    if (m & ~mask) throw PreconditionError("member outside ground set");
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j) {
      Set a = members[i], b = members[j];
      if (crossing_only && ((a & b) == 0 || (a | b) == mask)) continue;
      if (!std::binary_search(members.begin(), members.end(), a | b) ||
          !std::binary_search(members.begin(), members.end(), a & b))
        throw PreconditionError(crossing_only
                                    ? "family is not closed for crossing pairs"
                                    : "family is not a ring family");
    }
}

}  // namespace detail

inline FeasibleFamily family_ring_explicit(int n, std::vector<Set> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  detail::check_lattice_closure(n, members, /*crossing_only=*/false);
  auto shared = std::make_shared<std::vector<Set>>(std::move(members));
  return FeasibleFamily(
      FamilyKind::kRing, n,
      [shared](Set s) {
        return std::binary_search(shared->begin(), shared->end(), s);
      },
      /*up=*/false, /*down=*/false, "ring");
}

inline FeasibleFamily family_crossing_explicit(int n, std::vector<Set> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  detail::check_lattice_closure(n, members, /*crossing_only=*/true);
  auto shared = std::make_shared<std::vector<Set>>(std::move(members));
  return FeasibleFamily(
      FamilyKind::kCrossing, n,
      [shared](Set s) {
        return std::binary_search(shared->begin(), shared->end(), s);
      },
      /*up=*/false, /*down=*/false, "crossing");
}

inline FeasibleFamily family_intersection(const FeasibleFamily& a,
                                          const FeasibleFamily& b) {
  if (a.n() != b.n())
    throw PreconditionError("intersecting families need one ground set");
  return FeasibleFamily(
      FamilyKind::kIntersection, a.n(),
      [a, b](Set s) { return a.contains(s) && b.contains(s); },
      a.upward_closed() && b.upward_closed(),
      a.downward_closed() && b.downward_closed(),
      a.name() + "&" + b.name());
}

inline constexpr int kExhaustiveFamilyCap = 20;

namespace detail {

// closed[S] = some member of F is a subset of S. Ascending scan works since
// S minus an element is numerically smaller than S.
inline std::vector<char> upward_closure_table(const FeasibleFamily& fam) {
  const int n = fam.n();
  if (n > kExhaustiveFamilyCap)
    throw CapacityError("exhaustive family scan capped at n <= 20");
  const Set top = full_mask(n);
  std::vector<char> closed(static_cast<size_t>(top) + 1, 0);
  for (Set s = 0;; ++s) {
    bool c = fam.contains(s);
    if (!c)
      for_each_element(s, [&](int v) {
        if (closed[without(s, v)]) c = true;
      });
    closed[s] = c;
    if (s == top) break;
  }
  return closed;
}

}  // namespace detail

// Inclusion-minimal blocking sets: B blocks iff no member avoids it. Throws
// InfeasibleError when the family has no members at all. An empty result
// means the empty set is a member, so nothing blocks.
inline std::vector<Set> compute_blocker(const FeasibleFamily& fam) {
  const int n = fam.n();
  auto closed = detail::upward_closure_table(fam);
  const Set top = full_mask(n);
  if (!closed[top]) throw InfeasibleError("family has no members");
  std::vector<Set> minimal;
  for (Set b = 0;; ++b) {
    if (!closed[top & ~b]) {
      bool min = true;
      for_each_element(b, [&](int v) {
        if (!closed[top & ~without(b, v)]) min = false;
      });
      if (min) minimal.push_back(b);
    }
    if (b == top) break;
  }
  return minimal;
}

// Members with no proper subset member, ascending as integers.
inline std::vector<Set> minimal_members(const FeasibleFamily& fam) {
  auto closed = detail::upward_closure_table(fam);
  const Set top = full_mask(fam.n());
  std::vector<Set> out;
  for (Set s = 0;; ++s) {
    if (fam.contains(s)) {
      bool min = true;
      for_each_element(s, [&](int v) {
        if (closed[without(s, v)]) min = false;
      });
      if (min) out.push_back(s);
    }
    if (s == top) break;
  }
  return out;
}

// Greedy peel: drop elements while membership survives, trying the highest
// index first so low indices are kept. Passes repeat until a fixpoint; for
// upward-closed families one pass already suffices.
inline Set peel_to_minimal(const FeasibleFamily& fam, Set s) {
  if (!fam.contains(s)) throw PreconditionError("peel requires a member");
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = fam.n() - 1; v >= 0; --v) {
      if (contains(s, v) && fam.contains(without(s, v))) {
        s = without(s, v);
        changed = true;
      }
    }
  }
  return s;
}

}  // namespace maso

#endif  // MASO_FAMILY_HPP
