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

#ifndef MASO_GENERATORS_HPP
#define MASO_GENERATORS_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "maso/common.hpp"
#include "maso/family.hpp"
#include "maso/json_io.hpp"

namespace maso {

struct GeneratorParams {
  int n = 0;        // zero picks the kind's default
  int k = 2;
  int budget = 2;   // cardinality kinds
  int items = 0;    // coverage universe size; zero picks n + 2
  int clients = 0;  // facility-location rows; zero picks n
  bool complete = false;  // graph kinds: complete graph instead of random
};

namespace detail {

inline Json random_modular_spec(Rng& rng, int n) {
  Json w = Json::array();
  for (int v = 0; v < n; ++v) w.push_back((rng.uniform_index(9) + 1) * 0.5);
  return Json{{"type", "modular"}, {"weights", w}};
}

inline Json random_concave_spec(Rng& rng, int n) {
  Json w = Json::array();
  for (int v = 0; v < n; ++v) w.push_back((rng.uniform_index(9) + 1) * 0.5);
  return Json{{"type", "concave-of-modular"}, {"concave", "sqrt"}, {"weights", w}};
}

inline Json random_coverage_spec(Rng& rng, int n, int items) {
  Json covers = Json::array();
  for (int v = 0; v < n; ++v) {
    Set c = 0;
    for (int it = 0; it < items; ++it)
      if (rng.uniform01() < 0.5) c = with(c, it);
    if (c == 0) c = with(c, static_cast<int>(rng.uniform_index(items)));
    covers.push_back(set_to_json(c));
  }
  Json weights = Json::array();
  for (int it = 0; it < items; ++it) weights.push_back((rng.uniform_index(4) + 1) * 0.5);
  return Json{
      {"type", "coverage"}, {"items", items}, {"covers", covers}, {"weights", weights}};
}

inline Json random_facility_spec(Rng& rng, int n, int clients) {
  Json rows = Json::array();
  for (int c = 0; c < clients; ++c) {
    Json row = Json::array();
    for (int v = 0; v < n; ++v) row.push_back((rng.uniform_index(10) + 1) * 0.5);
    rows.push_back(row);
  }
  return Json{{"type", "facility-location"}, {"utility", rows}};
}

// Random simple graph; `spanning` grafts a random tree first so the graph is
// connected, `complete` takes every pair.
inline Graph random_graph(Rng& rng, int nv, double density, bool spanning,
                          bool complete) {
  std::vector<std::pair<int, int>> edges;
  if (spanning)
    for (int v = 1; v < nv; ++v)
      edges.emplace_back(static_cast<int>(rng.uniform_index(v)), v);
  for (int u = 0; u < nv; ++u)
    for (int v = u + 1; v < nv; ++v) {
      if (spanning &&
          std::find(edges.begin(), edges.end(), std::make_pair(u, v)) != edges.end())
        continue;
      if (spanning && std::find(edges.begin(), edges.end(), std::make_pair(v, u)) !=
                          edges.end())
        continue;
      if (complete || rng.uniform01() < density) edges.emplace_back(u, v);
    }
  if (edges.empty()) edges.emplace_back(0, 1);
  std::sort(edges.begin(), edges.end());
  return Graph(nv, std::move(edges));
}

inline void require_range(bool ok, const char* what) {
  if (!ok) throw PreconditionError(std::string("generator parameter out of range: ") + what);
}

}  // namespace detail

inline std::vector<std::string> generator_kinds() {
  return {"welfare",           "sap",       "recommendation",
          "sensor",            "facility-location", "vertex-cover",
          "spanning-trees",    "matchings", "st-paths"};
}

// Deterministic instance synthesis: same (kind, params, seed) gives a
// byte-identical document. The emitted JSON is the source of truth; run
// paths parse it back, so generation and execution cannot drift apart.
inline Json generate_instance(const std::string& kind, GeneratorParams p,
                              std::uint64_t seed) {
  Rng rng(seed);
  Json doc;
  auto begin = [&](int default_n, const char* sense) {
    if (p.n == 0) p.n = default_n;
    detail::require_range(p.n >= 2 && p.n <= 16, "n in [2,16]");
    detail::require_range(p.k >= 1 && p.k <= 4, "k in [1,4]");
    detail::require_range(p.n * p.k <= kMaxGround, "n*k <= 64");
    if (p.items == 0) p.items = p.n + 2;
    detail::require_range(p.items >= 1 && p.items <= 24, "items in [1,24]");
    if (p.clients == 0) p.clients = p.n;
    detail::require_range(p.clients >= 1 && p.clients <= 24, "clients in [1,24]");
    doc["id"] = kind + "-n" + std::to_string(p.n) + "-k" + std::to_string(p.k) +
                "-s" + std::to_string(seed);
    doc["kind"] = kind;
    doc["n"] = p.n;
    doc["k"] = p.k;
    doc["sense"] = sense;
  };
  auto coverage_objectives = [&]() {
    Json arr = Json::array();
    for (int i = 0; i < p.k; ++i)
      arr.push_back(detail::random_coverage_spec(rng, p.n, p.items));
    return arr;
  };
  auto modular_mix_objectives = [&]() {
    Json arr = Json::array();
    for (int i = 0; i < p.k; ++i)
      arr.push_back(i % 2 == 0 ? detail::random_modular_spec(rng, p.n)
                               : detail::random_concave_spec(rng, p.n));
    return arr;
  };

  if (kind == "welfare") {
    begin(6, "max");
    doc["objectives"] = coverage_objectives();
    doc["outer_family"] = Json{{"type", "full-powerset"}};
    return doc;
  }
  if (kind == "sap") {
    // Items grouped into shelves, at most one pick per shelf.
    begin(6, "max");
    doc["objectives"] = coverage_objectives();
    Json parts = Json::array();
    Json caps = Json::array();
    for (int v = 0; v < p.n; v += 2) {
      Set part = with(Set{0}, v);
      if (v + 1 < p.n) part = with(part, v + 1);
      parts.push_back(set_to_json(part));
      caps.push_back(1);
    }
    doc["outer_family"] =
        Json{{"type", "partition-matroid"}, {"parts", parts}, {"caps", caps}};
    return doc;
  }
  if (kind == "recommendation") {
    begin(6, "max");
    detail::require_range(p.budget >= 1 && p.budget <= p.n, "budget in [1,n]");
    Json arr = Json::array();
    for (int i = 0; i < p.k; ++i)
      arr.push_back(detail::random_facility_spec(rng, p.n, p.clients));
    doc["objectives"] = arr;
    doc["outer_family"] = Json{{"type", "uniform-matroid"}, {"rank", p.budget}};
    return doc;
  }
  if (kind == "sensor") {
    begin(6, "max");
    detail::require_range(p.budget >= 1 && p.budget <= p.n, "budget in [1,n]");
    doc["objectives"] = coverage_objectives();
    doc["outer_family"] = Json{{"type", "uniform-matroid"}, {"rank", p.budget}};
    return doc;
  }
  if (kind == "facility-location") {
    // Cost-side splitting: the whole ground set must be handed out.
    begin(6, "min");
    Json arr = Json::array();
    for (int i = 0; i < p.k; ++i)
      arr.push_back(detail::random_facility_spec(rng, p.n, p.clients));
    doc["objectives"] = arr;
    doc["outer_family"] = Json{{"type", "trivial-v"}};
    return doc;
  }
  if (kind == "vertex-cover") {
    begin(5, "min");
    Graph g = detail::random_graph(rng, p.n, 0.6, false, p.complete);
    doc["objectives"] = modular_mix_objectives();
    FeasibleFamily fam = family_vertex_covers(g);
    doc["outer_family"] = Json{{"type", "vertex-covers"},
                               {"graph", graph_to_json(g)},
                               {"blocker", sets_to_json(fam.known_blocker())}};
    return doc;
  }
  if (kind == "spanning-trees") {
    // Ground set is the edge set; feasible sets connect all vertices.
    int nv = p.n == 0 ? 4 : p.n;
    detail::require_range(nv >= 2 && nv <= 6, "vertices in [2,6]");
    Graph g = detail::random_graph(rng, nv, 0.5, true, p.complete);
    p.n = static_cast<int>(g.edges.size());
    begin(p.n, "min");
    doc["n"] = p.n;
    doc["objectives"] = modular_mix_objectives();
    FeasibleFamily fam = family_connected_spanning(g);
    doc["outer_family"] = Json{{"type", "connected-spanning"},
                               {"graph", graph_to_json(g)},
                               {"blocker", sets_to_json(compute_blocker(fam))}};
    return doc;
  }
  if (kind == "matchings") {
    int nv = p.n == 0 ? 5 : p.n;
    detail::require_range(nv >= 2 && nv <= 6, "vertices in [2,6]");
    Graph g = detail::random_graph(rng, nv, 0.6, false, p.complete);
    p.n = static_cast<int>(g.edges.size());
    begin(p.n, "max");
    doc["n"] = p.n;
    doc["objectives"] = coverage_objectives();
    doc["outer_family"] = Json{{"type", "matchings"}, {"graph", graph_to_json(g)}};
    return doc;
  }
  if (kind == "st-paths") {
    // Minimization wants the upward closure: any edge set connecting s to t.
    int nv = p.n == 0 ? 4 : p.n;
    detail::require_range(nv >= 2 && nv <= 6, "vertices in [2,6]");
    Graph g = detail::random_graph(rng, nv, 0.5, true, p.complete);
    p.n = static_cast<int>(g.edges.size());
    begin(p.n, "min");
    doc["n"] = p.n;
    doc["objectives"] = modular_mix_objectives();
    FeasibleFamily fam = family_st_connected(g, 0, nv - 1);
    doc["outer_family"] = Json{{"type", "st-connected"},
                               {"graph", graph_to_json(g)},
                               {"s", 0},
                               {"t", nv - 1},
                               {"blocker", sets_to_json(compute_blocker(fam))}};
    return doc;
  }
  throw PreconditionError("unknown generator kind: " + kind);
}

}  // namespace maso

#endif  // MASO_GENERATORS_HPP
