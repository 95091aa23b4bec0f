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

#ifndef MASO_JSON_IO_HPP
#define MASO_JSON_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "maso/common.hpp"
#include "maso/family.hpp"
#include "maso/functions.hpp"
#include "maso/instance.hpp"
#include "maso/value_oracle.hpp"

namespace maso {

using Json = nlohmann::ordered_json;

// Sets travel as sorted arrays of element indices.
inline Json set_to_json(Set s) {
  Json arr = Json::array();
  for_each_element(s, [&](int v) { arr.push_back(v); });
  return arr;
}

inline Set set_from_json(const Json& arr, int n) {
  if (!arr.is_array()) throw PreconditionError("set spec must be an array");
  Set s = 0;
  for (const auto& e : arr) {
    if (!e.is_number_integer()) throw PreconditionError("set element must be an integer");
    int v = e.get<int>();
    if (v < 0 || v >= n) throw PreconditionError("set element out of range");
    s = with(s, v);
  }
  return s;
}

inline std::vector<Set> sets_from_json(const Json& arr, int n) {
  if (!arr.is_array()) throw PreconditionError("set list must be an array");
  std::vector<Set> out;
  for (const auto& e : arr) out.push_back(set_from_json(e, n));
  return out;
}

inline Json sets_to_json(const std::vector<Set>& sets) {
  Json arr = Json::array();
  for (Set s : sets) arr.push_back(set_to_json(s));
  return arr;
}

inline Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges) edges.push_back(Json::array({u, v}));
  return Json{{"vertices", g.num_vertices}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& spec) {
  if (!spec.is_object() || !spec.contains("vertices") || !spec.contains("edges"))
    throw PreconditionError("graph spec needs vertices and edges");
  int nv = spec.at("vertices").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : spec.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw PreconditionError("edge must be a pair");
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  return Graph(nv, std::move(edges));
}

inline std::vector<double> doubles_from_json(const Json& arr, const char* what) {
  if (!arr.is_array()) throw PreconditionError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& e : arr) {
    if (!e.is_number()) throw PreconditionError(std::string(what) + " must be numeric");
    out.push_back(e.get<double>());
  }
  return out;
}

inline FeasibleFamily family_from_json(const Json& spec, int n);

// Tagged-union function specs mirroring the shipped standard functions.
inline ValueOracle function_from_json(const Json& spec, int n) {
  if (!spec.is_object() || !spec.contains("type"))
    throw PreconditionError("function spec needs a type tag");
  const std::string type = spec.at("type").get<std::string>();
  if (type == "zero") return make_zero(n);
  if (type == "modular")
    return make_modular(n, doubles_from_json(spec.at("weights"), "weights"));
  if (type == "coverage") {
    int items = spec.at("items").get<int>();
    std::vector<Set> covers = sets_from_json(spec.at("covers"), items);
    if (static_cast<int>(covers.size()) != n)
      throw PreconditionError("coverage needs one cover set per element");
    std::vector<double> w;
    if (spec.contains("weights")) w = doubles_from_json(spec.at("weights"), "weights");
    return make_coverage(n, items, std::move(covers), std::move(w));
  }
  if (type == "facility-location") {
    std::vector<std::vector<double>> rows;
    for (const auto& r : spec.at("utility"))
      rows.push_back(doubles_from_json(r, "utility row"));
    return make_facility_location(n, std::move(rows));
  }
  if (type == "graph-cut") {
    Graph g = graph_from_json(spec.at("graph"));
    if (g.num_vertices != n)
      throw PreconditionError("graph-cut ground set is the vertex set");
    std::vector<double> w;
    if (spec.contains("weights")) w = doubles_from_json(spec.at("weights"), "weights");
    return make_graph_cut(g, std::move(w));
  }
  if (type == "matroid-rank")
    return make_matroid_rank(family_from_json(spec.at("matroid"), n));
  if (type == "concave-of-modular") {
    std::vector<double> w = doubles_from_json(spec.at("weights"), "weights");
    const std::string concave = spec.at("concave").get<std::string>();
    if (concave == "sqrt") return make_concave_sqrt(n, std::move(w));
    if (concave == "min-cap")
      return make_concave_min_cap(n, std::move(w), spec.at("cap").get<double>());
    throw PreconditionError("unknown concave tag: " + concave);
  }
  if (type == "sum") {
    std::vector<ValueOracle> terms;
    for (const auto& t : spec.at("terms")) terms.push_back(function_from_json(t, n));
    return make_sum(std::move(terms));
  }
  if (type == "scale")
    return make_scale(function_from_json(spec.at("inner"), n),
                      spec.at("factor").get<double>());
  throw PreconditionError("unknown function type: " + type);
}

inline FeasibleFamily family_from_json(const Json& spec, int n) {
  if (!spec.is_object() || !spec.contains("type"))
    throw PreconditionError("family spec needs a type tag");
  const std::string type = spec.at("type").get<std::string>();
  if (type == "full-powerset") return family_full_powerset(n);
  if (type == "trivial-v") return family_trivial_v(n);
  if (type == "explicit") {
    bool up = spec.value("upward_closed", false);
    bool down = spec.value("downward_closed", false);
    return family_explicit(n, sets_from_json(spec.at("members"), n), up, down);
  }
  if (type == "uniform-matroid")
    return family_uniform_matroid(n, spec.at("rank").get<int>());
  if (type == "partition-matroid") {
    std::vector<Set> parts = sets_from_json(spec.at("parts"), n);
    std::vector<int> caps;
    for (const auto& c : spec.at("caps")) caps.push_back(c.get<int>());
    return family_partition_matroid(n, std::move(parts), std::move(caps));
  }
  // Embedded blocker lists on derived kinds are documentation; constructors
  // recompute them deterministically.
  if (type == "blocker")
    return family_blocker(n, sets_from_json(spec.at("blocker"), n));
  if (type == "vertex-covers") {
    Graph g = graph_from_json(spec.at("graph"));
    if (g.num_vertices != n)
      throw PreconditionError("vertex-cover ground set is the vertex set");
    return family_vertex_covers(g);
  }
  if (type == "graphic-forests" || type == "spanning-trees" ||
      type == "connected-spanning" || type == "matchings") {
    Graph g = graph_from_json(spec.at("graph"));
    if (static_cast<int>(g.edges.size()) != n)
      throw PreconditionError("edge-family ground set is the edge set");
    if (type == "graphic-forests") return family_graphic_forests(g);
    if (type == "spanning-trees") return family_spanning_trees(g);
    if (type == "connected-spanning") return family_connected_spanning(g);
    return family_matchings(g);
  }
  if (type == "st-connected" || type == "st-paths") {
    Graph g = graph_from_json(spec.at("graph"));
    if (static_cast<int>(g.edges.size()) != n)
      throw PreconditionError("edge-family ground set is the edge set");
    int s = spec.at("s").get<int>();
    int t = spec.at("t").get<int>();
    return type == "st-connected" ? family_st_connected(g, s, t)
                                  : family_st_paths(g, s, t);
  }
  if (type == "intersection")
    return family_intersection(family_from_json(spec.at("first"), n),
                               family_from_json(spec.at("second"), n));
  if (type == "ring")
    return family_ring_explicit(n, sets_from_json(spec.at("members"), n));
  if (type == "crossing")
    return family_crossing_explicit(n, sets_from_json(spec.at("members"), n));
  throw PreconditionError("unknown family type: " + type);
}

struct ParsedInstance {
  MasoInstance instance;
  std::string id;
};

inline ParsedInstance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw PreconditionError("instance must be a JSON object");
  for (const char* key : {"n", "k", "sense", "objectives", "outer_family"})
    if (!doc.contains(key))
      throw PreconditionError(std::string("instance missing field: ") + key);
  ParsedInstance out;
  int n = doc.at("n").get<int>();
  if (doc.contains("labels")) {
    std::vector<std::string> labels = doc.at("labels").get<std::vector<std::string>>();
    out.instance.ground = GroundSet(n, std::move(labels));
  } else {
    out.instance.ground = GroundSet(n);
  }
  out.instance.k = doc.at("k").get<int>();
  const std::string sense = doc.at("sense").get<std::string>();
  if (sense == "min")
    out.instance.sense = Sense::kMin;
  else if (sense == "max")
    out.instance.sense = Sense::kMax;
  else
    throw PreconditionError("sense must be \"min\" or \"max\"");
  for (const auto& spec : doc.at("objectives"))
    out.instance.objectives.push_back(function_from_json(spec, n));
  out.instance.outer = family_from_json(doc.at("outer_family"), n);
  if (doc.contains("per_agent_families"))
    for (const auto& spec : doc.at("per_agent_families"))
      out.instance.per_agent.push_back(family_from_json(spec, n));
  if (doc.contains("decomposition")) {
    const auto& d = doc.at("decomposition");
    Decomposition dec{{}, make_zero(n)};
    for (const auto& spec : d.at("g"))
      dec.g.push_back(function_from_json(spec, n));
    dec.h = function_from_json(d.at("h"), n);
    out.instance.decomposition = std::move(dec);
  }
  out.instance.validate();
  out.id = doc.value("id", std::string("instance"));
  return out;
}

inline ParsedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open instance file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const std::exception& e) {
    throw PreconditionError(std::string("instance parse failure: ") + e.what());
  }
  ParsedInstance parsed = instance_from_json(doc);
  if (!doc.contains("id")) {
    // Fallback id: file stem.
    size_t slash = path.find_last_of('/');
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    parsed.id = stem;
  }
  return parsed;
}

// One report row per (instance, algorithm, seed) cell.
struct ReportRow {
  std::string instance_id;
  std::string algorithm;
  std::uint64_t seed = 0;
  bool feasible = false;
  double value = 0.0;
  double fractional_value = 0.0;
  double ratio = 0.0;
  bool ratio_defined = false;
  double runtime_ms = 0.0;  // zero unless timings were requested
  double factor_claimed = 0.0;
  double factor_observed = 0.0;
  bool factors_defined = false;  // maximization rows only
  std::vector<Set> allocation;
  std::string note;  // cap violations and similar per-row diagnostics
};

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

inline std::string report_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "instance,algorithm,seed,feasible,value,fractional_value,ratio,runtime_ms\n";
  for (const auto& r : rows) {
    out << r.instance_id << ',' << r.algorithm << ',' << r.seed << ','
        << (r.feasible ? "true" : "false") << ',' << format_double(r.value) << ','
        << format_double(r.fractional_value) << ','
        << (r.ratio_defined ? format_double(r.ratio) : std::string()) << ','
        << format_double(r.runtime_ms) << '\n';
  }
  return out.str();
}

inline Json report_to_json(const std::string& instance_id,
                           const std::vector<ReportRow>& rows) {
  Json out;
  out["instance"] = instance_id;
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["algorithm"] = r.algorithm;
    row["seed"] = r.seed;
    row["feasible"] = r.feasible;
    row["cost"] = r.value;
    row["fractional_value"] = r.fractional_value;
    if (r.ratio_defined) row["ratio_vs_bruteforce"] = r.ratio;
    if (r.factors_defined) {
      row["factor_claimed"] = r.factor_claimed;
      row["factor_observed"] = r.factor_observed;
    }
    row["runtime_ms"] = r.runtime_ms;
    row["allocation"] = sets_to_json(r.allocation);
    if (!r.note.empty()) row["note"] = r.note;
    arr.push_back(std::move(row));
  }
  out["rows"] = std::move(arr);
  return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot open output file: " + path);
  out << text;
}

}  // namespace maso

#endif  // MASO_JSON_IO_HPP
