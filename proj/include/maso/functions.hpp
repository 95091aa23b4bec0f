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

#ifndef MASO_FUNCTIONS_HPP
#define MASO_FUNCTIONS_HPP

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "maso/common.hpp"
#include "maso/family.hpp"
#include "maso/value_oracle.hpp"

namespace maso {

namespace detail {

inline void require_nonnegative(const std::vector<double>& w, const char* what) {
  for (double x : w)
    if (x < 0.0) throw PreconditionError(std::string("negative ") + what);
}

}  // namespace detail

inline ValueOracle make_zero(int n) {
  return ValueOracle(
      n, [](Set) { return 0.0; }, /*monotone=*/true, /*submodular=*/true, "zero");
}

// f(S) = sum of w_v over v in S.
inline ValueOracle make_modular(int n, std::vector<double> weights) {
  if (static_cast<int>(weights.size()) != n)
    throw PreconditionError("modular function needs one weight per element");
  detail::require_nonnegative(weights, "modular weight");
  auto w = std::make_shared<std::vector<double>>(std::move(weights));
  return ValueOracle(
      n,
      [w](Set s) {
        double total = 0.0;
        for_each_element(s, [&](int v) { total += (*w)[v]; });
        return total;
      },
      /*monotone=*/true, /*submodular=*/true, "modular");
}

// f(S) = weight of the union of the covered-item sets A_v, v in S. Items
// live on their own ground set of size item_count (<= 64).
inline ValueOracle make_coverage(int n, int item_count,
                                 std::vector<Set> covered,
                                 std::vector<double> item_weights = {}) {
  if (static_cast<int>(covered.size()) != n)
    throw PreconditionError("coverage needs one item set per element");
  const Set item_mask = full_mask(item_count);
  for (Set a : covered)
    if (a & ~item_mask) throw PreconditionError("covered items out of range");
  if (item_weights.empty()) item_weights.assign(item_count, 1.0);
  if (static_cast<int>(item_weights.size()) != item_count)
    throw PreconditionError("coverage needs one weight per item");
  detail::require_nonnegative(item_weights, "coverage item weight");
  auto sets = std::make_shared<std::vector<Set>>(std::move(covered));
  auto w = std::make_shared<std::vector<double>>(std::move(item_weights));
  return ValueOracle(
      n,
      [sets, w](Set s) {
        Set hit = 0;
        for_each_element(s, [&](int v) { hit |= (*sets)[v]; });
        double total = 0.0;
        for_each_element(hit, [&](int item) { total += (*w)[item]; });
        return total;
      },
      /*monotone=*/true, /*submodular=*/true, "coverage");
}

// f(S) = sum over clients of the best utility offered by an open element.
// utility[c][v] >= 0; an empty S serves nobody.
inline ValueOracle make_facility_location(int n,
                                          std::vector<std::vector<double>> utility) {
  for (const auto& row : utility) {
    if (static_cast<int>(row.size()) != n)
      throw PreconditionError("utility row length must match ground set size");
    detail::require_nonnegative(row, "facility utility");
  }
  auto u = std::make_shared<std::vector<std::vector<double>>>(std::move(utility));
  return ValueOracle(
      n,
      [u](Set s) {
        double total = 0.0;
        for (const auto& row : *u) {
          double best = 0.0;
          for_each_element(s, [&](int v) { best = std::max(best, row[v]); });
          total += best;
        }
        return total;
      },
      /*monotone=*/true, /*submodular=*/true, "facility-location");
}

// f(S) = total weight of edges with exactly one endpoint in S. Symmetric and
// submodular, not monotone. Loops never cross.
inline ValueOracle make_graph_cut(const Graph& g, std::vector<double> edge_weights = {}) {
  if (g.num_vertices > kMaxGround)
    throw CapacityError("too many vertices for a vertex ground set");
  if (edge_weights.empty()) edge_weights.assign(g.edges.size(), 1.0);
  if (edge_weights.size() != g.edges.size())
    throw PreconditionError("cut function needs one weight per edge");
  detail::require_nonnegative(edge_weights, "cut edge weight");
  auto shared = std::make_shared<const Graph>(g);
  auto w = std::make_shared<std::vector<double>>(std::move(edge_weights));
  return ValueOracle(
      g.num_vertices,
      [shared, w](Set s) {
        double total = 0.0;
        for (size_t e = 0; e < shared->edges.size(); ++e) {
          auto [a, b] = shared->edges[e];
          if (contains(s, a) != contains(s, b)) total += (*w)[e];
        }
        return total;
      },
      /*monotone=*/false, /*submodular=*/true, "graph-cut");
}

// Rank of S in a matroid given by independence probes. Greedy insertion in
// ascending element order is exact on matroids.
inline ValueOracle make_matroid_rank(const FeasibleFamily& matroid) {
  return ValueOracle(
      matroid.n(),
      [matroid](Set s) {
        Set indep = 0;
        for_each_element(s, [&](int v) {
          if (matroid.contains(with(indep, v))) indep = with(indep, v);
        });
        return static_cast<double>(set_size(indep));
      },
      /*monotone=*/true, /*submodular=*/true, "matroid-rank");
}

// f(S) = sqrt(w(S)). Concave of nonnegative modular, so monotone submodular.
inline ValueOracle make_concave_sqrt(int n, std::vector<double> weights) {
  if (static_cast<int>(weights.size()) != n)
    throw PreconditionError("concave function needs one weight per element");
  detail::require_nonnegative(weights, "concave weight");
  auto w = std::make_shared<std::vector<double>>(std::move(weights));
  return ValueOracle(
      n,
      [w](Set s) {
        double total = 0.0;
        for_each_element(s, [&](int v) { total += (*w)[v]; });
        return std::sqrt(total);
      },
      /*monotone=*/true, /*submodular=*/true, "concave-sqrt");
}

// f(S) = min(w(S), cap).
inline ValueOracle make_concave_min_cap(int n, std::vector<double> weights, double cap) {
  if (static_cast<int>(weights.size()) != n)
    throw PreconditionError("concave function needs one weight per element");
  detail::require_nonnegative(weights, "concave weight");
  if (cap < 0.0) throw PreconditionError("negative cap");
  auto w = std::make_shared<std::vector<double>>(std::move(weights));
  return ValueOracle(
      n,
      [w, cap](Set s) {
        double total = 0.0;
        for_each_element(s, [&](int v) { total += (*w)[v]; });
        return std::min(total, cap);
      },
      /*monotone=*/true, /*submodular=*/true, "concave-min-cap");
}

inline ValueOracle make_sum(std::vector<ValueOracle> terms) {
  if (terms.empty()) throw PreconditionError("sum needs at least one term");
  const int n = terms[0].n();
  bool mono = true, sub = true;
  for (const auto& f : terms) {
    if (f.n() != n) throw PreconditionError("sum terms need one ground set");
    mono = mono && f.claims_monotone();
    sub = sub && f.claims_submodular();
  }
  auto shared = std::make_shared<std::vector<ValueOracle>>(std::move(terms));
  return ValueOracle(
      n,
      [shared](Set s) {
        double total = 0.0;
        for (const auto& f : *shared) total += f(s);
        return total;
      },
      mono, sub, "sum");
}

inline ValueOracle make_scale(const ValueOracle& f, double c) {
  if (c < 0.0) throw PreconditionError("negative scale factor");
  return ValueOracle(
      f.n(), [f, c](Set s) { return c * f(s); }, f.claims_monotone(),
      f.claims_submodular(), "scaled-" + f.name());
}

}  // namespace maso

#endif  // MASO_FUNCTIONS_HPP
