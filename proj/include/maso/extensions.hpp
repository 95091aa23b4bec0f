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

#ifndef MASO_EXTENSIONS_HPP
#define MASO_EXTENSIONS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "maso/common.hpp"
#include "maso/instance.hpp"
#include "maso/value_oracle.hpp"

namespace maso {

inline constexpr int kMultilinearExactCap = 20;

namespace detail {

inline void require_point_size(const ValueOracle& f, const FracPoint& z) {
  if (static_cast<int>(z.size()) != f.n())
    throw PreconditionError("fractional point length must match the oracle");
}

// Element order of nonincreasing z value, ties by ascending index.
inline std::vector<int> greedy_order(const FracPoint& z) {
  std::vector<int> order(z.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return z[a] > z[b]; });
  return order;
}

}  // namespace detail

// Level-set form over the distinct positive values 0 < v_1 < ... < v_m:
// sum of (v_j - v_{j-1}) * f({u : z_u >= v_j}). Positively homogeneous on
// all of the nonnegative orthant; on [0,1]^V it equals the expectation of
// f over the threshold sets of a uniform theta.
inline double lovasz_eval(const ValueOracle& f, const FracPoint& z) {
  detail::require_point_size(f, z);
  require_nonnegative_point(z);
  std::vector<double> levels;
  for (double x : z)
    if (x > 0.0) levels.push_back(x);
  if (levels.empty()) return 0.0;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  double total = 0.0;
  double prev = 0.0;
  for (double level : levels) {
    Set above = 0;
    for (size_t v = 0; v < z.size(); ++v)
      if (z[v] >= level) above = with(above, static_cast<int>(v));
    total += (level - prev) * f(above);
    prev = level;
  }
  return total;
}

// Edmonds-greedy vertex of the base region for the nonincreasing order of z
// (ties by ascending index): successive marginals along that order.
inline std::vector<double> lovasz_subgradient(const ValueOracle& f, const FracPoint& z) {
  detail::require_point_size(f, z);
  require_nonnegative_point(z);
  auto order = detail::greedy_order(z);
  std::vector<double> grad(z.size(), 0.0);
  Set prefix = 0;
  double prev_value = f(0);
  for (int v : order) {
    prefix = with(prefix, v);
    double value = f(prefix);
    grad[v] = value - prev_value;
    prev_value = value;
  }
  return grad;
}

// Exact multilinear extension by full subset enumeration.
inline double multilinear_eval_exact(const ValueOracle& f, const FracPoint& z) {
  detail::require_point_size(f, z);
  require_unit_box(z);
  if (f.n() > kMultilinearExactCap)
    throw CapacityError("exact multilinear evaluation capped at n <= 20");
  const Set top = full_mask(f.n());
  double total = 0.0;
  for (Set s = 0;; ++s) {
    double p = 1.0;
    for (int v = 0; v < f.n(); ++v) p *= contains(s, v) ? z[v] : 1.0 - z[v];
    if (p > 0.0) total += p * f(s);
    if (s == top) break;
  }
  return total;
}

struct McEstimate {
  double estimate = 0.0;
  double stderr_of_mean = 0.0;
};

// Monte-Carlo estimate of f^M(z): mean of f over sampled threshold sets with
// independent inclusion. Deterministic given the seed.
inline McEstimate multilinear_eval_mc(const ValueOracle& f, const FracPoint& z,
                                      int samples, std::uint64_t seed) {
  detail::require_point_size(f, z);
  require_unit_box(z);
  if (samples < 1) throw PreconditionError("sampling requires at least one draw");
  Rng rng(seed);
  double sum = 0.0, sumsq = 0.0;
  for (int t = 0; t < samples; ++t) {
    Set s = 0;
    for (int v = 0; v < f.n(); ++v)
      if (rng.uniform01() < z[v]) s = with(s, v);
    double value = f(s);
    sum += value;
    sumsq += value * value;
  }
  McEstimate out;
  out.estimate = sum / samples;
  if (samples > 1) {
    double variance = (sumsq - sum * sum / samples) / (samples - 1);
    out.stderr_of_mean = std::sqrt(std::max(0.0, variance) / samples);
  }
  return out;
}

// Exact coefficient of the linear slice along e_v: f^M at z_v=1 minus at
// z_v=0. Independent of the current z_v by multilinearity.
inline double multilinear_partial(const ValueOracle& f, FracPoint z, int v) {
  detail::require_point_size(f, z);
  if (v < 0 || v >= f.n()) throw PreconditionError("partial element out of range");
  z[v] = 1.0;
  double high = multilinear_eval_exact(f, z);
  z[v] = 0.0;
  double low = multilinear_eval_exact(f, z);
  return high - low;
}

inline std::vector<double> multilinear_gradient(const ValueOracle& f, const FracPoint& z) {
  std::vector<double> grad(z.size());
  for (int v = 0; v < static_cast<int>(z.size()); ++v)
    grad[v] = multilinear_partial(f, z, v);
  return grad;
}

}  // namespace maso

#endif  // MASO_EXTENSIONS_HPP
