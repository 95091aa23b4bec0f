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

#ifndef MASO_SIMPLEX_HPP
#define MASO_SIMPLEX_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "maso/common.hpp"

namespace maso {

// Dense two-phase simplex with Bland's rule. Built for desk-scale master
// problems (tens of variables, hundreds of rows); Bland's rule trades speed
// for guaranteed termination.
struct LinearProgram {
  struct Row {
    std::vector<double> a;
    double b = 0.0;
    int sense = -1;  // -1: a.x <= b, 0: a.x == b, +1: a.x >= b
  };

  int nvars = 0;
  std::vector<double> c;       // minimize c.x
  std::vector<Row> rows;
  std::vector<double> lower;   // finite lower bounds required
  std::vector<double> upper;   // +infinity allowed

  void add_row(std::vector<double> a, double b, int sense) {
    rows.push_back(Row{std::move(a), b, sense});
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
};

namespace detail {

inline constexpr double kLpOptEps = 1e-9;
inline constexpr double kLpPivotEps = 1e-11;

class SimplexTableau {
 public:
  // rows: m x (ncols+1), last column is the rhs. basic[i] is the column
  // currently basic in row i.
  std::vector<std::vector<double>> t;
  std::vector<int> basic;
  int ncols = 0;

  void pivot(int row, int col) {
    double p = t[row][col];
    for (double& x : t[row]) x /= p;
    for (size_t i = 0; i < t.size(); ++i) {
      if (static_cast<int>(i) == row) continue;
      double factor = t[i][col];
      if (factor == 0.0) continue;
      for (int j = 0; j <= ncols; ++j) t[i][j] -= factor * t[row][j];
    }
    basic[row] = col;
  }

  // Minimizes cost over the current basis. allowed[j] gates entering
  // columns. Returns false on unboundedness.
  bool run(const std::vector<double>& cost, const std::vector<char>& allowed,
           std::vector<double>& reduced, double& objective) {
    const int m = static_cast<int>(t.size());
    while (true) {
      // Reduced costs from scratch each iteration: slower, but immune to
      // drift across many pivots.
      reduced.assign(ncols, 0.0);
      objective = 0.0;
      for (int i = 0; i < m; ++i) objective += cost[basic[i]] * t[i][ncols];
      for (int j = 0; j < ncols; ++j) {
        double zj = 0.0;
        for (int i = 0; i < m; ++i) zj += cost[basic[i]] * t[i][j];
        reduced[j] = cost[j] - zj;
      }
      int entering = -1;
      for (int j = 0; j < ncols; ++j)
        if (allowed[j] && reduced[j] < -kLpOptEps) {
          entering = j;  // Bland: lowest eligible index
          break;
        }
      if (entering < 0) return true;
      int leaving = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        if (t[i][entering] > kLpPivotEps) {
          double ratio = t[i][ncols] / t[i][entering];
          if (leaving < 0 || ratio < best_ratio - kLpPivotEps ||
              (ratio < best_ratio + kLpPivotEps && basic[i] < basic[leaving]))
            leaving = i, best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp) {
  const int n0 = lp.nvars;
  if (static_cast<int>(lp.c.size()) != n0 ||
      static_cast<int>(lp.lower.size()) != n0 ||
      static_cast<int>(lp.upper.size()) != n0)
    throw PreconditionError("linear program vector sizes disagree");
  for (const auto& row : lp.rows)
    if (static_cast<int>(row.a.size()) != n0)
      throw PreconditionError("linear program row length mismatch");
  for (int j = 0; j < n0; ++j) {
    if (!std::isfinite(lp.lower[j]))
      throw PreconditionError("free variables are unsupported; give a finite lower bound");
    if (lp.upper[j] < lp.lower[j]) return {LpStatus::kInfeasible, 0.0, {}};
  }

  // Shift x = y + lower so y >= 0, then append finite upper bounds as rows.
  struct NormRow {
    std::vector<double> a;
    double b;
    int sense;
  };
  std::vector<NormRow> rows;
  for (const auto& row : lp.rows) {
    double shift = 0.0;
    for (int j = 0; j < n0; ++j) shift += row.a[j] * lp.lower[j];
    rows.push_back({row.a, row.b - shift, row.sense});
  }
  for (int j = 0; j < n0; ++j) {
    if (std::isfinite(lp.upper[j])) {
      std::vector<double> a(n0, 0.0);
      a[j] = 1.0;
      rows.push_back({std::move(a), lp.upper[j] - lp.lower[j], -1});
    }
  }
  for (auto& row : rows) {
    if (row.b < 0.0) {
      for (double& x : row.a) x = -x;
      row.b = -row.b;
      row.sense = -row.sense;
    }
  }

  const int m = static_cast<int>(rows.size());
  int nslack = 0;
  for (const auto& row : rows)
    if (row.sense != 0) ++nslack;
  // Column layout: structural | slack/surplus | artificial.
  int ncols = n0 + nslack + m;
  detail::SimplexTableau tab;
  tab.ncols = ncols;
  tab.t.assign(m, std::vector<double>(ncols + 1, 0.0));
  tab.basic.assign(m, -1);

  int slack_at = n0;
  const int art_base = n0 + nslack;
  std::vector<char> is_artificial(ncols, 0);
  int nart = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n0; ++j) tab.t[i][j] = rows[i].a[j];
    tab.t[i][ncols] = rows[i].b;
    if (rows[i].sense == -1) {
      tab.t[i][slack_at] = 1.0;
      tab.basic[i] = slack_at++;
    } else {
      if (rows[i].sense == +1) tab.t[i][slack_at++] = -1.0;
      int art = art_base + nart++;
      tab.t[i][art] = 1.0;
      tab.basic[i] = art;
      is_artificial[art] = 1;
    }
  }

  std::vector<double> reduced;
  double objective = 0.0;
  if (nart > 0) {
    std::vector<double> cost(ncols, 0.0);
    for (int j = art_base; j < art_base + nart; ++j) cost[j] = 1.0;
    std::vector<char> allowed(ncols, 1);
    if (!tab.run(cost, allowed, reduced, objective))
      throw InvariantError("phase-1 objective is bounded by construction");
    if (objective > 1e-7) return {LpStatus::kInfeasible, 0.0, {}};
    // Pivot leftover artificials out of the basis; a row with no usable
    // pivot is redundant and gets dropped.
    for (int i = static_cast<int>(tab.t.size()) - 1; i >= 0; --i) {
      if (!is_artificial[tab.basic[i]]) continue;
      int col = -1;
      for (int j = 0; j < art_base; ++j)
        if (std::fabs(tab.t[i][j]) > detail::kLpPivotEps) {
          col = j;
          break;
        }
      if (col >= 0) {
        tab.pivot(i, col);
      } else {
        tab.t.erase(tab.t.begin() + i);
        tab.basic.erase(tab.basic.begin() + i);
      }
    }
  }

  std::vector<double> cost(ncols, 0.0);
  for (int j = 0; j < n0; ++j) cost[j] = lp.c[j];
  std::vector<char> allowed(ncols, 1);
  for (int j = 0; j < ncols; ++j)
    if (is_artificial[j]) allowed[j] = 0;
  if (!tab.run(cost, allowed, reduced, objective))
    return {LpStatus::kUnbounded, 0.0, {}};

  LpResult out;
  out.status = LpStatus::kOptimal;
  out.x.assign(n0, 0.0);
  for (size_t i = 0; i < tab.t.size(); ++i)
    if (tab.basic[i] < n0) out.x[tab.basic[i]] = tab.t[i][tab.ncols];
  for (int j = 0; j < n0; ++j) out.x[j] += lp.lower[j];
  out.value = 0.0;
  for (int j = 0; j < n0; ++j) out.value += lp.c[j] * out.x[j];
  return out;
}

}  // namespace maso

#endif  // MASO_SIMPLEX_HPP
